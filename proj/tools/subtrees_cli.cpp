#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "subtrees/bounds.hpp"
#include "subtrees/errors.hpp"
#include "subtrees/gcount.hpp"
#include "subtrees/montecarlo.hpp"
#include "subtrees/rng.hpp"
#include "subtrees/subtree_count.hpp"
#include "subtrees/tree.hpp"

namespace fs = std::filesystem;
using namespace subtrees;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitComputation = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
    int K = 0;
    int khat = 10000;
    int precision_bits = 256;
    int n = 0;
    int reps = 0;
    std::uint64_t seed = 0;
    int bootstrap_reps = 100000;
    std::string format = "csv";
    std::string out_path;
    std::string table_path;
    int threads = 0;
    double budget_seconds = -1;   // < 0: unlimited
    long long budget_entries = -1;  // < 0: unlimited
    bool resume = false;
    int oracle_k = 6;
    int identity_max_b = 25;
};

// default table location: $SUBTREES_CACHE_DIR/gcount.csv when the cache dir
// is configured, otherwise none (keep everything in memory)
std::string default_table_path() {
    const char* dir = std::getenv("SUBTREES_CACHE_DIR");
    if (!dir || !*dir) return {};
    return (fs::path(dir) / "gcount.csv").string();
}

int emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    out << text;
    out.close();
    if (!out) {
        std::cerr << "error: cannot write " << cfg.out_path << "\n";
        return kExitComputation;
    }
    return kExitOk;
}

// Load (if present), extend to K with per-k checkpointing when a table path
// is configured, and hand back the table. Budget overruns propagate with the
// completed part attached.
GCountTable obtain_table(const RunConfig& cfg, bool announce, bool load_existing) {
    GCountTable table;
    const std::string& path = cfg.table_path;
    if (load_existing && !path.empty()) {
        if (fs::exists(path))
            table = load_tables(path);
        else if (cfg.resume)
            std::cerr << "note: no table at " << path << " yet, starting fresh\n";
    }

    ComputeOptions opts;
    if (cfg.budget_seconds >= 0) opts.budget_seconds = cfg.budget_seconds;
    if (cfg.budget_entries >= 0)
        opts.budget_entries = static_cast<std::uint64_t>(cfg.budget_entries);
    opts.threads = cfg.threads;
    opts.on_k_complete = [&](const GCountTable& t, int k) {
        if (!path.empty()) save_tables(t, path);
        if (announce) {
            mpz_class expect;
            mpz_ui_pow_ui(expect.get_mpz_t(), k, k >= 1 ? k - 1 : 0);
            const bool mass_ok = t.mass(k) == expect;
            std::cout << "k=" << k << ": " << t.at(k).size() << " entries, mass "
                      << t.mass(k).get_str() << (mass_ok ? " ok" : " MISMATCH") << "\n";
            if (!mass_ok) throw std::runtime_error("mass check failed at k=" + std::to_string(k));
        }
    };
    extend_tables(table, cfg.K, opts);
    return table;
}

int cmd_bounds(const RunConfig& cfg) {
    GCountTable table;
    int usable_k = cfg.K;
    int exit_code = kExitOk;
    try {
        table = obtain_table(cfg, false, true);
    } catch (const BudgetExceededError& e) {
        table = e.partial;
        usable_k = table.K;
        std::cerr << "warning: " << e.what() << "; emitting rows for K <= " << usable_k << "\n";
        exit_code = kExitComputation;
        if (usable_k < 1) return exit_code;
    }
    std::vector<BoundsRow> rows = bounds_rows(table, usable_k, cfg.khat, cfg.precision_bits);
    const std::string text =
        cfg.format == "md" ? format_bounds_markdown(rows) : format_bounds_csv(rows);
    const int emit_code = emit(cfg, text);
    return emit_code != kExitOk ? emit_code : exit_code;
}

int cmd_simulate(const RunConfig& cfg) {
    SimulationSummary s =
        run_simulation(cfg.n, cfg.reps, cfg.seed, cfg.bootstrap_reps, cfg.threads);
    return emit(cfg, format_simulation_csv(s));
}

int cmd_enumerate(RunConfig cfg) {
    if (cfg.table_path.empty()) cfg.table_path = "gcount.csv";
    int exit_code = kExitOk;
    GCountTable table;
    try {
        table = obtain_table(cfg, true, cfg.resume);
    } catch (const BudgetExceededError& e) {
        std::cerr << "warning: " << e.what() << "; table saved up to K=" << e.partial.K << "\n";
        return kExitComputation;
    }
    if (table.K >= cfg.K && !fs::exists(cfg.table_path)) save_tables(table, cfg.table_path);
    std::cout << "table: " << cfg.table_path << " (K=" << table.K << ", "
              << table.entry_count() << " entries)\n";
    return exit_code;
}

int cmd_verify(const RunConfig& cfg) {
    bool all_pass = true;
    auto report = [&](const std::string& name, bool pass) {
        std::cout << name << ": " << (pass ? "PASS" : "FAIL") << "\n";
        all_pass = all_pass && pass;
    };

    // Prüfer round-trips plus exhaustive Cayley counts for tiny n
    {
        bool ok = true;
        for (int n = 2; n <= 50 && ok; ++n)
            for (int rep = 0; rep < 20 && ok; ++rep) {
                LabelledTree t = random_tree(n, child_seed(1234, n * 100 + rep));
                ok = same_edge_set(t, prufer_decode(prufer_encode(t)));
            }
        for (int n = 3; n <= 5 && ok; ++n) {
            std::set<std::string> seen;
            std::vector<int> code(n - 2, 1);
            while (true) {
                PruferCode pc;
                pc.code = code;
                std::ostringstream os;
                write_tree(prufer_decode(pc), os);
                seen.insert(os.str());
                int i = 0;
                while (i < n - 2 && code[i] == n) code[i++] = 1;
                if (i == n - 2) break;
                ++code[i];
            }
            mpz_class expect;
            mpz_ui_pow_ui(expect.get_mpz_t(), n, n - 2);
            ok = mpz_class(long(seen.size())) == expect;
        }
        report("prufer round-trip and Cayley counts", ok);
    }

    // exact decomposition identities
    {
        bool ok = true;
        for (long b = 2; b <= cfg.identity_max_b; ++b) ok = ok && identity_check(b);
        report("identities b<=" + std::to_string(cfg.identity_max_b), ok);
    }

    // partition DP against the exhaustive enumeration
    {
        GCountTable fast = compute_tables(cfg.oracle_k);
        GCountTable slow = exhaustive_tables(cfg.oracle_k);
        bool ok = true;
        for (int k = 1; k <= cfg.oracle_k; ++k) ok = ok && fast.at(k) == slow.at(k);
        report("x(k,g) dp vs exhaustive k<=" + std::to_string(cfg.oracle_k), ok);
    }

    // subtree-count DP against the power-set oracle, and its log twin
    {
        bool ok = true;
        for (int rep = 0; rep < 100 && ok; ++rep) {
            const int n = 2 + int(child_seed(77, rep) % 11);
            LabelledTree t = random_tree(n, child_seed(78, rep));
            ok = total_count(t) == brute_force_count(t);
        }
        for (int rep = 0; rep < 50 && ok; ++rep) {
            const int n = 2 + int(child_seed(79, rep) % 511);
            LabelledTree t = random_tree(n, child_seed(80, rep));
            const mpz_class exact = total_count(t);
            const double lg = log_total_count(t).to_double();
            long e2 = 0;
            const double mant = mpz_get_d_2exp(&e2, exact.get_mpz_t());
            const double ref = std::log(mant) + double(e2) * std::log(2.0);
            ok = std::abs(lg - ref) <= 1e-10 * std::max(1.0, std::abs(ref));
        }
        report("subtree counts vs power-set oracle", ok);
    }

    // density bookkeeping
    {
        bool ok = true;
        for (int K = 1; K <= 12 && ok; ++K) {
            DensityTable d = density_table(K);
            Enclosure total = d.h - Enclosure::from_long(1);
            for (int k = 1; k <= K; ++k) {
                mpz_class kk;
                mpz_ui_pow_ui(kk.get_mpz_t(), k, k);
                total += d.f[k].mul_mpz(kk);
                ok = ok && f_closed(K, k).overlaps(f_recurrence(K, k));
            }
            ok = ok && total.lo_d() <= 0.0 && total.hi_d() >= 0.0;
        }
        report("density conservation and recurrence K<=12", ok);
    }

    // certified coarse constants
    {
        TrivialConstants c = trivial_constants();
        bool ok = c.two_pow_inv_e.lo_d() >= 1.29045 && c.beta.lo_d() > 1.37135 &&
                  c.alpha.hi_d() < 1.89756;
        report("certified coarse constants", ok);
    }

    // optional: validate a persisted table file
    if (!cfg.table_path.empty()) {
        bool ok = true;
        std::string detail;
        try {
            GCountTable t = load_tables(cfg.table_path);
            detail = " (K=" + std::to_string(t.K) + ", " + std::to_string(t.entry_count()) +
                     " entries)";
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string(" (") + e.what() + ")";
        }
        std::cout << "table file " << cfg.table_path << detail << ": "
                  << (ok ? "PASS" : "FAIL") << "\n";
        all_pass = all_pass && ok;
    }

    // statistical spot-checks: reported for information, never fatal
    {
        DensityComparison d = empirical_densities(10000, 5, 5, 99);
        std::cout << "INFO remainder fraction n=10^4 K=5: observed "
                  << d.observed_remainder << ", predicted " << d.predicted_remainder << "\n";
        int leaves = 0;
        LabelledTree t = random_tree(20000, child_seed(98, 0));
        for (int v = 1; v <= t.n; ++v) leaves += t.degree(v) == 1;
        std::cout << "INFO leaf fraction n=2*10^4: observed " << double(leaves) / t.n
                  << ", predicted " << std::exp(-1.0) << "\n";
    }

    std::cout << (all_pass ? "all deterministic suites passed\n"
                           : "at least one suite FAILED\n");
    return all_pass ? kExitOk : kExitComputation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified bounds and simulation for random-tree subtree counts"};
    app.require_subcommand(1);
    RunConfig cfg;
    cfg.table_path = default_table_path();

    CLI::App* bounds = app.add_subcommand("bounds", "emit certified bound rows for K'=1..K");
    bounds->add_option("--k", cfg.K, "largest trimming depth K")
        ->required()
        ->check(CLI::Range(1, 64));
    bounds->add_option("--khat", cfg.khat, "tail truncation point of the second upper bound")
        ->capture_default_str()
        ->check(CLI::Range(2, 100000000));
    bounds->add_option("--precision", cfg.precision_bits, "working precision in bits")
        ->capture_default_str()
        ->check(CLI::Range(64, 16384));
    bounds->add_option("--format", cfg.format, "output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"csv", "md"}));
    bounds->add_option("--out", cfg.out_path, "write the report here instead of stdout");
    bounds->add_option("--table", cfg.table_path, "x-table cache file (loaded and extended)")
        ->capture_default_str();
    bounds->add_option("--threads", cfg.threads, "worker threads (0 = all cores)")
        ->check(CLI::Range(0, 4096));
    bounds->add_option("--budget-seconds", cfg.budget_seconds, "abort table building after this long");
    bounds->add_option("--budget-entries", cfg.budget_entries, "abort past this many stored entries");

    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the mean root");
    simulate->add_option("--n", cfg.n, "tree size")->required()->check(CLI::Range(2, 1 << 26));
    simulate->add_option("--reps", cfg.reps, "independent replicates")
        ->required()
        ->check(CLI::Range(2, 1 << 26));
    simulate->add_option("--seed", cfg.seed, "master seed (all randomness flows from it)")
        ->required();
    simulate->add_option("--bootstrap", cfg.bootstrap_reps, "bootstrap resamples")
        ->capture_default_str()
        ->check(CLI::Range(1, 100000000));
    simulate->add_option("--threads", cfg.threads, "worker threads (0 = all cores)")
        ->check(CLI::Range(0, 4096));
    simulate->add_option("--out", cfg.out_path, "write the report here instead of stdout");

    CLI::App* enumerate = app.add_subcommand("enumerate", "build and persist the x(k,g) table");
    enumerate->add_option("--k", cfg.K, "compute rows up to this k")
        ->required()
        ->check(CLI::Range(1, 64));
    enumerate->add_option("--out", cfg.table_path, "table file (default gcount.csv)")
        ->capture_default_str();
    enumerate->add_flag("--resume", cfg.resume, "reuse rows already present in the table file");
    enumerate->add_option("--threads", cfg.threads, "worker threads (0 = all cores)")
        ->check(CLI::Range(0, 4096));
    enumerate->add_option("--budget-seconds", cfg.budget_seconds,
                          "checkpoint and stop after this long");
    enumerate->add_option("--budget-entries", cfg.budget_entries,
                          "checkpoint and stop past this many stored entries");

    CLI::App* verify = app.add_subcommand("verify", "run the self-check suites");
    verify->add_option("--oracle-k", cfg.oracle_k, "exhaustive-oracle depth")
        ->capture_default_str()
        ->check(CLI::Range(1, 8));
    verify->add_option("--identity-max-b", cfg.identity_max_b, "largest b for the identities")
        ->capture_default_str()
        ->check(CLI::Range(2, 500));
    verify->add_option("--table", cfg.table_path, "also validate this table file")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (bounds->parsed()) return cmd_bounds(cfg);
        if (simulate->parsed()) return cmd_simulate(cfg);
        if (enumerate->parsed()) return cmd_enumerate(cfg);
        return cmd_verify(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    }
}
