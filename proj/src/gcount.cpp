#include "subtrees/gcount.hpp"

#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "subtrees/errors.hpp"
#include "subtrees/subtree_count.hpp"
#include "subtrees/tree.hpp"

namespace subtrees {

const std::map<std::uint64_t, mpz_class>& GCountTable::at(int k) const {
    if (k < 1 || k > K) throw std::invalid_argument("GCountTable: k outside [1, K]");
    return rows[k];
}

mpz_class GCountTable::mass(int k) const {
    mpz_class sum = 0;
    for (const auto& [g, x] : at(k)) sum += x;
    return sum;
}

std::uint64_t GCountTable::entry_count() const {
    std::uint64_t total = 0;
    for (const auto& row : rows) total += row.size();
    return total;
}

PartitionIterator::PartitionIterator(int total) {
    if (total < 0) throw std::invalid_argument("PartitionIterator: negative total");
    parts_.assign(total, 1);  // total == 0 => single empty partition
}

void PartitionIterator::next() {
    const std::size_t m = parts_.size();
    if (m <= 1) {
        done_ = true;
        return;
    }
    // ascending-composition successor: bump the second-to-last part, then
    // re-spread what remains greedily
    long long x = parts_[m - 2] + 1;
    long long y = parts_[m - 1] - 1;
    parts_.resize(m - 2);
    while (x <= y) {
        parts_.push_back(static_cast<int>(x));
        y -= x;
    }
    parts_.push_back(static_cast<int>(x + y));
}

std::vector<std::pair<int, int>> PartitionIterator::runs() const {
    std::vector<std::pair<int, int>> out;
    for (int p : parts_) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.emplace_back(p, 1);
    }
    return out;
}

namespace {

using QRow = std::map<std::uint64_t, mpq_class>;  // g -> y(k,g) = x(k,g)/k!

// multiplicative convolution over the g index: keys multiply, weights multiply
QRow conv(const QRow& a, const QRow& b) {
    QRow out;
    for (const auto& [ga, wa] : a)
        for (const auto& [gb, wb] : b) out[ga * gb] += wa * wb;
    return out;
}

mpz_class factorial(unsigned long k) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), k);
    return f;
}

// contribution of one partition of k-1: for every run of n_j equal parts s_j,
// the n_j-fold self-convolution of y(s_j, .) divided by n_j!, cross-convolved
// over runs; the n_j! divisor absorbs the orbit overcount of ordered
// g-assignments within equal-size parts
QRow partition_row(const std::vector<QRow>& y, const std::vector<std::pair<int, int>>& runs) {
    QRow acc{{1, mpq_class(1)}};
    for (const auto& [s, nj] : runs) {
        QRow self = y[s];
        for (int j = 1; j < nj; ++j) self = conv(self, y[s]);
        const mpq_class inv_fact(mpz_class(1), factorial(nj));
        for (auto& [g, w] : self) w *= inv_fact;
        acc = conv(acc, self);
    }
    return acc;
}

std::map<std::uint64_t, mpz_class> to_x_row(const QRow& yrow, int k) {
    const mpz_class kfact = factorial(k);
    std::map<std::uint64_t, mpz_class> out;
    for (const auto& [g, w] : yrow) {
        mpq_class x = w * kfact;
        x.canonicalize();
        if (x.get_den() != 1)
            throw std::logic_error("gcount: non-integral x(k,g) — partition weights are wrong");
        out.emplace(g, x.get_num());
    }
    return out;
}

std::vector<QRow> y_rows_from(const GCountTable& table) {
    std::vector<QRow> y(table.K + 1);
    for (int k = 1; k <= table.K; ++k) {
        const mpz_class kfact = factorial(k);
        for (const auto& [g, x] : table.rows[k]) y[k].emplace(g, mpq_class(x, kfact));
    }
    return y;
}

}  // namespace

void extend_tables(GCountTable& table, int K, const ComputeOptions& opts) {
    if (K < 1) throw std::invalid_argument("compute_tables: K must be >= 1");
    if (table.K == 0) {
        table.K = 1;
        table.rows.assign(2, {});
        table.rows[1].emplace(2, 1);  // x(1,2) = 1: the single vertex, g = 2
        if (opts.on_k_complete) opts.on_k_complete(table, 1);
    }
    if (table.mass(1) != 1) throw std::invalid_argument("extend_tables: malformed seed table");
    if (K <= table.K) return;

    const auto start = std::chrono::steady_clock::now();
    const auto spent = [&start] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    const int threads = opts.threads > 0
                            ? opts.threads
                            : std::max(1u, std::thread::hardware_concurrency());

    std::vector<QRow> y = y_rows_from(table);
    y.resize(K + 1);
    for (int k = table.K + 1; k <= K; ++k) {
        if (opts.budget_seconds && spent() > *opts.budget_seconds)
            throw BudgetExceededError("gcount: wall-clock budget exceeded before k=" +
                                          std::to_string(k),
                                      table);
        if (opts.budget_entries && table.entry_count() >= *opts.budget_entries)
            throw BudgetExceededError("gcount: entry budget exceeded before k=" +
                                          std::to_string(k),
                                      table);

        // materialize the partitions of k-1 in lexicographic order
        std::vector<std::vector<std::pair<int, int>>> runs;
        for (PartitionIterator it(k - 1); !it.done(); it.next()) runs.push_back(it.runs());

        // deterministic parallel map over partitions, merged in lex order
        std::vector<QRow> results(runs.size());
        const int workers = std::min<int>(threads, static_cast<int>(runs.size()));
        if (workers <= 1) {
            for (std::size_t i = 0; i < runs.size(); ++i) results[i] = partition_row(y, runs[i]);
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < workers; ++t)
                pool.emplace_back([&, t] {
                    for (std::size_t i = t; i < runs.size(); i += workers)
                        results[i] = partition_row(y, runs[i]);
                });
            for (auto& th : pool) th.join();
        }
        QRow merged;
        for (const QRow& r : results)
            for (const auto& [gprod, w] : r) merged[1 + gprod] += w;

        y[k] = std::move(merged);
        table.rows.push_back(to_x_row(y[k], k));
        table.K = k;
        if (table.mass(k) != [&] {
                mpz_class m;
                mpz_ui_pow_ui(m.get_mpz_t(), k, k - 1);
                return m;
            }())
            throw std::logic_error("gcount: mass check failed at k=" + std::to_string(k));
        if (opts.on_k_complete) opts.on_k_complete(table, k);
    }
}

GCountTable compute_tables(int K, const ComputeOptions& opts) {
    GCountTable table;
    extend_tables(table, K, opts);
    return table;
}

GCountTable exhaustive_tables(int k_max) {
    if (k_max < 1) throw std::invalid_argument("exhaustive_tables: k_max must be >= 1");
    if (k_max > 8) throw SizeLimitError("exhaustive_tables: k_max > 8");
    GCountTable table;
    table.K = k_max;
    table.rows.assign(k_max + 1, {});
    table.rows[1].emplace(2, 1);
    for (int k = 2; k <= k_max; ++k) {
        long codes = 1;
        for (int i = 0; i < k - 2; ++i) codes *= k;
        std::vector<int> idx(std::max(k - 2, 0), 0);
        for (long it = 0; it < codes; ++it) {
            PruferCode c;
            c.code.reserve(k - 2);
            for (int v : idx) c.code.push_back(v + 1);
            LabelledTree t = prufer_decode(c);
            for (int v = 1; v <= k; ++v) {
                const mpz_class g = rooted_count(t, v);
                ++table.rows[k][g.get_ui()];
            }
            for (int pos = 0; pos < k - 2; ++pos) {
                if (++idx[pos] < k) break;
                idx[pos] = 0;
            }
        }
    }
    return table;
}

Enclosure multiplier(const GCountTable& table, int k, mpfr_prec_t prec) {
    Enclosure sum(prec);
    for (const auto& [g, x] : table.at(k)) {
        Enclosure term = Enclosure::log(Enclosure::from_long(static_cast<long>(g), prec)) -
                         Enclosure::log(Enclosure::from_long(static_cast<long>(g - 1), prec));
        sum += term.mul_mpz(x);
    }
    mpz_class mass;
    mpz_ui_pow_ui(mass.get_mpz_t(), k, k - 1);
    return Enclosure::exp(sum / Enclosure::from_mpz(mass, prec));
}

Enclosure log_g_moment(const GCountTable& table, int k, mpfr_prec_t prec) {
    Enclosure sum(prec);
    for (const auto& [g, x] : table.at(k))
        sum += Enclosure::log(Enclosure::from_long(static_cast<long>(g), prec)).mul_mpz(x);
    return sum;
}

void save_tables(const GCountTable& table, const std::filesystem::path& path) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("save_tables: cannot write " + tmp.string());
        out << "# gcount v1 K=" << table.K << '\n';
        for (int k = 1; k <= table.K; ++k)
            for (const auto& [g, x] : table.rows[k])
                out << k << ',' << g << ',' << x.get_str() << '\n';
        if (!out.good()) throw std::runtime_error("save_tables: write failed on " + tmp.string());
    }
    std::filesystem::rename(tmp, path);  // atomic publish for checkpoint safety
}

GCountTable load_tables(const std::filesystem::path& path) {
    std::ifstream in(path);
    const std::string name = path.string();
    if (!in) throw ParseError(name + ": cannot open");
    long lineno = 1;
    std::string line;
    if (!std::getline(in, line)) throw ParseError(name, lineno, "missing header");
    int K = 0;
    {
        std::istringstream ss(line);
        std::string hash, word, kv;
        if (!(ss >> hash >> word >> kv) || hash != "#" || word != "gcount")
            throw ParseError(name, lineno, "expected '# gcount v1 K=<K>' header");
        if (kv != "v1") throw ParseError(name, lineno, "unsupported gcount version '" + kv + "'");
        std::string keq;
        if (!(ss >> keq) || keq.rfind("K=", 0) != 0)
            throw ParseError(name, lineno, "missing K= field in header");
        try {
            K = std::stoi(keq.substr(2));
        } catch (...) {
            throw ParseError(name, lineno, "bad K value");
        }
        if (K < 1) throw ParseError(name, lineno, "K must be >= 1");
    }
    GCountTable table;
    table.K = K;
    table.rows.assign(K + 1, {});
    int prev_k = 0;
    std::uint64_t prev_g = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) throw ParseError(name, lineno, "empty line");
        std::size_t c1 = line.find(',');
        std::size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c2 == std::string::npos) throw ParseError(name, lineno, "expected 'k,g,x'");
        int k = 0;
        std::uint64_t g = 0;
        try {
            k = std::stoi(line.substr(0, c1));
            g = std::stoull(line.substr(c1 + 1, c2 - c1 - 1));
        } catch (...) {
            throw ParseError(name, lineno, "bad k or g field");
        }
        const std::string xs = line.substr(c2 + 1);
        if (xs.empty() || xs.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError(name, lineno, "x must be a non-negative decimal integer");
        if (k < 1 || k > K) throw ParseError(name, lineno, "k outside [1, K]");
        if (k < prev_k || (k == prev_k && g <= prev_g))
            throw ParseError(name, lineno, "entries not sorted by (k,g)");
        table.rows[k].emplace(g, mpz_class(xs));
        prev_k = k;
        prev_g = g;
    }
    for (int k = 1; k <= K; ++k) {
        mpz_class expect;
        mpz_ui_pow_ui(expect.get_mpz_t(), k, k - 1);
        if (table.mass(k) != expect)
            throw ParseError(name, lineno,
                             "mass check failed for k=" + std::to_string(k) +
                                 " (file truncated or corrupted)");
    }
    return table;
}

}  // namespace subtrees
