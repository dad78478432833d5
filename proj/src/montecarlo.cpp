#include "subtrees/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "subtrees/bounds.hpp"
#include "subtrees/rng.hpp"
#include "subtrees/subtree_count.hpp"

namespace subtrees {

namespace {

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

// Runs fn(i) for i = 0..count-1, striding replicates across workers; every
// slot is owned by exactly one worker, so no synchronisation is needed.
template <class Fn>
void parallel_for(int count, int threads, Fn fn) {
    threads = std::min(resolve_threads(threads), std::max(count, 1));
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([=] {
            for (int i = t; i < count; i += threads) fn(i);
        });
    for (std::thread& th : pool) th.join();
}

// nearest-rank percentile: entry of rank ceil(percent/100 * size), computed
// in integers so binary rounding of percent/100 can never shift the rank
double percentile_nearest_rank(const std::vector<double>& sorted, int percent) {
    const std::size_t rank =
        std::max<std::size_t>(1, (percent * sorted.size() + 99) / 100);
    return sorted[std::min(rank, sorted.size()) - 1];
}

}  // namespace

double mean_root_from_logs(const std::vector<double>& log_counts, int n) {
    if (log_counts.empty() || n < 1)
        throw std::invalid_argument("mean_root_from_logs: empty sample or n < 1");
    const double pivot = *std::max_element(log_counts.begin(), log_counts.end());
    double sum = 0.0;
    for (double l : log_counts) sum += std::exp(l - pivot);
    const double lse = pivot + std::log(sum);
    return std::exp((lse - std::log(double(log_counts.size()))) / n);
}

SimulationSummary run_simulation(int n, int reps, std::uint64_t master_seed, int bootstrap_reps,
                                 int threads) {
    if (n < 2) throw std::invalid_argument("run_simulation: n must be >= 2");
    if (reps < 2) throw std::invalid_argument("run_simulation: reps must be >= 2");
    if (bootstrap_reps < 1)
        throw std::invalid_argument("run_simulation: bootstrap_reps must be >= 1");

    std::vector<double> logs(reps);
    parallel_for(reps, threads, [&](int i) {
        LabelledTree tree = random_tree(n, child_seed(master_seed, i));
        logs[i] = log_total_count(tree).to_double();
    });

    SimulationSummary out;
    out.n = n;
    out.reps = reps;
    out.master_seed = master_seed;
    out.bootstrap_reps = bootstrap_reps;
    out.mean_root = mean_root_from_logs(logs, n);

    // All resample weights share one pivot: every term is exp(l - pivot) in
    // (0, 1], so the resample logsumexp needs no per-resample rescaling.
    const double pivot = *std::max_element(logs.begin(), logs.end());
    std::vector<double> weights(reps);
    for (int i = 0; i < reps; ++i) weights[i] = std::exp(logs[i] - pivot);

    const std::uint64_t bootstrap_master = master_seed ^ kBootstrapTag;
    std::vector<double> boot(bootstrap_reps);
    parallel_for(bootstrap_reps, threads, [&](int j) {
        Rng rng(child_seed(bootstrap_master, j));
        double sum = 0.0;
        for (int i = 0; i < reps; ++i) sum += weights[rng.below(std::uint64_t(reps))];
        const double lse = pivot + std::log(sum);
        boot[j] = std::exp((lse - std::log(double(reps))) / n);
    });
    std::sort(boot.begin(), boot.end());
    out.p5 = percentile_nearest_rank(boot, 5);
    out.p50 = percentile_nearest_rank(boot, 50);
    out.p95 = percentile_nearest_rank(boot, 95);
    return out;
}

std::string format_simulation_csv(const SimulationSummary& s) {
    char row[256];
    std::snprintf(row, sizeof row, "%d,%.6f,%.6f,%.6f,%.6f,%d,%llu\n", s.n, s.mean_root, s.p5,
                  s.p50, s.p95, s.reps, static_cast<unsigned long long>(s.master_seed));
    return std::string("n,mean,p5,p50,p95,reps,seed\n") + row;
}

TrimCensus trim_partition(const LabelledTree& tree, int K) {
    const int n = tree.n;
    if (K < 1) throw std::invalid_argument("trim_partition: K must be >= 1");
    if (n <= 2 * K)
        throw std::invalid_argument("trim_partition: need n > 2K, got n=" + std::to_string(n) +
                                    " K=" + std::to_string(K));

    TrimCensus census;
    census.K = K;
    census.n = n;
    census.class_counts.assign(K + 1, 0);

    // Round k claims the pendant k-components of the tree whose vertices no
    // larger round has already taken; equivalently, every vertex belongs to
    // the *maximal* pendant component of size <= K containing it (distinct
    // maximal components never overlap, so the claim order cannot matter).
    // Because n > 2K, some vertex sits in no such component (the centroid
    // never does); rooted there, every pendant component of size <= K is a
    // plain downward subtree and the maximal one above each vertex is found
    // with one sweep.
    std::vector<int> parent(n + 1, 0), size(n + 1, 1), order;
    order.reserve(n);
    auto root_at = [&](int root) {
        order.assign(1, root);
        parent[root] = 0;
        for (std::size_t head = 0; head < order.size(); ++head) {
            const int v = order[head];
            for (int w : tree.adj[v])
                if (w != parent[v]) {
                    parent[w] = v;
                    order.push_back(w);
                }
        }
        for (int v : order) size[v] = 1;
        for (auto it = order.rbegin(); it != order.rend(); ++it)
            if (parent[*it]) size[parent[*it]] += size[*it];
    };

    root_at(1);
    int core = 0;
    for (int v = 1; v <= n && !core; ++v) {
        // v is untrimmable iff cutting any incident edge leaves v in a
        // component larger than K
        bool ok = (v == 1) || size[v] > K;
        for (int u : tree.adj[v])
            if (ok && u != parent[v]) ok = n - size[u] > K;
        if (ok) core = v;
    }
    if (!core) throw std::logic_error("trim_partition: no core vertex despite n > 2K");

    if (core != 1) root_at(core);
    std::vector<int> top(n + 1, 0);  // highest ancestor whose subtree is <= K
    for (int v : order) {
        if (v == core) continue;
        const int p = parent[v];
        top[v] = top[p] ? top[p] : (size[v] <= K ? v : 0);
        if (top[v])
            ++census.class_counts[size[top[v]]];
        else
            ++census.remainder;
    }
    ++census.remainder;  // the core itself always survives
    return census;
}

DensityComparison empirical_densities(int n, int K, int reps, std::uint64_t seed) {
    if (reps < 1) throw std::invalid_argument("empirical_densities: reps must be >= 1");
    DensityComparison out;
    out.n = n;
    out.K = K;
    out.reps = reps;
    out.observed.assign(K + 1, 0.0);
    out.predicted.assign(K + 1, 0.0);
    for (int i = 0; i < reps; ++i) {
        LabelledTree tree = random_tree(n, child_seed(seed, i));
        TrimCensus census = trim_partition(tree, K);
        for (int k = 1; k <= K; ++k)
            out.observed[k] += double(census.class_counts[k]) / n / reps;
        out.observed_remainder += double(census.remainder) / n / reps;
    }
    for (int k = 1; k <= K; ++k) {
        mpz_class kk;
        mpz_ui_pow_ui(kk.get_mpz_t(), k, k);
        out.predicted[k] = f_closed(K, k).mul_mpz(kk).mid_d();
    }
    out.predicted_remainder = h_fraction(K).mid_d();
    return out;
}

}  // namespace subtrees
