#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subtrees/tree.hpp"

namespace subtrees {

// One simulation row: n-th root of the sample mean of c over `reps`
// independent uniform trees, with bootstrap percentiles of that estimator.
struct SimulationSummary {
    int n = 0;
    int reps = 0;
    std::uint64_t master_seed = 0;
    int bootstrap_reps = 0;
    double mean_root = 0.0;
    double p5 = 0.0, p50 = 0.0, p95 = 0.0;
};

// exp((logsumexp(logs) - log reps) / n); the reduction order is fixed by
// index so results do not depend on scheduling.
double mean_root_from_logs(const std::vector<double>& log_counts, int n);

// Replicate i draws its tree from child_seed(master_seed, i) and evaluates
// log c in the log domain; the bootstrap uses a stream separated from tree
// generation by kBootstrapTag. Percentiles are nearest-rank. threads = 0
// means hardware concurrency.
SimulationSummary run_simulation(int n, int reps, std::uint64_t master_seed,
                                 int bootstrap_reps = 100000, int threads = 0);

// CSV header n,mean,p5,p50,p95,reps,seed; values to 6 decimals.
std::string format_simulation_csv(const SimulationSummary& summary);

// Partition of the vertices produced by the trimming rounds: class k holds
// the pendant k-vertex chunks removed in round k, R is what survives.
struct TrimCensus {
    int K = 0;
    int n = 0;
    std::vector<std::int64_t> class_counts;  // index k = 1..K; [0] unused
    std::int64_t remainder = 0;              // |R|
};

// Rounds k = K down to 1: round k claims every pendant component of exactly
// k vertices none of whose vertices was taken by a larger round, i.e. each
// vertex joins the maximal pendant component of size <= K containing it.
// Requires n > 2K, which guarantees the remainder is non-empty.
TrimCensus trim_partition(const LabelledTree& tree, int K);

// Observed class fractions averaged over `reps` random trees next to the
// asymptotic predictions k * k^{k-1} * f_K(k) and h(K).
struct DensityComparison {
    int n = 0;
    int K = 0;
    int reps = 0;
    std::vector<double> observed;   // index k = 1..K; [0] unused
    std::vector<double> predicted;  // same layout
    double observed_remainder = 0.0;
    double predicted_remainder = 0.0;
};

DensityComparison empirical_densities(int n, int K, int reps, std::uint64_t seed);

}  // namespace subtrees
