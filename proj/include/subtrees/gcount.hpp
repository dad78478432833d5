#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "subtrees/enclosure.hpp"

namespace subtrees {

// x(k,g): number of rooted labelled trees on k vertices whose rooted subtree
// count equals g. All counts exact. g fits in 64 bits for k <= 63 since
// g <= 2^{k-1}+1.
struct GCountTable {
    int K = 0;
    std::vector<std::map<std::uint64_t, mpz_class>> rows;  // rows[k], rows[0] unused

    const std::map<std::uint64_t, mpz_class>& at(int k) const;
    mpz_class mass(int k) const;  // sum_g x(k,g); always k^{k-1}
    std::uint64_t entry_count() const;
};

// Partitions of `total` as non-decreasing sequences, in lexicographic order.
class PartitionIterator {
  public:
    explicit PartitionIterator(int total);
    bool done() const { return done_; }
    void next();
    const std::vector<int>& parts() const { return parts_; }
    // constant-run blocks: (part value, multiplicity), values increasing
    std::vector<std::pair<int, int>> runs() const;

  private:
    bool done_ = false;
    std::vector<int> parts_;
};

struct ComputeOptions {
    std::optional<double> budget_seconds;          // wall-clock budget
    std::optional<std::uint64_t> budget_entries;   // max stored (k,g) entries
    int threads = 0;                               // 0 = hardware concurrency
    std::function<void(const GCountTable&, int)> on_k_complete;  // checkpoint hook
};

// Thrown when a budget trips; carries every fully computed k.
struct BudgetExceededError : std::runtime_error {
    BudgetExceededError(const std::string& msg, GCountTable partial_table)
        : std::runtime_error(msg), partial(std::move(partial_table)) {}
    GCountTable partial;
};

GCountTable compute_tables(int K, const ComputeOptions& opts = {});

// Extend an existing exact table up to K in place (no-op when table.K >= K).
void extend_tables(GCountTable& table, int K, const ComputeOptions& opts = {});

// Oracle: decode all k^{k-2} Prüfer codes for every k <= k_max, root at every
// vertex, histogram the rooted counts. Guarded at k_max <= 8.
GCountTable exhaustive_tables(int k_max);

// m(k) = exp( (sum_g x(k,g)(ln g - ln(g-1))) / k^{k-1} ), certified.
Enclosure multiplier(const GCountTable& table, int k, mpfr_prec_t prec = 256);

// Certified enclosure of sum_g x(k,g) ln g (summed in increasing g).
Enclosure log_g_moment(const GCountTable& table, int k, mpfr_prec_t prec = 256);

// Text format: header "# gcount v1 K=<K>", then "k,g,x" lines sorted by (k,g).
void save_tables(const GCountTable& table, const std::filesystem::path& path);
GCountTable load_tables(const std::filesystem::path& path);

}  // namespace subtrees
