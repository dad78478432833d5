#pragma once

#include <gmpxx.h>

#include "subtrees/enclosure.hpp"
#include "subtrees/tree.hpp"

namespace subtrees {

// g(T,v): number of subtrees of T containing v, plus one for the empty tree.
// Always >= 2; for |T| = k, k+1 <= g <= 2^{k-1}+1.
mpz_class rooted_count(const LabelledTree& tree, int v);

// c(T): number of non-empty vertex subsets inducing a connected subgraph
// (singletons included). Exact; use log_total_count for huge n.
mpz_class total_count(const LabelledTree& tree);

// ln c(T), evaluated entirely in the log domain (softplus per child, then a
// log-sum-exp over vertices). Relative error on log c is bounded by roughly
// 4n*2^{-prec}, far below 2^{-40} at the default precision even for n = 2^20.
BigFloat log_total_count(const LabelledTree& tree, mpfr_prec_t prec = 96);

// Subset-enumeration oracle; enforced n <= 20.
mpz_class brute_force_count(const LabelledTree& tree);

}  // namespace subtrees
