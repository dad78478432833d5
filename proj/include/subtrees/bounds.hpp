#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "subtrees/enclosure.hpp"
#include "subtrees/gcount.hpp"

namespace subtrees {

// Certified densities of the trimming process: f[k] encloses f_K(k) and h
// encloses h(K), the asymptotic internal-vertex fraction.
struct DensityTable {
    int K = 0;
    std::vector<Enclosure> f;  // f[k] for k = 1..K; f[0] unused
    Enclosure h;
};

// f_K(k) = e^{-k}/k! - sum_{l=k+1..K} (l-k)^{l-k-1} C(l,l-k) e^{-l}/l!
Enclosure f_closed(int K, int k, mpfr_prec_t prec = 256);

// Same quantity through the top-down recurrence
//   f(k) = e^{-k}/k! - sum_{l=k+1..K} (l-k)^{l-k} C(l,l-k) f(l);
// kept as an independent cross-check of the closed form.
Enclosure f_recurrence(int K, int k, mpfr_prec_t prec = 256);

// h(K) = 1 - sum_{k=1..K} (k/e)^k / (k * k!)
Enclosure h_fraction(int K, mpfr_prec_t prec = 256);

DensityTable density_table(int K, mpfr_prec_t prec = 256);

// exp( sum_k f_K(k) * sum_g x(k,g) ln g ), certified both ways.
Enclosure lower_bound(const GCountTable& table, const DensityTable& density,
                      mpfr_prec_t prec = 256);

// 2^{h(K)} * lower
Enclosure upper_bound_1(const Enclosure& lower, const Enclosure& hK);

// xi_1 xi_2 xi_3 xi_4 with the tail sums truncated at khat (> K):
//   xi_1 = ((khat+1)/khat)^{h(khat)}
//   xi_2 = prod_{k=K+1..khat} ((k+1)/k)^{e^{-k} k (k-1)^{k-2} / k!}
//   xi_3 = prod_{k=K+1..khat} ((2k-1)/(2k-2))^{e^{-k} (k^{k-1} - k(k-1)^{k-2}) / k!}
//   xi_4 = lower_bound(table, density)
Enclosure upper_bound_2(const GCountTable& table, const DensityTable& density, int khat,
                        mpfr_prec_t prec = 256);

// lower * m(K)^{h(K)}
Enclosure conjectured_upper(const Enclosure& lower, const Enclosure& multiplier_K,
                            const Enclosure& hK);

struct TrivialConstants {
    Enclosure two_pow_inv_e;  // 2^{1/e}, the leaves-only lower bound base
    Enclosure beta_L;         // e^{-1} - e^{1/e-2}
    Enclosure beta;           // > 1.37135
    Enclosure beta_C;         // e^{1/e-1} + e^{1/e-2} - e^{-1}
    Enclosure beta_R;         // 1 - e^{1/e-1}
    Enclosure alpha;          // < 1.89756
};
TrivialConstants trivial_constants(mpfr_prec_t prec = 256);

// Exact big-integer verification of
//   2(b-1) b^{b-2} = sum_{c=1..b-1} C(b,c) c^{c-1} (b-c)^{b-c-1}
//   (b-1) b^{b-1}  = sum_{c=1..b-1} C(b,c) c^c     (b-c)^{b-c-1}
bool identity_check(long b);

struct BoundsRow {
    int K = 0;
    Enclosure lower, upper1, upper2, conj_upper, r_frac, multiplier;
};

// One row per K' = 1..K, all certified at the given precision.
std::vector<BoundsRow> bounds_rows(const GCountTable& table, int K, int khat,
                                   mpfr_prec_t prec = 256);

// CSV: header K,lower,upper1,upper2,conj_upper,r_frac,multiplier; 8 decimals,
// outward-rounded so every printed digit is certified.
std::string format_bounds_csv(const std::vector<BoundsRow>& rows);
std::string format_bounds_markdown(const std::vector<BoundsRow>& rows);

}  // namespace subtrees
