#include "subtrees/bounds.hpp"

#include <sstream>
#include <stdexcept>

namespace subtrees {

namespace {

mpz_class factorial(unsigned long k) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), k);
    return f;
}

mpz_class binom(unsigned long n, unsigned long k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

mpz_class ipow(unsigned long base, unsigned long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), base, e);
    return p;
}

Enclosure exp_neg(long k, mpfr_prec_t prec) {
    return Enclosure::exp(Enclosure::from_long(-k, prec));
}

Enclosure log_long(long v, mpfr_prec_t prec) {
    return Enclosure::log(Enclosure::from_long(v, prec));
}

void check_range(int K, int k) {
    if (K < 1 || k < 1 || k > K)
        throw std::invalid_argument("density: need 1 <= k <= K, got k=" + std::to_string(k) +
                                    " K=" + std::to_string(K));
}

}  // namespace

Enclosure f_closed(int K, int k, mpfr_prec_t prec) {
    check_range(K, k);
    Enclosure f = Enclosure::from_mpq(mpq_class(1, factorial(k)), prec) * exp_neg(k, prec);
    for (int l = k + 1; l <= K; ++l) {
        const mpq_class coef(ipow(l - k, l - k - 1) * binom(l, l - k), factorial(l));
        f -= Enclosure::from_mpq(coef, prec) * exp_neg(l, prec);
    }
    return f;
}

Enclosure f_recurrence(int K, int k, mpfr_prec_t prec) {
    check_range(K, k);
    std::vector<Enclosure> fr(K + 1, Enclosure(prec));
    for (int j = K; j >= k; --j) {
        Enclosure v = Enclosure::from_mpq(mpq_class(1, factorial(j)), prec) * exp_neg(j, prec);
        for (int l = j + 1; l <= K; ++l)
            v -= fr[l].mul_mpz(ipow(l - j, l - j) * binom(l, l - j));
        fr[j] = v;
    }
    return fr[k];
}

Enclosure h_fraction(int K, mpfr_prec_t prec) {
    if (K < 1) throw std::invalid_argument("h_fraction: K must be >= 1");
    Enclosure sum(prec);
    Enclosure lnfact(prec);  // running ln k!
    for (int k = 1; k <= K; ++k) {
        lnfact += log_long(k, prec);
        if (k <= 64) {
            // (k/e)^k/(k*k!) = k^{k-1} e^{-k} / k!, with the rational part exact
            sum += Enclosure::from_mpq(mpq_class(ipow(k, k - 1), factorial(k)), prec) *
                   exp_neg(k, prec);
        } else {
            // log-domain term: exp((k-1) ln k - k - ln k!)
            Enclosure ln_term = log_long(k, prec).mul_mpz(k - 1) -
                                Enclosure::from_long(k, prec) - lnfact;
            sum += Enclosure::exp(ln_term);
        }
    }
    return Enclosure::from_long(1, prec) - sum;
}

DensityTable density_table(int K, mpfr_prec_t prec) {
    DensityTable d;
    d.K = K;
    d.f.assign(K + 1, Enclosure(prec));
    for (int k = 1; k <= K; ++k) d.f[k] = f_closed(K, k, prec);
    d.h = h_fraction(K, prec);
    return d;
}

Enclosure lower_bound(const GCountTable& table, const DensityTable& density, mpfr_prec_t prec) {
    if (table.K != density.K)
        throw std::invalid_argument("lower_bound: table and density disagree on K");
    Enclosure s(prec);
    for (int k = 1; k <= density.K; ++k) s += density.f[k] * log_g_moment(table, k, prec);
    return Enclosure::exp(s);
}

Enclosure upper_bound_1(const Enclosure& lower, const Enclosure& hK) {
    return lower * Enclosure::exp(hK * log_long(2, lower.precision()));
}

Enclosure upper_bound_2(const GCountTable& table, const DensityTable& density, int khat,
                        mpfr_prec_t prec) {
    const int K = density.K;
    if (khat <= K) throw std::invalid_argument("upper_bound_2: need khat > K");

    // xi_1 = ((khat+1)/khat)^{h(khat)}
    Enclosure ln_xi1 =
        h_fraction(khat, prec) * (log_long(khat + 1, prec) - log_long(khat, prec));

    // per-k weights of xi_2 and xi_3; exact rationals while k! stays cheap,
    // log-domain beyond so nothing ever overflows
    Enclosure s2(prec), s3(prec);
    Enclosure lnfact(prec);
    for (int k = 1; k <= khat; ++k) {
        lnfact += log_long(k, prec);
        if (k <= K) continue;  // weights start at k = K+1
        Enclosure w2(prec), w3(prec);
        if (k <= 64) {
            w2 = Enclosure::from_mpq(mpq_class(mpz_class(k) * ipow(k - 1, k - 2), factorial(k)),
                                     prec) *
                 exp_neg(k, prec);
            const mpz_class num3 = ipow(k, k - 1) - mpz_class(k) * ipow(k - 1, k - 2);
            w3 = Enclosure::from_mpq(mpq_class(num3, factorial(k)), prec) * exp_neg(k, prec);
        } else {
            const Enclosure lnk = log_long(k, prec), lnk1 = log_long(k - 1, prec);
            w2 = Enclosure::exp(lnk + lnk1.mul_mpz(k - 2) - Enclosure::from_long(k, prec) -
                                lnfact);
            // k^{k-1} - k(k-1)^{k-2} = k^{k-1} (1 - ((k-1)/k)^{k-2})
            Enclosure ratio = Enclosure::exp((lnk1 - lnk).mul_mpz(k - 2));
            Enclosure ln_num3 = lnk.mul_mpz(k - 1) +
                                Enclosure::log(Enclosure::from_long(1, prec) - ratio);
            w3 = Enclosure::exp(ln_num3 - Enclosure::from_long(k, prec) - lnfact);
        }
        s2 += w2 * (log_long(k + 1, prec) - log_long(k, prec));
        if (k >= 3)  // the k=2 weight of xi_3 is exactly zero
            s3 += w3 * (log_long(2 * k - 1, prec) - log_long(2 * k - 2, prec));
    }

    const Enclosure xi4 = lower_bound(table, density, prec);
    return Enclosure::exp(ln_xi1 + s2 + s3) * xi4;
}

Enclosure conjectured_upper(const Enclosure& lower, const Enclosure& multiplier_K,
                            const Enclosure& hK) {
    return lower * Enclosure::exp(hK * Enclosure::log(multiplier_K));
}

TrivialConstants trivial_constants(mpfr_prec_t prec) {
    TrivialConstants out;
    const Enclosure one = Enclosure::from_long(1, prec);
    const Enclosure einv = exp_neg(1, prec);  // e^{-1}
    const Enclosure ln2 = log_long(2, prec);

    out.two_pow_inv_e = Enclosure::exp(einv * ln2);
    out.beta_L = einv - Enclosure::exp(einv - Enclosure::from_long(2, prec));
    out.beta_C = Enclosure::exp(einv - one) + Enclosure::exp(einv - Enclosure::from_long(2, prec)) -
                 einv;
    out.beta_R = one - Enclosure::exp(einv - one);

    // ln prod_{k>=2} (2^{k-1}+1)^{e^{-k}/(k-1)!}; terms drop superexponentially,
    // and for k >= 4 the ratio t_{k+1}/t_k is below 1/2, so the tail after the
    // cutoff is at most twice the first omitted term.
    Enclosure ln_prod(prec);
    for (int k = 2;; ++k) {
        Enclosure t = Enclosure::from_mpq(mpq_class(1, factorial(k - 1)), prec) *
                      exp_neg(k, prec) *
                      Enclosure::log(Enclosure::from_mpz(ipow(2, k - 1) + 1, prec));
        if (k >= 4 && 2 * t.hi_d() < 0x1p-80) {
            // the remainder lies in [t_k, 2 t_k] subset of t * [1, 2]
            ln_prod += t * Enclosure::from_endpoints(1, 2, prec);
            break;
        }
        ln_prod += t;
    }
    out.beta = Enclosure::exp(out.beta_L * ln2 + ln_prod);
    out.alpha = Enclosure::exp((out.beta_L + out.beta_R) * ln2 + ln_prod);
    return out;
}

bool identity_check(long b) {
    if (b < 2) throw std::invalid_argument("identity_check: b must be >= 2");
    mpz_class rhs_piece = 0, rhs_star = 0;
    for (long c = 1; c <= b - 1; ++c) {
        const mpz_class common = binom(b, c) * ipow(b - c, b - c - 1);
        rhs_piece += common * ipow(c, c - 1);
        rhs_star += common * ipow(c, c);
    }
    const mpz_class lhs_piece = 2 * mpz_class(b - 1) * ipow(b, b - 2);
    const mpz_class lhs_star = mpz_class(b - 1) * ipow(b, b - 1);
    return lhs_piece == rhs_piece && lhs_star == rhs_star;
}

std::vector<BoundsRow> bounds_rows(const GCountTable& table, int K, int khat, mpfr_prec_t prec) {
    if (K < 1 || K > table.K)
        throw std::invalid_argument("bounds_rows: need 1 <= K <= table.K");
    std::vector<BoundsRow> rows;
    rows.reserve(K);
    GCountTable partial;  // rows 1..K' view, so each call sees a matching K
    partial.K = 0;
    partial.rows.assign(1, {});
    for (int k = 1; k <= K; ++k) {
        partial.rows.push_back(table.rows[k]);
        partial.K = k;
        BoundsRow row;
        row.K = k;
        const DensityTable density = density_table(k, prec);
        row.r_frac = density.h;
        row.multiplier = multiplier(partial, k, prec);
        row.lower = lower_bound(partial, density, prec);
        row.upper1 = upper_bound_1(row.lower, density.h);
        row.upper2 = upper_bound_2(partial, density, khat, prec);
        row.conj_upper = conjectured_upper(row.lower, row.multiplier, density.h);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_bounds_csv(const std::vector<BoundsRow>& rows) {
    std::ostringstream out;
    out << "K,lower,upper1,upper2,conj_upper,r_frac,multiplier\n";
    for (const BoundsRow& r : rows)
        out << r.K << ',' << r.lower.str_fixed(8, 'd') << ',' << r.upper1.str_fixed(8, 'u') << ','
            << r.upper2.str_fixed(8, 'u') << ',' << r.conj_upper.str_fixed(8, 'u') << ','
            << r.r_frac.str_fixed(8, 'n') << ',' << r.multiplier.str_fixed(8, 'n') << '\n';
    return out.str();
}

std::string format_bounds_markdown(const std::vector<BoundsRow>& rows) {
    std::ostringstream out;
    out << "| K | lower | upper 1 | upper 2 | conj. upper | \\|R\\|/n | multiplier |\n";
    out << "|--:|------:|--------:|--------:|------------:|---------:|-----------:|\n";
    for (const BoundsRow& r : rows)
        out << "| " << r.K << " | " << r.lower.str_fixed(8, 'd') << " | "
            << r.upper1.str_fixed(8, 'u') << " | " << r.upper2.str_fixed(8, 'u') << " | "
            << r.conj_upper.str_fixed(8, 'u') << " | " << r.r_frac.str_fixed(8, 'n') << " | "
            << r.multiplier.str_fixed(8, 'n') << " |\n";
    return out.str();
}

}  // namespace subtrees
