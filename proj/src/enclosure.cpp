#include "subtrees/enclosure.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace subtrees {

Enclosure Enclosure::from_long(long v, mpfr_prec_t prec) {
    Enclosure r(prec);
    mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
    mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
    return r;
}

Enclosure Enclosure::from_mpz(const mpz_class& v, mpfr_prec_t prec) {
    Enclosure r(prec);
    mpfr_set_z(r.lo_.get(), v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_.get(), v.get_mpz_t(), MPFR_RNDU);
    return r;
}

Enclosure Enclosure::from_mpq(const mpq_class& v, mpfr_prec_t prec) {
    Enclosure r(prec);
    mpfr_set_q(r.lo_.get(), v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), v.get_mpq_t(), MPFR_RNDU);
    return r;
}

Enclosure Enclosure::from_endpoints(long lo, long hi, mpfr_prec_t prec) {
    if (lo > hi) throw std::invalid_argument("from_endpoints: lo > hi");
    Enclosure r(prec);
    mpfr_set_si(r.lo_.get(), lo, MPFR_RNDD);
    mpfr_set_si(r.hi_.get(), hi, MPFR_RNDU);
    return r;
}

double Enclosure::mid_d() const {
    BigFloat m(precision());
    mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m.to_double();
}

double Enclosure::width_d() const {
    BigFloat w(precision());
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    return mpfr_get_d(w.get(), MPFR_RNDU);
}

bool Enclosure::contains(const Enclosure& inner) const {
    return mpfr_cmp(lo_.get(), inner.lo_.get()) <= 0 &&
           mpfr_cmp(inner.hi_.get(), hi_.get()) <= 0;
}

bool Enclosure::overlaps(const Enclosure& other) const {
    return !(mpfr_cmp(hi_.get(), other.lo_.get()) < 0 ||
             mpfr_cmp(other.hi_.get(), lo_.get()) < 0);
}

namespace {
mpfr_prec_t joint_prec(const Enclosure& a, const Enclosure& b) {
    return std::max(a.precision(), b.precision());
}
}  // namespace

Enclosure Enclosure::operator+(const Enclosure& o) const {
    Enclosure r(joint_prec(*this, o));
    mpfr_add(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
    return r;
}

Enclosure Enclosure::operator-(const Enclosure& o) const {
    Enclosure r(joint_prec(*this, o));
    mpfr_sub(r.lo_.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
    return r;
}

Enclosure Enclosure::operator*(const Enclosure& o) const {
    // general interval product: extrema over the four endpoint pairs
    Enclosure r(joint_prec(*this, o));
    BigFloat t(r.precision());
    const mpfr_srcptr a[2] = {lo_.get(), hi_.get()};
    const mpfr_srcptr b[2] = {o.lo_.get(), o.hi_.get()};
    bool first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_mul(t.get(), a[i], b[j], MPFR_RNDD);
            if (first || mpfr_cmp(t.get(), r.lo_.get()) < 0) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
            mpfr_mul(t.get(), a[i], b[j], MPFR_RNDU);
            if (first || mpfr_cmp(t.get(), r.hi_.get()) > 0) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    return r;
}

Enclosure Enclosure::operator/(const Enclosure& o) const {
    if (mpfr_sgn(o.lo_.get()) <= 0 && mpfr_sgn(o.hi_.get()) >= 0)
        throw std::domain_error("enclosure division: divisor straddles zero");
    Enclosure r(joint_prec(*this, o));
    BigFloat t(r.precision());
    const mpfr_srcptr a[2] = {lo_.get(), hi_.get()};
    const mpfr_srcptr b[2] = {o.lo_.get(), o.hi_.get()};
    bool first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_div(t.get(), a[i], b[j], MPFR_RNDD);
            if (first || mpfr_cmp(t.get(), r.lo_.get()) < 0) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
            mpfr_div(t.get(), a[i], b[j], MPFR_RNDU);
            if (first || mpfr_cmp(t.get(), r.hi_.get()) > 0) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    return r;
}

Enclosure Enclosure::neg() const {
    Enclosure r(precision());
    mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
    return r;
}

Enclosure Enclosure::mul_mpz(const mpz_class& z) const {
    Enclosure r(precision());
    if (mpz_sgn(z.get_mpz_t()) >= 0) {
        mpfr_mul_z(r.lo_.get(), lo_.get(), z.get_mpz_t(), MPFR_RNDD);
        mpfr_mul_z(r.hi_.get(), hi_.get(), z.get_mpz_t(), MPFR_RNDU);
    } else {
        mpfr_mul_z(r.lo_.get(), hi_.get(), z.get_mpz_t(), MPFR_RNDD);
        mpfr_mul_z(r.hi_.get(), lo_.get(), z.get_mpz_t(), MPFR_RNDU);
    }
    return r;
}

Enclosure Enclosure::log(const Enclosure& x) {
    if (mpfr_sgn(x.lo_.get()) <= 0) throw std::domain_error("enclosure log: needs lo > 0");
    Enclosure r(x.precision());
    mpfr_log(r.lo_.get(), x.lo_.get(), MPFR_RNDD);
    mpfr_log(r.hi_.get(), x.hi_.get(), MPFR_RNDU);
    return r;
}

Enclosure Enclosure::exp(const Enclosure& x) {
    Enclosure r(x.precision());
    mpfr_exp(r.lo_.get(), x.lo_.get(), MPFR_RNDD);
    mpfr_exp(r.hi_.get(), x.hi_.get(), MPFR_RNDU);
    return r;
}

Enclosure Enclosure::pow(const Enclosure& base, const Enclosure& e) {
    return exp(e * log(base));
}

std::string Enclosure::str_fixed(int decimals, char direction) const {
    BigFloat v(precision());
    mpfr_rnd_t rnd = MPFR_RNDN;
    switch (direction) {
        case 'd':
            mpfr_set(v.get(), lo_.get(), MPFR_RNDD);
            rnd = MPFR_RNDD;
            break;
        case 'u':
            mpfr_set(v.get(), hi_.get(), MPFR_RNDU);
            rnd = MPFR_RNDU;
            break;
        case 'n': {
            mpfr_add(v.get(), lo_.get(), hi_.get(), MPFR_RNDN);
            mpfr_div_2ui(v.get(), v.get(), 1, MPFR_RNDN);
            break;
        }
        default:
            throw std::invalid_argument("str_fixed: direction must be one of d/u/n");
    }
    std::vector<char> buf(decimals + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*R*f", decimals, rnd, v.get());
    return std::string(buf.data());
}

}  // namespace subtrees
