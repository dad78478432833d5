#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace subtrees {

// Value-semantic wrapper over mpfr_t with explicit precision.
class BigFloat {
  public:
    explicit BigFloat(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

  private:
    mpfr_t v_;
};

// Certified interval [lo, hi]: every lo-side operation rounds toward -inf and
// every hi-side operation toward +inf, so the true value always stays inside.
class Enclosure {
  public:
    explicit Enclosure(mpfr_prec_t prec = 256) : lo_(prec), hi_(prec) {}

    static Enclosure from_long(long v, mpfr_prec_t prec = 256);
    static Enclosure from_mpz(const mpz_class& v, mpfr_prec_t prec = 256);
    static Enclosure from_mpq(const mpq_class& v, mpfr_prec_t prec = 256);
    static Enclosure from_endpoints(long lo, long hi, mpfr_prec_t prec = 256);

    const BigFloat& lo() const { return lo_; }
    const BigFloat& hi() const { return hi_; }
    double lo_d() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
    double hi_d() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }
    double mid_d() const;
    double width_d() const;
    mpfr_prec_t precision() const { return lo_.precision(); }

    bool proper() const { return mpfr_cmp(lo_.get(), hi_.get()) <= 0; }
    bool contains(const Enclosure& inner) const;
    bool overlaps(const Enclosure& other) const;
    bool is_positive() const { return mpfr_sgn(lo_.get()) > 0; }

    Enclosure operator+(const Enclosure& o) const;
    Enclosure operator-(const Enclosure& o) const;
    Enclosure operator*(const Enclosure& o) const;
    Enclosure operator/(const Enclosure& o) const;  // o must not contain 0
    Enclosure& operator+=(const Enclosure& o) { return *this = *this + o; }
    Enclosure& operator-=(const Enclosure& o) { return *this = *this - o; }
    Enclosure& operator*=(const Enclosure& o) { return *this = *this * o; }
    Enclosure neg() const;
    Enclosure mul_mpz(const mpz_class& z) const;  // exact integer scaling

    static Enclosure log(const Enclosure& x);  // requires x.lo > 0
    static Enclosure exp(const Enclosure& x);
    // base^e for base with lo > 0, via exp(e * log(base))
    static Enclosure pow(const Enclosure& base, const Enclosure& e);

    // Fixed-point decimal rendering with a certified direction:
    // 'd' floor(lo), 'u' ceil(hi), 'n' nearest(midpoint).
    std::string str_fixed(int decimals, char direction) const;

  private:
    BigFloat lo_, hi_;
};

}  // namespace subtrees
