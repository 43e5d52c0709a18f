#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

namespace tcbloch {

// Correctly-rounded multiprecision real with per-value binary precision.
//
// Semantics kept deliberately small:
//   * a binary operation's result carries max(precision of the operands);
//   * doubles and longs mix in as exact values;
//   * mul_2si is exact scaling by a power of two (no rounding, any exponent),
//     which the purity formulas lean on for their 2^{+-huge} factors.
class Real {
  public:
    explicit Real(mpfr_prec_t bits = 64) {
        mpfr_init2(v_, bits);
        mpfr_set_zero(v_, 1);
    }
    Real(double x, mpfr_prec_t bits) {
        mpfr_init2(v_, bits);
        mpfr_set_d(v_, x, MPFR_RNDN);
    }
    Real(long x, mpfr_prec_t bits) {
        mpfr_init2(v_, bits);
        mpfr_set_si(v_, x, MPFR_RNDN);
    }
    Real(const mpz_class& z, mpfr_prec_t bits) {
        mpfr_init2(v_, bits);
        mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
    }

    Real(const Real& o) {
        mpfr_init2(v_, o.prec());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, o.prec()); // discards old value
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real pi(mpfr_prec_t bits) {
        Real r(bits);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    // pi rounded toward +inf; upper range bound for angle validation.
    static Real pi_up(mpfr_prec_t bits) {
        Real r(bits);
        mpfr_const_pi(r.v_, MPFR_RNDU);
        return r;
    }
    static Real ln2(mpfr_prec_t bits) {
        Real r(bits);
        mpfr_const_log2(r.v_, MPFR_RNDN);
        return r;
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    std::string str(int digits = 25) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", digits, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    // Rounded copy at a different precision.
    Real round_to(mpfr_prec_t bits) const {
        Real r(bits);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    friend Real operator+(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator*(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a) {
        Real r(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    friend Real operator+(const Real& a, double b) {
        Real r(a.prec());
        mpfr_add_d(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a, double b) {
        Real r(a.prec());
        mpfr_sub_d(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator*(const Real& a, double b) {
        Real r(a.prec());
        mpfr_mul_d(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, double b) {
        Real r(a.prec());
        mpfr_div_d(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator+(double a, const Real& b) { return b + a; }
    friend Real operator*(double a, const Real& b) { return b * a; }
    friend Real operator-(double a, const Real& b) {
        Real r(b.prec());
        mpfr_d_sub(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(double a, const Real& b) {
        Real r(b.prec());
        mpfr_d_div(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }

    Real& operator+=(const Real& o) { return *this = *this + o; }
    Real& operator-=(const Real& o) { return *this = *this - o; }
    Real& operator*=(const Real& o) { return *this = *this * o; }
    Real& operator/=(const Real& o) { return *this = *this / o; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) < 0; }
    friend bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) > 0; }
    friend bool operator<=(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) <= 0; }
    friend bool operator>=(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) >= 0; }
    friend bool operator==(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) == 0; }

    // out: result precision defaults to the argument's own.
    friend Real sqrt(const Real& a, mpfr_prec_t bits) {
        Real r(bits ? bits : a.prec());
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real sin(const Real& a, mpfr_prec_t bits) {
        Real r(bits ? bits : a.prec());
        mpfr_sin(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real cos(const Real& a, mpfr_prec_t bits) {
        Real r(bits ? bits : a.prec());
        mpfr_cos(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real acos(const Real& a, mpfr_prec_t bits) {
        Real r(bits ? bits : a.prec());
        mpfr_acos(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real asin(const Real& a, mpfr_prec_t bits) {
        Real r(bits ? bits : a.prec());
        mpfr_asin(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real log2(const Real& a, mpfr_prec_t bits) {
        Real r(bits ? bits : a.prec());
        mpfr_log2(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend Real abs(const Real& a) {
        Real r(a.prec());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    // Exact multiplication by 2^e.
    friend Real mul_2si(const Real& a, long e) {
        Real r(a.prec());
        mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN);
        return r;
    }
    friend Real fmod(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_fmod(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend mpz_class round_to_integer(const Real& a) {
        Real t(a.prec());
        mpfr_round(t.v_, a.v_);
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), t.v_, MPFR_RNDN);
        return z;
    }

  private:
    mpfr_t v_;
};

inline Real sqrt(const Real& a) { return sqrt(a, mpfr_prec_t(0)); }
inline Real sin(const Real& a) { return sin(a, mpfr_prec_t(0)); }
inline Real cos(const Real& a) { return cos(a, mpfr_prec_t(0)); }
inline Real acos(const Real& a) { return acos(a, mpfr_prec_t(0)); }
inline Real asin(const Real& a) { return asin(a, mpfr_prec_t(0)); }
inline Real log2(const Real& a) { return log2(a, mpfr_prec_t(0)); }

inline Real sqr(const Real& a) { return a * a; }

} // namespace tcbloch
