#pragma once

#include <mpfr.h>

#include "ising/quadsurd.hpp"
#include "ising/rational.hpp"

#include <stdexcept>
#include <string>

namespace ising {

// Arbitrary-precision binary float (MPFR), round-to-nearest throughout.
// The working precision travels with the value.
class PrecReal {
public:
    explicit PrecReal(int precision_bits = 128) : prec_(check(precision_bits)) {
        mpfr_init2(x_, prec_);
        mpfr_set_zero(x_, 1);
    }
    PrecReal(const Rational& q, int precision_bits) : prec_(check(precision_bits)) {
        mpfr_init2(x_, prec_);
        mpfr_set_q(x_, q.raw(), MPFR_RNDN);
    }
    PrecReal(double d, int precision_bits) : prec_(check(precision_bits)) {
        mpfr_init2(x_, prec_);
        mpfr_set_d(x_, d, MPFR_RNDN);
    }

    PrecReal(const PrecReal& o) : prec_(o.prec_) {
        mpfr_init2(x_, prec_);
        mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    PrecReal(PrecReal&& o) noexcept : prec_(o.prec_) {
        mpfr_init2(x_, prec_);
        mpfr_swap(x_, o.x_);
    }
    PrecReal& operator=(const PrecReal& o) {
        if (this != &o) {
            if (prec_ != o.prec_) {
                mpfr_set_prec(x_, o.prec_);
                prec_ = o.prec_;
            }
            mpfr_set(x_, o.x_, MPFR_RNDN);
        }
        return *this;
    }
    PrecReal& operator=(PrecReal&& o) noexcept {
        if (this != &o) {
            mpfr_swap(x_, o.x_);
            std::swap(prec_, o.prec_);
        }
        return *this;
    }
    ~PrecReal() { mpfr_clear(x_); }

    int precision_bits() const { return prec_; }

    PrecReal& operator+=(const PrecReal& o) {
        mpfr_add(x_, x_, o.x_, MPFR_RNDN);
        return *this;
    }
    PrecReal& operator-=(const PrecReal& o) {
        mpfr_sub(x_, x_, o.x_, MPFR_RNDN);
        return *this;
    }
    PrecReal& operator*=(const PrecReal& o) {
        mpfr_mul(x_, x_, o.x_, MPFR_RNDN);
        return *this;
    }
    PrecReal& operator/=(const PrecReal& o) {
        mpfr_div(x_, x_, o.x_, MPFR_RNDN);
        return *this;
    }
    friend PrecReal operator+(PrecReal a, const PrecReal& b) { return a += b; }
    friend PrecReal operator-(PrecReal a, const PrecReal& b) { return a -= b; }
    friend PrecReal operator*(PrecReal a, const PrecReal& b) { return a *= b; }
    friend PrecReal operator/(PrecReal a, const PrecReal& b) { return a /= b; }
    PrecReal operator-() const {
        PrecReal r(*this);
        mpfr_neg(r.x_, r.x_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const PrecReal& a, const PrecReal& b) { return mpfr_cmp(a.x_, b.x_) < 0; }
    friend bool operator>(const PrecReal& a, const PrecReal& b) { return mpfr_cmp(a.x_, b.x_) > 0; }
    friend bool operator==(const PrecReal& a, const PrecReal& b) { return mpfr_cmp(a.x_, b.x_) == 0; }

    int sign() const { return mpfr_sgn(x_); }

    PrecReal abs() const {
        PrecReal r(*this);
        mpfr_abs(r.x_, r.x_, MPFR_RNDN);
        return r;
    }
    PrecReal sqrt() const {
        if (sign() < 0) throw std::domain_error("PrecReal: sqrt of negative");
        PrecReal r(prec_);
        mpfr_sqrt(r.x_, x_, MPFR_RNDN);
        return r;
    }
    PrecReal log() const {
        PrecReal r(prec_);
        mpfr_log(r.x_, x_, MPFR_RNDN);
        return r;
    }
    PrecReal pow(const PrecReal& e) const {
        PrecReal r(prec_);
        mpfr_pow(r.x_, x_, e.x_, MPFR_RNDN);
        return r;
    }

    static PrecReal pow2(long e, int precision_bits) {
        PrecReal r(precision_bits);
        mpfr_set_ui_2exp(r.x_, 1, e, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }

    std::string str(int digits = 0) const {
        if (digits <= 0) digits = static_cast<int>(prec_ * 0.30103) + 2;
        char fmt[32];
        std::snprintf(fmt, sizeof fmt, "%%.%dRg", digits);
        char buf[512];
        mpfr_snprintf(buf, sizeof buf, fmt, x_);
        return buf;
    }

    mpfr_ptr raw() { return x_; }
    mpfr_srcptr raw() const { return x_; }

private:
    static int check(int bits) {
        if (bits < 16) throw std::invalid_argument("PrecReal: precision_bits must be >= 16");
        return bits;
    }

    mpfr_t x_;
    int prec_;
};

// a + b*sqrt(7) evaluated to the requested precision; relative error < 2^(1-bits).
inline PrecReal surd_eval(const QuadSurd& x, int precision_bits) {
    PrecReal s7(7.0, precision_bits + 8);
    s7 = s7.sqrt();
    PrecReal r = PrecReal(x.a(), precision_bits + 8) + PrecReal(x.b(), precision_bits + 8) * s7;
    PrecReal out(precision_bits);
    mpfr_set(out.raw(), r.raw(), MPFR_RNDN);
    return out;
}

// Exact sign, no floating point involved.
inline int surd_sign(const QuadSurd& x) { return x.sign(); }

}  // namespace ising
