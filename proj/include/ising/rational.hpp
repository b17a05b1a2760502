#pragma once

#include <gmp.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace ising {

// Arbitrary-precision rational, backed by GMP's mpq_t.
// Always stored canonical: gcd(|num|, den) = 1, den >= 1.
class Rational {
public:
    Rational() { mpq_init(q_); }
    Rational(long n) {
        mpq_init(q_);
        mpq_set_si(q_, n, 1);
    }
    Rational(long n, unsigned long d) {
        if (d == 0) throw std::invalid_argument("Rational: zero denominator");
        mpq_init(q_);
        mpq_set_si(q_, n, d);
        mpq_canonicalize(q_);
    }
    explicit Rational(const std::string& s) {
        mpq_init(q_);
        if (mpq_set_str(q_, s.c_str(), 10) != 0) {
            mpq_clear(q_);
            throw std::invalid_argument("Rational: bad literal '" + s + "'");
        }
        if (mpz_sgn(mpq_denref(q_)) == 0) {
            mpq_clear(q_);
            throw std::invalid_argument("Rational: zero denominator");
        }
        mpq_canonicalize(q_);
    }

    Rational(const Rational& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }
    Rational(Rational&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }
    Rational& operator=(const Rational& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        if (this != &o) mpq_swap(q_, o.q_);
        return *this;
    }
    ~Rational() { mpq_clear(q_); }

    Rational& operator+=(const Rational& o) {
        mpq_add(q_, q_, o.q_);
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        mpq_sub(q_, q_, o.q_);
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        mpq_mul(q_, q_, o.q_);
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        mpq_div(q_, q_, o.q_);
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const {
        Rational r(*this);
        mpq_neg(r.q_, r.q_);
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_, b.q_) != 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) >= 0; }

    int sign() const { return mpq_sgn(q_); }
    bool is_zero() const { return mpq_sgn(q_) == 0; }
    bool is_one() const { return mpq_cmp_si(q_, 1, 1) == 0; }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }

    Rational abs() const {
        Rational r(*this);
        mpq_abs(r.q_, r.q_);
        return r;
    }
    Rational inv() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        Rational r;
        mpq_inv(r.q_, q_);
        return r;
    }

    double to_double() const { return mpq_get_d(q_); }

    std::string num_str() const { return mpz_str(mpq_numref(q_)); }
    std::string den_str() const { return mpz_str(mpq_denref(q_)); }
    std::string str() const {
        if (is_integer()) return num_str();
        return num_str() + "/" + den_str();
    }

    const mpq_t& raw() const { return q_; }

private:
    static std::string mpz_str(const mpz_t z) {
        char* s = mpz_get_str(nullptr, 10, z);
        std::string out(s);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(s, out.size() + 1);
        return out;
    }

    mpq_t q_;
};

}  // namespace ising
