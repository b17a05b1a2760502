#pragma once

#include "ising/rational.hpp"

#include <stdexcept>
#include <string>

namespace ising {

// Element a + b*sqrt(7) of the real quadratic field Q(sqrt 7).
// The (a, b) pair is canonical: two QuadSurds are equal iff their parts are.
class QuadSurd {
public:
    QuadSurd() = default;
    QuadSurd(long n) : a_(n) {}
    QuadSurd(Rational a) : a_(std::move(a)) {}
    QuadSurd(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

    static QuadSurd sqrt7() { return QuadSurd(Rational(0), Rational(1)); }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_rational() const { return b_.is_zero(); }

    QuadSurd& operator+=(const QuadSurd& o) {
        a_ += o.a_;
        b_ += o.b_;
        return *this;
    }
    QuadSurd& operator-=(const QuadSurd& o) {
        a_ -= o.a_;
        b_ -= o.b_;
        return *this;
    }
    QuadSurd& operator*=(const QuadSurd& o) {
        // (a + b s)(c + d s) = ac + 7bd + (ad + bc) s
        Rational na = a_ * o.a_ + Rational(7) * b_ * o.b_;
        Rational nb = a_ * o.b_ + b_ * o.a_;
        a_ = std::move(na);
        b_ = std::move(nb);
        return *this;
    }
    QuadSurd& operator/=(const QuadSurd& o) { return *this *= o.inv(); }

    friend QuadSurd operator+(QuadSurd x, const QuadSurd& y) { return x += y; }
    friend QuadSurd operator-(QuadSurd x, const QuadSurd& y) { return x -= y; }
    friend QuadSurd operator*(QuadSurd x, const QuadSurd& y) { return x *= y; }
    friend QuadSurd operator/(QuadSurd x, const QuadSurd& y) { return x /= y; }
    QuadSurd operator-() const { return QuadSurd(-a_, -b_); }

    friend bool operator==(const QuadSurd& x, const QuadSurd& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend bool operator!=(const QuadSurd& x, const QuadSurd& y) { return !(x == y); }

    // Galois conjugate a - b*sqrt(7); norm = a^2 - 7 b^2 is rational.
    QuadSurd conj() const { return QuadSurd(a_, -b_); }
    Rational norm() const { return a_ * a_ - Rational(7) * b_ * b_; }

    QuadSurd inv() const {
        Rational n = norm();
        if (n.is_zero()) throw std::domain_error("QuadSurd: inverse of zero");
        return QuadSurd(a_ / n, -b_ / n);
    }

    // Exact sign of a + b*sqrt(7), decided by comparing a^2 with 7 b^2.
    int sign() const {
        int sa = a_.sign(), sb = b_.sign();
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // opposite signs: |a| vs sqrt7 |b|  <=>  a^2 vs 7 b^2
        Rational a2 = a_ * a_;
        Rational b27 = Rational(7) * b_ * b_;
        if (a2 == b27) return 0;  // impossible (7 not a square), kept for completeness
        return (a2 > b27) ? sa : sb;
    }

    bool is_positive() const { return sign() > 0; }

    double to_double() const;  // defined in precreal.hpp users via surd_eval; rough version below

    std::string str() const {
        if (b_.is_zero()) return a_.str();
        std::string s = a_.is_zero() ? "" : a_.str();
        if (!s.empty()) s += " + ";
        s += b_.str() + "*sqrt7";
        return s;
    }

private:
    Rational a_;
    Rational b_;
};

inline double QuadSurd::to_double() const {
    // double-precision convenience; exact evaluation lives in surd_eval()
    return a_.to_double() + b_.to_double() * 2.6457513110645905905;
}

}  // namespace ising
