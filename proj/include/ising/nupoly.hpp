#pragma once

#include "ising/rational.hpp"

#include <string>
#include <vector>

namespace ising {

// Polynomial in the Ising coupling nu, rational coefficients, trailing zeros trimmed.
class NuPolynomial {
public:
    NuPolynomial() = default;
    NuPolynomial(long c) {
        if (c != 0) c_.push_back(Rational(c));
    }
    explicit NuPolynomial(Rational c) {
        if (!c.is_zero()) c_.push_back(std::move(c));
    }
    static NuPolynomial nu_power(int k, Rational coef = Rational(1)) {
        NuPolynomial p;
        p.c_.assign(k + 1, Rational(0));
        p.c_[k] = std::move(coef);
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& coeff(int k) const {
        static const Rational zero(0);
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : zero;
    }
    const std::vector<Rational>& coeffs() const { return c_; }

    NuPolynomial& operator+=(const NuPolynomial& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    NuPolynomial& operator-=(const NuPolynomial& o) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend NuPolynomial operator+(NuPolynomial a, const NuPolynomial& b) { return a += b; }
    friend NuPolynomial operator-(NuPolynomial a, const NuPolynomial& b) { return a -= b; }
    friend NuPolynomial operator*(const NuPolynomial& a, const NuPolynomial& b) {
        NuPolynomial r;
        if (a.is_zero() || b.is_zero()) return r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        r.trim();
        return r;
    }
    NuPolynomial& operator*=(const NuPolynomial& o) { return *this = *this * o; }
    NuPolynomial operator-() const {
        NuPolynomial r(*this);
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend bool operator==(const NuPolynomial& a, const NuPolynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const NuPolynomial& a, const NuPolynomial& b) { return !(a == b); }

    template <class K>
    K eval(const K& nu) const {
        K r(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * nu + K(*it);
        return r;
    }
    double eval_double(double nu) const {
        double r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * nu + it->to_double();
        return r;
    }

    bool all_coeffs_nonnegative() const {
        for (const auto& c : c_)
            if (c.sign() < 0) return false;
        return true;
    }

    // "c0+c1*v+c2*v^2" form used by the coeffs CSV output
    std::string str() const {
        if (c_.empty()) return "0";
        std::string s;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            if (!s.empty()) s += "+";
            s += c_[i].str();
            if (i == 1) s += "*v";
            if (i > 1) s += "*v^" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rational> c_;
};

}  // namespace ising
