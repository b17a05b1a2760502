#pragma once

#include <cassert>
#include <stdexcept>
#include <vector>

namespace ising {

// Dense truncated power series over any field-like scalar K (Rational,
// QuadSurd, double, ...).  A series of order N holds coefficients 0..N.
template <class K>
using Series = std::vector<K>;

template <class K>
Series<K> series_zero(int order) {
    return Series<K>(order + 1, K(0));
}

template <class K>
Series<K> series_mul(const Series<K>& a, const Series<K>& b, int order) {
    Series<K> c(order + 1, K(0));
    const int na = static_cast<int>(a.size());
    for (int i = 0; i < na && i <= order; ++i) {
        const int nb = std::min<int>(static_cast<int>(b.size()) - 1, order - i);
        for (int j = 0; j <= nb; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

// reciprocal of a series with invertible constant term
template <class K>
Series<K> series_inv(const Series<K>& a, int order) {
    Series<K> c(order + 1, K(0));
    K a0inv = K(1) / a[0];
    c[0] = a0inv;
    for (int n = 1; n <= order; ++n) {
        K s(0);
        const int ka = std::min<int>(n, static_cast<int>(a.size()) - 1);
        for (int k = 1; k <= ka; ++k) s += a[k] * c[n - k];
        c[n] = -s * a0inv;
    }
    return c;
}

template <class K>
Series<K> series_div(const Series<K>& a, const Series<K>& b, int order) {
    return series_mul(a, series_inv(b, order), order);
}

// compose a polynomial (given by its coefficient list) with a series g, g[0] arbitrary
template <class K>
Series<K> poly_compose(const std::vector<K>& poly, const Series<K>& g, int order) {
    Series<K> out(order + 1, K(0));
    if (poly.empty()) return out;
    Series<K> pw(order + 1, K(0));
    pw[0] = K(1);
    out[0] = poly[0];
    for (size_t k = 1; k < poly.size(); ++k) {
        pw = series_mul(pw, g, order);
        for (int n = 0; n <= order; ++n) out[n] += poly[k] * pw[n];
    }
    return out;
}

// Reversion: given f with f[0]=0 and f[1] invertible, return g with f(g(x)) = x + O(x^{order+1}).
// Plain order-by-order Newton-free scheme; fine for the orders used here.
template <class K>
Series<K> series_revert(const Series<K>& f, int order) {
    if (f.size() < 2 || !(f[0] == K(0))) throw std::invalid_argument("series_revert: f(0) != 0");
    Series<K> g(order + 1, K(0));
    K f1inv = K(1) / f[1];
    if (order >= 1) g[1] = f1inv;
    for (int n = 2; n <= order; ++n) {
        // residual of f(g) at order n with current g (g[n] = 0 so far);
        // f(g)[n] = f[1]*g[n] + (contribution of f[k] g^k, k >= 2)
        Series<K> comp(n + 1, K(0));
        Series<K> pw(n + 1, K(0));
        pw[0] = K(1);
        const int kf = std::min<int>(n, static_cast<int>(f.size()) - 1);
        for (int k = 1; k <= kf; ++k) {
            pw = series_mul(pw, g, n);
            for (int m = 0; m <= n; ++m) comp[m] += f[k] * pw[m];
        }
        g[n] = -comp[n] * f1inv;
    }
    return g;
}

// map coefficients into another scalar type (e.g. Rational -> QuadSurd or double)
template <class K2, class K1, class Fn>
Series<K2> series_map(const Series<K1>& a, Fn f) {
    Series<K2> out;
    out.reserve(a.size());
    for (const auto& c : a) out.push_back(f(c));
    return out;
}

}  // namespace ising
