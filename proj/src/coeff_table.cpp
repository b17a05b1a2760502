#include "ising/coeff_table.hpp"

#include <algorithm>
#include <cmath>

namespace ising {

CoeffTable<NuPolynomial> build_coeff_table_exact(int n_max, int exact_cap, int threads) {
    if (n_max > exact_cap) throw std::invalid_argument("build_coeff_table_exact: n_max exceeds the exact cap");
    CoeffTable<NuPolynomial> t(NuPolynomial::nu_power(1), n_max);
    t.build(threads);
    return t;
}

PartitionValue eval_partition(const CoeffTable<double>& table, int p, int q, double t_ratio, TailMode mode) {
    if (t_ratio < 0) throw std::invalid_argument("eval_partition: negative t");
    if (t_ratio > 1.0 + 1e-12) throw std::invalid_argument("eval_partition: t beyond the table scale (t > t_c)");
    PartitionValue out;
    if (p == 0 && q == 0) {
        out.value = 1.0;
        return out;
    }
    const int N = table.n_max();
    int n0 = (p + q <= 2) ? ((p + q) & 1) : p + q - 2;
    double tp = std::pow(t_ratio, n0);
    double t2 = t_ratio * t_ratio;
    for (int n = n0; n <= N; n += 2) {
        out.value += table.coeff(p, q, n) * tp;
        tp *= t2;
    }
    if (mode == TailMode::extrapolate) {
        // fit C on trailing stored coefficients against n^{-7/3}; tail = C * sum_{n>N} n^{-7/3}
        double c_hat = 0.0;
        int used = 0;
        int n_top = N - ((N ^ n0) & 1);
        for (int n = n_top; n >= n0 && used < 20; n -= 2) {
            double v = table.coeff(p, q, n);
            if (v > 0) {
                c_hat = std::max(c_hat, v * std::pow(n, 7.0 / 3.0));
                ++used;
            }
        }
        double tail = 0.0;
        if (t_ratio >= 1.0 - 1e-15) {
            // integral bound: sum_{n>N} n^{-7/3} <= (3/4) N^{-4/3}
            tail = c_hat * 0.75 * std::pow(N, -4.0 / 3.0);
        } else {
            tail = c_hat * std::pow(N + 1, -7.0 / 3.0) * std::pow(t_ratio, N + 1) / (1.0 - t_ratio);
        }
        out.truncation_error = tail;
        out.heuristic_bound = true;
    }
    return out;
}

std::pair<QuadSurd, QuadSurd> eval_partition_crit_exact(const CoeffTable<QuadSurd>& table, int p, int q) {
    // t_c^2 in Q(sqrt7)
    QuadSurd seven_plus(Rational(7), Rational(1));
    QuadSurd tc2 = QuadSurd(Rational(10)) / (QuadSurd(Rational(64)) * seven_plus * seven_plus * seven_plus);
    QuadSurd A(0), B(0);
    if (p == 0 && q == 0) return {QuadSurd(1), QuadSurd(0)};
    const int N = table.n_max();
    int n0 = (p + q <= 2) ? ((p + q) & 1) : p + q - 2;
    QuadSurd pw = QuadSurd(1);
    for (int k = 0; k < n0 / 2; ++k) pw *= tc2;
    for (int n = n0; n <= N; n += 2) {
        const QuadSurd& c = table.coeff(p, q, n);
        if (n % 2 == 0)
            A += c * pw;
        else
            B += c * pw;
        pw *= tc2;
    }
    return {A, B};
}

namespace {

// truncated bivariate t-series with NuPolynomial coefficients: data[n][du][dv]
struct Biv {
    int N, DU, DV;
    std::vector<NuPolynomial> d;
    Biv(int n, int du, int dv) : N(n), DU(du), DV(dv), d((n + 1) * (du + 1) * (dv + 1)) {}
    NuPolynomial& at(int n, int du, int dv) { return d[(n * (DU + 1) + du) * (DV + 1) + dv]; }
    const NuPolynomial& at(int n, int du, int dv) const { return d[(n * (DU + 1) + du) * (DV + 1) + dv]; }
};

Biv biv_mul(const Biv& a, const Biv& b) {
    Biv c(a.N, a.DU, a.DV);
    for (int na = 0; na <= a.N; ++na)
        for (int ia = 0; ia <= a.DU; ++ia)
            for (int ja = 0; ja <= a.DV; ++ja) {
                const auto& x = a.at(na, ia, ja);
                if (x.is_zero()) continue;
                for (int nb = 0; nb + na <= a.N; ++nb)
                    for (int ib = 0; ib + ia <= a.DU; ++ib)
                        for (int jb = 0; jb + ja <= a.DV; ++jb) {
                            const auto& y = b.at(nb, ib, jb);
                            if (y.is_zero()) continue;
                            c.at(na + nb, ia + ib, ja + jb) += x * y;
                        }
            }
    return c;
}

void biv_axpy(Biv& acc, const NuPolynomial& coef, const Biv& x) {
    if (coef.is_zero()) return;
    for (int n = 0; n <= acc.N; ++n)
        for (int i = 0; i <= acc.DU; ++i)
            for (int j = 0; j <= acc.DV; ++j) {
                const auto& v = x.at(n, i, j);
                if (!v.is_zero()) acc.at(n, i, j) += coef * v;
            }
}

Biv biv_tshift(const Biv& a, int k) {
    Biv c(a.N, a.DU, a.DV);
    for (int n = 0; n + k <= a.N; ++n)
        for (int i = 0; i <= a.DU; ++i)
            for (int j = 0; j <= a.DV; ++j) c.at(n + k, i, j) = a.at(n, i, j);
    return c;
}

// univariate (in u) t-series with NuPolynomial coefficients: data[n][du]
struct Univ {
    int N, DU;
    std::vector<NuPolynomial> d;
    Univ(int n, int du) : N(n), DU(du), d((n + 1) * (du + 1)) {}
    NuPolynomial& at(int n, int du) { return d[n * (DU + 1) + du]; }
    const NuPolynomial& at(int n, int du) const { return d[n * (DU + 1) + du]; }
};

Univ u_mul(const Univ& a, const Univ& b) {
    Univ c(a.N, a.DU);
    for (int na = 0; na <= a.N; ++na)
        for (int ia = 0; ia <= a.DU; ++ia) {
            const auto& x = a.at(na, ia);
            if (x.is_zero()) continue;
            for (int nb = 0; nb + na <= a.N; ++nb)
                for (int ib = 0; ib + ia <= a.DU; ++ib) {
                    const auto& y = b.at(nb, ib);
                    if (!y.is_zero()) c.at(na + nb, ia + ib) += x * y;
                }
        }
    return c;
}

void u_axpy(Univ& acc, const NuPolynomial& coef, const Univ& x) {
    if (coef.is_zero()) return;
    for (int n = 0; n <= acc.N; ++n)
        for (int i = 0; i <= acc.DU; ++i) {
            const auto& v = x.at(n, i);
            if (!v.is_zero()) acc.at(n, i) += coef * v;
        }
}

Univ u_tshift(const Univ& a, int k) {
    Univ c(a.N, a.DU);
    for (int n = 0; n + k <= a.N; ++n)
        for (int i = 0; i <= a.DU; ++i) c.at(n + k, i) = a.at(n, i);
    return c;
}

// discrete derivative (f - f(0))/u
Univ u_delta(const Univ& a) {
    Univ c(a.N, a.DU);
    for (int n = 0; n <= a.N; ++n)
        for (int i = 1; i <= a.DU; ++i) c.at(n, i - 1) = a.at(n, i);
    return c;
}

Univ u_monomial(int N, int DU, int deg, NuPolynomial coef) {
    Univ c(N, DU);
    c.at(0, deg) = std::move(coef);
    return c;
}

int first_fail_univ(const Univ& diff, int du_check) {
    for (int n = 0; n <= diff.N; ++n)
        for (int i = 0; i <= std::min(du_check, diff.DU); ++i)
            if (!diff.at(n, i).is_zero()) return n;
    return -1;
}

int first_fail_biv(const Biv& diff, int du_check, int dv_check) {
    for (int n = 0; n <= diff.N; ++n)
        for (int i = 0; i <= std::min(du_check, diff.DU); ++i)
            for (int j = 0; j <= std::min(dv_check, diff.DV); ++j)
                if (!diff.at(n, i, j).is_zero()) return n;
    return -1;
}

}  // namespace

std::string FuncEqReport::summary() const {
    std::string s;
    for (const auto& c : checks) {
        s += c.name;
        s += (c.first_failing_order < 0) ? ": pass" : (": FAIL at t-order " + std::to_string(c.first_failing_order));
        s += "\n";
    }
    return s;
}

FuncEqReport verify_functional_equations(const CoeffTable<NuPolynomial>& table, int n_check) {
    if (n_check > table.n_max()) throw std::invalid_argument("verify_functional_equations: n_check > n_max");
    FuncEqReport rep;
    const int N = n_check;
    const NuPolynomial nu = NuPolynomial::nu_power(1);
    const NuPolynomial one(1);
    const NuPolynomial nu2m1 = nu * nu - one;

    // --- Z_i(u) slices as univariate objects, full u-support DU = N + 2 ---
    const int DU = N + 2;
    auto slice = [&](int i) {
        Univ z(N, DU);
        for (int n = 0; n <= N; ++n)
            for (int p = 0; p <= DU; ++p) z.at(n, p) = table.coeff(p, i, n);
        return z;
    };
    Univ Z0 = slice(0), Z1 = slice(1), Z2 = slice(2), Z3 = slice(3);
    Univ dZ0 = u_delta(Z0), dZ1 = u_delta(Z1);
    Univ d2Z0 = u_delta(dZ0), d2Z1 = u_delta(dZ1);

    // scalars z_1, z_3 as u-degree-0 series
    auto scalar_series = [&](int p0) {
        Univ z(N, DU);
        for (int n = 0; n <= N; ++n) z.at(n, 0) = table.coeff(p0, 0, n);
        return z;
    };
    Univ z1 = scalar_series(1), z3 = scalar_series(3);

    // eq (3) x (nu^2-1):  nu dZ0 - Z1 = (nu^2-1) [ t(d2Z0 + dZ0^2) + u ]
    {
        Univ lhs(N, DU);
        u_axpy(lhs, nu, dZ0);
        u_axpy(lhs, -one, Z1);
        Univ inner = u_mul(dZ0, dZ0);
        u_axpy(inner, one, d2Z0);
        Univ rhs = u_tshift(inner, 1);
        Univ uu = u_monomial(N, DU, 1, one);
        u_axpy(rhs, one, uu);
        Univ diff(N, DU);
        u_axpy(diff, one, lhs);
        u_axpy(diff, -nu2m1, rhs);
        rep.checks.push_back({"eq(3) v^0 of first system line", first_fail_univ(diff, DU - 2)});
    }
    // eq (4) x (nu^2-1):  nu dZ1 - Z2 = (nu^2-1) t (d2Z1 + dZ0 dZ1 + z1 dZ1)
    {
        Univ lhs(N, DU);
        u_axpy(lhs, nu, dZ1);
        u_axpy(lhs, -one, Z2);
        Univ inner = u_mul(dZ0, dZ1);
        u_axpy(inner, one, d2Z1);
        Univ zz = u_mul(z1, dZ1);
        u_axpy(inner, one, zz);
        Univ rhs = u_tshift(inner, 1);
        Univ diff(N, DU);
        u_axpy(diff, one, lhs);
        u_axpy(diff, -nu2m1, rhs);
        rep.checks.push_back({"eq(4) v^1 of first system line", first_fail_univ(diff, DU - 2)});
    }
    // eq (5) x (nu^2-1):  nu Z1 - dZ0 = (nu^2-1) t (Z2 + Z1^2)
    {
        Univ lhs(N, DU);
        u_axpy(lhs, nu, Z1);
        u_axpy(lhs, -one, dZ0);
        Univ inner = u_mul(Z1, Z1);
        u_axpy(inner, one, Z2);
        Univ rhs = u_tshift(inner, 1);
        Univ diff(N, DU);
        u_axpy(diff, one, lhs);
        u_axpy(diff, -nu2m1, rhs);
        rep.checks.push_back({"eq(5) v^0 of second system line", first_fail_univ(diff, DU - 1)});
    }
    // eq (6) x (nu^2-1):  nu Z2 - dZ1 = (nu^2-1) [ t (Z3 + Z1 Z2 + z1 Z2) + 1 ]
    {
        Univ lhs(N, DU);
        u_axpy(lhs, nu, Z2);
        u_axpy(lhs, -one, dZ1);
        Univ inner = u_mul(Z1, Z2);
        u_axpy(inner, one, Z3);
        Univ zz = u_mul(z1, Z2);
        u_axpy(inner, one, zz);
        Univ rhs = u_tshift(inner, 1);
        Univ uu = u_monomial(N, DU, 0, one);
        u_axpy(rhs, one, uu);
        Univ diff(N, DU);
        u_axpy(diff, one, lhs);
        u_axpy(diff, -nu2m1, rhs);
        rep.checks.push_back({"eq(6) v^1 of second system line", first_fail_univ(diff, DU - 1)});
    }

    // eq (7), cross-multiplied and multiplied by u (checks p,q <= 4):
    //   u (Z - Z0(v)) (nu v - u) - (nu^2-1) t v (Z0(u) + u Z1(v)) (Z - Z0(v))
    //   = u^2 (Z0(v) - Z0(u)) + (nu^2-1) u v (u^2 - t Z0(u) Z1(v))
    {
        const int BU = 7, BV = 6;
        Biv Z(N, BU, BV);
        for (int n = 0; n <= N; ++n)
            for (int i = 0; i <= BU; ++i)
                for (int j = 0; j <= BV; ++j) Z.at(n, i, j) = table.coeff(i, j, n);
        Biv Z0u(N, BU, BV), Z0v(N, BU, BV), Z1v(N, BU, BV);
        for (int n = 0; n <= N; ++n)
            for (int i = 0; i <= BU; ++i) Z0u.at(n, i, 0) = table.coeff(i, 0, n);
        for (int n = 0; n <= N; ++n)
            for (int j = 0; j <= BV; ++j) {
                Z0v.at(n, 0, j) = table.coeff(j, 0, n);
                Z1v.at(n, 0, j) = table.coeff(j, 1, n);
            }
        Biv ZmZ0v(N, BU, BV);
        biv_axpy(ZmZ0v, one, Z);
        biv_axpy(ZmZ0v, -one, Z0v);

        Biv lin(N, BU, BV);  // nu v - u
        lin.at(0, 0, 1) = nu;
        lin.at(0, 1, 0) = -one;
        Biv um(N, BU, BV);
        um.at(0, 1, 0) = one;
        Biv vm(N, BU, BV);
        vm.at(0, 0, 1) = one;

        Biv lhs = biv_mul(biv_mul(um, ZmZ0v), lin);
        Biv sum(N, BU, BV);
        biv_axpy(sum, one, Z0u);
        biv_axpy(sum, one, biv_mul(um, Z1v));
        Biv t2 = biv_tshift(biv_mul(biv_mul(vm, sum), ZmZ0v), 1);
        biv_axpy(lhs, -nu2m1, t2);

        Biv rhs(N, BU, BV);
        {
            Biv diffZ0(N, BU, BV);
            biv_axpy(diffZ0, one, Z0v);
            biv_axpy(diffZ0, -one, Z0u);
            Biv u2(N, BU, BV);
            u2.at(0, 2, 0) = one;
            biv_axpy(rhs, one, biv_mul(u2, diffZ0));
            Biv inner(N, BU, BV);
            inner.at(0, 2, 0) = one;
            biv_axpy(inner, -one, biv_tshift(biv_mul(Z0u, Z1v), 1));
            Biv uv(N, BU, BV);
            uv.at(0, 1, 1) = one;
            biv_axpy(rhs, nu2m1, biv_mul(uv, inner));
        }
        Biv diff(N, BU, BV);
        biv_axpy(diff, one, lhs);
        biv_axpy(diff, -one, rhs);
        rep.checks.push_back({"eq(7) closed form of Z(u,v)", first_fail_biv(diff, 5, 5)});
    }

    // eq (9) x u^3:  u^3 Z0 = u^3 (1 + nu u^2) + u^3 t R(Z0, u, z1, z3)
    {
        const int DU9 = DU;
        Univ y = Z0;
        Univ u3 = u_monomial(N, DU9, 3, one);
        Univ lhs = u_mul(u3, y);

        Univ ym1 = y;
        {
            Univ m1 = u_monomial(N, DU9, 0, -one);
            u_axpy(ym1, one, m1);
        }
        Univ y2 = u_mul(y, y);
        Univ y3 = u_mul(y2, y);
        Univ z1sq = u_mul(z1, z1);
        Univ z1cu = u_mul(z1sq, z1);

        Univ rhs = u_monomial(N, DU9, 3, one);
        u_axpy(rhs, nu, u_monomial(N, DU9, 5, one));

        NuPolynomial c2 = nu2m1 * nu2m1;
        // (nu^2-1)^2 t^3 [ (y-1) y^3 - z1 y^2 u ]
        {
            Univ a = u_mul(ym1, y3);
            Univ b = u_mul(z1, u_mul(y2, u_monomial(N, DU9, 1, one)));
            Univ s(N, DU9);
            u_axpy(s, one, a);
            u_axpy(s, -one, b);
            u_axpy(rhs, c2, u_tshift(s, 3));
        }
        // -(nu^2-1)^2 t^2 u^3 (1 + y - 2y^2 + z1 u)
        {
            Univ s = u_monomial(N, DU9, 0, one);
            u_axpy(s, one, y);
            u_axpy(s, NuPolynomial(-2), y2);
            u_axpy(s, one, u_mul(z1, u_monomial(N, DU9, 1, one)));
            u_axpy(rhs, -c2, u_tshift(u_mul(u_monomial(N, DU9, 3, one), s), 2));
        }
        // (nu^2-1)^2 t^3 u^3 (2 z1^3 - z3)
        {
            Univ s(N, DU9);
            u_axpy(s, NuPolynomial(2), z1cu);
            u_axpy(s, -one, z3);
            u_axpy(rhs, c2, u_tshift(u_mul(u_monomial(N, DU9, 3, one), s), 3));
        }
        // -(nu^2-1) t^2 [ 2 nu (y-1) y^2 u - (nu+1) z1 y u^2 + 3 (nu-1) z1^2 u^3 ]
        {
            Univ s(N, DU9);
            u_axpy(s, nu * NuPolynomial(2), u_mul(ym1, u_mul(y2, u_monomial(N, DU9, 1, one))));
            u_axpy(s, -(nu + one), u_mul(z1, u_mul(y, u_monomial(N, DU9, 2, one))));
            u_axpy(s, (nu - one) * NuPolynomial(3), u_mul(z1sq, u_monomial(N, DU9, 3, one)));
            u_axpy(rhs, -nu2m1, u_tshift(s, 2));
        }
        // t [ nu(nu+1)(y-1) y u^2 - nu(nu^2-1) u^4 (2y-1) + nu(nu-3) z1 u^3 + (nu^2-1)^2 u^6 ]
        {
            Univ s(N, DU9);
            u_axpy(s, nu * (nu + one), u_mul(ym1, u_mul(y, u_monomial(N, DU9, 2, one))));
            Univ two_y_m1(N, DU9);
            u_axpy(two_y_m1, NuPolynomial(2), y);
            u_axpy(two_y_m1, one, u_monomial(N, DU9, 0, -one));
            u_axpy(s, -nu * nu2m1, u_mul(u_monomial(N, DU9, 4, one), two_y_m1));
            u_axpy(s, nu * (nu - NuPolynomial(3)), u_mul(z1, u_monomial(N, DU9, 3, one)));
            u_axpy(s, c2, u_monomial(N, DU9, 6, one));
            u_axpy(rhs, one, u_tshift(s, 1));
        }
        Univ diff(N, DU9);
        u_axpy(diff, one, lhs);
        u_axpy(diff, -one, rhs);
        rep.checks.push_back({"eq(9) one-catalytic equation", first_fail_univ(diff, DU9)});
    }

    // z_{1,1} identity x (nu+1) t:
    //   (nu+1) t z11 = (nu+1)(nu^2-1) t (2 t z1^3 - t z3 - 1) - (nu+1)(3nu-2) t z1^2 + nu z1
    // checked to order N-1 (the nu z1 term consumes one order of the table).
    {
        const int M = N - 1;
        std::vector<NuPolynomial> z11(N + 1), z1c(N + 1), z3c(N + 1);
        for (int n = 0; n <= N; ++n) {
            z11[n] = table.coeff(1, 1, n);
            z1c[n] = table.coeff(1, 0, n);
            z3c[n] = table.coeff(3, 0, n);
        }
        auto smul = [&](const std::vector<NuPolynomial>& a, const std::vector<NuPolynomial>& b) {
            std::vector<NuPolynomial> c(N + 1);
            for (int i = 0; i <= N; ++i) {
                if (a[i].is_zero()) continue;
                for (int j = 0; i + j <= N; ++j)
                    if (!b[j].is_zero()) c[i + j] += a[i] * b[j];
            }
            return c;
        };
        auto z1sq = smul(z1c, z1c);
        auto z1cu = smul(z1sq, z1c);
        NuPolynomial nup1 = nu + one;
        int fail = -1;
        for (int n = 0; n <= M && fail < 0; ++n) {
            NuPolynomial lhs = (n >= 1) ? nup1 * z11[n - 1] : NuPolynomial(0);
            NuPolynomial rhs;
            if (n >= 2) rhs += nup1 * nu2m1 * (NuPolynomial(2) * z1cu[n - 2] - z3c[n - 2]);
            if (n == 1) rhs -= nup1 * nu2m1;
            if (n >= 1) rhs -= nup1 * (NuPolynomial(3) * nu - NuPolynomial(2)) * z1sq[n - 1];
            rhs += nu * z1c[n];
            if (lhs != rhs) fail = n;
        }
        rep.checks.push_back({"z_{1,1} identity", fail});
    }

    return rep;
}

std::vector<std::pair<int, double>> volume_exponent_probe(const CoeffTable<double>& table, int n_lo, int n_hi,
                                                          double exponent) {
    if (n_lo > n_hi || n_hi > table.n_max()) throw std::invalid_argument("volume_exponent_probe: bad range");
    std::vector<std::pair<int, double>> out;
    for (int n = n_lo; n <= n_hi; ++n) {
        if (((1 + n) & 1) != 0) continue;  // z_{1,0} lives on odd orders
        double c = table.coeff(1, 0, n);
        out.emplace_back(n, std::pow(n, exponent) * c);
    }
    return out;
}

}  // namespace ising
