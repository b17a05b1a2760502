#include "ising/parametrization.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace ising {

namespace {

const Rational kZero(0);

std::vector<QuadSurd> lift_rationals(std::initializer_list<Rational> rs) {
    std::vector<QuadSurd> out;
    for (const auto& r : rs) out.emplace_back(r);
    return out;
}

template <class K>
K lift(const QuadSurd& x);
template <>
QuadSurd lift<QuadSurd>(const QuadSurd& x) {
    return x;
}
template <>
double lift<double>(const QuadSurd& x) {
    return x.to_double();
}

}  // namespace

QuadSurd RationalFunction1V::eval(const QuadSurd& x) const {
    auto horner = [&](const std::vector<QuadSurd>& c) {
        QuadSurd r(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
        return r;
    };
    QuadSurd d = horner(den);
    if (d.is_zero()) throw std::domain_error("RationalFunction1V: pole");
    return horner(num) / d;
}

PrecReal RationalFunction1V::eval(const PrecReal& x) const {
    int bits = x.precision_bits();
    auto horner = [&](const std::vector<QuadSurd>& c) {
        PrecReal r(0.0, bits);
        for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + surd_eval(*it, bits);
        return r;
    };
    return horner(num) / horner(den);
}

CriticalParametrization critical_parametrization() {
    CriticalParametrization cp;
    // u/u_c = (10 H - 12 H^2 + 6 H^3 - H^4)/3
    cp.u_hat_normalized.num =
        lift_rationals({Rational(0), Rational(10, 3), Rational(-4), Rational(2), Rational(-1, 3)});
    cp.u_hat_normalized.den = lift_rationals({Rational(1)});
    // Z0 = (1/10)(1-(1-s7)H+3H^2-H^3)(10-12H+6H^2-H^3)
    {
        std::vector<QuadSurd> P = {QuadSurd(Rational(1)), QuadSurd(Rational(-1), Rational(1)), QuadSurd(Rational(3)),
                                   QuadSurd(Rational(-1))};
        std::vector<QuadSurd> Q = lift_rationals({Rational(10), Rational(-12), Rational(6), Rational(-1)});
        std::vector<QuadSurd> prod(P.size() + Q.size() - 1, QuadSurd(0));
        for (size_t i = 0; i < P.size(); ++i)
            for (size_t j = 0; j < Q.size(); ++j) prod[i + j] += P[i] * Q[j];
        for (auto& c : prod) c *= QuadSurd(Rational(1, 10));
        cp.z0_hat.num = std::move(prod);
        cp.z0_hat.den = lift_rationals({Rational(1)});
    }
    // u_c Z1 = (3/10) [ (s7-1+H) Q(H) - 3(4-3H+H^2) ] / Q(H)
    {
        std::vector<QuadSurd> lin = {QuadSurd(Rational(-1), Rational(1)), QuadSurd(Rational(1))};
        std::vector<QuadSurd> Q = lift_rationals({Rational(10), Rational(-12), Rational(6), Rational(-1)});
        std::vector<QuadSurd> prod(lin.size() + Q.size() - 1, QuadSurd(0));
        for (size_t i = 0; i < lin.size(); ++i)
            for (size_t j = 0; j < Q.size(); ++j) prod[i + j] += lin[i] * Q[j];
        std::vector<QuadSurd> sub = lift_rationals({Rational(12), Rational(-9), Rational(3)});
        for (size_t i = 0; i < sub.size(); ++i) prod[i] -= sub[i];
        for (auto& c : prod) c *= QuadSurd(Rational(3, 10));
        cp.z1_hat_normalized.num = std::move(prod);
        cp.z1_hat_normalized.den = Q;
    }
    // A/a0 = (9-8H+3H^2)/(3-3H+H^2)^2
    {
        cp.a_hat_normalized.num = lift_rationals({Rational(9), Rational(-8), Rational(3)});
        std::vector<QuadSurd> d = lift_rationals({Rational(3), Rational(-3), Rational(1)});
        std::vector<QuadSurd> d2(5, QuadSurd(0));
        for (size_t i = 0; i < d.size(); ++i)
            for (size_t j = 0; j < d.size(); ++j) d2[i + j] += d[i] * d[j];
        cp.a_hat_normalized.den = std::move(d2);
        // the suppressed overall factor is a0 = (1/10)(3/2)^{7/3}
    }
    return cp;
}

QuadSurd eval_param(ParamWhich which, const QuadSurd& H) {
    static const CriticalParametrization cp = critical_parametrization();
    switch (which) {
        case ParamWhich::u_hat: return cp.u_hat_normalized.eval(H);
        case ParamWhich::z0_hat: return cp.z0_hat.eval(H);
        case ParamWhich::z1_hat: return cp.z1_hat_normalized.eval(H);
        case ParamWhich::a_hat: return cp.a_hat_normalized.eval(H);
    }
    throw std::logic_error("eval_param: bad selector");
}

PrecReal eval_param(ParamWhich which, const PrecReal& H, int precision_bits) {
    static const CriticalParametrization cp = critical_parametrization();
    CriticalConstants cc = constants_critical();
    PrecReal h(0.0, precision_bits);
    mpfr_set(h.raw(), H.raw(), MPFR_RNDN);
    switch (which) {
        case ParamWhich::u_hat: return cp.u_hat_normalized.eval(h) * cc.u_c(precision_bits);
        case ParamWhich::z0_hat: return cp.z0_hat.eval(h);
        case ParamWhich::z1_hat: return cp.z1_hat_normalized.eval(h) / cc.u_c(precision_bits);
        case ParamWhich::a_hat: {
            PrecReal a0 =
                PrecReal(1.5, precision_bits).pow(PrecReal(7.0, precision_bits) / PrecReal(3.0, precision_bits)) /
                PrecReal(10.0, precision_bits);
            return cp.a_hat_normalized.eval(h) * a0;
        }
    }
    throw std::logic_error("eval_param: bad selector");
}

Series<Rational> revert_u_hat(int N) {
    if (N < 1) throw std::invalid_argument("revert_u_hat: N >= 1 required");
    Series<Rational> f = {Rational(0), Rational(10, 3), Rational(-4), Rational(2), Rational(-1, 3)};
    return series_revert(f, N);
}

namespace {

// shared skeleton for the exact and the numeric boundary-data builders
template <class K>
struct BoundaryArrays {
    Series<K> zeta, xi, w_row;
    Series<K> alpha;
};

template <class K>
BoundaryArrays<K> build_boundary(int N) {
    Series<Rational> Hrat = revert_u_hat(N);
    Series<K> H;
    H.reserve(N + 1);
    for (auto& c : Hrat) H.push_back(lift<K>(QuadSurd(c)));

    auto pc = [&](std::initializer_list<QuadSurd> poly) {
        std::vector<K> p;
        for (const auto& c : poly) p.push_back(lift<K>(c));
        return poly_compose(p, H, N);
    };
    const QuadSurd s7 = QuadSurd::sqrt7();

    BoundaryArrays<K> out;
    // zeta = (1/10) P(H) Q(H)
    Series<K> P = pc({QuadSurd(1), QuadSurd(Rational(-1), Rational(1)), QuadSurd(3), QuadSurd(-1)});
    Series<K> Q = pc({QuadSurd(10), QuadSurd(-12), QuadSurd(6), QuadSurd(-1)});
    out.zeta = series_mul(P, Q, N);
    for (auto& c : out.zeta) c = c * lift<K>(QuadSurd(Rational(1, 10)));

    // xi = (3/10)[ s7 - 1 + H - 3 (4 - 3H + H^2)/Q(H) ]
    Series<K> head = pc({QuadSurd(Rational(-1), Rational(1)), QuadSurd(1)});
    Series<K> mid = series_div(pc({QuadSurd(4), QuadSurd(-3), QuadSurd(1)}), Q, N);
    out.xi = series_zero<K>(N);
    for (int n = 0; n <= N; ++n) out.xi[n] = (head[n] - K(3) * mid[n]) * lift<K>(QuadSurd(Rational(3, 10)));

    // alpha = (9 - 8H + 3H^2)/(3 - 3H + H^2)^2
    Series<K> an = pc({QuadSurd(9), QuadSurd(-8), QuadSurd(3)});
    Series<K> ad = pc({QuadSurd(3), QuadSurd(-3), QuadSurd(1)});
    out.alpha = series_div(an, series_mul(ad, ad, N), N);

    // W(w) = Z(u_c, u_c w) u_c-normalized row sums:
    //   W = F0 + [ (F0 - Z0c) + (nu^2-1) w (uc^2 - tu Z0c F1) ] / [ nu w - 1 - (nu^2-1) tu w (Z0c + F1) ]
    CriticalConstants cc = constants_critical();
    const K nu = lift<K>(cc.nu_c);
    const K nu2m1 = lift<K>(cc.nu_c * cc.nu_c - QuadSurd(1));
    const K tu = lift<K>(cc.t_over_u);
    const K uc2 = lift<K>(cc.u_c_squared());
    const K z0c = lift<K>(QuadSurd(Rational(3, 5), Rational(3, 10)));  // (3/10)(2+s7)

    Series<K> num = series_zero<K>(N);
    for (int n = 0; n <= N; ++n) num[n] = out.zeta[n];
    num[0] -= z0c;
    for (int n = 1; n <= N; ++n) num[n] += nu2m1 * ((n == 1 ? uc2 : K(0)) - tu * z0c * out.xi[n - 1]);

    Series<K> den = series_zero<K>(N);
    den[0] = K(0) - K(1);
    den[1] += nu;
    for (int n = 1; n <= N; ++n) den[n] -= nu2m1 * tu * ((n == 1 ? z0c : K(0)) + out.xi[n - 1]);

    Series<K> frac = series_div(num, den, N);
    out.w_row = series_zero<K>(N);
    for (int n = 0; n <= N; ++n) out.w_row[n] = out.zeta[n] + frac[n];
    return out;
}

}  // namespace

BoundarySeries boundary_series(int N) {
    if (N < 2) throw std::invalid_argument("boundary_series: N >= 2 required");
    auto arrays = build_boundary<QuadSurd>(N);
    BoundarySeries out;
    out.zeta = std::move(arrays.zeta);
    out.xi = std::move(arrays.xi);
    out.w_row = std::move(arrays.w_row);
    out.alpha.reserve(N + 1);
    for (auto& a : arrays.alpha) {
        if (!a.b().is_zero()) throw std::logic_error("boundary_series: alpha has an irrational part");
        out.alpha.push_back(a.a());
    }
    // sanity on the invariants the rest of the code leans on
    if (!(out.zeta[0] == QuadSurd(1)) || !(out.alpha[0] == Rational(1)))
        throw std::logic_error("boundary_series: normalization broken");
    return out;
}

BoundarySeriesNumeric boundary_series_numeric(int N) {
    auto arrays = build_boundary<double>(N);
    return BoundarySeriesNumeric{std::move(arrays.zeta), std::move(arrays.xi), std::move(arrays.alpha),
                                 std::move(arrays.w_row)};
}

namespace {

std::vector<QuadSurd> derivative(const std::vector<QuadSurd>& poly) {
    std::vector<QuadSurd> out;
    for (size_t i = 1; i < poly.size(); ++i) out.push_back(poly[i] * QuadSurd(Rational(static_cast<long>(i))));
    return out;
}

}  // namespace

CriticalValues values_at_uc() {
    CriticalParametrization cp = critical_parametrization();
    CriticalValues v;
    v.Z0_at_uc = cp.z0_hat.eval(QuadSurd(1));
    v.Z1_uc = cp.z1_hat_normalized.eval(QuadSurd(1));
    v.A_at_uc_over_a0 = cp.a_hat_normalized.eval(QuadSurd(1));

    // derivatives: expand d/dH around H=1 as series in s and take matched-order ratios
    const int ORD = 6;
    auto taylor_at_one = [&](const std::vector<QuadSurd>& num, const std::vector<QuadSurd>& den) {
        // series of num(1+s)/den(1+s) to order ORD
        auto shift = [&](const std::vector<QuadSurd>& p) {
            Series<QuadSurd> s(ORD + 1, QuadSurd(0));
            // p(1+s) via binomials
            for (size_t i = 0; i < p.size(); ++i) {
                // (1+s)^i
                Rational binom(1);
                for (size_t j = 0; j <= i && j <= static_cast<size_t>(ORD); ++j) {
                    if (j > 0) binom = binom * Rational(static_cast<long>(i - j + 1)) / Rational(static_cast<long>(j));
                    s[j] += p[i] * QuadSurd(binom);
                }
            }
            return s;
        };
        Series<QuadSurd> n = shift(num);
        if (den.size() == 1 && den[0] == QuadSurd(1)) return n;
        Series<QuadSurd> d = shift(den);
        return series_div(n, d, ORD);
    };

    // d(uhat_n)/dH and d(z0hat)/dH are polynomials; d(z1hat_n)/dH is rational
    auto du = taylor_at_one(derivative(cp.u_hat_normalized.num), {QuadSurd(1)});
    auto dz0 = taylor_at_one(derivative(cp.z0_hat.num), {QuadSurd(1)});
    // d/dH (n/d) = (n' d - n d')/d^2
    auto dz1 = [&]() {
        const auto& n = cp.z1_hat_normalized.num;
        const auto& d = cp.z1_hat_normalized.den;
        auto np = derivative(n);
        auto dp = derivative(d);
        auto mul = [](const std::vector<QuadSurd>& a, const std::vector<QuadSurd>& b) {
            std::vector<QuadSurd> c(a.size() + b.size() - 1, QuadSurd(0));
            for (size_t i = 0; i < a.size(); ++i)
                for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
            return c;
        };
        auto numr = mul(np, d);
        auto sub = mul(n, dp);
        if (numr.size() < sub.size()) numr.resize(sub.size(), QuadSurd(0));
        for (size_t i = 0; i < sub.size(); ++i) numr[i] -= sub[i];
        return taylor_at_one(numr, mul(d, d));
    }();

    // matched vanishing order
    auto lead_order = [&](const Series<QuadSurd>& s) {
        for (int i = 0; i < static_cast<int>(s.size()); ++i)
            if (!s[i].is_zero()) return i;
        return static_cast<int>(s.size());
    };
    int ou = lead_order(du);
    if (ou != 2) throw std::logic_error("values_at_uc: u_hat'(1) does not vanish to order 2");
    int o0 = lead_order(dz0), o1 = lead_order(dz1);
    if (o0 != ou || o1 != ou)
        throw std::logic_error("values_at_uc: derivative order mismatch at H=1 (parametrization transcription?)");
    v.dZ0_uc = dz0[ou] / du[ou];   // u_c Z0'(u_c)
    v.dZ1_uc2 = dz1[ou] / du[ou];  // u_c^2 Z1'(u_c)

    // b_ratio = Ahat'(1)/(3/2)^{7/3}: normalized a_hat derivative at 1, over 10? careful:
    // a_hat_normalized = Ahat/a0 with a0 = (1/10)(3/2)^{7/3}; Ahat'(1)/(3/2)^{7/3} = a_hat_n'(1)/10.
    {
        auto dn = derivative(cp.a_hat_normalized.num);
        auto dd = derivative(cp.a_hat_normalized.den);
        auto at1 = [&](const std::vector<QuadSurd>& p) {
            QuadSurd r(0);
            for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * QuadSurd(1) + *it;
            return r;
        };
        QuadSurd n1 = at1(cp.a_hat_normalized.num), d1 = at1(cp.a_hat_normalized.den);
        QuadSurd dern = (at1(dn) * d1 - n1 * at1(dd)) / (d1 * d1);
        QuadSurd br = dern * QuadSurd(Rational(1, 10));
        if (!br.b().is_zero()) throw std::logic_error("values_at_uc: b_ratio not rational");
        v.b_ratio = br.a();
    }
    return v;
}

DriftAndTails drift_and_tails() {
    CriticalConstants cc = constants_critical();
    CriticalValues cv = values_at_uc();
    const QuadSurd& nu = cc.nu_c;
    const QuadSurd& tu = cc.t_over_u;

    DriftAndTails out;
    // E[X1] = (t/u) [ (nu-1) Z0(uc) - uc Z1(uc) - nu uc Z0'(uc) - uc^2 Z1'(uc) ]
    out.mu = tu * ((nu - QuadSurd(1)) * cv.Z0_at_uc - cv.Z1_uc - nu * cv.dZ0_uc - cv.dZ1_uc2);
    // the same value from the full-plane table, non-symmetric bookkeeping:
    QuadSurd mu_other = tu * (QuadSurd(2) * cv.Z0_at_uc + cv.Z1_uc - cv.dZ0_uc - nu * cv.dZ1_uc2);
    QuadSurd mu_exact(Rational(0), Rational(1, 28));
    if (!(out.mu == mu_exact) || !(mu_other == mu_exact))
        throw std::logic_error("drift_and_tails: drift formula does not reduce to 1/(4 sqrt7)");

    out.mu_sum = (nu + QuadSurd(1)) * tu * (cv.Z0_at_uc - cv.dZ0_uc - cv.dZ1_uc2);
    if (!(out.mu_sum == QuadSurd(Rational(0), Rational(1, 14))))
        throw std::logic_error("drift_and_tails: E[X1+Y1] does not reduce to 1/(2 sqrt7)");

    // (nu a0/u_c + a1)/(a0/u_c + nu a1) with a1 u_c / a0 = 1/3:
    out.cx_over_cy = (QuadSurd(3) * nu + QuadSurd(1)) / (QuadSurd(3) + nu);
    QuadSurd expect = QuadSurd(Rational(2), Rational(3)) / QuadSurd(Rational(2), Rational(1));
    if (!(out.cx_over_cy == expect)) throw std::logic_error("drift_and_tails: tail constant ratio mismatch");
    return out;
}

namespace {

// ---- RP z1-3 machinery ----

// polynomial in S with K coefficients, shifted to S = nu + s
template <class K>
Series<K> taylor_shift(const std::vector<K>& poly, const K& nu, int N) {
    Series<K> out(N + 1, K(0));
    Series<K> base = {nu, K(1)};
    Series<K> pw = {K(1)};
    for (size_t i = 0; i < poly.size(); ++i) {
        if (i > 0) pw = series_mul(pw, base, N);
        for (int n = 0; n <= N && n < static_cast<int>(pw.size()); ++n) out[n] += poly[i] * pw[n];
    }
    return out;
}

template <class K>
struct RpRaw {
    Series<K> t2, t3z1, t9z3;  // series in s at S = nu + s
};

template <class K>
RpRaw<K> rp_expansions(const K& nu, int N) {
    const K one(1), two(2);
    K nu2 = nu * nu;
    K f = nu2 - one;  // nu^2 - 1
    K f3 = f * f * f;
    K f4 = f3 * f;
    K f12 = f4 * f4 * f4;

    // numerator polynomials in S
    std::vector<K> cubic = {nu2 - two * nu, K(0) - two, K(0) - one, K(4)};  // 4S^3 - S^2 - 2S + nu^2-2nu
    std::vector<K> cubic1 = {nu2 - two * nu, K(0) - nu, K(0) - nu, K(3)};   // 3S^3 - nu S^2 - nu S + nu^2-2nu
    // big degree-10 polynomial for t^9 z3
    K nm2 = nu - two;
    std::vector<K> big = {
        K(0) - K(3) * nu * nu2 * nm2 * nm2 * nm2,        // S^0: -3 nu^3 (nu-2)^3
        K(14) * nu2 * nm2 * nm2,                         // S^1
        nu * nm2 * (K(9) * nu2 - K(18) * nu - K(20)),    // S^2
        K(0) - K(4) * (K(7) * nu2 - K(14) * nu - two),   // S^3
        K(32) * nu2 * nu2 - K(128) * nu * nu2 + K(183) * nu2 - K(110) * nu + K(20),  // S^4
        K(0) - two * (K(32) * nu2 - K(64) * nu + K(57)),                             // S^5
        K(0) - K(7) * (K(16) * nu2 - K(32) * nu + K(27)),                            // S^6
        K(32) * (two * nu2 - K(4) * nu + K(3)),                                      // S^7
        K(0) - K(16) * (two * nu2 - K(4) * nu + K(3)),                               // S^8
        K(0) - K(128),                                                               // S^9
        K(160)};                                                                     // S^10

    // (nu - S) -> -s ; (S + nu - 2) -> (2nu - 2 + s)
    Series<K> minus_s = {K(0), K(0) - one};
    Series<K> splus = {two * nu - two, one};

    Series<K> cubic_s = taylor_shift(cubic, nu, N);
    Series<K> cubic1_s = taylor_shift(cubic1, nu, N);
    Series<K> big_s = taylor_shift(big, nu, N);

    // S^2 and S^8 shifted, inverted
    Series<K> S1 = {nu, one};
    Series<K> S2 = series_mul(S1, S1, N);
    Series<K> S2inv = series_inv(S2, N);
    Series<K> S8inv = S2inv;
    for (int k = 0; k < 3; ++k) S8inv = series_mul(S8inv, S2inv, N);

    RpRaw<K> out;
    // t^2 = (nu-S)(S+nu-2) cubic / (32 f^3 S^2)
    {
        Series<K> n1 = series_mul(minus_s, splus, N);
        Series<K> n2 = series_mul(n1, cubic_s, N);
        out.t2 = series_mul(n2, S2inv, N);
        K c = one / (K(32) * f3);
        for (auto& x : out.t2) x = x * c;
    }
    // t^3 z1 = (nu-S)^2 (S+nu-2) cubic1 / (64 f^4 S^2)
    {
        Series<K> m2 = series_mul(minus_s, minus_s, N);
        Series<K> n1 = series_mul(m2, splus, N);
        Series<K> n2 = series_mul(n1, cubic1_s, N);
        out.t3z1 = series_mul(n2, S2inv, N);
        K c = one / (K(64) * f4);
        for (auto& x : out.t3z1) x = x * c;
    }
    // t^9 z3 = (nu-S)^5 (S+nu-2)^5 big / (2^22 f^12 S^8)
    {
        Series<K> m = series_mul(minus_s, splus, N);
        Series<K> m5 = {one};
        for (int k = 0; k < 5; ++k) m5 = series_mul(m5, m, N);
        Series<K> n2 = series_mul(m5, big_s, N);
        out.t9z3 = series_mul(n2, S8inv, N);
        K c = one / (K(4194304) * f12);
        for (auto& x : out.t9z3) x = x * c;
    }
    return out;
}

template <class K>
Series<K> series_compose(const Series<K>& f, const Series<K>& g, int N) {
    // g(0) must be 0; Horner from the top
    Series<K> r(N + 1, K(0));
    for (int k = static_cast<int>(f.size()) - 1; k >= 0; --k) {
        r = series_mul(r, g, N);
        r[0] += f[k];
    }
    return r;
}

template <class K>
Rp13Series<K> rp13_generic(const K& nu, int N, bool check_positive) {
    // s-series at the t -> 0 branch point S0 = nu, then revert T(s) = t^2(s)
    RpRaw<K> raw = rp_expansions<K>(nu, N + 2);
    if (!(raw.t2[0] == K(0))) throw std::logic_error("rp13: t^2 does not vanish at the branch point");
    if (raw.t2[1] == K(0)) throw std::domain_error("rp13: branch selection fails (degenerate leading coefficient)");
    Series<K> s_of_T = series_revert(raw.t2, N);
    Rp13Series<K> out;
    out.t3z1 = series_compose(raw.t3z1, s_of_T, N);
    out.t9z3 = series_compose(raw.t9z3, s_of_T, N);
    // t^3 z1 must start at T^2 (z1 odd, starting at t), t^9 z3 at T^5
    for (int j = 0; j < 2 && j <= N; ++j)
        if (!(out.t3z1[j] == K(0))) throw std::logic_error("rp13: t^3 z1 has spurious low-order terms");
    for (int j = 0; j < 5 && j <= N; ++j)
        if (!(out.t9z3[j] == K(0))) throw std::logic_error("rp13: t^9 z3 has spurious low-order terms");
    if (check_positive) {
        for (const auto& c : out.t3z1)
            if (c.sign() < 0) throw std::domain_error("rp13: branch selection fails (negative z1 coefficients)");
    }
    return out;
}

}  // namespace

Rp13Series<Rational> rp13_series(const Rational& nu, int N) {
    if (!(nu > Rational(1))) throw std::invalid_argument("rp13_series: nu > 1 required");
    if (N > 60) throw std::invalid_argument("rp13_series: N cap is 60");
    return rp13_generic<Rational>(nu, N, /*check_positive=*/true);
}

Rp13Series<QuadSurd> rp13_series_crit(int N) {
    CriticalConstants cc = constants_critical();
    return rp13_generic<QuadSurd>(cc.nu_c, N, /*check_positive=*/true);
}

PrecReal appendix_residual(const std::vector<Rational>& H_points, int precision_bits) {
    const int bits = precision_bits;
    CriticalConstants cc = constants_critical();
    CriticalParametrization cp = critical_parametrization();

    // z1, z3 at criticality via the S-parametrization evaluated at S_c = 3 (exact in Q(sqrt7))
    auto eval_at_S3 = [&](int which) {
        // recompute from closed forms at S = 3
        const QuadSurd nu = cc.nu_c;
        QuadSurd S(3);
        QuadSurd f = nu * nu - QuadSurd(1);
        QuadSurd nmS = nu - S, spl = S + nu - QuadSurd(2);
        if (which == 0) {
            QuadSurd cubic = QuadSurd(4) * S * S * S - S * S - QuadSurd(2) * S + nu * nu - QuadSurd(2) * nu;
            return nmS * spl * cubic / (QuadSurd(32) * f * f * f * S * S);
        }
        if (which == 1) {
            QuadSurd cubic1 = QuadSurd(3) * S * S * S - nu * S * S - nu * S + nu * nu - QuadSurd(2) * nu;
            QuadSurd f4 = f * f * f * f;
            return nmS * nmS * spl * cubic1 / (QuadSurd(64) * f4 * S * S);
        }
        QuadSurd nm2 = nu - QuadSurd(2);
        QuadSurd nu2 = nu * nu;
        QuadSurd big(0);
        std::vector<QuadSurd> coeffs = {
            -QuadSurd(3) * nu * nu2 * nm2 * nm2 * nm2,
            QuadSurd(14) * nu2 * nm2 * nm2,
            nu * nm2 * (QuadSurd(9) * nu2 - QuadSurd(18) * nu - QuadSurd(20)),
            -QuadSurd(4) * (QuadSurd(7) * nu2 - QuadSurd(14) * nu - QuadSurd(2)),
            QuadSurd(32) * nu2 * nu2 - QuadSurd(128) * nu * nu2 + QuadSurd(183) * nu2 - QuadSurd(110) * nu +
                QuadSurd(20),
            -QuadSurd(2) * (QuadSurd(32) * nu2 - QuadSurd(64) * nu + QuadSurd(57)),
            -QuadSurd(7) * (QuadSurd(16) * nu2 - QuadSurd(32) * nu + QuadSurd(27)),
            QuadSurd(32) * (QuadSurd(2) * nu2 - QuadSurd(4) * nu + QuadSurd(3)),
            -QuadSurd(16) * (QuadSurd(2) * nu2 - QuadSurd(4) * nu + QuadSurd(3)),
            -QuadSurd(128),
            QuadSurd(160)};
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) big = big * S + *it;
        QuadSurd f12 = f * f;
        f12 = f12 * f12 * f12;  // f^6
        f12 = f12 * f12;        // f^12
        QuadSurd m5 = nmS * spl;
        QuadSurd m5p = m5 * m5;  // ^2
        m5p = m5p * m5p * m5;    // ^5
        QuadSurd S8 = S * S;
        S8 = S8 * S8;  // ^4
        S8 = S8 * S8;  // ^8
        return m5p * big / (QuadSurd(4194304) * f12 * S8);
    };
    QuadSurd t3z1 = eval_at_S3(1);
    QuadSurd t9z3 = eval_at_S3(2);

    const QuadSurd nu = cc.nu_c;
    PrecReal nu_r = surd_eval(nu, bits);
    PrecReal t = cc.t_c(bits);
    PrecReal u_c = cc.u_c(bits);
    PrecReal t2 = t * t;
    PrecReal t3 = t2 * t, t4 = t2 * t2, t5 = t4 * t;
    PrecReal z1 = surd_eval(t3z1, bits) / t3;
    PrecReal z3 = surd_eval(t9z3, bits) / (t4 * t5);
    PrecReal one(1.0, bits);

    // w = -(nu^2-1)^2 t^5 z3 + (nu^2-1)^2 (2 t^5 z1^3 - 3/(nu+1) t^4 z1^2 - (3/4) t^4)
    //     + (nu-3) nu t^3 z1 + t^2
    PrecReal f = nu_r * nu_r - one;
    PrecReal f2 = f * f;
    PrecReal w = -f2 * t5 * z3 +
                 f2 * (PrecReal(2.0, bits) * t5 * z1 * z1 * z1 -
                       PrecReal(3.0, bits) / (nu_r + one) * t4 * z1 * z1 - PrecReal(0.75, bits) * t4) +
                 (nu_r - PrecReal(3.0, bits)) * nu_r * t3 * z1 + t2;

    PrecReal worst(0.0, bits);
    for (const auto& Hq : H_points) {
        if (Hq.is_zero()) throw std::domain_error("appendix_residual: H = 0 is a pole of t y / u");
        PrecReal H(Hq, bits);
        PrecReal u = cp.u_hat_normalized.eval(H) * u_c;
        PrecReal y = cp.z0_hat.eval(H);
        PrecReal tyu = t * y / u;
        PrecReal J = (nu_r - one) * (t * u + tyu * tyu) - tyu;
        PrecReal L = PrecReal(2.0, bits) * tyu + (nu_r + one) * J;
        PrecReal C2 = (nu_r + one) * (nu_r + one) * J * J + PrecReal(2.0, bits) * (nu_r + PrecReal(3.0, bits)) /
                          (nu_r - one) * J -
                      PrecReal(2.0, bits) * f * t2 + PrecReal(2.0, bits) / ((nu_r - one) * (nu_r - one));
        PrecReal inner = ((nu_r + one) * J * J - PrecReal(2.0, bits) * (nu_r - one) * t2);
        inner = inner * inner + PrecReal(4.0, bits) * J * J * J +
                PrecReal(16.0, bits) * (nu_r - one) * (t3 * z1) * J;
        PrecReal C0 = -(nu_r + one) * (nu_r + one) * inner - PrecReal(4.0, bits) * J * J +
                      PrecReal(16.0, bits) * (nu_r + one) * nu_r * t2 * J + PrecReal(16.0, bits) * w;
        PrecReal L2 = L * L;
        PrecReal resid = (L2 * L2 - PrecReal(2.0, bits) * C2 * L2 - C0).abs();
        if (worst < resid) worst = resid;
    }
    return worst;
}

}  // namespace ising
