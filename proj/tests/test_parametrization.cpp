#include <doctest.h>

#include "ising/coeff_table.hpp"
#include "ising/constants.hpp"
#include "ising/parametrization.hpp"

using namespace ising;

TEST_CASE("eval_param pinned values") {
    // u_hat normalized: H=1 -> 1 (u = u_c)
    CHECK(eval_param(ParamWhich::u_hat, QuadSurd(1)) == QuadSurd(1));
    CHECK(eval_param(ParamWhich::u_hat, QuadSurd(0)) == QuadSurd(0));
    // a_hat normalized: H=0 -> 1
    CHECK(eval_param(ParamWhich::a_hat, QuadSurd(0)) == QuadSurd(1));
    // z0_hat at 1: (3/10)(2+sqrt7)
    CHECK(eval_param(ParamWhich::z0_hat, QuadSurd(1)) == QuadSurd(Rational(3, 5), Rational(3, 10)));
    // z1_hat normalized at 1: (3/10)(sqrt7-2)
    CHECK(eval_param(ParamWhich::z1_hat, QuadSurd(1)) == QuadSurd(Rational(-3, 5), Rational(3, 10)));
    // A(u_c)/a0 = 4
    CHECK(eval_param(ParamWhich::a_hat, QuadSurd(1)) == QuadSurd(4));
}

TEST_CASE("u_hat equals the theorem form exactly") {
    // u_c(1 - (2/3)(1-H)^3 - (1/3)(1-H)^4) vs (u_c/3) H (10 - 12H + 6H^2 - H^3)
    for (long num = -7; num <= 9; ++num) {
        QuadSurd H(Rational(num, 4));
        QuadSurd omh = QuadSurd(1) - H;
        QuadSurd thm = QuadSurd(1) - QuadSurd(Rational(2, 3)) * omh * omh * omh -
                       QuadSurd(Rational(1, 3)) * omh * omh * omh * omh;
        CHECK(eval_param(ParamWhich::u_hat, H) == thm);
    }
}

TEST_CASE("revert_u_hat") {
    const int N = 24;
    auto H = revert_u_hat(N);
    CHECK(H[0].is_zero());
    CHECK(H[1] == Rational(3, 10));
    // defining property: uhat_n(H(w)) = w exactly
    Series<Rational> f = {Rational(0), Rational(10, 3), Rational(-4), Rational(2), Rational(-1, 3)};
    auto comp = poly_compose(f, H, N);
    for (int n = 0; n <= N; ++n) CHECK(comp[n] == (n == 1 ? Rational(1) : Rational(0)));
}

TEST_CASE("boundary series pinned values") {
    auto bs = boundary_series(16);
    CHECK(bs.zeta[0] == QuadSurd(1));
    // zeta_1 = z_{1,0} u_c = (3/10) sqrt7 - 33/50
    CHECK(bs.zeta[1] == QuadSurd(Rational(-33, 50), Rational(3, 10)));
    CHECK(bs.alpha[0] == Rational(1));
    CHECK(bs.alpha[1] == Rational(1, 3));
    CHECK(bs.alpha[2] == Rational(1, 5));
    // xi_0 = z_{0,1} u_c = same as zeta_1 by symmetry z_{1,0} = z_{0,1}
    CHECK(bs.xi[0] == bs.zeta[1]);
    // row sums: W_0 = Z0(u_c), W_1 = u_c Z1(u_c)
    CHECK(bs.w_row[0] == QuadSurd(Rational(3, 5), Rational(3, 10)));
    CHECK(bs.w_row[1] == QuadSurd(Rational(-3, 5), Rational(3, 10)));
    // positivity of everything
    for (int i = 0; i <= 16; ++i) {
        CHECK(bs.zeta[i].sign() >= (i == 0 ? 1 : 1));
        CHECK(bs.xi[i].sign() == 1);
        CHECK(bs.alpha[i].sign() == 1);
        CHECK(bs.w_row[i].sign() == 1);
    }
}

TEST_CASE("numeric boundary series matches exact") {
    auto bs = boundary_series(20);
    auto bn = boundary_series_numeric(20);
    for (int i = 0; i <= 20; ++i) {
        CHECK(bn.zeta[i] == doctest::Approx(bs.zeta[i].to_double()).epsilon(1e-12));
        CHECK(bn.xi[i] == doctest::Approx(bs.xi[i].to_double()).epsilon(1e-12));
        CHECK(bn.alpha[i] == doctest::Approx(bs.alpha[i].to_double()).epsilon(1e-12));
        CHECK(bn.w_row[i] == doctest::Approx(bs.w_row[i].to_double()).epsilon(1e-12));
    }
}

TEST_CASE("values at u_c and the exact identities") {
    auto cv = values_at_uc();
    CHECK(cv.Z0_at_uc == QuadSurd(Rational(3, 5), Rational(3, 10)));
    CHECK(cv.Z1_uc == QuadSurd(Rational(-3, 5), Rational(3, 10)));
    // u_c Z0'(u_c) = (3/10) sqrt7 + 3/20 ; u_c^2 Z1'(u_c) = 3/20
    CHECK(cv.dZ0_uc == QuadSurd(Rational(3, 20), Rational(3, 10)));
    CHECK(cv.dZ1_uc2 == QuadSurd(Rational(3, 20)));
    CHECK(cv.A_at_uc_over_a0 == QuadSurd(4));
    CHECK(cv.b_ratio == Rational(3, 5));

    // Lemma 5 normalization
    CriticalConstants cc = constants_critical();
    CHECK((cc.nu_c + QuadSurd(1)) * cc.t_over_u * (cv.Z0_at_uc + cv.Z1_uc) == QuadSurd(1));
}

TEST_CASE("drift and tails") {
    auto dt = drift_and_tails();
    CriticalConstants cc = constants_critical();
    CHECK(dt.mu == cc.mu());
    CHECK(dt.mu_sum == cc.mu_sum());
    CHECK(dt.mu * QuadSurd(Rational(4, 3)) == cc.c_infty());  // c_inf = (4/3) mu
    CHECK(dt.cx_over_cy == QuadSurd(Rational(2), Rational(3)) / QuadSurd(Rational(2), Rational(1)));
    CHECK(std::abs(dt.mu.to_double() - 0.09449111825230681) < 1e-15);
    CHECK(std::abs(dt.cx_over_cy.to_double() - 2.1389982519138793) < 1e-12);
    // c_x > c_y
    CHECK(surd_sign(dt.cx_over_cy - QuadSurd(1)) == 1);
}

TEST_CASE("rp13 series matches the recurrence at nu = 2") {
    const int N = 12;  // T = t^2 order; covers z1 up to t^{21}
    auto rp = rp13_series(Rational(2), N);
    auto tab = build_coeff_table_evaluated<Rational>(Rational(2), 21);
    // [T^j] t^3 z1 = [t^{2j-3}] z1
    int nonzero = 0;
    for (int j = 2; j <= N; ++j) {
        CHECK(rp.t3z1[j] == tab.coeff(1, 0, 2 * j - 3));
        if (!rp.t3z1[j].is_zero()) ++nonzero;
    }
    CHECK(nonzero >= 10);
    // [T^j] t^9 z3 = [t^{2j-9}] z3
    for (int j = 5; j <= N; ++j) CHECK(rp.t9z3[j] == tab.coeff(3, 0, 2 * j - 9));
    // z3 series constant term 0
    CHECK(rp.t9z3[0].is_zero());
}

TEST_CASE("rp13 series at nu_c matches the QuadSurd recurrence") {
    const int N = 8;
    auto rp = rp13_series_crit(N);
    CriticalConstants cc = constants_critical();
    auto tab = build_coeff_table_evaluated<QuadSurd>(cc.nu_c, 13);
    for (int j = 2; j <= N; ++j) CHECK(rp.t3z1[j] == tab.coeff(1, 0, 2 * j - 3));
    for (int j = 5; j <= N; ++j) CHECK(rp.t9z3[j] == tab.coeff(3, 0, 2 * j - 9));
}

TEST_CASE("zeta/xi agree with the critical recurrence within truncation") {
    // z_{p,0}(nu_c, t_c) and z_{p,1}(nu_c, t_c) from the double table vs the parametrization
    CriticalConstants cc = constants_critical();
    double nu_c = cc.nu_c.to_double();
    double t_c = cc.t_c(64).to_double();
    double u_c = cc.u_c(64).to_double();
    auto tbl = build_coeff_table_evaluated<double>(nu_c, 120, t_c);
    auto bs = boundary_series_numeric(12);
    double ucp = 1.0;
    for (int p = 0; p <= 10; ++p) {
        auto zv = eval_partition(tbl, p, 0, 1.0, TailMode::extrapolate);
        if (p > 0) CHECK(std::abs(zv.value * ucp - bs.zeta[p]) < 3 * zv.truncation_error * ucp + 1e-12);
        auto zv1 = eval_partition(tbl, p, 1, 1.0, TailMode::extrapolate);
        CHECK(std::abs(zv1.value * ucp * u_c - bs.xi[p]) < 3 * zv1.truncation_error * ucp * u_c + 1e-12);
        ucp *= u_c;
    }
}

TEST_CASE("appendix A residual") {
    std::vector<Rational> pts = {Rational(1, 2), Rational(1), Rational(3, 10), Rational(4, 5), Rational(-1, 3)};
    PrecReal r = appendix_residual(pts, 256);
    CHECK(r.to_double() < 1e-20);
    CHECK_THROWS(appendix_residual({Rational(0)}, 64));
    // empty point list -> residual 0
    CHECK(appendix_residual({}, 64).to_double() == 0.0);
}
