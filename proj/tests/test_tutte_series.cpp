#include <doctest.h>

#include "ising/coeff_table.hpp"
#include "ising/constants.hpp"

using namespace ising;

namespace {
NuPolynomial nupoly(std::initializer_list<long> coeffs) {
    NuPolynomial p;
    int k = 0;
    for (long c : coeffs) {
        if (c != 0) p += NuPolynomial::nu_power(k, Rational(c));
        ++k;
    }
    return p;
}
}  // namespace

TEST_CASE("seed coefficients") {
    auto t = build_coeff_table_exact(2);
    CHECK(t.coeff(0, 0, 0) == NuPolynomial(1));
    CHECK(t.coeff(1, 1, 0) == NuPolynomial(1));
    CHECK(t.coeff(0, 2, 0) == nupoly({0, 1}));
    CHECK(t.coeff(2, 0, 0) == nupoly({0, 1}));
    // hand-enumerated: unique one-triangle map of the 1-gon, spins +/-
    CHECK(t.coeff(0, 1, 1) == nupoly({0, 1, 1}));
    CHECK(t.coeff(1, 2, 1) == nupoly({0, 1, 1}));
    // no 0-face triangulation of a 14-gon
    CHECK(t.coeff(5, 9, 0).is_zero());
}

TEST_CASE("known coefficient values at nu = 2") {
    auto t = build_coeff_table_evaluated<Rational>(Rational(2), 8);
    CHECK(t.coeff(1, 0, 1) == Rational(6));
    CHECK(t.coeff(1, 0, 3) == Rational(360));
    CHECK(t.coeff(1, 0, 5) == Rational(43416));
    CHECK(t.coeff(1, 0, 7) == Rational(6881760));
    CHECK(t.coeff(3, 0, 1) == Rational(9));
    CHECK(t.coeff(3, 0, 3) == Rational(1323));
    CHECK(t.coeff(3, 0, 5) == Rational(240732));
    CHECK(t.coeff(1, 1, 2) == Rational(69));
    CHECK(t.coeff(1, 1, 4) == Rational(8991));
}

TEST_CASE("support, symmetry, positivity") {
    const int N = 10;
    auto t = build_coeff_table_exact(N);
    for (int n = 0; n <= N; ++n)
        for (int p = 0; p <= n + 3; ++p)
            for (int q = 0; q <= n + 3 - p; ++q) {
                if (p + q > n + 2 || ((p + q) & 1) != (n & 1)) {
                    CHECK(t.coeff(p, q, n).is_zero());
                    continue;
                }
                CHECK(t.coeff(p, q, n) == t.coeff(q, p, n));
                CHECK(t.coeff(p, q, n).all_coeffs_nonnegative());
                // degree bound: #edges = (3n + p + q)/2
                if (!t.coeff(p, q, n).is_zero()) CHECK(t.coeff(p, q, n).degree() * 2 <= 3 * n + p + q);
            }
}

TEST_CASE("evaluated mode matches exact mode") {
    const int N = 8;
    auto ex = build_coeff_table_exact(N);
    Rational nu(7, 3);
    auto ev = build_coeff_table_evaluated<Rational>(nu, N);
    for (int n = 0; n <= N; ++n)
        for (int p = 0; p + 1 <= n + 2; ++p)
            for (int q = 0; p + q <= n + 2; ++q) CHECK(ev.coeff(p, q, n) == ex.coeff(p, q, n).eval<Rational>(nu));
}

TEST_CASE("double mode with rescale matches rational mode") {
    const int N = 12;
    double nu = 2.0, s = 0.05;
    auto ev = build_coeff_table_evaluated<double>(nu, N, s);
    auto ra = build_coeff_table_evaluated<Rational>(Rational(2), N);
    double sp = 1.0;
    for (int n = 0; n <= N; ++n) {
        double expect = ra.coeff(1, 0, n).to_double() * sp;
        CHECK(ev.coeff(1, 0, n) == doctest::Approx(expect).epsilon(1e-12));
        sp *= s;
    }
}

TEST_CASE("functional equations hold to order 10") {
    auto t = build_coeff_table_exact(11);
    auto rep = verify_functional_equations(t, 10);
    INFO(rep.summary());
    CHECK(rep.all_pass());
}

TEST_CASE("mutation in the table is caught at the right order") {
    auto t = build_coeff_table_exact(6);
    t.set_coeff_for_test(0, 1, 1, NuPolynomial::nu_power(1));  // corrupt nu+nu^2 -> nu
    auto rep = verify_functional_equations(t, 5);
    CHECK_FALSE(rep.all_pass());
    int earliest = 1000;
    for (const auto& c : rep.checks)
        if (c.first_failing_order >= 0) earliest = std::min(earliest, c.first_failing_order);
    CHECK(earliest == 1);
}

TEST_CASE("eval_partition basics") {
    CriticalConstants cc = constants_critical();
    double nu_c = cc.nu_c.to_double();
    double t_c = cc.t_c(64).to_double();
    auto tbl = build_coeff_table_evaluated<double>(nu_c, 40, t_c);
    auto pv = eval_partition(tbl, 0, 0, 1.0, TailMode::none);
    CHECK(pv.value == 1.0);
    CHECK(pv.truncation_error == 0.0);
    auto z10 = eval_partition(tbl, 1, 0, 1.0, TailMode::extrapolate);
    CHECK(z10.heuristic_bound);
    CHECK(z10.value > 0.8);
    CHECK(z10.value < 0.88);
    // t = 0: no constant term for (0,1)
    auto z01 = eval_partition(tbl, 0, 1, 0.0, TailMode::none);
    CHECK(z01.value == 0.0);
}
