#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ising/constants.hpp"
#include "ising/parametrization.hpp"
#include "ising/precreal.hpp"
#include "ising/quadsurd.hpp"
#include "ising/rational.hpp"

#include <random>

using namespace ising;

TEST_CASE("rational basics") {
    Rational a(3, 6);
    CHECK(a == Rational(1, 2));
    CHECK(a.num_str() == "1");
    CHECK(a.den_str() == "2");
    CHECK((a + a).is_one());
    CHECK((a - a).is_zero());
    CHECK((Rational(-4, 8)).str() == "-1/2");
    CHECK_THROWS(Rational(1, 2) / Rational(0));
    CHECK(Rational("22/7") * Rational(7) == Rational(22));
}

TEST_CASE("quadsurd field axioms on random samples") {
    std::mt19937_64 rng(42);
    auto rnd = [&]() {
        std::uniform_int_distribution<long> d(-20, 20);
        long den1 = 1 + std::abs(d(rng)) % 7, den2 = 1 + std::abs(d(rng)) % 7;
        return QuadSurd(Rational(d(rng), den1), Rational(d(rng), den2));
    };
    for (int i = 0; i < 500; ++i) {
        QuadSurd x = rnd(), y = rnd(), z = rnd();
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        if (!x.is_zero()) CHECK(x * x.inv() == QuadSurd(1));
    }
}

TEST_CASE("surd_sign examples") {
    CHECK(surd_sign(QuadSurd(Rational(1), Rational(2))) == 1);
    CHECK(surd_sign(QuadSurd(Rational(-7), Rational(13))) == 1);  // 13^2*7 = 1183 > 49
    CHECK(surd_sign(QuadSurd(Rational(8), Rational(-3))) == 1);   // 64 > 63
    CHECK(surd_sign(QuadSurd(Rational(-8), Rational(3))) == -1);
    CHECK(surd_sign(QuadSurd(0)) == 0);
}

TEST_CASE("surd_sign agrees with surd_eval at 128 bits") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-1000, 1000);
    int checked = 0;
    for (int i = 0; i < 10000; ++i) {
        QuadSurd x(Rational(d(rng), 1 + std::abs(d(rng)) % 97), Rational(d(rng), 1 + std::abs(d(rng)) % 97));
        PrecReal v = surd_eval(x, 128);
        // skip magnitudes below 2^-100 (none occur with these integer grids unless exactly zero)
        if (x.is_zero()) continue;
        ++checked;
        CHECK(surd_sign(x) == v.sign());
    }
    CHECK(checked > 9000);
}

TEST_CASE("surd_eval examples") {
    PrecReal v = surd_eval(QuadSurd(Rational(1), Rational(2)), 64);
    CHECK(std::abs(v.to_double() - 6.2915026221291811) < 1e-14);
    CHECK(surd_eval(QuadSurd(0), 64).to_double() == 0.0);
    // 5/(6(7+sqrt7)) rationalized = 5(7-sqrt7)/252
    QuadSurd tu = QuadSurd(Rational(5)) / (QuadSurd(Rational(6)) * QuadSurd(Rational(7), Rational(1)));
    CHECK(tu == QuadSurd(Rational(35, 252), Rational(-5, 252)));
    CHECK(std::abs(surd_eval(tu, 64).to_double() - 0.08639382319316288) < 1e-15);
}

TEST_CASE("critical constants") {
    CriticalConstants cc = constants_critical();
    CHECK(cc.nu_c == QuadSurd(Rational(1), Rational(2)));
    CHECK(cc.t_over_u == QuadSurd(Rational(35, 252), Rational(-5, 252)));
    // t_c^2 = 10/(64 (7+sqrt7)^3)
    QuadSurd sp(Rational(7), Rational(1));
    CHECK(cc.t_c_squared * QuadSurd(64) * sp * sp * sp == QuadSurd(10));
    CHECK(cc.t_times_u == cc.t_c_squared * QuadSurd(Rational(6, 5)) * sp);
    CHECK(std::abs(cc.t_c(64).to_double() - 0.013194894496019997) < 1e-16);
    CHECK(std::abs(cc.u_c(64).to_double() - 0.15272960506121260) < 1e-15);
    CHECK(cc.mu_squared == Rational(1, 112));
    CHECK(cc.c_infty_squared == Rational(1, 63));
    CHECK(cc.mu() * cc.mu() == QuadSurd(cc.mu_squared));
    CHECK(cc.c_infty() * cc.c_infty() == QuadSurd(cc.c_infty_squared));
    // positivity
    CHECK(cc.t_c_squared.sign() == 1);
    CHECK(cc.t_over_u.sign() == 1);
    CHECK(cc.t_times_u.sign() == 1);
}

TEST_CASE("lemma 5 normalization reduces exactly") {
    // (nu_c+1) t_c (Z0(u_c)/u_c + Z1(u_c)) = (nu_c+1) (t_c/u_c) (Z0(u_c) + u_c Z1(u_c)) = 1
    CriticalConstants cc = constants_critical();
    QuadSurd z0(Rational(3, 5), Rational(3, 10));   // (3/10)(2+sqrt7)
    QuadSurd z1u(Rational(-3, 5), Rational(3, 10)); // (3/10)(sqrt7-2)
    QuadSurd lhs = (cc.nu_c + QuadSurd(1)) * cc.t_over_u * (z0 + z1u);
    CHECK(lhs == QuadSurd(1));
}
