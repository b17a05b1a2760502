#include <doctest.h>

#include "ising/laws.hpp"

#include <cmath>
#include <map>

using namespace ising;

TEST_CASE("displacement table") {
    CHECK(displacement({EventFamily::Cp, 0}, 5).dx == 2);
    CHECK(displacement({EventFamily::Cp, 0}, 5).dy == -1);
    CHECK(displacement({EventFamily::Cm, 0}, 5).dy == 1);
    CHECK(displacement({EventFamily::Rm, 0}, 5).dx == 0);
    CHECK(displacement({EventFamily::Rm, 0}, 5).dy == 0);
    // half-plane p=7: Rm(7+3) -> (-7,-3)
    auto d = displacement({EventFamily::Rm, 10}, 7);
    CHECK(d.dx == -7);
    CHECK(d.dy == -3);
    auto d2 = displacement({EventFamily::Rp, 10}, 7);
    CHECK(d2.dx == -6);
    CHECK(d2.dy == -4);
    auto d3 = displacement({EventFamily::Lp, 2}, 7);
    CHECK(d3.dx == 1);
    CHECK(d3.dy == -3);
}

TEST_CASE("fullplane law: exact masses") {
    auto law = law_fullplane(16);
    // P(Cm) = nu_c t_c/u_c = 5(13 sqrt7 - 7)/252
    CHECK(law.p_Cm == QuadSurd(Rational(-35, 252), Rational(65, 252)));
    CHECK(std::abs(law.p_Cm.to_double() - 0.5435483061) < 1e-9);
    CHECK(law.total_mass() == QuadSurd(1));
    // mass(Rp)/mass(Lm) = 1/nu_c
    CHECK(law.mass_Rp / law.mass_Lm == constants_critical().nu_c.inv());
    // P(X1+Y1 = 1) = (nu_c+1) t_c/u_c
    CriticalConstants cc = constants_critical();
    CHECK(law.p_Cp + law.p_Cm == (cc.nu_c + QuadSurd(1)) * cc.t_over_u);
    // per-k weights positive
    for (int k = 0; k < 8; ++k) {
        CHECK(law.weight({EventFamily::Lm, k}).sign() == 1);
        CHECK(law.weight({EventFamily::Rm, k}).sign() == 1);
    }
}

TEST_CASE("halfplane law: exact normalization for p = 0..50") {
    auto bs = boundary_series(54);
    for (long p = 0; p <= 50; ++p) {
        auto law = law_halfplane(p, bs);
        CHECK(law.exactly_normalized());
        CHECK(law.normalization_defect(128).to_double() < 1e-12);
    }
}

TEST_CASE("halfplane law p=0 examples") {
    auto bs = boundary_series(8);
    auto law = law_halfplane(0, bs);
    // P(Cp) = (t/u) alpha_2 = (t/u)/5
    CriticalConstants cc = constants_critical();
    CHECK(law.p_Cp == cc.t_over_u * QuadSurd(Rational(1, 5)));
    CHECK(law.p_Cp.sign() == 1);
}

TEST_CASE("fullplane sampler: empirical frequencies match exact masses") {
    FullplaneSampler sampler(2048, 48);
    RngStream rng(20240817, 0);
    const int N = 1000000;
    long n_cm = 0, n_lm = 0, n_cp = 0;
    double sum_dx = 0, sum_dy = 0;
    for (int i = 0; i < N; ++i) {
        PeelingEvent e = sampler.sample(rng);
        if (e.family == EventFamily::Cm) ++n_cm;
        if (e.family == EventFamily::Cp) ++n_cp;
        if (e.family == EventFamily::Lm) ++n_lm;
        auto d = displacement(e, kInfinitePerimeter);
        sum_dx += d.dx;
        sum_dy += d.dy;
    }
    double p_cm = 0.5435483061292135;
    double sigma_cm = std::sqrt(p_cm * (1 - p_cm) / N);
    CHECK(std::abs(double(n_cm) / N - p_cm) < 3 * sigma_cm);
    double p_lm = sampler.law().mass_Lm.to_double();
    CHECK(std::abs(p_lm - 0.2140045) < 2e-7);
    double sigma_lm = std::sqrt(p_lm * (1 - p_lm) / N);
    CHECK(std::abs(double(n_lm) / N - p_lm) < 3 * sigma_lm);
    // drift sanity (loose: heavy tails)
    double mu = 0.09449111825230681;
    CHECK(std::abs(sum_dx / N - mu) < 0.02);
    CHECK(std::abs(sum_dy / N - mu) < 0.02);
}

TEST_CASE("fullplane tail exponent from exact weights") {
    // slope of log P(X1 = -k) vs log k on [10, 200] near -7/3
    auto bn = boundary_series_numeric(256);
    CriticalConstants cc = constants_critical();
    double nu = cc.nu_c.to_double(), tu = cc.t_over_u.to_double();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int k = 10; k <= 200; ++k) {
        double w = tu * bn.zeta[k + 2] + nu * tu * bn.xi[k];  // P(X1=-k) = P(Rp_{k+1}) + P(Rm_k)
        double lx = std::log(k), ly = std::log(w);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(std::abs(slope + 7.0 / 3.0) < 0.05);
}

TEST_CASE("p * P(Rm(p)) stabilizes (hit-zero rate)") {
    HalfplaneSampler hs(16384);
    // P(Rm(p)) = nu tu xi_p / alpha_p ~ const / p
    CriticalConstants cc = constants_critical();
    double nu = cc.nu_c.to_double(), tu = cc.t_over_u.to_double();
    double v1 = 1000.0 * nu * tu * hs.xi(1000) / hs.alpha(1000);
    double v2 = 10000.0 * nu * tu * hs.xi(10000) / hs.alpha(10000);
    CHECK(std::abs(v1 / v2 - 1.0) < 0.02);
}

TEST_CASE("finite outcomes: labels and regions match the first-event table") {
    // p=3, q=5 exercises all rows
    auto outs = finite_peel_outcomes(3, 5);
    // every kept region is a valid Dobrushin state
    for (const auto& o : outs) {
        CHECK(o.kept_p >= 0);
        CHECK(o.kept_q >= 0);
        if (o.has_swallow) {
            CHECK(o.sw_p >= 0);
            CHECK(o.sw_q >= 0);
            // swallowed + kept recompose the old boundary plus the chord
            int plus_total = o.sw_p + o.kept_p;
            int minus_total = o.sw_q + o.kept_q;
            if (o.spin == Spin::plus) {
                CHECK(plus_total == 3 + 2);      // p + 1 old + 2 chord-sides... (p+2 total with s=+)
                CHECK(minus_total == 5 - 1);
            } else {
                CHECK(plus_total == 3);
                CHECK(minus_total == 5 + 1);
            }
        }
    }
    // table ranges: L events up to floor((q-1)/2), R events k <= p, R_{p+k} with 0 < k < (q-1)/2
    std::map<int, int> count;
    for (const auto& o : outs) {
        if (o.event.family == EventFamily::Lp) {
            CHECK(o.event.k <= (5 - 1) / 2);
            ++count[0];
        }
        if (o.event.family == EventFamily::Rp) {
            if (o.event.k > 3) {
                CHECK(o.event.k - 3 >= 1);
                CHECK(2 * (o.event.k - 3) < 5 - 1);
            }
            ++count[1];
        }
    }
    CHECK(count[0] == 3);  // Lp_0, Lp_1, Lp_2 (k <= (q-1)/2 = 2)
    CHECK(count[1] == 5);  // Rp_0..Rp_3 and Rp_{3+1}
}

TEST_CASE("finite law sums to one within truncation defect") {
    CriticalConstants cc = constants_critical();
    double nu_c = cc.nu_c.to_double();
    double t_c = cc.t_c(64).to_double();
    auto tbl = build_coeff_table_evaluated<double>(nu_c, 160, t_c);
    for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 1}, {2, 3}, {4, 2}, {0, 2}}) {
        auto law = law_finite(p, q, tbl, t_c);
        CHECK(law.normalization_defect < 2e-3);
        for (double w : law.probs) CHECK(w >= 0.0);
        if (p == 1 && q == 1) CHECK(law.termination_prob > 0.0);
    }
}

TEST_CASE("finite law converges to the halfplane law as q grows") {
    CriticalConstants cc = constants_critical();
    double nu_c = cc.nu_c.to_double();
    double t_c = cc.t_c(64).to_double();
    auto tbl = build_coeff_table_evaluated<double>(nu_c, 200, t_c);
    auto bs = boundary_series(8);
    auto half = law_halfplane(2, bs);
    double prev = 1e9;
    for (int q : {40, 80, 160}) {
        auto law = law_finite(2, q, tbl, t_c);
        // compare P(Cp)
        double cp = 0;
        for (size_t i = 0; i < law.outcomes.size(); ++i)
            if (law.outcomes[i].event.family == EventFamily::Cp) cp += law.probs[i];
        double diff = std::abs(cp - half.p_Cp.to_double());
        CHECK(diff < prev + 1e-12);
        prev = diff;
    }
    CHECK(prev < 0.02);
}
