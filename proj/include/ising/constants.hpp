#pragma once

#include "ising/precreal.hpp"
#include "ising/quadsurd.hpp"

namespace ising {

// Critical point of the model.  t_c = sqrt(10)/(8 (7+sqrt7)^{3/2}) and
// u_c = (6/5)(7+sqrt7) t_c are not themselves in Q(sqrt7), but t_c^2,
// t_c*u_c and t_c/u_c are, so those are what we store exactly.
struct CriticalConstants {
    QuadSurd nu_c;          // 1 + 2 sqrt7
    QuadSurd t_c_squared;   // 10 / (64 (7+sqrt7)^3)
    QuadSurd t_over_u;      // t_c/u_c = 5(7-sqrt7)/252
    QuadSurd t_times_u;     // t_c*u_c = (4-sqrt7)/672
    Rational mu_squared;    // mu^2 = 1/112,  mu = 1/(4 sqrt7) = sqrt7/28
    Rational c_infty_squared;  // c_inf^2 = 1/63,  c_inf = 1/(3 sqrt7) = sqrt7/21

    // mu and c_infty are themselves in Q(sqrt7):
    QuadSurd mu() const { return QuadSurd(Rational(0), Rational(1, 28)); }
    QuadSurd mu_sum() const { return QuadSurd(Rational(0), Rational(1, 14)); }  // 1/(2 sqrt7)
    QuadSurd c_infty() const { return QuadSurd(Rational(0), Rational(1, 21)); }

    QuadSurd u_c_squared() const {
        // u_c^2 = (36/25)(7+sqrt7)^2 t_c^2
        QuadSurd f(Rational(7), Rational(1));
        return QuadSurd(Rational(36, 25)) * f * f * t_c_squared;
    }

    PrecReal t_c(int bits) const { return surd_eval(t_c_squared, bits + 8).sqrt(); }
    PrecReal u_c(int bits) const {
        QuadSurd f = QuadSurd(Rational(6, 5)) * QuadSurd(Rational(7), Rational(1));
        return surd_eval(f, bits + 8) * t_c(bits + 8);
    }
};

inline CriticalConstants constants_critical() {
    CriticalConstants c;
    c.nu_c = QuadSurd(Rational(1), Rational(2));
    // t_c^2 = 10 / (64 (7+sqrt7)^3); (7+sqrt7)^3 = 490 + 182 sqrt7
    QuadSurd seven_plus(Rational(7), Rational(1));
    c.t_c_squared = QuadSurd(Rational(10)) / (QuadSurd(Rational(64)) * seven_plus * seven_plus * seven_plus);
    c.t_over_u = QuadSurd(Rational(5)) / (QuadSurd(Rational(6)) * seven_plus);
    c.t_times_u = QuadSurd(Rational(6, 5)) * seven_plus * c.t_c_squared;
    c.mu_squared = Rational(1, 112);
    c.c_infty_squared = Rational(1, 63);
    return c;
}

}  // namespace ising
