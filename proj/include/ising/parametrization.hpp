#pragma once

#include "ising/constants.hpp"
#include "ising/precreal.hpp"
#include "ising/quadsurd.hpp"
#include "ising/rational.hpp"
#include "ising/series.hpp"

#include <string>
#include <vector>

namespace ising {

// Univariate rational function with QuadSurd coefficients (numerator/denominator
// polynomial coefficient lists, low degree first).
struct RationalFunction1V {
    std::vector<QuadSurd> num;
    std::vector<QuadSurd> den;  // {1} for polynomials

    QuadSurd eval(const QuadSurd& x) const;
    PrecReal eval(const PrecReal& x) const;
};

// The critical rational parametrizations, exactly, in u_c-normalized form:
//   u/u_c      = uhat_n(H)  = (1/3) H (10 - 12H + 6H^2 - H^3)            (rational coeffs)
//   Z_0        = z0hat(H)   = (1/10)(1-(1-s7)H+3H^2-H^3)(10-12H+6H^2-H^3)
//   u_c * Z_1  = z1hat_n(H) = (3/10)(s7-1+H - 3(4-3H+H^2)/(10-12H+6H^2-H^3))
//   A/a_0      = ahat_n(H)  = (3H^2-8H+9)/(H^2-3H+3)^2                   (rational coeffs)
// a_0 = (1/10)(3/2)^{7/3}; Theorem-form uhat: u_c(1 - (2/3)(1-H)^3 - (1/3)(1-H)^4).
struct CriticalParametrization {
    RationalFunction1V u_hat_normalized;   // u/u_c
    RationalFunction1V z0_hat;             // Z_0
    RationalFunction1V z1_hat_normalized;  // u_c Z_1
    RationalFunction1V a_hat_normalized;   // A/a_0
};

CriticalParametrization critical_parametrization();

enum class ParamWhich { u_hat, z0_hat, z1_hat, a_hat };

// Exact evaluation; u_hat is returned as u/u_c, z1_hat as u_c*Z_1, a_hat as A/a_0.
QuadSurd eval_param(ParamWhich which, const QuadSurd& H);
// Numeric evaluation carrying the u_c / (3/2)^{7/3} factors.
PrecReal eval_param(ParamWhich which, const PrecReal& H, int precision_bits);

// H(w) with u = u_c w: rational coefficients, H(w) = (3/10) w + O(w^2),
// uhat_n(H(w)) = w exactly to order N.
Series<Rational> revert_u_hat(int N);

// Exact normalized boundary data at criticality:
//   zeta_p  = z_{p,0} u_c^p          (QuadSurd)
//   xi_p    = z_{p,1} u_c^{p+1}      (QuadSurd)
//   alpha_p = a_p u_c^p / a_0        (Rational)
//   w_row_p = Z_p(u_c) u_c^p         (QuadSurd)  row sums of the full table,
// the last from the closed form of Z(u,v) sliced at u = u_c.
struct BoundarySeries {
    std::vector<QuadSurd> zeta;
    std::vector<QuadSurd> xi;
    std::vector<Rational> alpha;
    std::vector<QuadSurd> w_row;
};

BoundarySeries boundary_series(int N);

// double-precision flavor of the same arrays, for large-index work
struct BoundarySeriesNumeric {
    std::vector<double> zeta, xi, alpha, w_row;
};
BoundarySeriesNumeric boundary_series_numeric(int N);

// Exact critical values and u_c-normalized derivatives, via matched-order
// Taylor ratios at H = 1 (u_hat'(1) = 0, so the chain rule is an 0/0 limit).
struct CriticalValues {
    QuadSurd Z0_at_uc;        // (3/10)(2+s7)
    QuadSurd Z1_uc;           // u_c Z_1(u_c) = (3/10)(s7-2)
    QuadSurd dZ0_uc;          // u_c Z_0'(u_c)
    QuadSurd dZ1_uc2;         // u_c^2 Z_1'(u_c)
    QuadSurd A_at_uc_over_a0; // 4
    Rational b_ratio;         // Ahat'(1)/(3/2)^{7/3} = 3/5
};

CriticalValues values_at_uc();

struct DriftAndTails {
    QuadSurd mu;         // 1/(4 sqrt7), asserted equal to the Table-2 expectation
    QuadSurd mu_sum;     // E[X1+Y1] = 1/(2 sqrt7)
    QuadSurd cx_over_cy; // (2+3 sqrt7)/(2+sqrt7)
};

// Computes the drift from the critical values and asserts the exact identities.
DriftAndTails drift_and_tails();

// Series of t^3 z_1 and t^9 z_3 in T = t^2 from the rational parametrization in S,
// expanded at the t -> 0 branch point S = nu and reverted.  Coefficients exact.
// K is Rational (rational nu) or QuadSurd (nu = nu_c).
template <class K>
struct Rp13Series {
    Series<K> t3z1;  // coefficients of T^j
    Series<K> t9z3;
};

Rp13Series<Rational> rp13_series(const Rational& nu, int N);
Rp13Series<QuadSurd> rp13_series_crit(int N);

// |L^4 - 2 C2(J) L^2 - C0(J)| at (u, Z_0(u)) = (uhat(H), z0hat(H)), nu = nu_c,
// t = t_c, z_1/z_3 from the S-parametrization at S_c = 3. Returns the max residual.
PrecReal appendix_residual(const std::vector<Rational>& H_points, int precision_bits);

}  // namespace ising
