#pragma once

#include "ising/coeff_table.hpp"
#include "ising/constants.hpp"
#include "ising/parametrization.hpp"
#include "ising/rng.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace ising {

enum class EventFamily : uint8_t { Cp, Cm, Lp, Lm, Rp, Rm };

// One peeling step outcome.  k is the family index; for R-events in the finite
// and half-plane regimes k may exceed p (the R_{p+j} rows of the law tables).
struct PeelingEvent {
    EventFamily family;
    long k = 0;
};

struct Displacement {
    long dx = 0, dy = 0;
};

constexpr long kInfinitePerimeter = std::numeric_limits<long>::max();

// (X1, Y1) of an event, depending on the current +-perimeter p
// (p = kInfinitePerimeter in the full-plane regime).
Displacement displacement(const PeelingEvent& e, long p);

const char* family_name(EventFamily f);

// ---------------------------------------------------------------------------
// full-plane law (Table of P_inf): exact weights in Q(sqrt7)
// ---------------------------------------------------------------------------

struct FullplaneLaw {
    CriticalConstants cc;
    BoundarySeries bs;  // exact zeta/xi head

    QuadSurd p_Cp, p_Cm;
    QuadSurd mass_Lp, mass_Lm, mass_Rp, mass_Rm;  // family masses, closed form

    // exact weight of a single event, k <= bs length
    QuadSurd weight(const PeelingEvent& e) const;
    QuadSurd total_mass() const { return p_Cp + p_Cm + mass_Lp + mass_Lm + mass_Rp + mass_Rm; }
};

FullplaneLaw law_fullplane(int exact_head = 72);

// Sampler over the full-plane law.
//
// Within-draw accuracy: family selection and events with k below the exact
// head use thresholds exactly rounded to the 2^-128 grid from Q(sqrt7) masses
// (ties broken by a second 64-bit draw), events up to k_table use
// double-precision weights (relative error ~1e-15 confined to a ~1e-3 mass
// band), and the k-tail beyond k_table (total mass ~1e-7, itself exact) is
// placed by a fitted 4-term power law.  Net per-draw sampling bias is below
// 2^-60.
class FullplaneSampler {
public:
    explicit FullplaneSampler(int k_table = 8192, int exact_head = 64);

    PeelingEvent sample(RngStream& rng) const;
    Displacement sample_displacement(RngStream& rng) const {
        return displacement(sample(rng), kInfinitePerimeter);
    }

    const FullplaneLaw& law() const { return law_; }
    int k_table() const { return k_table_; }

private:
    struct Entry {
        uint64_t hi;
        uint64_t lo;
        int32_t k;
        EventFamily family;
    };
    FullplaneLaw law_;
    int k_table_;
    std::vector<Entry> merged_;           // cumulative thresholds in scan order
    std::array<double, 6> tail_mass_;     // per family, mass beyond k_table (exact head arithmetic)
    double tail_total_;
    // fitted tail models: survival S(k) ~ k^{-4/3}(c0 + c1/k + c2/k^2) per L/R shape
    std::array<double, 3> tail_fit_zeta_, tail_fit_xi_;
    long tail_invert(double x, const std::array<double, 3>& fit, double mass_beyond) const;
};

// ---------------------------------------------------------------------------
// half-plane law (Table of P^{(p)}): exact masses in Q(sqrt7)
// ---------------------------------------------------------------------------

struct HalfplaneLaw {
    long p;
    QuadSurd p_Cp, p_Cm;
    QuadSurd mass_Lp, mass_Lm;
    QuadSurd mass_Rp_head, mass_Rm_head;  // k = 0..p
    QuadSurd mass_Rp_tail, mass_Rm_tail;  // k > p rows, closed form via row sums
    QuadSurd weight_Rp(long k, const BoundarySeries& bs) const;  // k <= p
    QuadSurd weight_Rm(long k, const BoundarySeries& bs) const;
    QuadSurd total_mass() const {
        return p_Cp + p_Cm + mass_Lp + mass_Lm + mass_Rp_head + mass_Rm_head + mass_Rp_tail + mass_Rm_tail;
    }
    // |total - 1| at the given precision
    PrecReal normalization_defect(int precision_bits) const;
    bool exactly_normalized() const { return total_mass() == QuadSurd(1); }
};

// Exact half-plane law; needs bs arrays up to p+2 (alpha) and w_row up to p+1.
HalfplaneLaw law_halfplane(long p, const BoundarySeries& bs);

// ---------------------------------------------------------------------------
// finite-boundary law (Table of P_{p,q}), truncated z-values
// ---------------------------------------------------------------------------

enum class Spin : uint8_t { plus, minus };

// One admissible outcome of peeling the minus edge next to the origin of a
// (p,q)-gon, q >= 1.  Regions and labels follow the first-event table; the
// kept region is the one with more minus edges (tie: keep the right one).
struct FiniteOutcome {
    PeelingEvent event;
    Spin spin;                // spin of the revealed triangle
    bool has_swallow = false;
    int sw_p = 0, sw_q = 0;   // swallowed region boundary
    int kept_p = 0, kept_q = 0;
    bool swallow_on_right = false;
    int apex = -1;            // boundary vertex index v_j (0 = origin), -1 = fresh vertex
};

std::vector<FiniteOutcome> finite_peel_outcomes(int p, int q);

struct FiniteLaw {
    int p, q;
    std::vector<FiniteOutcome> outcomes;
    std::vector<double> probs;      // aligned with outcomes
    double termination_prob = 0.0;  // unexplored map = edge map (only (1,1) / (0,2))
    double normalization_defect = 0.0;
};

// Law of the first event under P_{p,q} (q >= 1) with z-values from the
// rescaled critical table (or any evaluated double table via t_ratio).
FiniteLaw law_finite(int p, int q, const CoeffTable<double>& table, double t_scale_value, double max_defect = 0.05);

// draw one event (scan against cumulative probabilities)
std::optional<PeelingEvent> sample_event(const FiniteLaw& law, RngStream& rng);  // nullopt = termination

// ---------------------------------------------------------------------------
// half-plane step sampler used by the simulator (double precision, see notes)
// ---------------------------------------------------------------------------

class HalfplaneSampler {
public:
    // Arrays to p_table; states beyond it use fitted asymptotic continuations
    // of zeta/xi/alpha/w_row (4-term power laws fitted on the exact window).
    explicit HalfplaneSampler(int p_table = 16384);

    PeelingEvent sample(long p, RngStream& rng) const;

    double zeta(long i) const;
    double xi(long i) const;
    double alpha(long i) const;
    double w_row(long i) const;
    int p_table() const { return p_table_; }

private:
    int p_table_;
    BoundarySeriesNumeric arrays_;
    double nu_, tu_;
    std::array<double, 4> fit_zeta_, fit_xi_, fit_alpha_, fit_w_;
    // cumulative alpha for tail-k placement inside R_{p+k} families
    std::vector<double> alpha_cum_;
    long sample_tail_k(double frac, bool rm, long p) const;
};

// fit f(k) ~ k^{-expo} (c0 + c1/k + c2/k^2 + c3/k^3) on a trailing window
std::array<double, 4> fit_power_tail(const std::vector<double>& vals, double expo, int lo, int hi);
double eval_power_tail(const std::array<double, 4>& fit, double expo, double k);

}  // namespace ising
