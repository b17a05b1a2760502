#include "ising/laws.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace ising {

const char* family_name(EventFamily f) {
    switch (f) {
        case EventFamily::Cp: return "Cp";
        case EventFamily::Cm: return "Cm";
        case EventFamily::Lp: return "Lp";
        case EventFamily::Lm: return "Lm";
        case EventFamily::Rp: return "Rp";
        case EventFamily::Rm: return "Rm";
    }
    return "?";
}

Displacement displacement(const PeelingEvent& e, long p) {
    switch (e.family) {
        case EventFamily::Cp: return {2, -1};
        case EventFamily::Cm: return {0, 1};
        case EventFamily::Lp: return {1, -e.k - 1};
        case EventFamily::Lm: return {0, -e.k};
        case EventFamily::Rp:
            if (p != kInfinitePerimeter && e.k > p) return {-p + 1, -(e.k - p) - 1};
            return {-e.k + 1, -1};
        case EventFamily::Rm:
            if (p != kInfinitePerimeter && e.k > p) return {-p, -(e.k - p)};
            return {-e.k, 0};
    }
    return {0, 0};
}

// ---------------------------------------------------------------------------
// full-plane law
// ---------------------------------------------------------------------------

FullplaneLaw law_fullplane(int exact_head) {
    FullplaneLaw law;
    law.cc = constants_critical();
    law.bs = boundary_series(exact_head + 2);
    const QuadSurd nu = law.cc.nu_c;
    const QuadSurd tu = law.cc.t_over_u;
    const QuadSurd z0c(Rational(3, 5), Rational(3, 10));    // Z0(u_c)
    const QuadSurd z1uc(Rational(-3, 5), Rational(3, 10));  // u_c Z1(u_c)
    law.p_Cp = tu;
    law.p_Cm = nu * tu;
    law.mass_Lp = tu * z1uc;
    law.mass_Rm = nu * tu * z1uc;
    law.mass_Lm = nu * tu * (z0c - QuadSurd(1));
    law.mass_Rp = tu * (z0c - QuadSurd(1));
    return law;
}

QuadSurd FullplaneLaw::weight(const PeelingEvent& e) const {
    const QuadSurd nu = cc.nu_c;
    const QuadSurd tu = cc.t_over_u;
    switch (e.family) {
        case EventFamily::Cp: return p_Cp;
        case EventFamily::Cm: return p_Cm;
        case EventFamily::Lp: return tu * bs.xi.at(e.k);
        case EventFamily::Lm: return nu * tu * bs.zeta.at(e.k + 1);
        case EventFamily::Rp: return tu * bs.zeta.at(e.k + 1);
        case EventFamily::Rm: return nu * tu * bs.xi.at(e.k);
    }
    return QuadSurd(0);
}

// ---------------------------------------------------------------------------
// full-plane sampler
// ---------------------------------------------------------------------------

namespace {

// QuadSurd in [0,1] -> 128-bit fixed point, nearest
__uint128_t surd_to_fixed128(const QuadSurd& x) {
    PrecReal v = surd_eval(x, 320);
    PrecReal scaled = v * PrecReal::pow2(128, 320);
    mpfr_t r, hi;
    mpfr_init2(r, 320);
    mpfr_init2(hi, 320);
    mpfr_rint(r, scaled.raw(), MPFR_RNDN);
    mpfr_div_2ui(hi, r, 64, MPFR_RNDN);
    mpfr_floor(hi, hi);
    uint64_t hiw = mpfr_get_uj(hi, MPFR_RNDZ);
    mpfr_mul_2ui(hi, hi, 64, MPFR_RNDN);
    mpfr_sub(r, r, hi, MPFR_RNDN);
    uint64_t low = mpfr_get_uj(r, MPFR_RNDZ);
    mpfr_clear(r);
    mpfr_clear(hi);
    return (static_cast<__uint128_t>(hiw) << 64) | low;
}

__uint128_t ld_to_fixed128(long double c) {
    if (c >= 1.0L) return ~static_cast<__uint128_t>(0);
    if (c <= 0.0L) return 0;
    long double hi = c * 0x1.0p64L;
    long double hif = std::floor(hi);
    uint64_t hiw = static_cast<uint64_t>(hif);
    uint64_t low = static_cast<uint64_t>((hi - hif) * 0x1.0p64L);
    return (static_cast<__uint128_t>(hiw) << 64) | low;
}

std::array<double, 3> fit_survival3(const std::vector<double>& surv, int k_lo, int k_hi) {
    // least squares of surv[k] * k^{4/3} against (1, 1/k, 1/k^2) on [k_lo, k_hi]
    double M[3][3] = {};
    double b[3] = {};
    for (int k = k_lo; k <= k_hi; ++k) {
        double y = surv[k] * std::pow(static_cast<double>(k), 4.0 / 3.0);
        double x[3] = {1.0, 1.0 / k, 1.0 / (static_cast<double>(k) * k)};
        for (int i = 0; i < 3; ++i) {
            b[i] += x[i] * y;
            for (int j = 0; j < 3; ++j) M[i][j] += x[i] * x[j];
        }
    }
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int rr = c + 1; rr < 3; ++rr)
            if (std::fabs(M[rr][c]) > std::fabs(M[piv][c])) piv = rr;
        for (int cc = 0; cc < 3; ++cc) std::swap(M[c][cc], M[piv][cc]);
        std::swap(b[c], b[piv]);
        for (int rr = c + 1; rr < 3; ++rr) {
            double f = M[rr][c] / M[c][c];
            for (int cc = c; cc < 3; ++cc) M[rr][cc] -= f * M[c][cc];
            b[rr] -= f * b[c];
        }
    }
    std::array<double, 3> out{};
    for (int c = 2; c >= 0; --c) {
        double s = b[c];
        for (int cc = c + 1; cc < 3; ++cc) s -= M[c][cc] * out[cc];
        out[c] = s / M[c][c];
    }
    return out;
}

double eval_survival3(const std::array<double, 3>& f, double k) {
    return std::pow(k, -4.0 / 3.0) * (f[0] + f[1] / k + f[2] / (k * k));
}

}  // namespace

FullplaneSampler::FullplaneSampler(int k_table, int exact_head) : law_(law_fullplane(exact_head)), k_table_(k_table) {
    const auto numeric = boundary_series_numeric(k_table + 2);
    const double nu = law_.cc.nu_c.to_double();
    const double tu = law_.cc.t_over_u.to_double();
    const int head = std::min<int>(exact_head, k_table);

    merged_.reserve(2 + 4 * static_cast<size_t>(k_table));
    QuadSurd cum_exact(0);
    long double cum = 0;
    auto add = [&](EventFamily f, int k, const QuadSurd* exact_w, double w) {
        Entry e;
        e.k = k;
        e.family = f;
        if (exact_w) {
            cum_exact += *exact_w;
            __uint128_t v = surd_to_fixed128(cum_exact);
            e.hi = static_cast<uint64_t>(v >> 64);
            e.lo = static_cast<uint64_t>(v);
            cum = static_cast<long double>(e.hi) * 0x1.0p-64L + static_cast<long double>(e.lo) * 0x1.0p-128L;
        } else {
            cum += static_cast<long double>(w);
            __uint128_t v = ld_to_fixed128(cum);
            e.hi = static_cast<uint64_t>(v >> 64);
            e.lo = static_cast<uint64_t>(v);
        }
        merged_.push_back(e);
    };

    // scan order: Cm, Cp, then per k: Lm, Rp, Lp, Rm
    add(EventFamily::Cm, 0, &law_.p_Cm, 0);
    add(EventFamily::Cp, 0, &law_.p_Cp, 0);
    const QuadSurd nu_s = law_.cc.nu_c, tu_s = law_.cc.t_over_u;
    std::array<double, 6> covered{};
    covered[static_cast<int>(EventFamily::Cp)] = law_.p_Cp.to_double();
    covered[static_cast<int>(EventFamily::Cm)] = law_.p_Cm.to_double();
    for (int k = 0; k < k_table; ++k) {
        double zk1 = numeric.zeta[k + 1], xk = numeric.xi[k];
        if (k < head) {
            QuadSurd wLm = nu_s * tu_s * law_.bs.zeta[k + 1];
            QuadSurd wRp = tu_s * law_.bs.zeta[k + 1];
            QuadSurd wLp = tu_s * law_.bs.xi[k];
            QuadSurd wRm = nu_s * tu_s * law_.bs.xi[k];
            add(EventFamily::Lm, k, &wLm, 0);
            add(EventFamily::Rp, k, &wRp, 0);
            add(EventFamily::Lp, k, &wLp, 0);
            add(EventFamily::Rm, k, &wRm, 0);
        } else {
            add(EventFamily::Lm, k, nullptr, nu * tu * zk1);
            add(EventFamily::Rp, k, nullptr, tu * zk1);
            add(EventFamily::Lp, k, nullptr, tu * xk);
            add(EventFamily::Rm, k, nullptr, nu * tu * xk);
        }
        covered[static_cast<int>(EventFamily::Lm)] += nu * tu * zk1;
        covered[static_cast<int>(EventFamily::Rp)] += tu * zk1;
        covered[static_cast<int>(EventFamily::Lp)] += tu * xk;
        covered[static_cast<int>(EventFamily::Rm)] += nu * tu * xk;
    }
    tail_mass_[static_cast<int>(EventFamily::Cp)] = 0;
    tail_mass_[static_cast<int>(EventFamily::Cm)] = 0;
    tail_mass_[static_cast<int>(EventFamily::Lm)] =
        std::max(0.0, law_.mass_Lm.to_double() - covered[static_cast<int>(EventFamily::Lm)]);
    tail_mass_[static_cast<int>(EventFamily::Rp)] =
        std::max(0.0, law_.mass_Rp.to_double() - covered[static_cast<int>(EventFamily::Rp)]);
    tail_mass_[static_cast<int>(EventFamily::Lp)] =
        std::max(0.0, law_.mass_Lp.to_double() - covered[static_cast<int>(EventFamily::Lp)]);
    tail_mass_[static_cast<int>(EventFamily::Rm)] =
        std::max(0.0, law_.mass_Rm.to_double() - covered[static_cast<int>(EventFamily::Rm)]);
    tail_total_ = tail_mass_[2] + tail_mass_[3] + tail_mass_[4] + tail_mass_[5];

    // survival fits for the two per-k weight shapes (zeta_{k+1} for Lm/Rp, xi_k for Lp/Rm)
    std::vector<double> surv_zeta(k_table + 1, 0.0), surv_xi(k_table + 1, 0.0);
    double sz = 0, sx = 0;
    for (int k = k_table; k >= 1; --k) {
        sz += numeric.zeta[k + 1];
        sx += numeric.xi[k];
        surv_zeta[k] = sz;
        surv_xi[k] = sx;
    }
    int lo = std::max(16, k_table / 2);
    tail_fit_zeta_ = fit_survival3(surv_zeta, lo, k_table);
    tail_fit_xi_ = fit_survival3(surv_xi, lo, k_table);
}

long FullplaneSampler::tail_invert(double x, const std::array<double, 3>& fit, double shape_beyond) const {
    double target = (1.0 - x) * shape_beyond;
    if (target <= 0) target = shape_beyond * 1e-17;
    double k = std::pow(std::max(fit[0], 1e-30) / target, 0.75);
    if (!(k > k_table_)) k = k_table_ + 1.0;
    for (int it = 0; it < 4; ++it) {
        double s = eval_survival3(fit, k);
        double ds = -std::pow(k, -7.0 / 3.0) *
                    ((4.0 / 3.0) * fit[0] + (7.0 / 3.0) * fit[1] / k + (10.0 / 3.0) * fit[2] / (k * k));
        k -= (s - target) / ds;
        if (k < k_table_) k = k_table_ + 1.0;
    }
    return std::max<long>(std::lround(k), k_table_);
}

PeelingEvent FullplaneSampler::sample(RngStream& rng) const {
    uint64_t r = rng.next_u64();
    size_t lo = 0, hi = merged_.size();
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (merged_[mid].hi < r)
            lo = mid + 1;
        else
            hi = mid;
    }
    // lo = first entry with threshold-hi >= r; refine ties on the second word
    while (lo < merged_.size() && merged_[lo].hi == r) {
        uint64_t r2 = rng.next_u64();
        if (r2 < merged_[lo].lo) break;
        ++lo;
    }
    if (lo < merged_.size()) return {merged_[lo].family, merged_[lo].k};

    // beyond the table: family by (exact-mass derived) tail masses, k by fitted shape
    double u = rng.next_unit() * tail_total_;
    int fam = 2;
    for (; fam < 5; ++fam) {
        if (u < tail_mass_[fam]) break;
        u -= tail_mass_[fam];
    }
    EventFamily f = static_cast<EventFamily>(fam);
    bool zeta_shape = (f == EventFamily::Lm || f == EventFamily::Rp);
    const auto& fit = zeta_shape ? tail_fit_zeta_ : tail_fit_xi_;
    double shape_beyond = eval_survival3(fit, k_table_ + 0.5);
    long k = tail_invert(rng.next_unit(), fit, shape_beyond);
    return {f, k};
}

// ---------------------------------------------------------------------------
// half-plane law
// ---------------------------------------------------------------------------

HalfplaneLaw law_halfplane(long p, const BoundarySeries& bs) {
    if (static_cast<size_t>(p + 2) >= bs.alpha.size() || static_cast<size_t>(p + 1) >= bs.w_row.size())
        throw std::invalid_argument("law_halfplane: boundary series too short for this p");
    CriticalConstants cc = constants_critical();
    const QuadSurd nu = cc.nu_c, tu = cc.t_over_u;
    const QuadSurd z0c(Rational(3, 5), Rational(3, 10));
    const QuadSurd z1uc(Rational(-3, 5), Rational(3, 10));

    HalfplaneLaw law;
    law.p = p;
    QuadSurd ap{bs.alpha[p]};
    law.p_Cp = tu * QuadSurd(bs.alpha[p + 2]) / ap;
    law.p_Cm = nu * tu;
    law.mass_Lp = tu * QuadSurd(bs.alpha[p + 1]) / ap * z1uc;
    law.mass_Lm = nu * tu * (z0c - QuadSurd(1));
    QuadSurd rp(0), rm(0);
    for (long k = 0; k <= p; ++k) {
        rp += bs.zeta[k + 1] * QuadSurd(bs.alpha[p - k + 1]);
        rm += bs.xi[k] * QuadSurd(bs.alpha[p - k]);
    }
    law.mass_Rp_head = tu * rp / ap;
    law.mass_Rm_head = nu * tu * rm / ap;
    law.mass_Rp_tail = tu * QuadSurd(bs.alpha[1]) / ap * (bs.w_row[p + 1] - bs.zeta[p + 1]);
    law.mass_Rm_tail = nu * tu * (bs.w_row[p] - bs.zeta[p] - bs.xi[p]) / ap;
    return law;
}

QuadSurd HalfplaneLaw::weight_Rp(long k, const BoundarySeries& bs) const {
    CriticalConstants cc = constants_critical();
    return cc.t_over_u * bs.zeta.at(k + 1) * QuadSurd(bs.alpha.at(p - k + 1)) / QuadSurd(bs.alpha.at(p));
}

QuadSurd HalfplaneLaw::weight_Rm(long k, const BoundarySeries& bs) const {
    CriticalConstants cc = constants_critical();
    return cc.nu_c * cc.t_over_u * bs.xi.at(k) * QuadSurd(bs.alpha.at(p - k)) / QuadSurd(bs.alpha.at(p));
}

PrecReal HalfplaneLaw::normalization_defect(int precision_bits) const {
    return (surd_eval(total_mass(), precision_bits) - PrecReal(1.0, precision_bits)).abs();
}

// ---------------------------------------------------------------------------
// finite-boundary outcomes and law
// ---------------------------------------------------------------------------

std::vector<FiniteOutcome> finite_peel_outcomes(int p, int q) {
    if (q < 1) throw std::invalid_argument("finite_peel_outcomes: q >= 1 required (peeled edge has spin -)");
    std::vector<FiniteOutcome> out;
    {
        FiniteOutcome c;
        c.event = {EventFamily::Cp, 0};
        c.spin = Spin::plus;
        c.kept_p = p + 2;
        c.kept_q = q - 1;
        out.push_back(c);
        c.event = {EventFamily::Cm, 0};
        c.spin = Spin::minus;
        c.kept_p = p;
        c.kept_q = q + 1;
        out.push_back(c);
    }
    // boundary apexes v_j, j = 0..p+q-1 (v_0 = origin; the peeled edge is (v_{p+q-1}, v_0))
    for (int j = 0; j <= p + q - 1; ++j) {
        for (Spin s : {Spin::plus, Spin::minus}) {
            FiniteOutcome o;
            o.spin = s;
            o.apex = j;
            int right_p, right_q, left_p, left_q;
            if (j <= p) {
                int k = j;  // distance to the right of the peeled edge
                if (s == Spin::plus) {
                    right_p = k + 1;
                    right_q = 0;
                    left_p = p - k + 1;
                    left_q = q - 1;
                } else {
                    right_p = k;
                    right_q = 1;
                    left_p = p - k;
                    left_q = q;
                }
            } else {
                int k = p + q - 1 - j;  // distance to the left, 0..q-2 (q-1 is the junction j = p)
                if (s == Spin::plus) {
                    left_p = 1;
                    left_q = k;
                    right_p = p + 1;
                    right_q = q - 1 - k;
                } else {
                    left_p = 0;
                    left_q = k + 1;
                    right_p = p;
                    right_q = q - k;
                }
            }
            bool keep_left = left_q > right_q;  // more minus edges wins; tie keeps the right region
            if (keep_left) {
                o.kept_p = left_p;
                o.kept_q = left_q;
                o.sw_p = right_p;
                o.sw_q = right_q;
                o.swallow_on_right = true;
            } else {
                o.kept_p = right_p;
                o.kept_q = right_q;
                o.sw_p = left_p;
                o.sw_q = left_q;
                o.swallow_on_right = false;
            }
            o.has_swallow = true;
            if (j <= p) {
                o.event = {s == Spin::plus ? EventFamily::Rp : EventFamily::Rm, j};
            } else if (o.swallow_on_right) {
                int kp = (s == Spin::plus) ? o.sw_q : o.sw_q - 1;
                o.event = {s == Spin::plus ? EventFamily::Rp : EventFamily::Rm, p + kp};
            } else {
                int k = p + q - 1 - j;
                o.event = {s == Spin::plus ? EventFamily::Lp : EventFamily::Lm, k};
            }
            out.push_back(o);
        }
    }
    return out;
}

FiniteLaw law_finite(int p, int q, const CoeffTable<double>& table, double t_scale_value, double max_defect) {
    if (q < 1) throw std::invalid_argument("law_finite: q = 0 is terminal");
    FiniteLaw law;
    law.p = p;
    law.q = q;
    const double nu = table.nu();
    auto zval = [&](int a, int b) { return eval_partition(table, a, b, 1.0, TailMode::none).value; };
    const double denom = zval(p, q);
    if (denom <= 0) throw std::invalid_argument("law_finite: vanishing z_{p,q}");
    law.outcomes = finite_peel_outcomes(p, q);
    law.probs.reserve(law.outcomes.size());
    double total = 0.0;
    for (const auto& o : law.outcomes) {
        double w = t_scale_value * (o.spin == Spin::minus ? nu : 1.0);
        w *= zval(o.kept_p, o.kept_q);
        if (o.has_swallow) w *= zval(o.sw_p, o.sw_q);
        w /= denom;
        law.probs.push_back(w);
        total += w;
    }
    if (p == 1 && q == 1) law.termination_prob = 1.0 / denom;
    if (p == 0 && q == 2) law.termination_prob = nu / denom;
    total += law.termination_prob;
    law.normalization_defect = std::fabs(total - 1.0);
    if (law.normalization_defect > max_defect)
        throw std::runtime_error("law_finite: normalization defect too large (table order too small)");
    return law;
}

std::optional<PeelingEvent> sample_event(const FiniteLaw& law, RngStream& rng) {
    double u = rng.next_unit();
    if (u < law.termination_prob) return std::nullopt;
    double acc = law.termination_prob;
    for (size_t i = 0; i < law.probs.size(); ++i) {
        acc += law.probs[i];
        if (u < acc) return law.outcomes[i].event;
    }
    return law.outcomes.back().event;  // defect sliver goes to the last event
}

// ---------------------------------------------------------------------------
// asymptotic tail fits
// ---------------------------------------------------------------------------

std::array<double, 4> fit_power_tail(const std::vector<double>& vals, double expo, int lo, int hi) {
    double M[4][4] = {};
    double b[4] = {};
    for (int k = lo; k <= hi; ++k) {
        double y = vals[k] * std::pow(static_cast<double>(k), expo);
        double kk = static_cast<double>(k);
        double x[4] = {1.0, 1.0 / kk, 1.0 / (kk * kk), 1.0 / (kk * kk * kk)};
        for (int i = 0; i < 4; ++i) {
            b[i] += x[i] * y;
            for (int j = 0; j < 4; ++j) M[i][j] += x[i] * x[j];
        }
    }
    for (int c = 0; c < 4; ++c) {
        int piv = c;
        for (int rr = c + 1; rr < 4; ++rr)
            if (std::fabs(M[rr][c]) > std::fabs(M[piv][c])) piv = rr;
        for (int cc = 0; cc < 4; ++cc) std::swap(M[c][cc], M[piv][cc]);
        std::swap(b[c], b[piv]);
        for (int rr = c + 1; rr < 4; ++rr) {
            double f = M[rr][c] / M[c][c];
            for (int cc = c; cc < 4; ++cc) M[rr][cc] -= f * M[c][cc];
            b[rr] -= f * b[c];
        }
    }
    std::array<double, 4> out{};
    for (int c = 3; c >= 0; --c) {
        double s = b[c];
        for (int cc = c + 1; cc < 4; ++cc) s -= M[c][cc] * out[cc];
        out[c] = s / M[c][c];
    }
    return out;
}

double eval_power_tail(const std::array<double, 4>& fit, double expo, double k) {
    return std::pow(k, -expo) * (fit[0] + fit[1] / k + fit[2] / (k * k) + fit[3] / (k * k * k));
}

// ---------------------------------------------------------------------------
// half-plane step sampler
//
// Exact ingredients: zeta/xi/alpha/w_row arrays to p_table (double precision)
// and the closed-form family masses; total mass is exactly 1.  Beyond p_table
// the arrays continue by 4-term power-law fits; inside the rare R_{p+k}
// blocks the k-shape uses its p -> infinity limit (proportional to alpha).
// Both approximations are confined to events of probability O(1/p) and do not
// touch the P-displacements, which only depend on the family.
// ---------------------------------------------------------------------------

HalfplaneSampler::HalfplaneSampler(int p_table) : p_table_(p_table), arrays_(boundary_series_numeric(p_table + 2)) {
    CriticalConstants cc = constants_critical();
    nu_ = cc.nu_c.to_double();
    tu_ = cc.t_over_u.to_double();
    int lo = std::max(32, p_table / 2), hi = p_table;
    fit_zeta_ = fit_power_tail(arrays_.zeta, 7.0 / 3.0, lo, hi);
    fit_xi_ = fit_power_tail(arrays_.xi, 7.0 / 3.0, lo, hi);
    fit_alpha_ = fit_power_tail(arrays_.alpha, 4.0 / 3.0, lo, hi);
    fit_w_ = fit_power_tail(arrays_.w_row, 7.0 / 3.0, lo, hi);
    alpha_cum_.resize(arrays_.alpha.size());
    double c = 0;
    for (size_t i = 0; i < arrays_.alpha.size(); ++i) {
        if (i >= 1) c += arrays_.alpha[i];
        alpha_cum_[i] = c;  // sum_{j=1..i} alpha_j
    }
}

double HalfplaneSampler::zeta(long i) const {
    if (i < static_cast<long>(arrays_.zeta.size())) return arrays_.zeta[i];
    return eval_power_tail(fit_zeta_, 7.0 / 3.0, static_cast<double>(i));
}
double HalfplaneSampler::xi(long i) const {
    if (i < static_cast<long>(arrays_.xi.size())) return arrays_.xi[i];
    return eval_power_tail(fit_xi_, 7.0 / 3.0, static_cast<double>(i));
}
double HalfplaneSampler::alpha(long i) const {
    if (i < static_cast<long>(arrays_.alpha.size())) return arrays_.alpha[i];
    return eval_power_tail(fit_alpha_, 4.0 / 3.0, static_cast<double>(i));
}
double HalfplaneSampler::w_row(long i) const {
    if (i < static_cast<long>(arrays_.w_row.size())) return arrays_.w_row[i];
    return eval_power_tail(fit_w_, 7.0 / 3.0, static_cast<double>(i));
}

long HalfplaneSampler::sample_tail_k(double frac, bool rm, long /*p*/) const {
    // k-shape inside R_{p+k}, k >= 1: alpha_k (Rp) or alpha_{k+1} (Rm);
    // totals are exact: sum_{j>=1} alpha_j = 3, sum_{j>=2} alpha_j = 8/3
    double total = rm ? 8.0 / 3.0 : 3.0;
    double target = frac * total;
    double acc = 0;
    long limit = static_cast<long>(arrays_.alpha.size()) - 2;
    for (long j = 1; j <= limit; ++j) {
        acc += arrays_.alpha[rm ? j + 1 : j];
        if (target < acc) return j;
    }
    // survival of alpha beyond the table ~ 3 c0 j^{-1/3}
    double s_lim = 3.0 * std::max(fit_alpha_[0], 1e-30) * std::pow(static_cast<double>(limit), -1.0 / 3.0);
    double rem = std::max(total - acc, 1e-300);
    double x = std::max(1.0 - (target - acc) / rem, 1e-12);
    double k = static_cast<double>(limit) / (x * x * x);
    (void)s_lim;
    return static_cast<long>(std::min(k, 1e15));
}

PeelingEvent HalfplaneSampler::sample(long p, RngStream& rng) const {
    const double u = rng.next_unit();
    double acc = nu_ * tu_;  // Cm first (mass ~0.54)
    if (u < acc) return {EventFamily::Cm, 0};
    const double ap = alpha(p);
    acc += tu_ * alpha(p + 2) / ap;
    if (u < acc) return {EventFamily::Cp, 0};
    const double rLp = tu_ * alpha(p + 1) / ap;
    bool tails_done = false;
    for (long k = 0;; ++k) {
        if (k <= p) {
            double zk1 = zeta(k + 1), xk = xi(k);
            acc += nu_ * tu_ * zk1;
            if (u < acc) return {EventFamily::Lm, k};
            acc += tu_ * zk1 * alpha(p - k + 1) / ap;
            if (u < acc) return {EventFamily::Rp, k};
            acc += rLp * xk;
            if (u < acc) return {EventFamily::Lp, k};
            acc += nu_ * tu_ * xk * alpha(p - k) / ap;
            if (u < acc) return {EventFamily::Rm, k};
        } else {
            if (!tails_done) {
                tails_done = true;
                double tail_rp = tu_ * (alpha(1) / ap) * (w_row(p + 1) - zeta(p + 1));
                acc += std::max(tail_rp, 0.0);
                if (u < acc) return {EventFamily::Rp, p + sample_tail_k(rng.next_unit(), false, p)};
                double tail_rm = nu_ * tu_ * (w_row(p) - zeta(p) - xi(p)) / ap;
                acc += std::max(tail_rm, 0.0);
                if (u < acc) return {EventFamily::Rm, p + sample_tail_k(rng.next_unit(), true, p)};
            }
            double zk1 = zeta(k + 1), xk = xi(k);
            acc += nu_ * tu_ * zk1;
            if (u < acc) return {EventFamily::Lm, k};
            acc += rLp * xk;
            if (u < acc) return {EventFamily::Lp, k};
            if (1.0 - acc < 1e-13) return {EventFamily::Lm, k + 1};  // rounding sliver
        }
    }
}

}  // namespace ising
