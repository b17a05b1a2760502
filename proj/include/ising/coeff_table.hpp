#pragma once

#include "ising/nupoly.hpp"
#include "ising/precreal.hpp"
#include "ising/quadsurd.hpp"
#include "ising/rational.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace ising {

// Triangular table of coefficients [t^n] z_{p,q}, built layer by layer from the
// boundary-edge removal recurrence.  Scalar V is one of:
//   NuPolynomial  - exact, polynomial in nu
//   Rational      - evaluated at rational nu, exact
//   QuadSurd      - evaluated at nu_c, exact in Q(sqrt7)
//   double        - evaluated numerically; coefficients stored rescaled as
//                   scale^n [t^n] z_{p,q} so that criticality keeps them O(poly(n))
//
// Support: [t^n] z_{p,q} = 0 unless p+q <= n+2 and n = p+q (mod 2).
// Cells with q = 0 are filled from the q > 0 sweep by the symmetry z_{p,0} = z_{0,p}.
template <class V>
class CoeffTable {
public:
    CoeffTable(V nu, int n_max, V scale = V(1))
        : nu_(std::move(nu)), scale_(std::move(scale)), n_max_(n_max), max_pq_(n_max + 2) {
        if (n_max < 0) throw std::invalid_argument("CoeffTable: n_max must be >= 0");
        cells_.resize(cell_count(max_pq_));
        for (int s = 0; s <= max_pq_; ++s)
            for (int p = 0; p <= s; ++p) {
                auto& c = cells_[cell_id(p, s - p)];
                c.assign(slot_count(p, s - p, n_max_), V(0));
            }
    }

    int n_max() const { return n_max_; }
    const V& nu() const { return nu_; }
    const V& scale() const { return scale_; }

    // zero outside the support region; throws if n exceeds the table order
    const V& coeff(int p, int q, int n) const {
        static const V kZero = V(0);
        if (n > n_max_) throw std::out_of_range("CoeffTable::coeff: n > n_max");
        if (n < 0 || p < 0 || q < 0) return kZero;
        if (p + q > n + 2 || ((p + q) & 1) != (n & 1)) return kZero;
        if (p + q == 0 && n > 0) return kZero;  // z_{0,0} = 1 is a bare convention
        return cells_[cell_id(p, q)][slot(p, q, n)];
    }

    void set_coeff_for_test(int p, int q, int n, V v) { cells_[cell_id(p, q)][slot(p, q, n)] = std::move(v); }

    void build(int threads = 1) {
        for (int n = 0; n <= n_max_; ++n) {
            build_layer(n, threads);
        }
    }

private:
    static int cell_count(int max_pq) { return (max_pq + 1) * (max_pq + 2) / 2; }
    static int cell_id(int p, int q) {
        int s = p + q;
        return s * (s + 1) / 2 + p;
    }
    // first order with allowed support
    static int first_order(int p, int q) {
        int s = p + q;
        return (s <= 2) ? (s & 1) : s - 2;
    }
    static int slot_count(int p, int q, int n_max) {
        int n0 = first_order(p, q);
        return (n_max < n0) ? 0 : (n_max - n0) / 2 + 1;
    }
    static int slot(int p, int q, int n) { return (n - first_order(p, q)) / 2; }

    V& at(int p, int q, int n) { return cells_[cell_id(p, q)][slot(p, q, n)]; }

    // [t^m] of z_{a,b} * z_{c,d}, rescale-free (scale factors handled by caller)
    V conv(int a, int b, int c, int d, int m) const {
        V acc(0);
        int n0a = first_order(a, b), n0b = first_order(c, d);
        if (n0a + n0b > m) return acc;
        if (((n0a + n0b) & 1) != (m & 1)) return acc;  // parity mismatch: all terms vanish
        for (int n1 = n0a; n1 <= m - n0b; n1 += 2) {
            const V& x = coeff(a, b, n1);
            if (is_zero_val(x)) continue;
            const V& y = coeff(c, d, m - n1);
            if (is_zero_val(y)) continue;
            acc += x * y;
        }
        return acc;
    }

    static bool is_zero_val(const V& v) {
        if constexpr (std::is_same_v<V, double>)
            return v == 0.0;
        else
            return v.is_zero();
    }

    // One (p, q+1) cell at order n.
    V compute_cell(int p, int qq, int n) const {
        const int q = qq - 1;
        V val(0);
        if (n >= 1) {
            const int m = n - 1;
            V line = coeff(p + 2, q, m);
            for (int p1 = 0; p1 <= p; ++p1) line += conv(p1 + 1, 0, p - p1 + 1, q, m);
            for (int q1 = 0; q1 <= q; ++q1) line += conv(1, q1, p + 1, q - q1, m);
            line -= conv(p + 1, 0, 1, q, m);
            val += line;

            V nline = coeff(p, q + 2, m);
            for (int q1 = 0; q1 <= q; ++q1) nline += conv(0, q1 + 1, p, q - q1 + 1, m);
            for (int p1 = 0; p1 <= p; ++p1) nline += conv(p1, 1, p - p1, q + 1, m);
            nline -= conv(p, 1, 0, q + 1, m);
            val += nu_ * nline;
            val = val * scale_;
        }
        if (n == 0) {
            if (p == 1 && qq == 1) val += V(1);
            if (p == 0 && qq == 2) val += nu_;
        }
        return val;
    }

    void build_layer(int n, int threads) {
        if (n == 0) {
            at(0, 0, 0) = V(1);
        }
        // collect (p, qq) targets with qq >= 1 in this layer
        std::vector<std::pair<int, int>> targets;
        for (int s = (n & 1) ? 1 : 2; s <= std::min(n + 2, max_pq_); s += 2)
            for (int p = 0; p + 1 <= s; ++p) targets.emplace_back(p, s - p);
        auto work = [&](size_t lo, size_t hi, std::vector<V>& out) {
            for (size_t i = lo; i < hi; ++i) out[i - lo] = compute_cell(targets[i].first, targets[i].second, n);
        };
        if (threads <= 1 || targets.size() < 64) {
            std::vector<V> out(targets.size(), V(0));
            work(0, targets.size(), out);
            for (size_t i = 0; i < targets.size(); ++i)
                at(targets[i].first, targets[i].second, n) = std::move(out[i]);
        } else {
            size_t nt = std::min<size_t>(threads, targets.size());
            std::vector<std::vector<V>> outs(nt);
            std::vector<std::thread> pool;
            size_t chunk = (targets.size() + nt - 1) / nt;
            for (size_t t = 0; t < nt; ++t) {
                size_t lo = t * chunk, hi = std::min(targets.size(), lo + chunk);
                outs[t].assign(hi > lo ? hi - lo : 0, V(0));
                pool.emplace_back(work, lo, hi, std::ref(outs[t]));
            }
            for (auto& th : pool) th.join();
            for (size_t t = 0; t < nt; ++t) {
                size_t lo = t * chunk, hi = std::min(targets.size(), lo + chunk);
                for (size_t i = lo; i < hi; ++i)
                    at(targets[i].first, targets[i].second, n) = std::move(outs[t][i - lo]);
            }
        }
        // q = 0 row via symmetry
        for (int s = 1; s <= std::min(n + 2, max_pq_); ++s)
            if (((s ^ n) & 1) == 0) at(s, 0, n) = coeff(0, s, n);
    }

    V nu_;
    V scale_;
    int n_max_;
    int max_pq_;
    std::vector<std::vector<V>> cells_;
};

inline constexpr int kExactCapDefault = 40;

// Exact mode: coefficients as polynomials in nu.
CoeffTable<NuPolynomial> build_coeff_table_exact(int n_max, int exact_cap = kExactCapDefault, int threads = 1);

// Evaluated mode at a given nu, optional rescale (used by the double engine).
template <class V>
CoeffTable<V> build_coeff_table_evaluated(V nu, int n_max, V scale = V(1), int threads = 1) {
    CoeffTable<V> t(std::move(nu), n_max, std::move(scale));
    t.build(threads);
    return t;
}

enum class TailMode { none, extrapolate };

// Truncated partition value with an explicitly heuristic tail bound: the tail
// model is C * sum_{n>N} n^{-7/3} with C fitted on the last stored coefficients,
// which assumes the critical coefficient asymptotics.
struct PartitionValue {
    double value = 0.0;
    double truncation_error = 0.0;
    bool heuristic_bound = false;
};

// Partition value Σ_{n<=N} [t^n] z_{p,q} t^n from a rescaled double table
// (stored coefficients are scale^n [t^n] z; evaluates at t = t_ratio * scale).
PartitionValue eval_partition(const CoeffTable<double>& table, int p, int q, double t_ratio, TailMode mode);

// Exact Q(sqrt7) pair (A, B) with z_{p,q}(nu_c, t_c) truncated at N = A + B*t_c,
// from a QuadSurd table evaluated at nu_c (scale 1).  Uses t_c^n = (t_c^2)^{n/2}
// for even n and t_c * (t_c^2)^{(n-1)/2} for odd n.
std::pair<QuadSurd, QuadSurd> eval_partition_crit_exact(const CoeffTable<QuadSurd>& table, int p, int q);

struct FuncEqCheck {
    std::string name;
    int first_failing_order = -1;  // -1 = all pass
};

struct FuncEqReport {
    std::vector<FuncEqCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (c.first_failing_order >= 0) return false;
        return true;
    }
    std::string summary() const;
};

// Exact verification, to t-order n_check, of the linear system slices (3)-(6),
// the bivariate closed form (7), the one-catalytic equation (9) and the z_{1,1}
// identity, on an exact-mode table.
FuncEqReport verify_functional_equations(const CoeffTable<NuPolynomial>& table, int n_check);

// (n, n^exponent * stored_coeff(1,0,n)) for n in [n_lo, n_hi] with table parity.
std::vector<std::pair<int, double>> volume_exponent_probe(const CoeffTable<double>& table, int n_lo, int n_hi,
                                                          double exponent = 7.0 / 3.0);

}  // namespace ising
