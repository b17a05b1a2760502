#include "ising/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace ising {

double barrier_f(double eps, long n) {
    if (eps <= 0) throw std::invalid_argument("barrier_f: eps must be positive");
    if (n < 0) throw std::invalid_argument("barrier_f: n must be nonnegative");
    double base = static_cast<double>(n) + 2.0;
    return std::pow(base * std::pow(std::log(base), 1.0 + eps), 0.75);
}

namespace {

constexpr double kMu = 0.09449111825230680779;  // 1/(4 sqrt 7)

struct StopState {
    const StoppingSpec* spec;
    bool fired = false;
    std::string reason;

    // returns true when any clause fires at time n with variations (x, y), perimeter p
    bool check(const StoppingSpec& s, long n, long x, long y, long p) {
        switch (s.kind) {
            case StoppingSpec::Kind::fixed_steps:
                if (n >= s.n) {
                    reason = "fixed_steps";
                    return true;
                }
                return false;
            case StoppingSpec::Kind::t_m:
                if (p != kInfinitePerimeter && p <= s.m) {
                    reason = (p <= 0) ? "T_m(hit 0)" : "T_m";
                    return true;
                }
                return false;
            case StoppingSpec::Kind::tau_eps: {
                double f = s.x * barrier_f(s.eps, n);
                double dx = std::fabs(static_cast<double>(x) - kMu * static_cast<double>(n));
                double dy = std::fabs(static_cast<double>(y) - kMu * static_cast<double>(n));
                if (std::max(dx, dy) > f) {
                    reason = "tau_eps";
                    return true;
                }
                return false;
            }
            case StoppingSpec::Kind::theta_r:
                throw std::invalid_argument("run_path: theta_r stopping requires the map-driven ball sampler");
            case StoppingSpec::Kind::first_of:
                for (const auto& c : s.children)
                    if (check(c, n, x, y, p)) return true;
                return false;
        }
        return false;
    }
};

}  // namespace

RunResult run_path(Regime regime, long p0, long q0, const StoppingSpec& stopping, const LawProviders& laws,
                   RngStream& rng, const RunOptions& opts) {
    RunResult out;
    out.path.regime = regime;
    out.path.p0 = p0;
    out.path.q0 = q0;
    if (opts.record_path) {
        out.path.x.push_back(0);
        out.path.y.push_back(0);
    }

    long x = 0, y = 0, min_x = 0, min_y = 0;
    long n = 0;
    StopState stop{&stopping};

    FiniteLaw finite_law;   // rebuilt per state in the finite regime
    long fl_p = -1, fl_q = -1;

    auto perim = [&]() { return (regime == Regime::fullplane) ? kInfinitePerimeter : p0 + x; };

    std::string reason;
    while (true) {
        if (stop.check(stopping, n, x, y, perim())) {
            reason = stop.reason;
            break;
        }
        if (n >= opts.step_guard) throw std::runtime_error("run_path: step guard exceeded");

        PeelingEvent e;
        long p_now = perim();
        if (regime == Regime::fullplane) {
            e = laws.full->sample(rng);
        } else if (regime == Regime::halfplane) {
            e = laws.half->sample(p_now, rng);
        } else {
            long q_now = q0 + y;
            if (q_now <= 0) {
                reason = "monochromatic_plus";
                break;
            }
            if (p_now != fl_p || q_now != fl_q) {
                finite_law = law_finite(static_cast<int>(p_now), static_cast<int>(q_now), *laws.finite_table,
                                        laws.t_scale);
                fl_p = p_now;
                fl_q = q_now;
            }
            auto drawn = sample_event(finite_law, rng);
            if (!drawn) {
                reason = "edge_map";
                break;
            }
            e = *drawn;
        }

        Displacement d = displacement(e, p_now);
        x += d.dx;
        y += d.dy;
        min_x = std::min(min_x, x);
        min_y = std::min(min_y, y);
        ++n;
        if (opts.record_path) {
            out.path.events.push_back(e);
            out.path.x.push_back(x);
            out.path.y.push_back(y);
        }
    }

    out.summary.stop_reason = reason;
    out.summary.stop_time = n;
    out.summary.x_final = x;
    out.summary.y_final = y;
    out.summary.min_x = min_x;
    out.summary.min_y = min_y;
    return out;
}

std::vector<PathSummary> batch_run(const BatchConfig& cfg, const LawProviders& laws) {
    if (cfg.n_paths < 1) throw std::invalid_argument("batch_run: n_paths >= 1 required");
    std::vector<PathSummary> out(cfg.n_paths);
    auto work = [&](long lo, long hi) {
        for (long i = lo; i < hi; ++i) {
            RngStream rng(cfg.seed, static_cast<uint64_t>(i));
            RunResult r = run_path(cfg.regime, cfg.p0, cfg.q0, cfg.stopping, laws, rng, cfg.opts);
            r.summary.stream_index = static_cast<uint64_t>(i);
            out[i] = std::move(r.summary);
        }
    };
    int nt = std::max(1, cfg.threads);
    if (nt == 1 || cfg.n_paths < 4) {
        work(0, cfg.n_paths);
    } else {
        std::vector<std::thread> pool;
        long chunk = (cfg.n_paths + nt - 1) / nt;
        for (int t = 0; t < nt; ++t) {
            long lo = t * chunk, hi = std::min<long>(cfg.n_paths, lo + chunk);
            if (lo < hi) pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return out;
}

}  // namespace ising
