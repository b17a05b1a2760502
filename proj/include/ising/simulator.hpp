#pragma once

#include "ising/laws.hpp"
#include "ising/rng.hpp"

#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace ising {

enum class Regime { fullplane, halfplane, finite };

// barrier f_eps(n) = ((n+2) (log(n+2))^{1+eps})^{3/4}
double barrier_f(double eps, long n);

struct StoppingSpec {
    enum class Kind { fixed_steps, t_m, tau_eps, theta_r, first_of };
    Kind kind = Kind::fixed_steps;
    long n = 0;       // fixed_steps
    long m = 0;       // t_m
    double x = 0.0;   // tau_eps barrier multiplier
    double eps = 0.5; // tau_eps
    long r = 0;       // theta_r (map-driven runs only)
    std::vector<StoppingSpec> children;  // first_of

    static StoppingSpec fixed(long steps) {
        StoppingSpec s;
        s.kind = Kind::fixed_steps;
        s.n = steps;
        return s;
    }
    static StoppingSpec t_m(long m) {
        StoppingSpec s;
        s.kind = Kind::t_m;
        s.m = m;
        return s;
    }
    static StoppingSpec tau(double x, double eps) {
        StoppingSpec s;
        s.kind = Kind::tau_eps;
        s.x = x;
        s.eps = eps;
        return s;
    }
    static StoppingSpec first_of(std::vector<StoppingSpec> cs) {
        StoppingSpec s;
        s.kind = Kind::first_of;
        s.children = std::move(cs);
        return s;
    }
};

struct PerimeterPath {
    Regime regime;
    long p0 = 0, q0 = 0;  // kInfinitePerimeter where infinite
    std::vector<PeelingEvent> events;
    std::vector<long> x, y;  // cumulative variations, x[0] = y[0] = 0
};

struct PathSummary {
    uint64_t stream_index = 0;
    std::string stop_reason;
    long stop_time = 0;
    long x_final = 0, y_final = 0;
    long min_x = 0, min_y = 0;
};

// law providers; only the ones matching the regime are used
struct LawProviders {
    const FullplaneSampler* full = nullptr;
    const HalfplaneSampler* half = nullptr;
    const CoeffTable<double>* finite_table = nullptr;
    double t_scale = 0.0;  // t value paired with finite_table's rescale
};

struct RunOptions {
    bool record_path = false;
    long step_guard = 100000000;  // error beyond this many steps
};

struct RunResult {
    PathSummary summary;
    PerimeterPath path;  // populated when record_path
};

RunResult run_path(Regime regime, long p0, long q0, const StoppingSpec& stopping, const LawProviders& laws,
                   RngStream& rng, const RunOptions& opts = {});

struct BatchConfig {
    Regime regime = Regime::fullplane;
    long p0 = 0, q0 = 0;
    StoppingSpec stopping;
    long n_paths = 1;
    uint64_t seed = 1;
    int threads = 1;
    RunOptions opts;
};

// deterministic given the seed: path i uses stream_index = i
std::vector<PathSummary> batch_run(const BatchConfig& cfg, const LawProviders& laws);

}  // namespace ising
