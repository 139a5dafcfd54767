#pragma once

// Monte-Carlo cross-check of the analytic growth rates. Simulates the fund
// value under a degenerate (point) parameter vector and estimates
// log E[(L_T)^p] / T with a delta-method standard error. Schemes:
//   ExactGbm            exact log-normal increments (any step size)
//   FullTruncationEuler CIR-type factors clamped at zero; the 3/2 factor and
//                       the 3/2-SV variance run through their inverse-CIR
//                       representation with a flipped driver
//   ExactOu             exact OU transition for the Vasicek short rate,
//                       trapezoid for the integrated rate
//   LogEulerInverse     exact log-linear solution of the inverse rate
//                       d(1/r) = (a + (sigma^2 - b)/r) dt - sigma/r dB with a
//                       trapezoid convolution integral
// Draws come from counter-based streams: path i, step n uses Philox block n
// of stream i, so results do not depend on thread count. Antithetic pairing
// treats (path 2k, path 2k+1 with negated draws) as one sample.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <letf/core.hpp>
#include <letf/growth.hpp>
#include <letf/philox.hpp>

namespace letf {

enum class SimScheme { ExactGbm, FullTruncationEuler, ExactOu, LogEulerInverse };

inline std::string to_string(SimScheme s) {
    switch (s) {
        case SimScheme::ExactGbm: return "exact_gbm";
        case SimScheme::FullTruncationEuler: return "full_truncation_euler";
        case SimScheme::ExactOu: return "exact_ou";
        default: return "log_euler_inverse";
    }
}

inline SimScheme scheme_for(const ModelSpec& model) {
    if (std::holds_alternative<Gbm>(model)) return SimScheme::ExactGbm;
    if (std::holds_alternative<Vasicek>(model)) return SimScheme::ExactOu;
    if (std::holds_alternative<InvGarch>(model)) return SimScheme::LogEulerInverse;
    return SimScheme::FullTruncationEuler;
}

struct SimRequest {
    ModelSpec model;  // degenerate box: every interval has lo == hi
    Problem prob;
    double beta = 1.0;
    double horizon_T = 25.0;
    double dt = 1.0 / 500.0;
    long n_paths = 100000;
    std::uint64_t seed = 1;
    SimScheme scheme = SimScheme::FullTruncationEuler;
    bool antithetic = true;
};

struct McEstimate {
    double horizon_T = 0;
    long n_paths = 0;
    double dt = 0;  // effective step inside the segment ending at horizon_T
    SimScheme scheme = SimScheme::FullTruncationEuler;
    std::uint64_t seed = 0;
    double estimate = 0;         // log_mean / horizon_T, exactly
    double std_err_of_mean = 0;  // sampling error of the mean utility
    double log_mean = 0;
    double max_utility = 0;
    long n_nonfinite = 0;  // excluded samples (pairs when antithetic)

    // standard error of `estimate` by the delta method
    double delta_std_err() const {
        return std_err_of_mean / (horizon_T * std::exp(log_mean));
    }
};

namespace detail {

struct DegenerateParams {
    enum class Kind { Gbm, Cir, ThreeHalves, Heston, Sv32, Vasicek, InvGarch } kind;
    double mu = 0, rho = 0, b = 0, a = 0, sigma = 0, varsigma = 0, r0 = 0;
};

inline void require_degenerate(const char* name, const Interval& iv) {
    if (!iv.degenerate())
        throw validation_error(std::string("simulation model must be degenerate: ") +
                               name + ".lo == " + name + ".hi fails");
}

inline DegenerateParams resolve_degenerate(const ModelSpec& model) {
    DegenerateParams d;
    std::visit(
        [&](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, Gbm>) {
                require_degenerate("mu", m.mu);
                require_degenerate("sigma", m.sigma);
                d.kind = DegenerateParams::Kind::Gbm;
                d.mu = m.mu.lo;
                d.sigma = m.sigma.lo;
            } else if constexpr (std::is_same_v<M, Cir> || std::is_same_v<M, ThreeHalves>) {
                require_degenerate("b", m.b);
                require_degenerate("a", m.a);
                require_degenerate("sigma", m.sigma);
                d.kind = std::is_same_v<M, Cir> ? DegenerateParams::Kind::Cir
                                                : DegenerateParams::Kind::ThreeHalves;
                d.b = m.b.lo;
                d.a = m.a.lo;
                d.sigma = m.sigma.lo;
            } else if constexpr (std::is_same_v<M, Heston> || std::is_same_v<M, Sv32>) {
                require_degenerate("mu", m.mu);
                require_degenerate("rho", m.rho);
                require_degenerate("b", m.b);
                require_degenerate("a", m.a);
                require_degenerate("sigma", m.sigma);
                d.kind = std::is_same_v<M, Heston> ? DegenerateParams::Kind::Heston
                                                   : DegenerateParams::Kind::Sv32;
                d.mu = m.mu.lo;
                d.rho = m.rho.lo;
                d.b = m.b.lo;
                d.a = m.a.lo;
                d.sigma = m.sigma.lo;
            } else {
                require_degenerate("mu", m.mu);
                require_degenerate("varsigma", m.varsigma);
                require_degenerate("rho", m.rho);
                require_degenerate("b", m.b);
                require_degenerate("a", m.a);
                require_degenerate("sigma", m.sigma);
                d.kind = std::is_same_v<M, Vasicek> ? DegenerateParams::Kind::Vasicek
                                                    : DegenerateParams::Kind::InvGarch;
                d.mu = m.mu.lo;
                d.varsigma = m.varsigma.lo;
                d.rho = m.rho.lo;
                d.b = m.b.lo;
                d.a = m.a.lo;
                d.sigma = m.sigma.lo;
                d.r0 = resolved_r0(m);
            }
        },
        model);
    return d;
}

inline void validate_request(const SimRequest& req) {
    std::vector<std::string> bad = validate(req.prob);
    if (!bad.empty()) throw validation_error(bad.front());
    if (!(req.n_paths >= 100)) throw validation_error("n_paths >= 100 fails");
    if (req.antithetic && req.n_paths % 2 != 0)
        throw validation_error("n_paths even under antithetic pairing fails");
    if (!(req.dt > 0.0)) throw validation_error("dt > 0 fails");
    if (!(req.horizon_T >= req.dt)) throw validation_error("horizon_T >= dt fails");
    const SimScheme want = scheme_for(req.model);
    if (req.scheme != want)
        throw validation_error("scheme " + to_string(req.scheme) +
                               " does not integrate this model; expected " +
                               to_string(want));
}

struct SegPlan {
    std::vector<double> horizons;
    std::vector<long> cum_steps;
    std::vector<double> seg_dt;
};

// Each horizon becomes a whole number of steps of size as close to dt as
// possible, so checkpoints are hit exactly and a shared prefix of horizons
// yields bit-identical draws.
inline SegPlan plan_segments(const std::vector<double>& horizons, double dt) {
    if (horizons.empty()) throw validation_error("horizons non-empty fails");
    SegPlan plan;
    double prev = 0.0;
    long cum = 0;
    for (double h : horizons) {
        if (!(h > prev))
            throw validation_error("horizons strictly increasing and positive fails");
        const double span = h - prev;
        const long n = std::max<long>(1, std::llround(span / dt));
        cum += n;
        plan.horizons.push_back(h);
        plan.cum_steps.push_back(cum);
        plan.seg_dt.push_back(span / n);
        prev = h;
    }
    return plan;
}

// --- per-model steppers -----------------------------------------------------
// Each holds per-run constants, refreshes per-segment constants in set_dt,
// and advances one path state by one step given the standard normal pair.

struct GbmStep {
    double drift = 0, diff = 0, dt = 0, sqdt = 0;
    struct State {
        double logL = 0;
        bool bad = false;
    };
    void init(const DegenerateParams& d, const Problem& pr, double beta) {
        drift = beta * d.mu - (beta - 1.0) * pr.r -
                0.5 * beta * beta * d.sigma * d.sigma;
        diff = beta * d.sigma;
    }
    void start(State&) const {}
    void set_dt(double h) {
        dt = h;
        sqdt = std::sqrt(h);
    }
    void step(State& s, double z1, double /*z2*/) const {
        s.logL += drift * dt + diff * sqdt * z1;
    }
};

struct CirStep {
    double b = 0, a = 0, sig = 0, beta = 0, r = 0, dt = 0, sqdt = 0;
    struct State {
        double logL = 0, x = 1.0;  // the index is the factor itself, X_0 = 1
        bool bad = false;
    };
    void init(const DegenerateParams& d, const Problem& pr, double bta) {
        b = d.b;
        a = d.a;
        sig = d.sigma;
        beta = bta;
        r = pr.r;
    }
    void start(State&) const {}
    void set_dt(double h) {
        dt = h;
        sqdt = std::sqrt(h);
    }
    void step(State& s, double z1, double /*z2*/) const {
        if (s.bad) return;
        if (!(s.x > 0.0)) {
            s.bad = true;
            return;
        }
        const double dB = sqdt * z1;
        const double mu_i = b / s.x - a;  // dX/X drift
        s.logL += (beta * mu_i - (beta - 1.0) * r -
                   0.5 * beta * beta * sig * sig / s.x) *
                      dt +
                  beta * sig / std::sqrt(s.x) * dB;
        s.x += (b - a * s.x) * dt + sig * std::sqrt(s.x) * dB;
    }
};

struct ThreeHalvesStep {
    double b = 0, a = 0, sig = 0, beta = 0, r = 0, dt = 0, sqdt = 0;
    double bz = 0;  // inverse factor Z = 1/X is CIR(a + sigma^2, b, sigma)
    struct State {
        double logL = 0, z = 1.0;  // X_0 = 1
        bool bad = false;
    };
    void init(const DegenerateParams& d, const Problem& pr, double bta) {
        b = d.b;
        a = d.a;
        sig = d.sigma;
        beta = bta;
        r = pr.r;
        bz = a + sig * sig;
    }
    void start(State&) const {}
    void set_dt(double h) {
        dt = h;
        sqdt = std::sqrt(h);
    }
    void step(State& s, double z1, double /*z2*/) const {
        if (s.bad) return;
        if (!(s.z > 0.0)) {
            s.bad = true;
            return;
        }
        const double dW = sqdt * z1;  // drives the inverse factor
        const double dB = -dW;        // index driver
        const double x = 1.0 / s.z;
        s.logL += (beta * (b - a * x) - (beta - 1.0) * r -
                   0.5 * beta * beta * sig * sig * x) *
                      dt +
                  beta * sig * std::sqrt(x) * dB;
        s.z += (bz - b * s.z) * dt + sig * std::sqrt(s.z) * dW;
    }
};

struct HestonStep {
    double mu = 0, rho = 0, rho_perp = 0, b = 0, a = 0, sig = 0, beta = 0, r = 0;
    double dt = 0, sqdt = 0, nu0 = 0;
    struct State {
        double logL = 0, nu = 0;
        bool bad = false;
    };
    void init(const DegenerateParams& d, const Problem& pr, double bta) {
        mu = d.mu;
        rho = d.rho;
        rho_perp = std::sqrt(std::max(0.0, 1.0 - d.rho * d.rho));
        b = d.b;
        a = d.a;
        sig = d.sigma;
        beta = bta;
        r = pr.r;
        nu0 = b / a;  // start the variance at its stationary mean
    }
    void start(State& s) const { s.nu = nu0; }
    void set_dt(double h) {
        dt = h;
        sqdt = std::sqrt(h);
    }
    void step(State& s, double z1, double z2) const {
        const double nup = std::max(s.nu, 0.0);
        const double dW = sqdt * z1;                      // index driver
        const double dBv = sqdt * (rho * z1 + rho_perp * z2);  // variance driver
        s.logL += (beta * mu - (beta - 1.0) * r - 0.5 * beta * beta * nup) * dt +
                  beta * std::sqrt(nup) * dW;
        s.nu += (b - a * nup) * dt + sig * std::sqrt(nup) * dBv;
    }
};

struct Sv32Step {
    double mu = 0, rho = 0, rho_perp = 0, b = 0, a = 0, sig = 0, beta = 0, r = 0;
    double dt = 0, sqdt = 0, u0 = 0, bu = 0;
    struct State {
        double logL = 0, u = 0;  // u = 1/nu is CIR(a + sigma^2, b, sigma)
        bool bad = false;
    };
    void init(const DegenerateParams& d, const Problem& pr, double bta) {
        mu = d.mu;
        rho = d.rho;
        rho_perp = std::sqrt(std::max(0.0, 1.0 - d.rho * d.rho));
        b = d.b;
        a = d.a;
        sig = d.sigma;
        beta = bta;
        r = pr.r;
        u0 = a / b;  // nu_0 = b/a, the stationary mean of the variance
        bu = a + sig * sig;
    }
    void start(State& s) const { s.u = u0; }
    void set_dt(double h) {
        dt = h;
        sqdt = std::sqrt(h);
    }
    void step(State& s, double z1, double z2) const {
        if (s.bad) return;
        if (!(s.u > 0.0)) {
            s.bad = true;
            return;
        }
        const double nu = 1.0 / s.u;
        const double dBv = sqdt * (rho * z1 + rho_perp * z2);
        const double dWu = -dBv;  // inverse-variance driver
        s.logL += (beta * mu - (beta - 1.0) * r - 0.5 * beta * beta * nu) * dt +
                  beta * std::sqrt(nu) * sqdt * z1;
        s.u += (bu - b * s.u) * dt + sig * std::sqrt(s.u) * dWu;
    }
};

struct VasicekStep {
    double mu = 0, vs = 0, rho = 0, rho_perp = 0, b = 0, a = 0, sig = 0;
    double beta = 0, r0 = 0, dt = 0, sqdt = 0, ema = 0, mean_pull = 0, msd = 0;
    double idx_drift = 0;
    struct State {
        double logL = 0, rate = 0;
        bool bad = false;
    };
    void init(const DegenerateParams& d, const Problem& /*pr*/, double bta) {
        mu = d.mu;
        vs = d.varsigma;
        rho = d.rho;
        rho_perp = std::sqrt(std::max(0.0, 1.0 - d.rho * d.rho));
        b = d.b;
        a = d.a;
        sig = d.sigma;
        beta = bta;
        r0 = d.r0;
        idx_drift = beta * mu - 0.5 * beta * beta * vs * vs;
    }
    void start(State& s) const { s.rate = r0; }
    void set_dt(double h) {
        dt = h;
        sqdt = std::sqrt(h);
        ema = std::exp(-a * h);
        mean_pull = (b / a) * (1.0 - ema);
        msd = sig * std::sqrt((1.0 - ema * ema) / (2.0 * a));
    }
    void step(State& s, double z1, double z2) const {
        const double xi = rho * z1 + rho_perp * z2;
        const double rn = s.rate * ema + mean_pull + msd * xi;  // exact OU move
        s.logL += idx_drift * dt + beta * vs * sqdt * z1 -
                  (beta - 1.0) * 0.5 * (s.rate + rn) * dt;
        s.rate = rn;
    }
};

struct InvGarchStep {
    double mu = 0, vs = 0, rho = 0, rho_perp = 0, b = 0, a = 0, sig = 0;
    double beta = 0, u0 = 0, dt = 0, sqdt = 0, xdrift = 0, idx_drift = 0;
    struct State {
        double logL = 0, rate = 0;
        double hmul = 1.0;   // e^{-x_n}
        double conv = 0.0;   // e^{-x_n} \int_0^{t_n} e^{x_s} ds (trapezoid)
        bool bad = false;
    };
    void init(const DegenerateParams& d, const Problem& /*pr*/, double bta) {
        mu = d.mu;
        vs = d.varsigma;
        rho = d.rho;
        rho_perp = std::sqrt(std::max(0.0, 1.0 - d.rho * d.rho));
        b = d.b;
        a = d.a;
        sig = d.sigma;
        beta = bta;
        u0 = 1.0 / d.r0;
        idx_drift = beta * mu - 0.5 * beta * beta * vs * vs;
    }
    void start(State& s) const { s.rate = 1.0 / u0; }
    void set_dt(double h) {
        dt = h;
        sqdt = std::sqrt(h);
        xdrift = (b - 0.5 * sig * sig) * h;
    }
    void step(State& s, double z1, double z2) const {
        const double xi = rho * z1 + rho_perp * z2;
        const double delta = xdrift + sig * sqdt * xi;  // increment of x_t
        const double ed = std::exp(-delta);
        s.hmul *= ed;
        s.conv = ed * s.conv + 0.5 * dt * (ed + 1.0);
        const double u = s.hmul * u0 + a * s.conv;  // exact log-linear solution
        const double rn = 1.0 / u;
        s.logL += idx_drift * dt + beta * vs * sqdt * z1 -
                  (beta - 1.0) * 0.5 * (s.rate + rn) * dt;
        s.rate = rn;
    }
};

// Per-sample utilities at every checkpoint; a sample is an antithetic pair
// (negated draws) or a single path. Values recorded before a path degenerates
// stand; later checkpoints become NaN.
template <class Stepper>
void run_sample_range(const Stepper& proto, const SegPlan& plan, double p,
                      std::uint64_t seed, bool antithetic, long s_begin,
                      long s_end, long n_samples, double* mat) {
    const std::size_t n_ck = plan.horizons.size();
    for (long s = s_begin; s < s_end; ++s) {
        Philox gen(seed, static_cast<std::uint64_t>(s));
        Stepper st = proto;
        typename Stepper::State pa{}, pb{};
        st.start(pa);
        if (antithetic) st.start(pb);
        std::uint64_t blk = 0;
        long step = 0;
        for (std::size_t k = 0; k < n_ck; ++k) {
            st.set_dt(plan.seg_dt[k]);
            for (; step < plan.cum_steps[k]; ++step) {
                const auto z = gen.normal_pair(blk++);
                st.step(pa, z[0], z[1]);
                if (antithetic) st.step(pb, -z[0], -z[1]);
            }
            const double nan = std::numeric_limits<double>::quiet_NaN();
            const double ua = pa.bad ? nan : std::exp(p * pa.logL);
            double v = ua;
            if (antithetic) {
                const double ub = pb.bad ? nan : std::exp(p * pb.logL);
                v = 0.5 * (ua + ub);
            }
            mat[k * n_samples + s] = v;
        }
    }
}

// Deterministic pairwise (tree) summation.
inline double pairwise_sum(const double* x, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

struct SimTable {
    SegPlan plan;
    long n_samples = 0;
    bool antithetic = false;
    std::vector<double> values;  // n_checkpoints x n_samples
};

inline int thread_count() {
    if (const char* env = std::getenv("LETF_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

inline SimTable simulate_table(const SimRequest& req,
                               const std::vector<double>& horizons) {
    validate_request(req);
    const DegenerateParams d = resolve_degenerate(req.model);
    SimTable table;
    table.plan = plan_segments(horizons, req.dt);
    table.antithetic = req.antithetic;
    table.n_samples = req.antithetic ? req.n_paths / 2 : req.n_paths;
    table.values.assign(table.plan.horizons.size() * table.n_samples, 0.0);

    auto run_all = [&](const auto& proto) {
        const int n_threads =
            static_cast<int>(std::min<long>(thread_count(), table.n_samples));
        if (n_threads <= 1) {
            run_sample_range(proto, table.plan, req.prob.p, req.seed,
                             req.antithetic, 0, table.n_samples, table.n_samples,
                             table.values.data());
            return;
        }
        std::vector<std::thread> pool;
        const long chunk = (table.n_samples + n_threads - 1) / n_threads;
        for (int t = 0; t < n_threads; ++t) {
            const long s0 = t * chunk;
            const long s1 = std::min<long>(table.n_samples, s0 + chunk);
            if (s0 >= s1) break;
            pool.emplace_back([&, s0, s1] {
                run_sample_range(proto, table.plan, req.prob.p, req.seed,
                                 req.antithetic, s0, s1, table.n_samples,
                                 table.values.data());
            });
        }
        for (auto& th : pool) th.join();
    };

    using K = DegenerateParams::Kind;
    switch (d.kind) {
        case K::Gbm: {
            GbmStep st;
            st.init(d, req.prob, req.beta);
            run_all(st);
            break;
        }
        case K::Cir: {
            CirStep st;
            st.init(d, req.prob, req.beta);
            run_all(st);
            break;
        }
        case K::ThreeHalves: {
            ThreeHalvesStep st;
            st.init(d, req.prob, req.beta);
            run_all(st);
            break;
        }
        case K::Heston: {
            HestonStep st;
            st.init(d, req.prob, req.beta);
            run_all(st);
            break;
        }
        case K::Sv32: {
            Sv32Step st;
            st.init(d, req.prob, req.beta);
            run_all(st);
            break;
        }
        case K::Vasicek: {
            VasicekStep st;
            st.init(d, req.prob, req.beta);
            run_all(st);
            break;
        }
        case K::InvGarch: {
            InvGarchStep st;
            st.init(d, req.prob, req.beta);
            run_all(st);
            break;
        }
    }
    return table;
}

inline McEstimate summarize_row(const SimTable& table, const SimRequest& req,
                                std::size_t k) {
    const long n = table.n_samples;
    const double* row = table.values.data() + k * n;
    std::vector<double> kept;
    kept.reserve(n);
    double maxu = -std::numeric_limits<double>::infinity();
    for (long i = 0; i < n; ++i) {
        if (std::isfinite(row[i])) {
            kept.push_back(row[i]);
            maxu = std::max(maxu, row[i]);
        }
    }
    const long n_bad = n - static_cast<long>(kept.size());
    if (n_bad > 0.001 * n)
        throw simulation_error("simulation produced " + std::to_string(n_bad) +
                               " non-finite samples of " + std::to_string(n) +
                               " (limit 0.1%)");
    if (kept.size() < 2) throw simulation_error("fewer than 2 finite samples");
    const double mean = pairwise_sum(kept.data(), kept.size()) /
                        static_cast<double>(kept.size());
    std::vector<double> sq(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i)
        sq[i] = (kept[i] - mean) * (kept[i] - mean);
    const double ss = pairwise_sum(sq.data(), sq.size());
    const double var = ss / static_cast<double>(kept.size() - 1);

    McEstimate e;
    e.horizon_T = table.plan.horizons[k];
    e.n_paths = req.n_paths;
    e.dt = table.plan.seg_dt[k];
    e.scheme = req.scheme;
    e.seed = req.seed;
    e.log_mean = std::log(mean);
    e.estimate = e.log_mean / e.horizon_T;
    e.std_err_of_mean = std::sqrt(var / static_cast<double>(kept.size()));
    e.max_utility = maxu;
    e.n_nonfinite = n_bad;
    return e;
}

}  // namespace detail

// Estimates at an increasing list of horizons from one set of paths (common
// random numbers); a shared prefix of horizons reproduces bit-identically.
inline std::vector<McEstimate> growth_curve(const SimRequest& req,
                                            const std::vector<double>& horizons) {
    const detail::SimTable table = detail::simulate_table(req, horizons);
    std::vector<McEstimate> out;
    for (std::size_t k = 0; k < table.plan.horizons.size(); ++k)
        out.push_back(detail::summarize_row(table, req, k));
    return out;
}

inline McEstimate simulate_utility(const SimRequest& req) {
    return growth_curve(req, {req.horizon_T}).front();
}

// Raw per-sample utilities at the request horizon (pair means when
// antithetic); used for distributional checks.
inline std::vector<double> sample_utilities(const SimRequest& req) {
    const detail::SimTable table = detail::simulate_table(req, {req.horizon_T});
    return table.values;
}

// ---------------------------------------------------------------------------
// Dominance check: the robust rate must lower-bound the simulated rate at
// every parameter vector in the box (corners plus uniform interior samples),
// up to the Monte-Carlo slack max(0.02, 3 se) plus a finite-horizon
// allowance 5/T.

namespace detail {

inline std::vector<std::pair<std::string, Interval>> param_intervals(
    const ModelSpec& model) {
    return std::visit(
        [](const auto& m) -> std::vector<std::pair<std::string, Interval>> {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, Gbm>)
                return {{"mu", m.mu}, {"sigma", m.sigma}};
            else if constexpr (std::is_same_v<M, Cir> || std::is_same_v<M, ThreeHalves>)
                return {{"b", m.b}, {"a", m.a}, {"sigma", m.sigma}};
            else if constexpr (std::is_same_v<M, Heston> || std::is_same_v<M, Sv32>)
                return {{"mu", m.mu}, {"rho", m.rho}, {"b", m.b}, {"a", m.a},
                        {"sigma", m.sigma}};
            else
                return {{"mu", m.mu},       {"varsigma", m.varsigma},
                        {"rho", m.rho},     {"b", m.b},
                        {"a", m.a},         {"sigma", m.sigma}};
        },
        model);
}

}  // namespace detail

// Degenerate copy of `box` with each interval collapsed to params.at(name);
// rate models inherit the box's resolved starting rate.
inline ModelSpec make_degenerate(const ModelSpec& box,
                                 const std::map<std::string, double>& params) {
    auto iv = [&](const std::string& name) {
        const double v = params.at(name);
        return Interval{v, v};
    };
    return std::visit(
        [&](const auto& m) -> ModelSpec {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, Gbm>)
                return Gbm{iv("mu"), iv("sigma")};
            else if constexpr (std::is_same_v<M, Cir>)
                return Cir{iv("b"), iv("a"), iv("sigma")};
            else if constexpr (std::is_same_v<M, ThreeHalves>)
                return ThreeHalves{iv("b"), iv("a"), iv("sigma")};
            else if constexpr (std::is_same_v<M, Heston>)
                return Heston{iv("mu"), iv("rho"), iv("b"), iv("a"), iv("sigma")};
            else if constexpr (std::is_same_v<M, Sv32>)
                return Sv32{iv("mu"), iv("rho"), iv("b"), iv("a"), iv("sigma")};
            else if constexpr (std::is_same_v<M, Vasicek>)
                return Vasicek{iv("mu"), iv("varsigma"), iv("rho"),
                               iv("b"),  iv("a"),        iv("sigma"),
                               resolved_r0(m)};
            else
                return InvGarch{iv("mu"), iv("varsigma"), iv("rho"),
                                iv("b"),  iv("a"),        iv("sigma"),
                                resolved_r0(m)};
        },
        box);
}

struct DominancePoint {
    std::map<std::string, double> params;
    double estimate = 0;
    double delta_se = 0;
    double slack = 0;
};

struct DominanceReport {
    double beta = 0;
    double analytic_rate = 0;
    long n_checked = 0;
    std::vector<DominancePoint> violations;
    bool passed() const { return violations.empty(); }
};

inline DominanceReport dominance_check(const ModelSpec& box, const Problem& prob,
                                       double beta, const SimRequest& tmpl,
                                       int n_samples) {
    const GrowthPoint g = growth(box, prob, beta);
    if (!g.feasible)
        throw feasibility_error("dominance_check at infeasible leverage: " +
                                g.feasibility_note);
    DominanceReport rep;
    rep.beta = beta;
    rep.analytic_rate = *g.rate;

    const auto fields = detail::param_intervals(box);
    std::vector<std::size_t> free_idx;
    for (std::size_t i = 0; i < fields.size(); ++i)
        if (!fields[i].second.degenerate()) free_idx.push_back(i);

    std::vector<std::map<std::string, double>> points;
    const std::size_t n_corners = std::size_t{1} << free_idx.size();
    for (std::size_t mask = 0; mask < n_corners; ++mask) {
        std::map<std::string, double> pt;
        for (std::size_t i = 0; i < fields.size(); ++i) pt[fields[i].first] =
            fields[i].second.lo;
        for (std::size_t j = 0; j < free_idx.size(); ++j)
            if (mask & (std::size_t{1} << j))
                pt[fields[free_idx[j]].first] = fields[free_idx[j]].second.hi;
        points.push_back(std::move(pt));
    }
    Philox sampler(tmpl.seed ^ 0xD1B54A32D192ED03ull, 0);
    std::uint64_t blk = 0;
    for (int s = 0; s < n_samples; ++s) {
        std::map<std::string, double> pt;
        for (const auto& [name, iv] : fields)
            pt[name] = iv.degenerate()
                           ? iv.lo
                           : iv.lo + sampler.uniform(blk++) * (iv.hi - iv.lo);
        points.push_back(std::move(pt));
    }

    for (const auto& pt : points) {
        SimRequest req = tmpl;
        req.model = make_degenerate(box, pt);
        req.prob = prob;
        req.beta = beta;
        req.scheme = scheme_for(box);
        const McEstimate est = simulate_utility(req);
        const double slack = std::max(0.02, 3.0 * est.delta_std_err()) +
                             5.0 / est.horizon_T;
        ++rep.n_checked;
        if (est.estimate < rep.analytic_rate - slack)
            rep.violations.push_back({pt, est.estimate, est.delta_std_err(), slack});
    }
    return rep;
}

}  // namespace letf
