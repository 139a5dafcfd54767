#pragma once

// Shared domain types: parameter intervals, per-model uncertainty boxes,
// problem parameters, and the result records produced by the analytic and
// Monte-Carlo layers. All types are immutable value types; validation is
// reporting-style (validate) with a throwing wrapper (require_valid) used by
// operations whose preconditions demand a valid model.

#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace letf {

struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A proposition's side condition failed for an otherwise valid query.
struct feasibility_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct simulation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Closed interval [lo, hi]. Degenerate (lo == hi) means the parameter is known.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const { return lo <= x && x <= hi; }
    bool degenerate() const { return lo == hi; }
    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
};

// Global problem parameters. p is the utility power; rates are annualized
// log-growth and the time unit is years throughout. r is ignored by the
// stochastic-rate models (Vasicek, InvGarch), which carry their own rate box.
struct Problem {
    double p = 0.5;
    double r = 0.0;
    Interval beta_range{-5.0, 5.0};
};

struct Gbm {
    Interval mu, sigma;
};

// dX = (b - aX)dt + sigma*sqrt(X) dB; reference index follows X itself.
struct Cir {
    Interval b, a, sigma;
};

// dX = (b - aX)X dt + sigma*X^{3/2} dB.
struct ThreeHalves {
    Interval b, a, sigma;
};

// dX/X = mu dt + sqrt(nu) dW, dnu = (b - a*nu)dt + sigma*sqrt(nu) dB,
// d<W,B> = rho dt.
struct Heston {
    Interval mu, rho, b, a, sigma;
};

// Same shape as Heston but the variance follows a 3/2 process.
struct Sv32 {
    Interval mu, rho, b, a, sigma;
};

// dX/X = mu dt + varsigma dW, dr = (b - a r)dt + sigma dB, d<W,B> = rho dt.
// r0 < 0 or NaN means "unspecified"; see resolved_r0.
struct Vasicek {
    Interval mu, varsigma, rho, b, a, sigma;
    double r0 = std::nan("");
};

// dr = (b - a r)r dt + sigma r dB; 1/r solves a linear SDE.
struct InvGarch {
    Interval mu, varsigma, rho, b, a, sigma;
    double r0 = std::nan("");
};

using ModelSpec = std::variant<Gbm, Cir, ThreeHalves, Heston, Sv32, Vasicek, InvGarch>;

// r0 affects only finite-horizon simulation, never the analytic rate; when
// unspecified it defaults to the midpoint of the stationary-mean bounds.
template <class RateModel>
double resolved_r0(const RateModel& m) {
    if (std::isnan(m.r0)) return 0.5 * (m.b.lo / m.a.hi + m.b.hi / m.a.lo);
    return m.r0;
}

enum class Regime { BetaGe1, BetaIn01, BetaNeg };

inline Regime regime_of(double beta) {
    if (beta >= 1.0) return Regime::BetaGe1;
    if (beta >= 0.0) return Regime::BetaIn01;
    return Regime::BetaNeg;
}

inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::BetaGe1: return "beta_ge_1";
        case Regime::BetaIn01: return "beta_in_01";
        default: return "beta_neg";
    }
}

// The box element attaining (or dominating) the infimum for a given beta.
// params holds the selected alpha components by name; inner_argmax holds the
// results of any inner optimization (sigma*, or (varsigma*, a*), ...).
struct WorstCase {
    std::map<std::string, double> params;
    std::map<std::string, double> inner_argmax;
    Regime regime = Regime::BetaIn01;
    std::string subcase;  // e.g. "rho_hi<0" for the six-case rate models
};

// rate is absent exactly when a proposition side condition failed (feasible
// == false); feasibility_note then names the failed condition.
struct GrowthPoint {
    double beta = 0.0;
    std::optional<double> rate;
    WorstCase worst;
    bool feasible = true;
    std::string feasibility_note;
};

enum class Method { ClosedForm, CandidateTable, CertifiedGrid };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::ClosedForm: return "closed_form";
        case Method::CandidateTable: return "candidate_table";
        default: return "certified_grid";
    }
}

struct OptimalLeverage {
    double beta_star = 0.0;
    double rate_star = 0.0;
    Method method = Method::ClosedForm;
    double error_bound = 0.0;                         // epsilon for the grid; 0 if exact
    std::vector<std::pair<double, double>> candidates; // (beta, rate) evaluated
    std::vector<double> infeasible;                   // betas skipped by side conditions
};

namespace detail {

inline void check_interval(std::vector<std::string>& out, const Interval& iv,
                           const char* name) {
    if (!(iv.lo <= iv.hi)) out.push_back(std::string(name) + ".lo <= " + name + ".hi fails");
}

inline void check_positive_lo(std::vector<std::string>& out, const Interval& iv,
                              const char* name) {
    if (!(iv.lo > 0.0)) out.push_back(std::string(name) + ".lo > 0 fails");
}

inline void check_rho_range(std::vector<std::string>& out, const Interval& rho) {
    if (!(rho.lo >= -1.0)) out.push_back("-1 <= rho.lo fails");
    if (!(rho.hi <= 1.0)) out.push_back("rho.hi <= 1 fails");
}

}  // namespace detail

inline std::vector<std::string> validate(const Problem& prob) {
    std::vector<std::string> out;
    if (!(prob.p > 0.0 && prob.p < 1.0)) out.push_back("0 < p < 1 fails");
    detail::check_interval(out, prob.beta_range, "beta_range");
    if (!(prob.beta_range.lo < 0.0)) out.push_back("beta_range.lo < 0 fails");
    if (!(prob.beta_range.hi > 1.0)) out.push_back("beta_range.hi > 1 fails");
    return out;
}

// Reports every violated standing assumption; empty report == valid.
inline std::vector<std::string> validate(const ModelSpec& model, const Problem& prob) {
    std::vector<std::string> out = validate(prob);
    using detail::check_interval;
    using detail::check_positive_lo;
    std::visit(
        [&](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, Gbm>) {
                check_interval(out, m.mu, "mu");
                check_interval(out, m.sigma, "sigma");
                check_positive_lo(out, m.mu, "mu");
                check_positive_lo(out, m.sigma, "sigma");
            } else if constexpr (std::is_same_v<M, Cir>) {
                check_interval(out, m.b, "b");
                check_interval(out, m.a, "a");
                check_interval(out, m.sigma, "sigma");
                check_positive_lo(out, m.a, "a");
                check_positive_lo(out, m.sigma, "sigma");
                if (!(m.b.lo > m.sigma.hi * m.sigma.hi))
                    out.push_back("b.lo > sigma.hi^2 fails");
            } else if constexpr (std::is_same_v<M, ThreeHalves>) {
                check_interval(out, m.b, "b");
                check_interval(out, m.a, "a");
                check_interval(out, m.sigma, "sigma");
                check_positive_lo(out, m.b, "b");
                check_positive_lo(out, m.a, "a");
                check_positive_lo(out, m.sigma, "sigma");
            } else if constexpr (std::is_same_v<M, Heston>) {
                check_interval(out, m.mu, "mu");
                check_interval(out, m.rho, "rho");
                check_interval(out, m.b, "b");
                check_interval(out, m.a, "a");
                check_interval(out, m.sigma, "sigma");
                check_positive_lo(out, m.mu, "mu");
                check_positive_lo(out, m.a, "a");
                check_positive_lo(out, m.sigma, "sigma");
                if (!(m.b.lo > 0.5 * m.sigma.hi * m.sigma.hi))
                    out.push_back("b.lo > sigma.hi^2/2 fails");
                detail::check_rho_range(out, m.rho);
            } else if constexpr (std::is_same_v<M, Sv32>) {
                check_interval(out, m.mu, "mu");
                check_interval(out, m.rho, "rho");
                check_interval(out, m.b, "b");
                check_interval(out, m.a, "a");
                check_interval(out, m.sigma, "sigma");
                check_positive_lo(out, m.mu, "mu");
                check_positive_lo(out, m.b, "b");
                check_positive_lo(out, m.sigma, "sigma");
                if (!(m.a.lo > -0.5 * m.sigma.lo * m.sigma.lo))
                    out.push_back("a.lo > -sigma.lo^2/2 fails");
                detail::check_rho_range(out, m.rho);
            } else if constexpr (std::is_same_v<M, Vasicek>) {
                check_interval(out, m.mu, "mu");
                check_interval(out, m.varsigma, "varsigma");
                check_interval(out, m.rho, "rho");
                check_interval(out, m.b, "b");
                check_interval(out, m.a, "a");
                check_interval(out, m.sigma, "sigma");
                check_positive_lo(out, m.mu, "mu");
                check_positive_lo(out, m.varsigma, "varsigma");
                check_positive_lo(out, m.b, "b");
                check_positive_lo(out, m.a, "a");
                check_positive_lo(out, m.sigma, "sigma");
                detail::check_rho_range(out, m.rho);
            } else {  // InvGarch
                check_interval(out, m.mu, "mu");
                check_interval(out, m.varsigma, "varsigma");
                check_interval(out, m.rho, "rho");
                check_interval(out, m.b, "b");
                check_interval(out, m.a, "a");
                check_interval(out, m.sigma, "sigma");
                check_positive_lo(out, m.mu, "mu");
                check_positive_lo(out, m.varsigma, "varsigma");
                check_positive_lo(out, m.a, "a");
                check_positive_lo(out, m.sigma, "sigma");
                detail::check_rho_range(out, m.rho);
            }
        },
        model);
    return out;
}

// Enforcement gate for the growth/optimize operations. The Heston bound
// b.lo > sigma.hi^2/2 stays advisory: validate reports it, but every growth
// formula remains well-defined without it (the variance floor is handled by
// full truncation and the per-query moment gate a.lo - p|beta| sigma.hi > 0),
// and reference calibrations routinely violate it.
inline void require_valid(const ModelSpec& model, const Problem& prob) {
    auto report = validate(model, prob);
    if (std::holds_alternative<Heston>(model))
        std::erase(report, "b.lo > sigma.hi^2/2 fails");
    if (report.empty()) return;
    std::ostringstream os;
    os << "invalid model/problem:";
    for (const auto& v : report) os << " [" << v << "]";
    throw validation_error(os.str());
}

inline void require_beta_in_range(const Problem& prob, double beta) {
    if (!prob.beta_range.contains(beta)) {
        std::ostringstream os;
        os << "beta " << beta << " outside [" << prob.beta_range.lo << ", "
           << prob.beta_range.hi << "]";
        throw validation_error(os.str());
    }
}

}  // namespace letf
