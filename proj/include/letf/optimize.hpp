#pragma once

// Leverage optimization over the admissible range. Three mechanisms by model:
//   - Black-Scholes: closed form (clamping is exact by concavity).
//   - CIR / 3/2: a finite candidate table. On each leverage regime the rate is
//     concave, zero-leverage and the left endpoint are always candidates, and
//     interior stationary points have the closed form
//       beta = (1 - sqrt((K^2 - p) / ((m/r)^2 - p))) / 2
//     where K is the regime's eta linear coefficient and m its multiplier.
//     The beta >= 1 regime is never optimal for r >= 0 since the rate falls
//     strictly beyond beta = 1 and Lambda(0) >= Lambda(1).
//   - Stochastic-volatility and stochastic-rate models: a certified grid. A
//     Lipschitz bound M on |Lambda'(beta)| gives mesh <= epsilon / M, so the
//     grid maximum is within epsilon of the true supremum.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <letf/growth.hpp>

namespace letf {

// ---------------------------------------------------------------------------
// Black-Scholes closed form.

inline OptimalLeverage optimal_beta_gbm(const Gbm& m, const Problem& prob) {
    require_valid(m, prob);
    const double p = prob.p, r = prob.r;
    const double denom = (1.0 - p) * m.sigma.hi * m.sigma.hi;
    double beta;
    if (m.mu.hi < r)
        beta = (m.mu.hi - r) / denom;  // shorting earns the spread
    else if (m.mu.lo <= r)
        beta = 0.0;  // the drift interval straddles r: hold cash
    else
        beta = (m.mu.lo - r) / denom;
    beta = std::clamp(beta, prob.beta_range.lo, prob.beta_range.hi);
    GrowthPoint g = gbm_growth(m, prob, beta);
    OptimalLeverage out;
    out.beta_star = beta;
    out.rate_star = *g.rate;
    out.method = Method::ClosedForm;
    out.error_bound = 0.0;
    out.candidates = {{beta, *g.rate}};
    return out;
}

// ---------------------------------------------------------------------------
// Candidate tables for the CIR and 3/2 excess-return models.

namespace detail {

// Interior stationary point of -p r (beta - 1) - m eta(beta) on a regime with
// eta = (-K + sqrt(K^2 + 4 p beta (beta-1))) / 2. Requires K > 1 (so K^2 > p)
// and a positive denominator; r = 0 degenerates to beta = 1/2 via m/r = inf.
inline double stationary_beta(double K, double m, double r, double p) {
    const double t = m / r;  // +inf when r == 0
    const double u2 = (K * K - p) / (t * t - p);
    return 0.5 * (1.0 - std::sqrt(u2));
}

struct CandidateGates {
    double K_pos, m_pos;  // inner regime 0 <= beta < 1
    double K_neg, m_neg;  // outer regime beta < 0
};

template <class GrowthFn>
OptimalLeverage run_candidates(const CandidateGates& g, const Problem& prob,
                               GrowthFn&& growth_at) {
    if (!(prob.r >= 0.0))
        throw validation_error("candidate table requires r >= 0");
    const double p = prob.p, r = prob.r;
    std::vector<double> cands = {prob.beta_range.lo, 0.0};
    const double t_pos = g.m_pos / r;  // +inf when r == 0
    if (g.K_pos < t_pos) cands.push_back(stationary_beta(g.K_pos, g.m_pos, r, p));
    const double t_neg = g.m_neg / r;
    if (p < t_neg * t_neg && g.K_neg > t_neg) {
        double f1 = stationary_beta(g.K_neg, g.m_neg, r, p);
        if (f1 >= prob.beta_range.lo) cands.push_back(f1);
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    OptimalLeverage out;
    out.method = Method::CandidateTable;
    out.error_bound = 0.0;
    std::string notes;
    bool found = false;
    for (double beta : cands) {
        GrowthPoint pt = growth_at(beta);
        if (!pt.feasible) {
            out.infeasible.push_back(beta);
            notes += (notes.empty() ? "" : "; ") + pt.feasibility_note;
            continue;
        }
        out.candidates.emplace_back(beta, *pt.rate);
        if (!found || *pt.rate > out.rate_star) {
            found = true;
            out.beta_star = beta;
            out.rate_star = *pt.rate;
        }
    }
    if (!found)
        throw feasibility_error("all leverage candidates infeasible: " + notes);
    return out;
}

}  // namespace detail

inline OptimalLeverage candidates_cir(const Cir& m, const Problem& prob) {
    require_valid(m, prob);
    detail::CandidateGates g;
    g.K_pos = 2.0 * m.b.hi / (m.sigma.lo * m.sigma.lo) - 1.0;
    g.m_pos = m.a.lo;
    g.K_neg = 2.0 * m.b.lo / (m.sigma.hi * m.sigma.hi) - 1.0;
    g.m_neg = m.a.hi;
    return detail::run_candidates(g, prob,
                                  [&](double b) { return cir_growth(m, prob, b); });
}

inline OptimalLeverage candidates_32(const ThreeHalves& m, const Problem& prob) {
    require_valid(m, prob);
    detail::CandidateGates g;
    g.K_pos = 2.0 * m.a.hi / (m.sigma.lo * m.sigma.lo) + 1.0;
    g.m_pos = m.b.lo;
    g.K_neg = 2.0 * m.a.lo / (m.sigma.hi * m.sigma.hi) + 1.0;
    g.m_neg = m.b.hi;
    return detail::run_candidates(g, prob,
                                  [&](double b) { return threehalves_growth(m, prob, b); });
}

// ---------------------------------------------------------------------------
// Lipschitz bounds on |Lambda'(beta)| for the certified grid.

namespace detail {

// d eta / d beta for the Heston-type root (sqrt(A^2+B) - A) / sigma^2 with
// A = a_lo - p beta rho sigma (+ sigma^2/2 shift for the 3/2-SV variant) and
// B = p (1-p) beta^2 sigma^2.
inline double sv_eta_beta(double sigma, double beta, double p, double rho,
                          double a_lo, double shift) {
    const double A = a_lo - p * beta * rho * sigma + shift * sigma * sigma;
    const double B = p * (1.0 - p) * beta * beta * sigma * sigma;
    return (p / sigma) *
           ((-rho * A + (1.0 - p) * beta * sigma) / std::sqrt(A * A + B) + rho);
}

// sup over the box of |d eta/d beta|. eta is convex on each leverage half
// with zero slope at beta = 0, so the endpoints dominate; a coarse
// (sigma, beta) scan guards the convexity argument.
inline double sv_sup_eta_beta(const Interval& sigma, const Interval& rho,
                              double a_lo, const Interval& beta_range, double p,
                              double shift) {
    auto at_neg = [&](double s) { return -sv_eta_beta(s, beta_range.lo, p, rho.lo, a_lo, shift); };
    auto at_pos = [&](double s) { return sv_eta_beta(s, beta_range.hi, p, rho.hi, a_lo, shift); };
    double sup = std::max(grid::max_1d(at_neg, sigma.lo, sigma.hi).second,
                          grid::max_1d(at_pos, sigma.lo, sigma.hi).second);
    for (int i = 0; i < 64; ++i) {
        double s = sigma.lo + (sigma.hi - sigma.lo) * i / 63.0;
        for (int j = 0; j < 64; ++j) {
            double bneg = beta_range.lo - beta_range.lo * j / 63.0;  // [beta_lo, 0]
            double bpos = beta_range.hi * j / 63.0;
            sup = std::max({sup, std::abs(sv_eta_beta(s, bneg, p, rho.lo, a_lo, shift)),
                            std::abs(sv_eta_beta(s, bpos, p, rho.hi, a_lo, shift))});
        }
    }
    return sup;
}

}  // namespace detail

inline double lipschitz_M_heston(const Heston& m, const Problem& prob) {
    require_valid(m, prob);
    const double p = prob.p, r = prob.r;
    const double bmax = std::max(std::abs(prob.beta_range.lo), prob.beta_range.hi);
    if (!(m.a.lo - p * bmax * m.sigma.hi > 0.0))
        throw feasibility_error(
            "lipschitz_M_heston: a.lo - p*max|beta|*sigma.hi > 0 fails");
    const double drift = p * std::max(std::abs(m.mu.lo - r), std::abs(m.mu.hi - r));
    return drift + m.b.hi * detail::sv_sup_eta_beta(m.sigma, m.rho, m.a.lo,
                                                    prob.beta_range, p, 0.0);
}

inline double lipschitz_M_sv32(const Sv32& m, const Problem& prob) {
    require_valid(m, prob);
    const double p = prob.p, r = prob.r;
    const double bmax = std::max(std::abs(prob.beta_range.lo), prob.beta_range.hi);
    if (!(m.a.lo - p * bmax * m.sigma.hi + 0.5 * m.sigma.lo * m.sigma.lo > 0.0))
        throw feasibility_error(
            "lipschitz_M_sv32: a.lo - p*max|beta|*sigma.hi + sigma.lo^2/2 > 0 fails");
    const double drift = p * std::max(std::abs(m.mu.lo - r), std::abs(m.mu.hi - r));
    const double sup = detail::sv_sup_eta_beta(m.sigma, m.rho, m.a.lo,
                                               prob.beta_range, p, 0.5);
    return 1.1 * (drift + m.b.hi * sup);  // 10% safety pad on the scan
}

namespace detail {

// sup over the box of |lambda_beta| for a rate-model derivative that is
// linear in beta, b, and the product varsigma*rho: those coordinates are
// resolved exactly at endpoints, (a, sigma) by 64^2 grid plus coordinate
// golden refinement of |.|.
template <class LambdaBeta>
double sup_abs_lambda_beta(LambdaBeta&& lb, const Interval& vs, const Interval& rho,
                           const Interval& b, const Interval& a,
                           const Interval& sigma, const Interval& beta_range) {
    const double prods[] = {vs.lo * rho.lo, vs.lo * rho.hi, vs.hi * rho.lo,
                            vs.hi * rho.hi};
    double sup = 0.0;
    for (double beta : {beta_range.lo, beta_range.hi}) {
        for (double vr : prods) {
            for (double bb : {b.lo, b.hi}) {
                auto f = [&](double ax, double sx) {
                    return std::abs(lb(vr, bb, ax, sx, beta));
                };
                auto r2 = grid::max_2d(f, a.lo, a.hi, sigma.lo, sigma.hi, 64);
                sup = std::max(sup, r2.value);
            }
        }
    }
    // full 64^3 (a, sigma, beta) sweep with exact corner (vs rho, b) choice
    for (int i = 0; i < 64; ++i) {
        double ax = a.lo + (a.hi - a.lo) * i / 63.0;
        for (int j = 0; j < 64; ++j) {
            double sx = sigma.lo + (sigma.hi - sigma.lo) * j / 63.0;
            for (int k = 0; k < 64; ++k) {
                double beta = beta_range.lo +
                              (beta_range.hi - beta_range.lo) * k / 63.0;
                for (double vr : prods)
                    for (double bb : {b.lo, b.hi})
                        sup = std::max(sup, std::abs(lb(vr, bb, ax, sx, beta)));
            }
        }
    }
    return sup;
}

}  // namespace detail

inline double lipschitz_M_vasicek(const Vasicek& m, const Problem& prob) {
    require_valid(m, prob);
    const double p = prob.p;
    const double bmax = std::max(std::abs(prob.beta_range.lo), prob.beta_range.hi);
    // d lambda / d beta with vr = varsigma * rho
    auto lb = [&](double vr, double bb, double ax, double sx, double beta) {
        return -p * p * (beta - 1.0) * sx * sx / (ax * ax) +
               p * p * (2.0 * beta - 1.0) * vr * sx / ax + p * bb / ax;
    };
    const double sup = detail::sup_abs_lambda_beta(lb, m.varsigma, m.rho, m.b, m.a,
                                                   m.sigma, prob.beta_range);
    return p * m.mu.hi + p * (1.0 - p) * m.varsigma.hi * m.varsigma.hi * bmax + sup;
}

inline double lipschitz_M_invgarch(const InvGarch& m, const Problem& prob) {
    require_valid(m, prob);
    const double p = prob.p;
    const double bmax = std::max(std::abs(prob.beta_range.lo), prob.beta_range.hi);
    auto lb = [&](double vr, double bb, double ax, double sx, double beta) {
        return -(p * sx * sx / (2.0 * ax)) * (2.0 * p * (beta - 1.0) / ax + 1.0) +
               p * p * (2.0 * beta - 1.0) * vr * sx / ax + p * bb / ax;
    };
    const double sup = detail::sup_abs_lambda_beta(lb, m.varsigma, m.rho, m.b, m.a,
                                                   m.sigma, prob.beta_range);
    return 1.1 * (p * m.mu.hi + p * (1.0 - p) * m.varsigma.hi * m.varsigma.hi * bmax +
                  sup);
}

// ---------------------------------------------------------------------------
// Certified grid search.

struct CertifiedGridConfig {
    double epsilon = 0.01;   // certified gap to the true supremum
    double lipschitz_M = 0;  // bound on |Lambda'| over the leverage range
    double mesh = 0;         // actual spacing, <= epsilon / lipschitz_M
    int n_points = 0;        // grid has n_points + 1 nodes including endpoints
};

namespace detail {

inline void reject_non_grid_models(const ModelSpec& model) {
    if (std::holds_alternative<Gbm>(model))
        throw validation_error(
            "optimize_beta_grid does not apply to the gbm model; use "
            "optimal_beta_gbm (closed form)");
    if (std::holds_alternative<Cir>(model))
        throw validation_error(
            "optimize_beta_grid does not apply to the cir model; use "
            "candidates_cir (exact candidate table)");
    if (std::holds_alternative<ThreeHalves>(model))
        throw validation_error(
            "optimize_beta_grid does not apply to the three_halves model; use "
            "candidates_32 (exact candidate table)");
}

}  // namespace detail

inline CertifiedGridConfig certified_grid_config(const ModelSpec& model,
                                                 const Problem& prob,
                                                 double epsilon = 0.01) {
    detail::reject_non_grid_models(model);
    if (!(epsilon > 0.0)) throw validation_error("epsilon > 0 fails");
    CertifiedGridConfig cfg;
    cfg.epsilon = epsilon;
    cfg.lipschitz_M = std::visit(
        [&](const auto& mm) -> double {
            using M = std::decay_t<decltype(mm)>;
            if constexpr (std::is_same_v<M, Heston>) return lipschitz_M_heston(mm, prob);
            else if constexpr (std::is_same_v<M, Sv32>) return lipschitz_M_sv32(mm, prob);
            else if constexpr (std::is_same_v<M, Vasicek>)
                return lipschitz_M_vasicek(mm, prob);
            else if constexpr (std::is_same_v<M, InvGarch>)
                return lipschitz_M_invgarch(mm, prob);
            else
                throw validation_error(
                    "certified grid applies to the heston, sv32, vasicek, and "
                    "inv_garch models only");
        },
        model);
    const double span = prob.beta_range.hi - prob.beta_range.lo;
    cfg.n_points = std::max(1, static_cast<int>(std::ceil(span * cfg.lipschitz_M / epsilon)));
    cfg.mesh = span / cfg.n_points;
    return cfg;
}

inline OptimalLeverage optimize_beta_grid(const ModelSpec& model, const Problem& prob,
                                          const CertifiedGridConfig& cfg) {
    detail::reject_non_grid_models(model);
    OptimalLeverage out;
    out.method = Method::CertifiedGrid;
    out.error_bound = cfg.epsilon;
    std::string note;
    bool found = false;
    for (int k = 0; k <= cfg.n_points; ++k) {
        // endpoints land exactly on beta_range bounds
        const double beta = k == cfg.n_points ? prob.beta_range.hi
                                              : prob.beta_range.lo + cfg.mesh * k;
        GrowthPoint pt = growth(model, prob, beta);
        if (!pt.feasible) {
            out.infeasible.push_back(beta);
            if (note.empty()) note = pt.feasibility_note;
            continue;
        }
        out.candidates.emplace_back(beta, *pt.rate);
        if (!found || *pt.rate > out.rate_star) {
            found = true;
            out.beta_star = beta;
            out.rate_star = *pt.rate;
        }
    }
    if (!found)
        throw feasibility_error("every grid leverage is infeasible: " + note);
    return out;
}

inline OptimalLeverage optimize_beta_grid(const ModelSpec& model, const Problem& prob,
                                          double epsilon = 0.01) {
    return optimize_beta_grid(model, prob, certified_grid_config(model, prob, epsilon));
}

}  // namespace letf
