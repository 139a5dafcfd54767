#pragma once

// Inverse-GARCH stochastic short-rate model: r = 1/U with
// dU = (a + (sigma^2 - b) U) dt - sigma U dB_2, so the rate mean-reverts
// toward b/a with state-proportional noise. The funding drag enters through
//   lambda = -(q/2)(q+1) sigma^2 + p^2 beta (beta-1) varsigma rho sigma / a
//            + q b,            q = p (beta-1) / a,
// and the robust growth rate is
//   Lambda(beta) = p beta mu* - max_alpha [ p(1-p)/2 beta^2 varsigma^2 + lambda ].
// The box maximization splits into the same six leverage/correlation cases as
// the Vasicek model, but the sigma^2 coefficient can take either sign, so the
// even cases keep a joint 2-D search in (varsigma, sigma).

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <letf/core.hpp>
#include <letf/gbm.hpp>
#include <letf/grid.hpp>
#include <letf/vasicek.hpp>

namespace letf {

inline double invgarch_lambda(double varsigma, double rho, double b, double a,
                              double sigma, double beta, double p) {
    if (!(a > 0.0)) throw validation_error("invgarch_lambda: a > 0 fails");
    const double q = p * (beta - 1.0) / a;
    return -0.5 * q * (q + 1.0) * sigma * sigma +
           p * p * beta * (beta - 1.0) * varsigma * rho * sigma / a + q * b;
}

namespace detail {

inline double invgarch_bracket(double vs, double rho, double b, double a,
                               double sigma, double beta, double p) {
    return 0.5 * p * (1.0 - p) * beta * beta * vs * vs +
           invgarch_lambda(vs, rho, b, a, sigma, beta, p);
}

// Feasibility at a given leverage; returns an empty string when admissible.
// Two guards: the pathwise moment bound b.lo - p|beta| vs.hi sigma.hi >
// sigma.hi^2/2, and positivity of b* + p beta vs rho sigma - (q+1) sigma^2
// over the whole box (exact: corner enumeration in (vs, rho) and endpoint
// or stationary sigma depending on the quadratic's convexity).
inline std::string invgarch_feasibility_note(const InvGarch& m, const Problem& prob,
                                             double beta) {
    const double p = prob.p;
    if (!(m.b.lo - p * std::abs(beta) * m.varsigma.hi * m.sigma.hi >
          0.5 * m.sigma.hi * m.sigma.hi))
        return "b.lo - p*|beta|*varsigma.hi*sigma.hi > sigma.hi^2/2 fails";
    const bool ge1 = beta >= 1.0;
    const double bs = ge1 ? m.b.hi : m.b.lo;
    const double as = ge1 ? m.a.lo : m.a.hi;
    const double K = p * (beta - 1.0) / as + 1.0;
    double inf_val = std::numeric_limits<double>::infinity();
    for (double vs : {m.varsigma.lo, m.varsigma.hi}) {
        for (double rho : {m.rho.lo, m.rho.hi}) {
            const double c = p * beta * vs * rho;
            auto g = [&](double s) { return bs + c * s - K * s * s; };
            inf_val = std::min({inf_val, g(m.sigma.lo), g(m.sigma.hi)});
            if (K < 0.0) {
                const double s0 = c / (2.0 * K);
                if (s0 > m.sigma.lo && s0 < m.sigma.hi)
                    inf_val = std::min(inf_val, g(s0));
            }
        }
    }
    if (!(inf_val > 0.0))
        return "inf over the box of b* + p*beta*varsigma*rho*sigma - "
               "(p*(beta-1)/a* + 1)*sigma^2 > 0 fails";
    return {};
}

}  // namespace detail

// Worst-case parameter vector at leverage beta. Same case keying as the
// Vasicek model; throws when the leverage is infeasible for this box.
inline WorstCase invgarch_worst_params(const InvGarch& m, const Problem& prob,
                                       double beta) {
    require_valid(m, prob);
    require_beta_in_range(prob, beta);
    if (auto note = detail::invgarch_feasibility_note(m, prob, beta); !note.empty())
        throw feasibility_error("invgarch_worst_params: " + note);
    const double p = prob.p;
    const double mu = mu_star(beta, m.mu);
    const double rho = rho_star_rate(beta, m.rho);
    const bool ge1 = beta >= 1.0, neg = beta < 0.0;
    const double b = ge1 ? m.b.hi : m.b.lo;
    const double a = ge1 ? m.a.lo : m.a.hi;

    WorstCase w;
    w.regime = regime_of(beta);
    double vs = 0.0, sig = 0.0;
    const bool vs_pinned_high =
        ((ge1 || neg) && rho > 0.0) || (!ge1 && !neg && rho < 0.0);
    if (vs_pinned_high) {
        // cases 1, 3, 5: the cross term rewards large varsigma
        vs = m.varsigma.hi;
        auto [sx, fs] = grid::max_1d(
            [&](double s) { return detail::invgarch_bracket(vs, rho, b, a, s, beta, p); },
            m.sigma.lo, m.sigma.hi);
        (void)fs;
        sig = sx;
        w.subcase = ge1 ? "case1" : (neg ? "case5" : "case3");
        w.inner_argmax = {{"sigma", sig}};
    } else if (ge1) {
        // case 2: sigma terms are both decreasing, pin sigma.lo; convex
        // quadratic in varsigma sits at an endpoint
        sig = m.sigma.lo;
        auto [vx, fv] = grid::max_endpoints(
            [&](double v) { return detail::invgarch_bracket(v, rho, b, a, sig, beta, p); },
            m.varsigma.lo, m.varsigma.hi);
        (void)fv;
        vs = vx;
        w.subcase = "case2";
        w.inner_argmax = {{"varsigma", vs}};
    } else {
        // cases 4 and 6: varsigma and sigma trade off jointly
        auto r2 = grid::max_2d(
            [&](double v, double s) {
                return detail::invgarch_bracket(v, rho, b, a, s, beta, p);
            },
            m.varsigma.lo, m.varsigma.hi, m.sigma.lo, m.sigma.hi);
        vs = r2.x;
        sig = r2.y;
        w.subcase = neg ? "case6" : "case4";
        w.inner_argmax = {{"varsigma", vs}, {"sigma", sig}};
    }
    w.params = {{"mu", mu}, {"varsigma", vs}, {"rho", rho},
                {"b", b},   {"a", a},         {"sigma", sig}};
    return w;
}

// Robust growth rate; infeasible leverages report the failed guard instead of
// throwing.
inline GrowthPoint invgarch_growth(const InvGarch& m, const Problem& prob,
                                   double beta) {
    require_valid(m, prob);
    require_beta_in_range(prob, beta);
    GrowthPoint g;
    g.beta = beta;
    g.worst.regime = regime_of(beta);
    if (auto note = detail::invgarch_feasibility_note(m, prob, beta); !note.empty()) {
        g.feasible = false;
        g.feasibility_note = note;
        return g;
    }
    WorstCase w = invgarch_worst_params(m, prob, beta);
    const double p = prob.p;
    g.worst = w;
    g.rate = p * beta * w.params.at("mu") -
             detail::invgarch_bracket(w.params.at("varsigma"), w.params.at("rho"),
                                      w.params.at("b"), w.params.at("a"),
                                      w.params.at("sigma"), beta, p);
    return g;
}

}  // namespace letf
