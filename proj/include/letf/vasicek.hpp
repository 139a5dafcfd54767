#pragma once

// Vasicek stochastic short-rate model: the fund borrows at an OU rate
// dr = (b - a r) dt + sigma dB_2 while the index has constant drift mu and
// volatility varsigma, corr(dB_1, dB_2) = rho. The funding drag enters the
// power-utility exponent through the Gaussian functional
//   lambda = -1/2 (p (beta-1) sigma / a)^2
//            + p^2 beta (beta-1) varsigma rho sigma / a
//            + p (beta-1) b / a,
// and the robust growth rate is
//   Lambda(beta) = p beta mu* - max_alpha [ p(1-p)/2 beta^2 varsigma^2 + lambda ].
// The maximization over the parameter box splits into six cases by leverage
// regime and the sign of the adversarial correlation; each case pins the
// monotone coordinates exactly and leaves at most a 2-D numerical search.

#include <cmath>
#include <string>

#include <letf/core.hpp>
#include <letf/gbm.hpp>
#include <letf/grid.hpp>

namespace letf {

inline double vasicek_lambda(double varsigma, double rho, double b, double a,
                             double sigma, double beta, double p) {
    if (!(a > 0.0)) throw validation_error("vasicek_lambda: a > 0 fails");
    const double q = p * (beta - 1.0);
    return -0.5 * (q * sigma / a) * (q * sigma / a) +
           p * q * beta * varsigma * rho * sigma / a + q * b / a;
}

// Correlation selector: rho enters the exponent through
// -p^2 beta (beta-1) varsigma sigma rho / a, so the infimum over rho sits at
// rho.hi when beta (beta-1) >= 0 and at rho.lo on 0 <= beta < 1.
inline double rho_star_rate(double beta, const Interval& rho) {
    return (beta >= 1.0 || beta < 0.0) ? rho.hi : rho.lo;
}

namespace detail {

// Objective the adversary maximizes (rate drag), with mu excluded.
inline double vasicek_bracket(double vs, double rho, double b, double a,
                              double sigma, double beta, double p) {
    return 0.5 * p * (1.0 - p) * beta * beta * vs * vs +
           vasicek_lambda(vs, rho, b, a, sigma, beta, p);
}

}  // namespace detail

// Worst-case parameter vector at leverage beta. Six cases:
//   1: beta >= 1,     rho.hi > 0  -> vs = vs.hi, 2-D search over (a, sigma)
//   2: beta >= 1,     rho.hi <= 0 -> sigma = sigma.lo, 2-D over (vs, a)
//   3: 0 <= beta < 1, rho.lo < 0  -> vs = vs.hi, 2-D over (a, sigma)
//   4: 0 <= beta < 1, rho.lo >= 0 -> a = a.hi, sigma = sigma.lo, vs at an endpoint
//   5: beta < 0,      rho.hi > 0  -> vs = vs.hi, 2-D over (a, sigma)
//   6: beta < 0,      rho.hi <= 0 -> a = a.hi, sigma = sigma.lo, vs at an endpoint
inline WorstCase vasicek_worst_params(const Vasicek& m, const Problem& prob,
                                      double beta) {
    require_valid(m, prob);
    require_beta_in_range(prob, beta);
    const double p = prob.p;
    const double mu = mu_star(beta, m.mu);
    const double rho = rho_star_rate(beta, m.rho);
    const double b = beta >= 1.0 ? m.b.hi : m.b.lo;

    WorstCase w;
    w.regime = regime_of(beta);
    double vs = 0.0, a = 0.0, sig = 0.0;
    const bool ge1 = beta >= 1.0, neg = beta < 0.0;
    if ((ge1 || neg) && rho > 0.0) {
        // cases 1 and 5: cross term rewards large varsigma, pin vs.hi
        vs = m.varsigma.hi;
        auto r2 = grid::max_2d(
            [&](double ax, double sx) {
                return detail::vasicek_bracket(vs, rho, b, ax, sx, beta, p);
            },
            m.a.lo, m.a.hi, m.sigma.lo, m.sigma.hi);
        a = r2.x;
        sig = r2.y;
        w.subcase = ge1 ? "case1" : "case5";
        w.inner_argmax = {{"a", a}, {"sigma", sig}};
    } else if (ge1) {
        // case 2: cross term punishes sigma, pin sigma.lo
        sig = m.sigma.lo;
        auto r2 = grid::max_2d(
            [&](double vx, double ax) {
                return detail::vasicek_bracket(vx, rho, b, ax, sig, beta, p);
            },
            m.varsigma.lo, m.varsigma.hi, m.a.lo, m.a.hi);
        vs = r2.x;
        a = r2.y;
        w.subcase = "case2";
        w.inner_argmax = {{"varsigma", vs}, {"a", a}};
    } else if (!neg && rho < 0.0) {
        // case 3: beta (beta-1) <= 0 and rho.lo < 0 reward large varsigma
        vs = m.varsigma.hi;
        auto r2 = grid::max_2d(
            [&](double ax, double sx) {
                return detail::vasicek_bracket(vs, rho, b, ax, sx, beta, p);
            },
            m.a.lo, m.a.hi, m.sigma.lo, m.sigma.hi);
        a = r2.x;
        sig = r2.y;
        w.subcase = "case3";
        w.inner_argmax = {{"a", a}, {"sigma", sig}};
    } else {
        // cases 4 and 6: every sigma and 1/a term is monotone, pin (a.hi,
        // sigma.lo); the remaining objective is a convex quadratic in vs
        a = m.a.hi;
        sig = m.sigma.lo;
        auto [vx, fv] = grid::max_endpoints(
            [&](double v) {
                return detail::vasicek_bracket(v, rho, b, a, sig, beta, p);
            },
            m.varsigma.lo, m.varsigma.hi);
        (void)fv;
        vs = vx;
        w.subcase = neg ? "case6" : "case4";
        w.inner_argmax = {{"varsigma", vs}};
    }
    w.params = {{"mu", mu}, {"varsigma", vs}, {"rho", rho},
                {"b", b},   {"a", a},         {"sigma", sig}};
    return w;
}

// Robust growth rate; always feasible on a valid box. The rate is recomputed
// from the reported worst-case vector, so the two are consistent by
// construction.
inline GrowthPoint vasicek_growth(const Vasicek& m, const Problem& prob,
                                  double beta) {
    WorstCase w = vasicek_worst_params(m, prob, beta);
    const double p = prob.p;
    GrowthPoint g;
    g.beta = beta;
    g.worst = w;
    g.rate = p * beta * w.params.at("mu") -
             detail::vasicek_bracket(w.params.at("varsigma"), w.params.at("rho"),
                                     w.params.at("b"), w.params.at("a"),
                                     w.params.at("sigma"), beta, p);
    return g;
}

}  // namespace letf
