#pragma once

// Heston stochastic-volatility model: d nu = (b - a nu) dt + sigma sqrt(nu) dW
// with index correlation rho. The long-run exponent of the variance factor in
// E[(L_T)^p] is b * eta, where eta solves
//   sigma^4 eta^2 + 2 A sigma^2 eta - p(1-p) beta^2 sigma^2 = 0,
//   A = a - p beta rho sigma,
// and the adversary maximizes eta over the sigma interval while pinning the
// remaining parameters at their monotone-worst bounds.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <letf/core.hpp>
#include <letf/gbm.hpp>
#include <letf/grid.hpp>

namespace letf {

// Adversarial correlation: positive exposure fears high rho, negative low.
inline double rho_star_sv(double beta, const Interval& rho) {
    return beta >= 0.0 ? rho.hi : rho.lo;
}

// Positive root of the eta quadratic, stable form (sqrt(A^2+B) - A)/sigma^2
// with B = p(1-p) beta^2 sigma^2. Requires a_lo - p|beta| sigma > 0, which
// keeps A positive for every admissible rho.
inline double heston_eta(double sigma, double beta, double p, double rho_star,
                         double a_lo) {
    if (!(sigma > 0.0)) throw validation_error("heston_eta: sigma > 0 fails");
    if (!(a_lo - p * std::abs(beta) * sigma > 0.0))
        throw feasibility_error("heston_eta: a.lo - p*|beta|*sigma > 0 fails");
    const double A = a_lo - p * beta * rho_star * sigma;
    const double B = p * (1.0 - p) * beta * beta * sigma * sigma;
    return (std::sqrt(A * A + B) - A) / (sigma * sigma);
}

namespace detail {

// Grid-plus-golden maximization of an eta profile over the sigma interval.
// beta = 0 short-circuits to (sigma_lo, 0): eta vanishes identically.
template <class Eta>
std::pair<double, double> sigma_star_impl(Eta&& eta, const Interval& sigma,
                                          double beta) {
    if (beta == 0.0) return {sigma.lo, 0.0};
    return grid::max_1d(eta, sigma.lo, sigma.hi);
}

}  // namespace detail

// Inner maximizer (sigma*, eta*) for the Heston variance exponent.
inline std::pair<double, double> heston_sigma_star(const Heston& m,
                                                   const Problem& prob,
                                                   double beta) {
    const double p = prob.p;
    if (!(m.a.lo - p * std::abs(beta) * m.sigma.hi > 0.0))
        throw feasibility_error("heston_sigma_star: a.lo - p*|beta|*sigma.hi > 0 fails");
    const double rs = rho_star_sv(beta, m.rho);
    return detail::sigma_star_impl(
        [&](double s) { return heston_eta(s, beta, p, rs, m.a.lo); }, m.sigma, beta);
}

// Worst-case growth rate p (r + beta (mu* - r)) - b_hi * eta*. The query is
// infeasible when a.lo - p |beta| sigma.hi <= 0 (the moment explodes).
inline GrowthPoint heston_growth(const Heston& m, const Problem& prob, double beta) {
    require_valid(m, prob);
    require_beta_in_range(prob, beta);
    const double p = prob.p, r = prob.r;
    GrowthPoint g;
    g.beta = beta;
    g.worst.regime = regime_of(beta);
    const double mu = mu_star(beta, m.mu);
    const double rs = rho_star_sv(beta, m.rho);
    if (!(m.a.lo - p * std::abs(beta) * m.sigma.hi > 0.0)) {
        g.feasible = false;
        g.feasibility_note = "a.lo - p*|beta|*sigma.hi > 0 fails";
        g.worst.params = {{"mu", mu}, {"rho", rs}, {"b", m.b.hi}, {"a", m.a.lo}};
        return g;
    }
    auto [ss, eta] = heston_sigma_star(m, prob, beta);
    g.rate = p * (r + beta * (mu - r)) - m.b.hi * eta;
    g.worst.params = {{"mu", mu}, {"rho", rs}, {"b", m.b.hi}, {"a", m.a.lo}, {"sigma", ss}};
    g.worst.inner_argmax = {{"sigma", ss}, {"eta", eta}};
    return g;
}

}  // namespace letf
