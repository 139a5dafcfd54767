#pragma once

// 3/2 stochastic-volatility model: d nu = nu (b - a nu) dt + sigma nu^{3/2} dW
// with index correlation rho. Same outer structure as Heston; the eta
// quadratic shifts its linear coefficient by sigma^2/2:
//   A' = a - p beta rho sigma + sigma^2 / 2.

#include <cmath>
#include <string>
#include <utility>

#include <letf/core.hpp>
#include <letf/gbm.hpp>
#include <letf/heston.hpp>

namespace letf {

// Positive root (sqrt(A'^2 + B) - A')/sigma^2 with B = p(1-p) beta^2 sigma^2.
// Requires a_lo - p|beta| sigma + sigma^2/2 > 0 so A' stays positive for
// every admissible rho.
inline double sv32_eta(double sigma, double beta, double p, double rho_star,
                       double a_lo) {
    if (!(sigma > 0.0)) throw validation_error("sv32_eta: sigma > 0 fails");
    if (!(a_lo - p * std::abs(beta) * sigma + 0.5 * sigma * sigma > 0.0))
        throw feasibility_error("sv32_eta: a.lo - p*|beta|*sigma + sigma^2/2 > 0 fails");
    const double A = a_lo - p * beta * rho_star * sigma + 0.5 * sigma * sigma;
    const double B = p * (1.0 - p) * beta * beta * sigma * sigma;
    return (std::sqrt(A * A + B) - A) / (sigma * sigma);
}

// Inner maximizer (sigma*, eta*). The box-level guard
// a.lo - p|beta| sigma.hi + sigma.lo^2/2 > 0 implies the per-sigma guard for
// every sigma in the interval, since -p|beta| s + s^2/2 is minimized on the
// interval no lower than -p|beta| sigma.hi + sigma.lo^2/2.
inline std::pair<double, double> sv32_sigma_star(const Sv32& m, const Problem& prob,
                                                 double beta) {
    const double p = prob.p;
    if (!(m.a.lo - p * std::abs(beta) * m.sigma.hi + 0.5 * m.sigma.lo * m.sigma.lo > 0.0))
        throw feasibility_error(
            "sv32_sigma_star: a.lo - p*|beta|*sigma.hi + sigma.lo^2/2 > 0 fails");
    const double rs = rho_star_sv(beta, m.rho);
    return detail::sigma_star_impl(
        [&](double s) { return sv32_eta(s, beta, p, rs, m.a.lo); }, m.sigma, beta);
}

// Worst-case growth rate p (r + beta (mu* - r)) - b_hi * eta*.
inline GrowthPoint sv32_growth(const Sv32& m, const Problem& prob, double beta) {
    require_valid(m, prob);
    require_beta_in_range(prob, beta);
    const double p = prob.p, r = prob.r;
    GrowthPoint g;
    g.beta = beta;
    g.worst.regime = regime_of(beta);
    const double mu = mu_star(beta, m.mu);
    const double rs = rho_star_sv(beta, m.rho);
    if (!(m.a.lo - p * std::abs(beta) * m.sigma.hi + 0.5 * m.sigma.lo * m.sigma.lo > 0.0)) {
        g.feasible = false;
        g.feasibility_note = "a.lo - p*|beta|*sigma.hi + sigma.lo^2/2 > 0 fails";
        g.worst.params = {{"mu", mu}, {"rho", rs}, {"b", m.b.hi}, {"a", m.a.lo}};
        return g;
    }
    auto [ss, eta] = sv32_sigma_star(m, prob, beta);
    g.rate = p * (r + beta * (mu - r)) - m.b.hi * eta;
    g.worst.params = {{"mu", mu}, {"rho", rs}, {"b", m.b.hi}, {"a", m.a.lo}, {"sigma", ss}};
    g.worst.inner_argmax = {{"sigma", ss}, {"eta", eta}};
    return g;
}

}  // namespace letf
