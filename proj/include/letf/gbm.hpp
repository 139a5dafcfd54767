#pragma once

// Black-Scholes model with drift and volatility known only up to an interval.
// The worst-case expected power utility of a leveraged fund is attained at a
// corner of the (mu, sigma) box, so the growth rate is closed-form.

#include <letf/core.hpp>

namespace letf {

// Adversarial drift: long exposure fears low drift, short exposure high drift.
inline double mu_star(double beta, const Interval& mu) {
    return beta >= 0.0 ? mu.lo : mu.hi;
}

// Robust growth rate p*r + p*(mu*-r)*beta - p(1-p)/2 * sigma_hi^2 * beta^2.
// Volatility always hurts a power investor with p in (0,1), so sigma_hi is
// worst regardless of the sign of beta.
inline GrowthPoint gbm_growth(const Gbm& m, const Problem& prob, double beta) {
    require_valid(m, prob);
    require_beta_in_range(prob, beta);
    const double p = prob.p, r = prob.r;
    const double mu = mu_star(beta, m.mu);
    const double sig = m.sigma.hi;
    GrowthPoint g;
    g.beta = beta;
    g.rate = p * r + p * (mu - r) * beta - 0.5 * p * (1.0 - p) * sig * sig * beta * beta;
    g.worst.params = {{"mu", mu}, {"sigma", sig}};
    g.worst.regime = regime_of(beta);
    return g;
}

}  // namespace letf
