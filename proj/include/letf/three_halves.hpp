#pragma once

// 3/2 excess-return model: dX = (b - a X) X dt + sigma X^{3/2} dB. Under
// Z = 1/X this is a CIR process, which yields the same closed-form principal
// eigenvalue structure with shifted coefficients.

#include <cmath>
#include <string>

#include <letf/core.hpp>

namespace letf {

// Positive root eta of eta^2 + (2a/sigma^2 + 1) eta - p beta (beta - 1) = 0.
inline double threehalves_eta(double a, double sigma, double beta, double p) {
    if (!(sigma > 0.0)) throw validation_error("threehalves_eta: sigma > 0 fails");
    if (!(a > 0.0)) throw validation_error("threehalves_eta: a > 0 fails");
    const double c = a / (sigma * sigma) + 0.5;
    return -c + std::sqrt(c * c + p * beta * (beta - 1.0));
}

// Worst-case growth rate at leverage beta. The adversary picks:
//   beta >= 1 or beta < 0  ->  (b_hi, a_lo, sigma_hi)
//   0 <= beta < 1          ->  (b_lo, a_hi, sigma_lo)
// and the rate is -p r (beta - 1) - b* eta(a*, sigma*, beta), valid while
// 2 (a_lo / sigma_hi^2 + 1) + eta(a_lo, sigma_hi, beta) - p beta > 0.
inline GrowthPoint threehalves_growth(const ThreeHalves& m, const Problem& prob,
                                      double beta) {
    require_valid(m, prob);
    require_beta_in_range(prob, beta);
    const double p = prob.p, r = prob.r;
    const bool outer = beta >= 1.0 || beta < 0.0;
    const double bs = outer ? m.b.hi : m.b.lo;
    const double as = outer ? m.a.lo : m.a.hi;
    const double ss = outer ? m.sigma.hi : m.sigma.lo;
    const double eta = threehalves_eta(as, ss, beta, p);

    GrowthPoint g;
    g.beta = beta;
    g.worst.params = {{"b", bs}, {"a", as}, {"sigma", ss}};
    g.worst.regime = regime_of(beta);
    const double guard = 2.0 * (m.a.lo / (m.sigma.hi * m.sigma.hi) + 1.0) +
                         threehalves_eta(m.a.lo, m.sigma.hi, beta, p) - p * beta;
    if (!(guard > 0.0)) {
        g.feasible = false;
        g.feasibility_note = "2 (a.lo/sigma.hi^2 + 1) + eta(a.lo, sigma.hi) - p*beta > 0 fails";
        return g;
    }
    g.rate = -p * r * (beta - 1.0) - bs * eta;
    return g;
}

}  // namespace letf
