#pragma once

// Cox-Ingersoll-Ross excess-return model: the fund's reference asset earns
// instantaneous excess return X_t with dX = (b - a X) dt + sigma sqrt(X) dB.
// The long-run moment Lyapunov exponent of E[(L_T)^p] is governed by the
// principal eigenvalue of a quadratic, solved here in closed form.

#include <cmath>
#include <string>

#include <letf/core.hpp>

namespace letf {

// Positive root eta of eta^2 + (2b/sigma^2 - 1) eta - p beta (beta - 1) = 0,
// written in the numerically stable completed-square form. Requires the
// Feller-type condition b > sigma^2 so the linear coefficient exceeds 1.
inline double cir_eta(double b, double sigma, double beta, double p) {
    if (!(sigma > 0.0)) throw validation_error("cir_eta: sigma > 0 fails");
    if (!(b > sigma * sigma)) throw validation_error("cir_eta: b > sigma^2 fails");
    const double c = b / (sigma * sigma) - 0.5;
    return -c + std::sqrt(c * c + p * beta * (beta - 1.0));
}

// Worst-case growth rate at leverage beta. The adversary picks:
//   beta >= 1 or beta < 0  ->  (b_lo, a_hi, sigma_hi)
//   0 <= beta < 1          ->  (b_hi, a_lo, sigma_lo)
// and the rate is -p r (beta - 1) - a* eta(b*, sigma*, beta), valid while
// 2 b_lo / sigma_hi^2 + eta + p beta stays positive.
inline GrowthPoint cir_growth(const Cir& m, const Problem& prob, double beta) {
    require_valid(m, prob);
    require_beta_in_range(prob, beta);
    const double p = prob.p, r = prob.r;
    const bool outer = beta >= 1.0 || beta < 0.0;
    const double bs = outer ? m.b.lo : m.b.hi;
    const double as = outer ? m.a.hi : m.a.lo;
    const double ss = outer ? m.sigma.hi : m.sigma.lo;
    const double eta = cir_eta(bs, ss, beta, p);

    GrowthPoint g;
    g.beta = beta;
    g.worst.params = {{"b", bs}, {"a", as}, {"sigma", ss}};
    g.worst.regime = regime_of(beta);
    const double proviso = 2.0 * m.b.lo / (m.sigma.hi * m.sigma.hi) + eta + p * beta;
    if (!(proviso > 0.0)) {
        g.feasible = false;
        g.feasibility_note = "2 b.lo / sigma.hi^2 + eta + p*beta > 0 fails";
        return g;
    }
    g.rate = -p * r * (beta - 1.0) - as * eta;
    return g;
}

}  // namespace letf
