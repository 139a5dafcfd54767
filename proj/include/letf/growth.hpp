#pragma once

// Single entry point for the robust growth rate of any supported model.

#include <variant>

#include <letf/cir.hpp>
#include <letf/core.hpp>
#include <letf/gbm.hpp>
#include <letf/heston.hpp>
#include <letf/inv_garch.hpp>
#include <letf/sv32.hpp>
#include <letf/three_halves.hpp>
#include <letf/vasicek.hpp>

namespace letf {

inline GrowthPoint growth(const ModelSpec& model, const Problem& prob, double beta) {
    return std::visit(
        [&](const auto& m) -> GrowthPoint {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, Gbm>) return gbm_growth(m, prob, beta);
            else if constexpr (std::is_same_v<M, Cir>) return cir_growth(m, prob, beta);
            else if constexpr (std::is_same_v<M, ThreeHalves>)
                return threehalves_growth(m, prob, beta);
            else if constexpr (std::is_same_v<M, Heston>) return heston_growth(m, prob, beta);
            else if constexpr (std::is_same_v<M, Sv32>) return sv32_growth(m, prob, beta);
            else if constexpr (std::is_same_v<M, Vasicek>)
                return vasicek_growth(m, prob, beta);
            else return invgarch_growth(m, prob, beta);
        },
        model);
}

}  // namespace letf
