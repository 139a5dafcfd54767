#pragma once

// Sweep and scan workflows built on the per-model optimizers: a plain beta
// sweep of the robust rate, and one-dimensional scans that move a single box
// bound (sigma.lo or rho.hi) and re-optimize the leverage at every stop.

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <letf/core.hpp>
#include <letf/growth.hpp>
#include <letf/optimize.hpp>

namespace letf {

// One model-appropriate optimizer entry point: closed form for GBM, exact
// candidate tables for CIR and 3/2, certified grid for the rest. epsilon is
// ignored by the exact methods.
inline OptimalLeverage optimize_leverage(const ModelSpec& model, const Problem& prob,
                                         double epsilon = 0.01) {
    if (const auto* g = std::get_if<Gbm>(&model)) return optimal_beta_gbm(*g, prob);
    if (const auto* c = std::get_if<Cir>(&model)) return candidates_cir(*c, prob);
    if (const auto* t = std::get_if<ThreeHalves>(&model)) return candidates_32(*t, prob);
    return optimize_beta_grid(model, prob, epsilon);
}

struct SweepRow {
    double beta = 0;
    std::optional<double> rate;
    bool feasible = true;
    std::string feasibility_note;
};

// Robust rate on an inclusive uniform beta grid with n_rows points.
inline std::vector<SweepRow> beta_sweep(const ModelSpec& model, const Problem& prob,
                                        double beta_lo, double beta_hi, int n_rows) {
    if (!(n_rows >= 2)) throw validation_error("beta sweep needs n_rows >= 2");
    if (!(beta_lo < beta_hi)) throw validation_error("beta sweep needs beta_lo < beta_hi");
    std::vector<SweepRow> rows;
    rows.reserve(n_rows);
    for (int k = 0; k < n_rows; ++k) {
        const double beta = k == n_rows - 1
                                ? beta_hi
                                : beta_lo + (beta_hi - beta_lo) * k / (n_rows - 1);
        GrowthPoint pt = growth(model, prob, beta);
        rows.push_back({beta, pt.rate, pt.feasible, pt.feasibility_note});
    }
    return rows;
}

enum class ScanAxis { SigmaLo, RhoHi };

inline const char* to_string(ScanAxis a) {
    return a == ScanAxis::SigmaLo ? "sigma_lo" : "rho_hi";
}

struct ScanRow {
    double axis = 0;
    double beta_star = 0;
    double rate_star = 0;
};

namespace detail {

// Replace one bound of the scanned interval, dragging the opposite bound
// along when the new value crosses it so the box stays well ordered.
inline ModelSpec with_axis(const ModelSpec& model, ScanAxis axis, double value) {
    ModelSpec out = model;
    std::visit(
        [&](auto& m) {
            using M = std::decay_t<decltype(m)>;
            if (axis == ScanAxis::SigmaLo) {
                m.sigma.lo = value;
                if (m.sigma.hi < value) m.sigma.hi = value;
            } else {
                if constexpr (std::is_same_v<M, Heston> || std::is_same_v<M, Sv32> ||
                              std::is_same_v<M, Vasicek> || std::is_same_v<M, InvGarch>) {
                    m.rho.hi = value;
                    if (m.rho.lo > value) m.rho.lo = value;
                } else {
                    throw validation_error("rho_hi scan applies to models with a rho box");
                }
            }
        },
        out);
    return out;
}

}  // namespace detail

// Re-optimize the leverage while one box bound moves across [axis_lo, axis_hi]
// (inclusive, n_rows stops). For the certified-grid models every stop is
// evaluated on one shared grid whose mesh uses the largest Lipschitz bound
// seen along the scan; a common grid keeps the emitted beta* column free of
// node-alignment jitter while remaining certified for each stop (a larger M
// only tightens the mesh).
inline std::vector<ScanRow> scan_axis(const ModelSpec& model, const Problem& prob,
                                      ScanAxis axis, double axis_lo, double axis_hi,
                                      int n_rows, double epsilon = 0.01) {
    if (!(n_rows >= 2)) throw validation_error("axis scan needs n_rows >= 2");
    if (!(axis_lo <= axis_hi)) throw validation_error("axis scan needs axis_lo <= axis_hi");

    std::vector<double> stops;
    for (int k = 0; k < n_rows; ++k)
        stops.push_back(k == n_rows - 1
                            ? axis_hi
                            : axis_lo + (axis_hi - axis_lo) * k / (n_rows - 1));

    const bool gridded = std::holds_alternative<Heston>(model) ||
                         std::holds_alternative<Sv32>(model) ||
                         std::holds_alternative<Vasicek>(model) ||
                         std::holds_alternative<InvGarch>(model);
    std::vector<ScanRow> rows;
    if (gridded) {
        CertifiedGridConfig cfg;
        cfg.lipschitz_M = 0.0;
        for (double v : stops) {
            CertifiedGridConfig c =
                certified_grid_config(detail::with_axis(model, axis, v), prob, epsilon);
            if (c.lipschitz_M > cfg.lipschitz_M) cfg = c;
        }
        for (double v : stops) {
            OptimalLeverage best =
                optimize_beta_grid(detail::with_axis(model, axis, v), prob, cfg);
            rows.push_back({v, best.beta_star, best.rate_star});
        }
    } else {
        for (double v : stops) {
            OptimalLeverage best =
                optimize_leverage(detail::with_axis(model, axis, v), prob, epsilon);
            rows.push_back({v, best.beta_star, best.rate_star});
        }
    }
    return rows;
}

}  // namespace letf
