// Leverage optimization: the Black-Scholes closed form, the CIR / 3/2
// candidate tables (validated against brute-force leverage scans), the
// Lipschitz bounds behind the certified grid, and the grid search itself.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <letf/letf.hpp>

using namespace letf;

namespace {

Problem problem(double p, double r) {
    Problem prob;
    prob.p = p;
    prob.r = r;
    return prob;
}

// Dense leverage scan of the robust rate; infeasible points are skipped.
double brute_best_rate(const ModelSpec& model, const Problem& prob, int n = 10000) {
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) {
        const double beta = prob.beta_range.lo + prob.beta_range.width() * i / n;
        GrowthPoint pt = growth(model, prob, beta);
        if (pt.feasible) best = std::max(best, *pt.rate);
    }
    return best;
}

Heston heston_experiment_box() {
    return Heston{{0.05, 0.08}, {-0.93, -0.75}, {0.1, 0.2}, {3.0, 10.0}, {0.82, 0.93}};
}

Vasicek vasicek_experiment_box() {
    return Vasicek{{0.06, 0.1}, {0.08, 0.25}, {-0.9, -0.5},
                   {0.06, 0.1}, {6.0, 9.0},   {0.2, 0.5}};
}

}  // namespace

// ---------------------------------------------------------------------------
// Black-Scholes closed form.

TEST_CASE("gbm optimum: drift interval above the funding rate", "[gbm_opt]") {
    Gbm box{{0.06, 0.10}, {0.1, 0.2}};
    OptimalLeverage opt = optimal_beta_gbm(box, problem(0.5, 0.02));
    CHECK(opt.beta_star == Catch::Approx(2.0).margin(1e-14));
    CHECK(opt.rate_star == Catch::Approx(0.03).margin(1e-15));
    CHECK(opt.method == Method::ClosedForm);
    CHECK(opt.error_bound == 0.0);
    CHECK(opt.candidates.size() == 1);
    CHECK(opt.infeasible.empty());
}

TEST_CASE("gbm optimum: drift interval below the funding rate", "[gbm_opt]") {
    Gbm box{{0.01, 0.015}, {0.1, 0.2}};
    OptimalLeverage opt = optimal_beta_gbm(box, problem(0.5, 0.02));
    // (mu.hi - r) / ((1-p) sigma.hi^2) = -0.005 / 0.02
    CHECK(opt.beta_star == Catch::Approx(-0.25).margin(1e-14));
    CHECK(opt.rate_star == Catch::Approx(0.0103125).margin(1e-15));
}

TEST_CASE("gbm optimum: drift interval straddles the funding rate", "[gbm_opt]") {
    Gbm box{{0.01, 0.03}, {0.1, 0.2}};
    OptimalLeverage opt = optimal_beta_gbm(box, problem(0.5, 0.02));
    CHECK(opt.beta_star == 0.0);
    CHECK(opt.rate_star == Catch::Approx(0.01).margin(1e-15));
}

TEST_CASE("gbm optimum clamps to the admissible range", "[gbm_opt]") {
    Gbm box{{0.06, 0.10}, {0.1, 0.2}};
    Problem prob = problem(0.5, 0.02);
    prob.beta_range = {-1.0, 1.5};
    OptimalLeverage opt = optimal_beta_gbm(box, prob);
    CHECK(opt.beta_star == 1.5);
    CHECK(opt.rate_star == *gbm_growth(box, prob, 1.5).rate);

    Gbm low{{0.01, 0.015}, {0.1, 0.2}};
    Problem tight = problem(0.5, 0.02);
    tight.beta_range = {-0.1, 5.0};
    CHECK(optimal_beta_gbm(low, tight).beta_star == -0.1);
}

TEST_CASE("gbm optimum dominates a dense leverage scan", "[gbm_opt]") {
    Gbm box{{0.03, 0.07}, {0.15, 0.35}};
    Problem prob = problem(0.4, 0.01);
    OptimalLeverage opt = optimal_beta_gbm(box, prob);
    const double brute = brute_best_rate(ModelSpec{box}, prob);
    CHECK(opt.rate_star >= brute - 1e-12);
    CHECK(std::abs(opt.rate_star - brute) < 1e-6);
}

// ---------------------------------------------------------------------------
// CIR candidate table.

TEST_CASE("cir candidate table at the reference box", "[cir_opt]") {
    Cir box{{0.5, 0.6}, {1.0, 2.0}, {0.4, 0.5}};
    Problem prob = problem(0.5, 0.02);
    OptimalLeverage opt = candidates_cir(box, prob);
    CHECK(opt.method == Method::CandidateTable);
    CHECK(opt.error_bound == 0.0);

    // Interior stationary point of the 0 <= beta < 1 regime:
    // K = 2 b.hi / sigma.lo^2 - 1 = 6.5, m/r = a.lo / r = 50.
    const double hand = 0.5 * (1.0 - std::sqrt((6.5 * 6.5 - 0.5) / (50.0 * 50.0 - 0.5)));
    CHECK(opt.beta_star == Catch::Approx(hand).margin(1e-13));
    CHECK(opt.beta_star == Catch::Approx(0.435379298).margin(1e-9));
    CHECK(opt.rate_star == Catch::Approx(0.024611092).margin(1e-9));

    // Candidates: left endpoint, zero, and the interior point. The short-side
    // stationary point fails its gate (K_neg = 3 < a.hi / r = 100).
    REQUIRE(opt.candidates.size() == 3);
    CHECK(opt.candidates[0].first == -5.0);
    CHECK(opt.candidates[1].first == 0.0);
    CHECK(opt.candidates[2].first == opt.beta_star);
    CHECK(opt.infeasible.empty());

    const double brute = brute_best_rate(ModelSpec{box}, prob);
    CHECK(opt.rate_star >= brute - 1e-12);
    CHECK(std::abs(opt.rate_star - brute) < 1e-3);
}

TEST_CASE("cir candidate table finds the short-side hump", "[cir_opt]") {
    // High funding rate: shorting the factor is optimal and the short-side
    // stationary point passes its gate (K_neg = 1.08 > a.hi / r = 1).
    Cir box{{0.26, 0.3}, {1.0, 2.0}, {0.4, 0.5}};
    Problem prob = problem(0.5, 2.0);
    OptimalLeverage opt = candidates_cir(box, prob);
    CHECK(opt.beta_star == Catch::Approx(-0.077234788).margin(1e-9));
    CHECK(opt.rate_star == Catch::Approx(1.002765212).margin(1e-9));
    CHECK(opt.beta_star < 0.0);
    CHECK(opt.rate_star > 0.5 * 2.0);  // beats holding cash at p r

    const double brute = brute_best_rate(ModelSpec{box}, prob);
    CHECK(opt.rate_star >= brute - 1e-12);
    CHECK(std::abs(opt.rate_star - brute) < 1e-3);
}

TEST_CASE("cir candidate table at r = 0 collapses to beta = 1/2", "[cir_opt]") {
    Cir box{{0.5, 0.6}, {1.0, 2.0}, {0.4, 0.5}};
    Problem prob = problem(0.5, 0.0);
    OptimalLeverage opt = candidates_cir(box, prob);
    // With r = 0 the interior stationary point is exactly 1/2 and positive.
    CHECK(opt.beta_star == 0.5);
    CHECK(opt.rate_star > 0.0);
    CHECK(opt.rate_star == *cir_growth(box, prob, 0.5).rate);
}

TEST_CASE("candidate table rejects negative funding rates", "[cir_opt]") {
    Cir box{{0.5, 0.6}, {1.0, 2.0}, {0.4, 0.5}};
    CHECK_THROWS_MATCHES(candidates_cir(box, problem(0.5, -0.01)), validation_error,
                         Catch::Matchers::Message("candidate table requires r >= 0"));
}

TEST_CASE("cir candidates beat brute force on random boxes", "[cir_opt]") {
    std::mt19937 rng(55);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int rep = 0; rep < 10; ++rep) {
        const double shi = 0.3 + 0.3 * unif(rng);
        Cir box{{shi * shi * (1.05 + unif(rng)), 0.0},
                {0.5 + 2.0 * unif(rng), 0.0},
                {shi - 0.1 * unif(rng), shi}};
        box.b.hi = box.b.lo + 0.3 * unif(rng);
        box.a.hi = box.a.lo + 1.5 * unif(rng);
        Problem prob = problem(0.2 + 0.6 * unif(rng), rep % 2 ? 0.05 * unif(rng) : 0.0);
        OptimalLeverage opt = candidates_cir(box, prob);
        const double brute = brute_best_rate(ModelSpec{box}, prob);
        CHECK(opt.rate_star >= brute - 1e-12);
        CHECK(std::abs(opt.rate_star - brute) < 1e-3);
    }
}

// ---------------------------------------------------------------------------
// 3/2 candidate table.

TEST_CASE("three-halves candidate table at the reference box", "[32_opt]") {
    ThreeHalves box{{0.3, 0.4}, {1.0, 2.0}, {0.8, 1.0}};
    Problem prob = problem(0.5, 0.02);
    OptimalLeverage opt = candidates_32(box, prob);
    // K = 2 a.hi / sigma.lo^2 + 1 = 7.25, m/r = b.lo / r = 15.
    const double hand = 0.5 * (1.0 - std::sqrt((7.25 * 7.25 - 0.5) / (15.0 * 15.0 - 0.5)));
    CHECK(opt.beta_star == Catch::Approx(hand).margin(1e-13));
    CHECK(opt.rate_star == *threehalves_growth(box, prob, opt.beta_star).rate);

    const double brute = brute_best_rate(ModelSpec{box}, prob);
    CHECK(opt.rate_star >= brute - 1e-12);
    CHECK(std::abs(opt.rate_star - brute) < 1e-3);
}

TEST_CASE("three-halves candidate table at r = 0", "[32_opt]") {
    ThreeHalves box{{0.3, 0.4}, {1.0, 2.0}, {0.8, 1.0}};
    Problem prob = problem(0.5, 0.0);
    OptimalLeverage opt = candidates_32(box, prob);
    CHECK(opt.beta_star == 0.5);
    CHECK(opt.rate_star > 0.0);
}

TEST_CASE("three-halves candidates beat brute force on random boxes", "[32_opt]") {
    std::mt19937 rng(56);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int rep = 0; rep < 10; ++rep) {
        ThreeHalves box{{0.2 + 0.5 * unif(rng), 0.0},
                        {0.5 + 2.0 * unif(rng), 0.0},
                        {0.3 + 0.6 * unif(rng), 0.0}};
        box.b.hi = box.b.lo + 0.3 * unif(rng);
        box.a.hi = box.a.lo + 1.5 * unif(rng);
        box.sigma.hi = box.sigma.lo + 0.4 * unif(rng);
        Problem prob = problem(0.2 + 0.6 * unif(rng), rep % 2 ? 0.05 * unif(rng) : 0.0);
        OptimalLeverage opt = candidates_32(box, prob);
        const double brute = brute_best_rate(ModelSpec{box}, prob);
        CHECK(opt.rate_star >= brute - 1e-12);
        CHECK(std::abs(opt.rate_star - brute) < 1e-3);
    }
}

// ---------------------------------------------------------------------------
// Lipschitz bounds.

TEST_CASE("heston lipschitz bound dominates finite differences", "[lipschitz]") {
    const Heston box = heston_experiment_box();
    Problem prob = problem(0.5, 0.015);
    const double M = lipschitz_M_heston(box, prob);
    CHECK(M > 0.0);
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double h = 1e-4;
    for (int i = 0; i < 200; ++i) {
        const double beta =
            prob.beta_range.lo + (prob.beta_range.width() - h) * unif(rng);
        const double f0 = *heston_growth(box, prob, beta).rate;
        const double f1 = *heston_growth(box, prob, beta + h).rate;
        CHECK(std::abs(f1 - f0) / h <= M * (1.0 + 1e-6) + 1e-9);
    }
}

TEST_CASE("vasicek lipschitz bound dominates finite differences", "[lipschitz]") {
    const Vasicek box = vasicek_experiment_box();
    Problem prob = problem(0.5, 0.0);
    const double M = lipschitz_M_vasicek(box, prob);
    CHECK(M > 0.0);
    std::mt19937 rng(62);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double h = 1e-4;
    for (int i = 0; i < 200; ++i) {
        const double beta =
            prob.beta_range.lo + (prob.beta_range.width() - h) * unif(rng);
        const double f0 = *vasicek_growth(box, prob, beta).rate;
        const double f1 = *vasicek_growth(box, prob, beta + h).rate;
        CHECK(std::abs(f1 - f0) / h <= M * (1.0 + 1e-6) + 1e-9);
    }
}

TEST_CASE("lipschitz bound rejects ranges with exploding moments", "[lipschitz]") {
    const Heston box = heston_experiment_box();
    Problem prob = problem(0.5, 0.015);
    prob.beta_range = {-8.0, 8.0};  // a.lo - p*8*sigma.hi < 0
    CHECK_THROWS_AS(lipschitz_M_heston(box, prob), feasibility_error);
}

// ---------------------------------------------------------------------------
// Certified grid.

TEST_CASE("certified grid config sizes the mesh from the lipschitz bound",
          "[grid_opt]") {
    const Heston box = heston_experiment_box();
    Problem prob = problem(0.5, 0.015);
    CertifiedGridConfig cfg = certified_grid_config(ModelSpec{box}, prob, 0.01);
    const double span = prob.beta_range.width();
    CHECK(cfg.epsilon == 0.01);
    CHECK(cfg.lipschitz_M == lipschitz_M_heston(box, prob));
    CHECK(cfg.n_points >= static_cast<int>(span * cfg.lipschitz_M / cfg.epsilon));
    CHECK(cfg.mesh * cfg.n_points == Catch::Approx(span).margin(1e-12));
    CHECK(cfg.mesh <= cfg.epsilon / cfg.lipschitz_M * (1.0 + 1e-12));

    CHECK_THROWS_MATCHES(certified_grid_config(ModelSpec{box}, prob, 0.0),
                         validation_error, Catch::Matchers::Message("epsilon > 0 fails"));
}

TEST_CASE("certified grid rejects models with exact optimizers", "[grid_opt]") {
    Problem prob = problem(0.5, 0.02);
    CHECK_THROWS_MATCHES(
        optimize_beta_grid(ModelSpec{Gbm{{0.06, 0.1}, {0.1, 0.2}}}, prob, 0.01),
        validation_error,
        Catch::Matchers::Message("optimize_beta_grid does not apply to the gbm "
                                 "model; use optimal_beta_gbm (closed form)"));
    CHECK_THROWS_MATCHES(
        optimize_beta_grid(ModelSpec{Cir{{0.5, 0.6}, {1.0, 2.0}, {0.4, 0.5}}}, prob,
                           0.01),
        validation_error,
        Catch::Matchers::Message("optimize_beta_grid does not apply to the cir "
                                 "model; use candidates_cir (exact candidate table)"));
    CHECK_THROWS_MATCHES(
        optimize_beta_grid(ModelSpec{ThreeHalves{{0.3, 0.4}, {1.0, 2.0}, {0.8, 1.0}}},
                           prob, 0.01),
        validation_error,
        Catch::Matchers::Message("optimize_beta_grid does not apply to the "
                                 "three_halves model; use candidates_32 (exact "
                                 "candidate table)"));
}

TEST_CASE("heston certified grid locates the experiment optimum", "[grid_opt]") {
    const Heston box = heston_experiment_box();
    Problem prob = problem(0.5, 0.015);
    OptimalLeverage opt = optimize_beta_grid(ModelSpec{box}, prob, 0.01);
    CHECK(opt.method == Method::CertifiedGrid);
    CHECK(opt.error_bound == 0.01);
    CHECK(opt.beta_star == Catch::Approx(1.268657).margin(1e-4));
    CHECK(opt.rate_star == Catch::Approx(0.017901532).margin(1e-6));

    // Endpoints are evaluated exactly and every node is recorded.
    CertifiedGridConfig cfg = certified_grid_config(ModelSpec{box}, prob, 0.01);
    REQUIRE(opt.candidates.size() == static_cast<size_t>(cfg.n_points) + 1);
    CHECK(opt.candidates.front().first == prob.beta_range.lo);
    CHECK(opt.candidates.back().first == prob.beta_range.hi);
    CHECK(opt.infeasible.empty());

    // Determinism: a second run reproduces the same bits.
    OptimalLeverage again = optimize_beta_grid(ModelSpec{box}, prob, 0.01);
    CHECK(again.beta_star == opt.beta_star);
    CHECK(again.rate_star == opt.rate_star);
}

TEST_CASE("vasicek certified grid locates the experiment optimum", "[grid_opt]") {
    const Vasicek box = vasicek_experiment_box();
    Problem prob = problem(0.5, 0.0);
    OptimalLeverage opt = optimize_beta_grid(ModelSpec{box}, prob, 0.01);
    CHECK(opt.beta_star == Catch::Approx(1.5327).margin(0.06));
    CHECK(opt.rate_star == Catch::Approx(0.0240788).margin(1e-4));
    // The grid maximum can only sit below the true supremum, never above.
    CHECK(opt.rate_star <= 0.0240788 + 1e-5);
}

TEST_CASE("infeasible grid nodes are collected, optimum still found",
          "[grid_opt]") {
    // This box explodes for |beta| above roughly 10/3, inside the default
    // leverage range, so the grid must skip nodes and keep going.
    InvGarch box{{0.06, 0.1}, {0.05, 0.15}, {-0.9, -0.5},
                 {0.07, 0.1}, {6.0, 9.0},   {0.1, 0.2}};
    Problem prob = problem(0.5, 0.0);
    CertifiedGridConfig cfg = certified_grid_config(ModelSpec{box}, prob, 0.01);
    OptimalLeverage opt = optimize_beta_grid(ModelSpec{box}, prob, cfg);
    CHECK_FALSE(opt.infeasible.empty());
    CHECK(opt.candidates.size() + opt.infeasible.size() ==
          static_cast<size_t>(cfg.n_points) + 1);
    for (double beta : opt.infeasible) CHECK(std::abs(beta) > 3.3);
    CHECK(std::abs(opt.beta_star) < 3.4);
    CHECK(std::isfinite(opt.rate_star));
}

TEST_CASE("grid refinement only improves the reported optimum", "[grid_opt]") {
    const Heston box = heston_experiment_box();
    Problem prob = problem(0.5, 0.015);
    OptimalLeverage coarse = optimize_beta_grid(ModelSpec{box}, prob, 0.02);
    OptimalLeverage fine = optimize_beta_grid(ModelSpec{box}, prob, 0.002);
    // Both sit within their certified gap below the common supremum.
    CHECK(fine.rate_star >= coarse.rate_star - 0.002 - 1e-12);
    CHECK(fine.rate_star - coarse.rate_star <= 0.02 + 1e-12);
}

// ---------------------------------------------------------------------------
// Model-dispatched front ends.

TEST_CASE("optimize_leverage dispatches per model", "[dispatch]") {
    Problem prob = problem(0.5, 0.02);
    CHECK(optimize_leverage(ModelSpec{Gbm{{0.06, 0.1}, {0.1, 0.2}}}, prob).method ==
          Method::ClosedForm);
    CHECK(optimize_leverage(ModelSpec{Cir{{0.5, 0.6}, {1.0, 2.0}, {0.4, 0.5}}}, prob)
              .method == Method::CandidateTable);
    CHECK(optimize_leverage(ModelSpec{ThreeHalves{{0.3, 0.4}, {1.0, 2.0}, {0.8, 1.0}}},
                            prob)
              .method == Method::CandidateTable);
    Problem hprob = problem(0.5, 0.015);
    OptimalLeverage viaDispatch =
        optimize_leverage(ModelSpec{heston_experiment_box()}, hprob, 0.01);
    OptimalLeverage direct =
        optimize_beta_grid(ModelSpec{heston_experiment_box()}, hprob, 0.01);
    CHECK(viaDispatch.method == Method::CertifiedGrid);
    CHECK(viaDispatch.beta_star == direct.beta_star);
    CHECK(viaDispatch.rate_star == direct.rate_star);
}

TEST_CASE("beta sweep tabulates the rate on an inclusive grid", "[sweep]") {
    Gbm box{{0.06, 0.1}, {0.1, 0.2}};
    Problem prob = problem(0.5, 0.02);
    auto rows = beta_sweep(ModelSpec{box}, prob, -1.0, 3.0, 5);
    REQUIRE(rows.size() == 5);
    CHECK(rows.front().beta == -1.0);
    CHECK(rows.back().beta == 3.0);
    CHECK(rows[1].beta == Catch::Approx(0.0).margin(1e-15));
    for (const auto& row : rows) {
        CHECK(row.feasible);
        REQUIRE(row.rate.has_value());
        CHECK(*row.rate == *gbm_growth(box, prob, row.beta).rate);
    }
    CHECK_THROWS_AS(beta_sweep(ModelSpec{box}, prob, -1.0, 3.0, 1), validation_error);
    CHECK_THROWS_AS(beta_sweep(ModelSpec{box}, prob, 3.0, -1.0, 5), validation_error);
}

TEST_CASE("axis scans validate their inputs", "[scan]") {
    Problem prob = problem(0.5, 0.015);
    CHECK_THROWS_AS(scan_axis(ModelSpec{heston_experiment_box()}, prob,
                              ScanAxis::SigmaLo, 0.9, 0.5, 5),
                    validation_error);
    CHECK_THROWS_AS(scan_axis(ModelSpec{heston_experiment_box()}, prob,
                              ScanAxis::SigmaLo, 0.5, 0.9, 1),
                    validation_error);
    CHECK_THROWS_MATCHES(scan_axis(ModelSpec{Cir{{0.5, 0.6}, {1.0, 2.0}, {0.4, 0.5}}},
                                   problem(0.5, 0.02), ScanAxis::RhoHi, -1.0, -0.5, 3),
                         validation_error,
                         Catch::Matchers::Message(
                             "rho_hi scan applies to models with a rho box"));
}
