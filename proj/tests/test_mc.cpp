// Monte-Carlo engine: deterministic counter-based streams, antithetic
// pairing, checkpointed horizons, the per-model integration schemes, and
// statistical agreement with the closed-form growth rates. Cross-checks
// against an independent simulator use bands of three combined standard
// errors at the same step size, so discretization bias cancels.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include <letf/letf.hpp>

using namespace letf;

namespace {

Problem problem(double p, double r) {
    Problem prob;
    prob.p = p;
    prob.r = r;
    return prob;
}

SimRequest gbm_request(double mu, double sigma, double beta, double r) {
    SimRequest req;
    req.model = Gbm{{mu, mu}, {sigma, sigma}};
    req.prob = problem(0.5, r);
    req.beta = beta;
    req.scheme = SimScheme::ExactGbm;
    return req;
}

double sample_variance(const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return ss / static_cast<double>(v.size() - 1);
}

// Two-sample Kolmogorov-Smirnov statistic.
double ks_distance(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        const double fa = static_cast<double>(i) / a.size();
        const double fb = static_cast<double>(j) / b.size();
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

}  // namespace

// ---------------------------------------------------------------------------
// Exactness and determinism.

TEST_CASE("zero leverage earns exactly p r with zero variance", "[mc]") {
    SimRequest req = gbm_request(0.06, 0.2, 0.0, 0.02);
    req.horizon_T = 2.0;
    req.dt = 0.5;
    req.n_paths = 200;
    McEstimate est = simulate_utility(req);
    CHECK(est.estimate == Catch::Approx(0.01).margin(1e-12));
    // all samples are identical; only summation rounding remains
    CHECK(est.std_err_of_mean <= 1e-15);
    CHECK(est.n_nonfinite == 0);

    // Stateful factor models degenerate the same way: the factor still moves
    // but the log fund value is deterministic. High mean level keeps the
    // coarse-step chain away from zero.
    SimRequest creq;
    creq.model = Cir{{2.0, 2.0}, {2.0, 2.0}, {0.3, 0.3}};
    creq.prob = problem(0.5, 0.02);
    creq.beta = 0.0;
    creq.scheme = SimScheme::FullTruncationEuler;
    creq.horizon_T = 2.0;
    creq.dt = 0.1;
    creq.n_paths = 200;
    McEstimate cest = simulate_utility(creq);
    CHECK(cest.estimate == Catch::Approx(0.01).margin(1e-12));
    CHECK(cest.std_err_of_mean <= 1e-15);
}

TEST_CASE("the reported rate is log mean utility over horizon", "[mc]") {
    SimRequest req = gbm_request(0.05, 0.2, 1.5, 0.01);
    req.horizon_T = 4.0;
    req.dt = 0.5;
    req.n_paths = 400;
    McEstimate est = simulate_utility(req);
    CHECK(est.estimate == est.log_mean / est.horizon_T);
    CHECK(est.horizon_T == 4.0);
    CHECK(est.n_paths == 400);
}

TEST_CASE("same seed reproduces bits, different seeds differ", "[mc]") {
    SimRequest req = gbm_request(0.05, 0.2, 2.0, 0.0);
    req.horizon_T = 5.0;
    req.dt = 0.25;
    req.n_paths = 400;
    req.seed = 11;
    McEstimate a = simulate_utility(req);
    McEstimate b = simulate_utility(req);
    CHECK(a.estimate == b.estimate);
    CHECK(a.std_err_of_mean == b.std_err_of_mean);
    req.seed = 12;
    McEstimate c = simulate_utility(req);
    CHECK(a.estimate != c.estimate);
}

TEST_CASE("thread count does not change the draws", "[mc]") {
    SimRequest req = gbm_request(0.05, 0.25, 2.0, 0.0);
    req.horizon_T = 1.0;
    req.dt = 0.1;
    req.n_paths = 400;

    const char* old = std::getenv("LETF_THREADS");
    const std::string saved = old ? old : "";
    setenv("LETF_THREADS", "1", 1);
    std::vector<double> one = sample_utilities(req);
    setenv("LETF_THREADS", "2", 1);
    std::vector<double> two = sample_utilities(req);
    if (old)
        setenv("LETF_THREADS", saved.c_str(), 1);
    else
        unsetenv("LETF_THREADS");

    REQUIRE(one.size() == two.size());
    CHECK(one == two);
}

TEST_CASE("horizon checkpoints share the path prefix bit-for-bit", "[mc]") {
    SimRequest req;
    req.model = Cir{{2.0, 2.0}, {2.0, 2.0}, {0.3, 0.3}};
    req.prob = problem(0.5, 0.02);
    req.beta = 1.5;
    req.scheme = SimScheme::FullTruncationEuler;
    req.dt = 0.1;
    req.n_paths = 400;
    req.seed = 3;

    std::vector<McEstimate> curve = growth_curve(req, {5.0, 10.0});
    REQUIRE(curve.size() == 2);
    CHECK(curve[0].horizon_T == 5.0);
    CHECK(curve[1].horizon_T == 10.0);

    req.horizon_T = 5.0;
    McEstimate single = simulate_utility(req);
    CHECK(curve[0].estimate == single.estimate);
    CHECK(curve[0].log_mean == single.log_mean);
    CHECK(curve[0].std_err_of_mean == single.std_err_of_mean);
}

TEST_CASE("segment planning hits every horizon exactly", "[mc]") {
    auto plan = detail::plan_segments({1.0, 2.5}, 1.0 / 500.0);
    REQUIRE(plan.horizons.size() == 2);
    CHECK(plan.cum_steps[0] == 500);
    CHECK(plan.cum_steps[1] == 1250);
    CHECK(plan.seg_dt[0] == Catch::Approx(0.002).margin(1e-15));
    CHECK(plan.seg_dt[1] == Catch::Approx(0.002).margin(1e-15));

    // Steps per segment round to the nearest whole count, never zero.
    auto coarse = detail::plan_segments({0.35}, 0.2);
    CHECK(coarse.cum_steps[0] == 2);
    CHECK(coarse.seg_dt[0] == Catch::Approx(0.175).margin(1e-15));
    auto tiny = detail::plan_segments({0.05}, 0.2);
    CHECK(tiny.cum_steps[0] == 1);
    CHECK(tiny.seg_dt[0] == Catch::Approx(0.05).margin(1e-15));

    CHECK_THROWS_MATCHES(detail::plan_segments({}, 0.1), validation_error,
                         Catch::Matchers::Message("horizons non-empty fails"));
    CHECK_THROWS_MATCHES(
        detail::plan_segments({2.0, 1.0}, 0.1), validation_error,
        Catch::Matchers::Message("horizons strictly increasing and positive fails"));
    CHECK_THROWS_AS(detail::plan_segments({-1.0}, 0.1), validation_error);
}

TEST_CASE("simulation requests are validated", "[mc]") {
    SimRequest req = gbm_request(0.05, 0.2, 1.0, 0.0);
    req.n_paths = 50;
    CHECK_THROWS_MATCHES(simulate_utility(req), validation_error,
                         Catch::Matchers::Message("n_paths >= 100 fails"));
    req.n_paths = 101;
    CHECK_THROWS_MATCHES(
        simulate_utility(req), validation_error,
        Catch::Matchers::Message("n_paths even under antithetic pairing fails"));
    req.n_paths = 200;
    req.dt = 0.0;
    CHECK_THROWS_MATCHES(simulate_utility(req), validation_error,
                         Catch::Matchers::Message("dt > 0 fails"));
    req.dt = 0.5;
    req.horizon_T = 0.25;
    CHECK_THROWS_MATCHES(simulate_utility(req), validation_error,
                         Catch::Matchers::Message("horizon_T >= dt fails"));

    SimRequest wrong = gbm_request(0.05, 0.2, 1.0, 0.0);
    wrong.scheme = SimScheme::FullTruncationEuler;
    CHECK_THROWS_MATCHES(
        simulate_utility(wrong), validation_error,
        Catch::Matchers::Message("scheme full_truncation_euler does not integrate "
                                 "this model; expected exact_gbm"));

    SimRequest fat;
    fat.model = Gbm{{0.05, 0.06}, {0.2, 0.2}};
    fat.prob = problem(0.5, 0.0);
    fat.scheme = SimScheme::ExactGbm;
    CHECK_THROWS_MATCHES(
        simulate_utility(fat), validation_error,
        Catch::Matchers::Message(
            "simulation model must be degenerate: mu.lo == mu.hi fails"));
}

TEST_CASE("overflowing and degenerating paths raise simulation errors", "[mc]") {
    // Utilities overflow to infinity when the drift is absurd.
    SimRequest hot = gbm_request(1e4, 0.1, 2.0, 0.0);
    hot.horizon_T = 1.0;
    hot.dt = 0.5;
    hot.n_paths = 100;
    CHECK_THROWS_AS(simulate_utility(hot), simulation_error);

    // A coarse CIR step drives the factor through zero on most paths.
    SimRequest crash;
    crash.model = Cir{{0.3, 0.3}, {1.0, 1.0}, {0.5, 0.5}};
    crash.prob = problem(0.5, 0.0);
    crash.beta = 1.0;
    crash.scheme = SimScheme::FullTruncationEuler;
    crash.horizon_T = 5.0;
    crash.dt = 0.5;
    crash.n_paths = 200;
    CHECK_THROWS_AS(simulate_utility(crash), simulation_error);
}

// ---------------------------------------------------------------------------
// Statistical agreement.

TEST_CASE("exact gbm sampler matches the closed form at three sigma", "[mc]") {
    SimRequest req = gbm_request(0.06, 0.2, 2.0, 0.02);
    req.horizon_T = 50.0;
    req.dt = 1.0;  // the scheme is exact at any step size
    req.n_paths = 100000;
    req.seed = 7;
    McEstimate est = simulate_utility(req);
    const double analytic = 0.03;  // p r + p (mu - r) beta - p(1-p) sigma^2 beta^2 / 2
    CHECK(std::abs(est.estimate - analytic) <= 3.0 * est.delta_std_err());
    CHECK(est.delta_std_err() < 1e-3);
}

TEST_CASE("one exact gbm step distributes like two half steps", "[mc]") {
    SimRequest a = gbm_request(0.05, 0.3, 2.0, 0.0);
    a.horizon_T = 2.0;
    a.dt = 2.0;
    a.n_paths = 4000;
    a.antithetic = false;
    a.seed = 101;
    SimRequest b = a;
    b.dt = 1.0;
    b.seed = 202;
    const double d = ks_distance(sample_utilities(a), sample_utilities(b));
    // two-sample KS bound at the 1% level for n = m = 4000
    CHECK(d < 1.628 * std::sqrt(2.0 / 4000.0));
}

TEST_CASE("antithetic pairing cuts the variance well below half", "[mc]") {
    double ratio_sum = 0.0;
    int n_seeds = 0;
    for (std::uint64_t seed = 1; seed <= 24; ++seed) {
        SimRequest plain = gbm_request(0.05, 0.1, 2.0, 0.0);
        plain.horizon_T = 25.0;
        plain.dt = 0.5;
        plain.n_paths = 1000;
        plain.antithetic = false;
        plain.seed = seed;
        SimRequest anti = plain;
        anti.antithetic = true;
        anti.n_paths = 2000;  // same number of samples after pairing
        const double vp = sample_variance(sample_utilities(plain));
        const double va = sample_variance(sample_utilities(anti));
        // Var(pair mean) over Var(mean of two independents):
        ratio_sum += va / (0.5 * vp);
        ++n_seeds;
    }
    const double mean_ratio = ratio_sum / n_seeds;
    // Log-normal theory at p beta sigma sqrt(T) = 0.5 gives 1 - e^{-1/4}, about 0.22.
    CHECK(mean_ratio < 0.5);
    CHECK(mean_ratio > 0.05);
}

TEST_CASE("antithetic pairing halves the sample count", "[mc]") {
    SimRequest req = gbm_request(0.05, 0.2, 1.0, 0.0);
    req.horizon_T = 1.0;
    req.dt = 0.5;
    req.n_paths = 400;
    CHECK(sample_utilities(req).size() == 200);
    req.antithetic = false;
    CHECK(sample_utilities(req).size() == 400);
}

// ---------------------------------------------------------------------------
// Cross-checks against an independently coded simulator (same discretization,
// different random number generator; frozen reference estimates).

TEST_CASE("cir full-truncation scheme agrees with the reference simulator",
          "[mc][slow]") {
    SimRequest req;
    req.model = Cir{{0.5, 0.5}, {2.0, 2.0}, {0.5, 0.5}};
    req.prob = problem(0.5, 0.02);
    req.beta = 2.0;
    req.scheme = SimScheme::FullTruncationEuler;
    req.horizon_T = 25.0;
    req.dt = 1.0 / 500.0;
    req.n_paths = 2000;
    req.seed = 9;
    McEstimate est = simulate_utility(req);
    // Reference run: 8000 paths, dt = 1/500, T = 25.
    const double ref = -0.649387, ref_se = 0.004365 / 3.0;
    CHECK(std::abs(est.estimate - ref) <= 3.0 * (est.delta_std_err() + ref_se));
}

TEST_CASE("three-halves inverse-factor scheme agrees with the reference simulator",
          "[mc][slow]") {
    SimRequest req;
    req.model = ThreeHalves{{0.4, 0.4}, {1.0, 1.0}, {1.0, 1.0}};
    req.prob = problem(0.5, 0.02);
    req.beta = 1.5;
    req.scheme = SimScheme::FullTruncationEuler;
    req.horizon_T = 25.0;
    req.dt = 1.0 / 500.0;
    req.n_paths = 2000;
    req.seed = 10;
    McEstimate est = simulate_utility(req);
    // Reference run: 8000 paths, dt = 1/500, T = 25.
    const double ref = -0.102548, ref_se = 0.000656 / 3.0;
    CHECK(std::abs(est.estimate - ref) <= 3.0 * (est.delta_std_err() + ref_se));
}

// ---------------------------------------------------------------------------
// Long-horizon convergence toward the analytic rate for the stochastic
// volatility and stochastic rate schemes. The allowance combines sampling
// noise with a finite-horizon term 5/T for the subexponential prefactor.

namespace {

void check_converges(const ModelSpec& degenerate, double r, double beta, double T,
                     double dt, long n_paths, std::uint64_t seed) {
    Problem prob = problem(0.5, r);
    GrowthPoint pt = growth(degenerate, prob, beta);
    REQUIRE(pt.feasible);

    SimRequest req;
    req.model = degenerate;
    req.prob = prob;
    req.beta = beta;
    req.scheme = scheme_for(degenerate);
    req.horizon_T = T;
    req.dt = dt;
    req.n_paths = n_paths;
    req.seed = seed;
    McEstimate est = simulate_utility(req);
    const double allowed = std::max(0.02, 3.0 * est.delta_std_err()) + 5.0 / T;
    INFO("analytic " << *pt.rate << " estimate " << est.estimate << " allowed "
                     << allowed);
    CHECK(std::abs(est.estimate - *pt.rate) <= allowed);
}

}  // namespace

TEST_CASE("heston scheme drifts toward the analytic rate", "[mc][slow]") {
    check_converges(Heston{{0.07, 0.07}, {-0.8, -0.8}, {0.15, 0.15},
                           {3.0, 3.0}, {0.5, 0.5}},
                    0.015, 1.5, 60.0, 0.01, 6000, 21);
}

TEST_CASE("sv32 scheme drifts toward the analytic rate", "[mc][slow]") {
    check_converges(Sv32{{0.07, 0.07}, {-0.8, -0.8}, {2.0, 2.0}, {2.0, 2.0},
                         {0.8, 0.8}},
                    0.015, 1.5, 60.0, 0.01, 6000, 22);
}

TEST_CASE("vasicek scheme drifts toward the analytic rate", "[mc][slow]") {
    check_converges(Vasicek{{0.08, 0.08}, {0.15, 0.15}, {-0.6, -0.6},
                            {0.08, 0.08}, {7.0, 7.0},   {0.3, 0.3}},
                    0.0, 1.5, 80.0, 0.05, 8000, 23);
}

TEST_CASE("inv-garch scheme drifts toward the analytic rate", "[mc][slow]") {
    check_converges(InvGarch{{0.08, 0.08}, {0.1, 0.1}, {-0.7, -0.7},
                             {0.09, 0.09}, {8.0, 8.0}, {0.2, 0.2}},
                    0.0, 1.5, 80.0, 0.05, 8000, 24);
}

// ---------------------------------------------------------------------------
// Dominance of the robust rate.

TEST_CASE("robust rate lower-bounds simulated rates across the box", "[mc]") {
    Gbm box{{0.04, 0.06}, {0.15, 0.25}};
    Problem prob = problem(0.5, 0.01);
    SimRequest tmpl;
    tmpl.horizon_T = 40.0;
    tmpl.dt = 0.5;
    tmpl.n_paths = 2000;
    tmpl.seed = 31;
    tmpl.scheme = SimScheme::ExactGbm;
    DominanceReport rep = dominance_check(ModelSpec{box}, prob, 1.5, tmpl, 2);
    CHECK(rep.passed());
    CHECK(rep.n_checked == 6);  // four corners plus two interior samples
    CHECK(rep.analytic_rate == *gbm_growth(box, prob, 1.5).rate);
}

TEST_CASE("dominance check refuses infeasible leverage", "[mc]") {
    Heston box{{0.05, 0.08}, {-0.93, -0.75}, {0.1, 0.2}, {3.0, 10.0}, {0.82, 0.93}};
    Problem prob = problem(0.5, 0.015);
    prob.beta_range = {-8.0, 8.0};
    SimRequest tmpl;
    CHECK_THROWS_MATCHES(
        dominance_check(ModelSpec{box}, prob, 6.9, tmpl, 0), feasibility_error,
        Catch::Matchers::Message("dominance_check at infeasible leverage: "
                                 "a.lo - p*|beta|*sigma.hi > 0 fails"));
}
