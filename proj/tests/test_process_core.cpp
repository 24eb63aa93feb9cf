#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "whk/information_process.hpp"
#include "whk/lrb.hpp"
#include "whk/normal.hpp"
#include "whk/simulate.hpp"

using namespace whk;

namespace {

InformationModel two_atom_model() {
    return InformationModel(1.0, 10.0, PriorLaw::atoms({{0.0, 0.5}, {1.0, 0.5}}));
}

}  // namespace

TEST_CASE("model invariants are enforced") {
    CHECK_THROWS_AS(InformationModel(0.0, 10.0, PriorLaw::point_mass(1.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(InformationModel(1.0, -1.0, PriorLaw::point_mass(1.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(PriorLaw::atoms({{0.0, 0.5}, {1.0, 0.6}}), std::invalid_argument);
    CHECK_THROWS_AS(PriorLaw::atoms({{0.0, -0.5}, {1.0, 1.5}}), std::invalid_argument);
    CHECK_THROWS_AS(PriorLaw::gaussian(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(PriorLaw::uniform(2.0, 1.0), std::invalid_argument);

    const InformationModel model = two_atom_model();
    CHECK_THROWS_AS(bridge_conditional_law(model, 0.0, 10.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(bridge_conditional_law(model, 5.0, 4.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(posterior_mean(model, 10.0, 0.0), std::domain_error);
}

TEST_CASE("bridge conditional law: degenerate and pinned values") {
    const InformationModel model = two_atom_model();

    SUBCASE("s = t conditions to a point") {
        const BridgeLaw law = bridge_conditional_law(model, 3.0, 3.0, 1.7);
        CHECK(law.mean == 1.7);
        CHECK(law.variance == 0.0);
    }

    SUBCASE("mid-horizon from the origin") {
        const BridgeLaw law = bridge_conditional_law(model, 0.0, 5.0, 0.0);
        CHECK(law.mean == 0.0);
        CHECK(law.variance == doctest::Approx(2.5).epsilon(1e-15));
        CHECK(std::sqrt(law.variance) == doctest::Approx(1.5811388300841898).epsilon(1e-12));
    }

    SUBCASE("shifted start") {
        const BridgeLaw law = bridge_conditional_law(model, 2.0, 6.0, 1.0);
        CHECK(law.mean == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(law.variance == doctest::Approx(2.0).epsilon(1e-15));
    }
}

TEST_CASE("bridge conditional law matches Monte Carlo restriction of bridge paths") {
    // oracle: simulate bridges independently and compare conditional moments
    // of L_6 given L_2 near 1 by path restriction to a narrow band
    const InformationModel model = two_atom_model();
    const BridgeLaw law = bridge_conditional_law(model, 2.0, 6.0, 1.0);

    std::mt19937_64 rng(7712);
    const std::vector<double> times{2.0, 6.0};
    std::vector<double> residuals;
    const double band = 0.05;
    for (int i = 0; i < 2000000; ++i) {
        const auto path = oracle::sample_bridge_path(10.0, times, rng);
        if (std::abs(path[0] - 1.0) < band) {
            const double predicted = path[0] * (10.0 - 6.0) / (10.0 - 2.0);
            residuals.push_back(path[1] - predicted);
        }
    }
    REQUIRE(residuals.size() > 10000);
    std::vector<double> squared(residuals.size());
    for (std::size_t i = 0; i < residuals.size(); ++i) squared[i] = residuals[i] * residuals[i];
    const auto mean_res = oracle::summarize(residuals);
    const auto mean_sq = oracle::summarize(squared);
    CHECK(std::abs(mean_res.mean - 0.0) < 3.0 * mean_res.standard_error);
    CHECK(std::abs(mean_sq.mean - law.variance) < 3.0 * mean_sq.standard_error);
}

TEST_CASE("tower property of the bridge law is an algebraic identity") {
    const InformationModel model = two_atom_model();
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double s = 9.0 * unif(rng);
        const double r = s + (9.5 - s) * unif(rng);
        const double t = r + (9.9 - r) * unif(rng);
        const double x = 6.0 * unif(rng) - 3.0;

        const BridgeLaw direct = bridge_conditional_law(model, s, t, x);
        const BridgeLaw first = bridge_conditional_law(model, s, r, x);
        const BridgeLaw second = bridge_conditional_law(model, r, t, first.mean);
        const double ratio = (10.0 - t) / (10.0 - r);
        const double composed_var = first.variance * ratio * ratio + second.variance;

        CHECK(second.mean == doctest::Approx(direct.mean).epsilon(1e-12));
        CHECK(composed_var == doctest::Approx(direct.variance).epsilon(1e-12));
    }
}

TEST_CASE("simulate_paths: degenerate grid, moments, determinism") {
    const InformationModel model = two_atom_model();

    SUBCASE("grid {0} gives identically zero values") {
        const std::vector<double> grid{0.0};
        for (Measure measure : {Measure::P, Measure::B}) {
            const auto paths = simulate_paths(model, grid, 64, measure, 17);
            for (const auto& p : paths) {
                REQUIRE(p.values.size() == 1);
                CHECK(p.values[0] == 0.0);
            }
        }
    }

    SUBCASE("grid validation") {
        CHECK_THROWS(simulate_paths(model, std::vector<double>{}, 4, Measure::B, 1));
        CHECK_THROWS(simulate_paths(model, std::vector<double>{1.0, 1.0}, 4, Measure::B, 1));
        CHECK_THROWS(simulate_paths(model, std::vector<double>{5.0, 10.0}, 4, Measure::B, 1));
        CHECK_THROWS(simulate_paths(model, std::vector<double>{1.0}, 0, Measure::B, 1));
    }

    SUBCASE("bridge variance at mid horizon") {
        const std::vector<double> grid{5.0};
        const auto paths = simulate_paths(model, grid, 100000, Measure::B, 2024);
        std::vector<double> squares(paths.size());
        for (std::size_t i = 0; i < paths.size(); ++i) {
            squares[i] = paths[i].values[0] * paths[i].values[0];
        }
        const auto stat = oracle::summarize(squares);
        CHECK(std::abs(stat.mean - 2.5) < 3.0 * stat.standard_error);
    }

    SUBCASE("point-mass prior pins the P-measure mean") {
        const InformationModel pinned(1.0, 10.0, PriorLaw::point_mass(1.0));
        const std::vector<double> grid{5.0};
        const auto paths = simulate_paths(pinned, grid, 100000, Measure::P, 404);
        std::vector<double> values(paths.size());
        for (std::size_t i = 0; i < paths.size(); ++i) values[i] = paths[i].values[0];
        const auto stat = oracle::summarize(values);
        CHECK(std::abs(stat.mean - 5.0) < 3.0 * stat.standard_error);
    }

    SUBCASE("bridge covariance Cov(L_s, L_t) = s(U-t)/U") {
        const std::vector<double> grid{2.0, 7.0};
        const auto paths = simulate_paths(model, grid, 100000, Measure::B, 31337);
        std::vector<double> products(paths.size());
        for (std::size_t i = 0; i < paths.size(); ++i) {
            products[i] = paths[i].values[0] * paths[i].values[1];
        }
        const auto stat = oracle::summarize(products);
        CHECK(std::abs(stat.mean - 2.0 * 3.0 / 10.0) < 3.0 * stat.standard_error);
    }

    SUBCASE("bitwise independent of thread count and reproducible") {
        const std::vector<double> grid{1.0, 4.0, 8.0};
        const auto single = simulate_paths(model, grid, 257, Measure::P, 5150, 1);
        const auto multi = simulate_paths(model, grid, 257, Measure::P, 5150, 4);
        const auto again = simulate_paths(model, grid, 257, Measure::P, 5150, 3);
        REQUIRE(single.size() == multi.size());
        for (std::size_t i = 0; i < single.size(); ++i) {
            CHECK(single[i].values == multi[i].values);
            CHECK(single[i].values == again[i].values);
        }
    }
}

TEST_CASE("posterior mean: closed values and Monte Carlo Bayes oracle") {
    const InformationModel model = two_atom_model();

    SUBCASE("no information at t = 0") {
        CHECK(posterior_mean(model, 0.0, 3.7) == 0.5);
        const InformationModel gaussian(0.7, 10.0, PriorLaw::gaussian(1.2, 0.5));
        CHECK(posterior_mean(gaussian, 0.0, -2.0) == 1.2);
    }

    SUBCASE("two-atom posterior at (t=5, ell=2)") {
        const double expected = std::exp(-1.0) / (1.0 + std::exp(-1.0));  // 0.26894...
        CHECK(posterior_mean(model, 5.0, 2.0) ==
              doctest::Approx(0.2689414213699951).epsilon(1e-13));
        CHECK(posterior_mean(model, 5.0, 2.0) == doctest::Approx(expected).epsilon(1e-14));
    }

    SUBCASE("Monte Carlo Bayes kernel regression near ell = 2") {
        // oracle: simulate (X, L_5) pairs under P with the standard library
        // and average X over draws with L_5 in a narrow band around 2
        std::mt19937_64 rng(1234);
        std::normal_distribution<double> normal;
        std::bernoulli_distribution coin(0.5);
        const double t = 5.0, U = 10.0, ell = 2.0;
        const double band = 0.02;
        std::vector<double> xs;
        for (int i = 0; i < 4000000; ++i) {
            const double x = coin(rng) ? 1.0 : 0.0;
            const double beta = std::sqrt(t * (U - t) / U) * normal(rng);
            const double L = t * x + beta;
            if (std::abs(L - ell) < band) xs.push_back(x);
        }
        REQUIRE(xs.size() > 5000);
        const auto stat = oracle::summarize(xs);
        CHECK(std::abs(stat.mean - posterior_mean(model, t, ell)) < 2e-2);
    }

    SUBCASE("degenerate prior returns its atom") {
        const InformationModel pinned(1.0, 10.0, PriorLaw::point_mass(0.8));
        for (double t : {0.0, 2.0, 9.0}) {
            for (double ell : {-3.0, 0.0, 4.0}) {
                CHECK(posterior_mean(pinned, t, ell) == doctest::Approx(0.8).epsilon(1e-14));
            }
        }
    }

    SUBCASE("posterior mean stays in the prior support hull") {
        std::mt19937_64 rng(555);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const std::vector<PriorLaw> priors{
            PriorLaw::atoms({{-1.0, 0.25}, {0.5, 0.5}, {2.0, 0.25}}),
            PriorLaw::uniform(-2.0, 3.0),
            PriorLaw::gaussian(0.5, 2.0),
        };
        for (const PriorLaw& prior : priors) {
            const InformationModel m(1.3, 10.0, prior);
            const auto [lo, hi] = prior.support_hull();
            for (int trial = 0; trial < 60; ++trial) {
                const double t = 9.5 * unif(rng);
                const double ell = 24.0 * unif(rng) - 12.0;
                const double post = posterior_mean(m, t, ell);
                CHECK(post >= lo - 1e-12);
                CHECK(post <= hi + 1e-12);
            }
        }
    }

    SUBCASE("gaussian closed form agrees with direct numeric Bayes") {
        const InformationModel gaussian(0.8, 10.0, PriorLaw::gaussian(0.4, 1.5));
        const double t = 4.0, ell = 1.1;
        const double sigma = 0.8, U = 10.0;
        auto weight = [&](double x) {
            return gaussian_pdf(x, 0.4, 1.5) *
                   std::exp(U / (U - t) * (sigma * x * ell - 0.5 * sigma * sigma * x * x * t));
        };
        const double numer =
            oracle::integrate([&](double x) { return x * weight(x); }, -12.0, 12.0);
        const double denom = oracle::integrate(weight, -12.0, 12.0);
        CHECK(posterior_mean(gaussian, t, ell) ==
              doctest::Approx(numer / denom).epsilon(1e-10));
    }

    SUBCASE("uniform-prior quadrature agrees with direct numeric Bayes") {
        const InformationModel uniform(1.1, 10.0, PriorLaw::uniform(-0.8, 1.7));
        const double t = 6.0, ell = -0.9;
        const double sigma = 1.1, U = 10.0;
        auto weight = [&](double x) {
            return std::exp(U / (U - t) * (sigma * x * ell - 0.5 * sigma * sigma * x * x * t));
        };
        const double numer =
            oracle::integrate([&](double x) { return x * weight(x); }, -0.8, 1.7);
        const double denom = oracle::integrate(weight, -0.8, 1.7);
        CHECK(posterior_mean(uniform, t, ell) ==
              doctest::Approx(numer / denom).epsilon(1e-10));
    }
}

TEST_CASE("measure-change martingale: closed values and unit expectation") {
    const InformationModel model = two_atom_model();

    SUBCASE("normalised at t = 0") {
        CHECK(measure_change_martingale(model, 0.0, 0.0) == 1.0);
        CHECK(measure_change_martingale(model, 0.0, 5.0) == 1.0);
    }

    SUBCASE("zero-signal prior gives M identically 1") {
        const InformationModel pinned(1.0, 10.0, PriorLaw::point_mass(0.0));
        for (double t : {0.0, 3.0, 8.0}) {
            for (double ell : {-2.0, 0.0, 2.0}) {
                CHECK(measure_change_martingale(pinned, t, ell) ==
                      doctest::Approx(1.0).epsilon(1e-14));
            }
        }
    }

    SUBCASE("two-atom value at (t=5, ell=2)") {
        CHECK(measure_change_martingale(model, 5.0, 2.0) ==
              doctest::Approx(1.4621171572600098).epsilon(1e-13));
        CHECK(measure_change_martingale(model, 5.0, 2.0) ==
              doctest::Approx(1.0 / (0.5 * (1.0 + std::exp(-1.0)))).epsilon(1e-14));
    }

    SUBCASE("E_P[M_t] = 1 on a time grid") {
        const std::vector<double> grid{1.0, 4.0, 7.0};
        const auto paths = simulate_paths(model, grid, 100000, Measure::P, 8887);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            std::vector<double> ms(paths.size());
            for (std::size_t i = 0; i < paths.size(); ++i) {
                ms[i] = measure_change_martingale(model, grid[k], paths[i].values[k]);
            }
            const auto stat = oracle::summarize(ms);
            CHECK(std::abs(stat.mean - 1.0) < 3.0 * stat.standard_error);
        }
    }
}

TEST_CASE("LRB transition density: Brownian instantiation") {
    const LrbDensitySpec spec = LrbDensitySpec::brownian();
    const double U = 10.0;

    SUBCASE("rho integrates to one") {
        for (double t : {0.5, 3.0, 9.0}) {
            const double mass = oracle::integrate(
                [&](double x) { return spec.rho(t, x); }, -40.0, 40.0, 1e-10);
            CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
        }
    }

    SUBCASE("point mass at zero reproduces the bridge conditional density") {
        const PriorLaw nu = PriorLaw::point_mass(0.0);
        const InformationModel model = two_atom_model();
        const double s = 2.0, t = 6.0, x = 1.0;
        const BridgeLaw law = bridge_conditional_law(model, s, t, x);
        for (double y : {-2.0, -0.5, 0.0, 0.7, 2.5}) {
            const double density = lrb_transition_density(spec, nu, U, s, t, x, y);
            CHECK(density ==
                  doctest::Approx(gaussian_pdf(y, law.mean, law.variance)).epsilon(1e-10));
        }
    }

    SUBCASE("point mass at z is the bridge pinned at (U, z)") {
        const PriorLaw nu = PriorLaw::point_mass(3.0);
        const double s = 1.0, t = 4.0, x = 0.5;
        const double mean = x + (3.0 - x) * (t - s) / (U - s);
        const double var = (t - s) * (U - t) / (U - s);
        for (double y : {0.0, 1.0, 2.0}) {
            CHECK(lrb_transition_density(spec, nu, U, s, t, x, y) ==
                  doctest::Approx(gaussian_pdf(y, mean, var)).epsilon(1e-10));
        }
    }

    SUBCASE("sigma-scaled setup integrates to one over y") {
        const InformationModel model(0.4, 10.0,
                                     PriorLaw::atoms({{-1.0, 0.3}, {2.0, 0.7}}));
        const PriorLaw terminal = lrb_terminal_law(model);
        const double s = 1.0, t = 5.0, x = 0.3;
        const double mass = oracle::integrate(
            [&](double y) { return lrb_transition_density(spec, terminal, U, s, t, x, y); },
            -30.0, 30.0, 1e-10);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
    }

    SUBCASE("gaussian terminal law has a closed form by completing the square") {
        const PriorLaw nu = PriorLaw::gaussian(1.0, 2.0);
        const double s = 2.0, t = 5.0, x = 0.8;
        // psi_tU(R; y) for rho_t = N(0, t) and nu = N(m, v), via Gaussian
        // convolution done by hand
        auto psi = [&](double tt, double y) {
            const double m = 1.0, v = 2.0;
            const double Q = 1.0 / (U - tt) + 1.0 / v - 1.0 / U;
            const double R = y / (U - tt) + m / v;
            return std::sqrt(U / ((U - tt) * v * Q)) *
                   std::exp(0.5 * R * R / Q - 0.5 * y * y / (U - tt) - 0.5 * m * m / v);
        };
        for (double y : {-1.0, 0.0, 0.9, 2.2}) {
            const double expected =
                psi(t, y) / psi(s, x) * gaussian_pdf(y - x, 0.0, t - s);
            CHECK(lrb_transition_density(spec, nu, U, s, t, x, y) ==
                  doctest::Approx(expected).epsilon(1e-8));
        }
    }

    SUBCASE("time-ordering preconditions") {
        const PriorLaw nu = PriorLaw::point_mass(0.0);
        CHECK_THROWS_AS(lrb_transition_density(spec, nu, U, 5.0, 5.0, 0.0, 0.0),
                        std::domain_error);
        CHECK_THROWS_AS(lrb_transition_density(spec, nu, U, 2.0, 10.0, 0.0, 0.0),
                        std::domain_error);
    }
}
