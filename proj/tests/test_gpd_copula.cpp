#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "ptrisk/gpd_copula.hpp"
#include "support/test_stats.hpp"

using namespace ptrisk;

namespace {

// Z uniform on {(2,0), (0,2)}: E max(|x_1|Z_1, |x_2|Z_2) = |x_1| + |x_2|.
DiscreteZ two_atom_z() {
    Matrix atoms(2, 2, 0.0);
    atoms(0, 0) = 2.0;
    atoms(1, 1) = 2.0;
    return DiscreteZ(std::move(atoms), {0.5, 0.5});
}

// Z constant (1,1): E max(|x_1|Z_1, |x_2|Z_2) = max norm.
DiscreteZ constant_z() {
    Matrix atoms(1, 2, 1.0);
    return DiscreteZ(std::move(atoms), {1.0});
}

}  // namespace

TEST_CASE("marginal H CDF") {
    CHECK(marginal_h_cdf(0.0) == 1.0);
    CHECK(marginal_h_cdf(-0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(marginal_h_cdf(-1.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK_THROWS_AS(marginal_h_cdf(0.1), std::domain_error);

    // continuity at the branch point
    CHECK(marginal_h_cdf(std::nextafter(-0.5, -1.0)) ==
          doctest::Approx(marginal_h_cdf(-0.5)).epsilon(1e-12));

    // monotone over a grid
    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
        double x = -10.0 + 10.0 * i / 1000.0;
        double h = marginal_h_cdf(x);
        CHECK(h >= prev);
        prev = h;
    }
}

TEST_CASE("w_point evaluates -u/z with sentinel for zero coordinates") {
    std::vector<double> w = w_point(0.5, std::vector<double>{1.0, 1.0});
    CHECK(w[0] == -0.5);
    CHECK(w[1] == -0.5);

    std::vector<double> with_zero = w_point(0.3, std::vector<double>{0.0, 2.0});
    CHECK(with_zero[0] == -std::numeric_limits<double>::infinity());
    CHECK(with_zero[1] == -0.15);
}

TEST_CASE("sample_w_neighborhood has the H marginal and the product expectation") {
    ZSamplerFn z = z_from_copula(CopulaModel::independence(2));
    Rng rng(40);
    Matrix w = sample_w_neighborhood(z, 2, 200000, rng);

    // marginal of each coordinate is H
    for (std::size_t col : {std::size_t{0}, std::size_t{1}}) {
        double d = test_stats::ks_distance(w.column(col),
                                           [](double x) { return marginal_h_cdf(x); });
        CHECK(d < 1.63 / std::sqrt(200000.0) + 0.002);
    }
    // in particular P(coord <= x) = 1 + x on [-1/2, 0]
    std::vector<double> col0 = w.column(0);
    for (double x : {-0.4, -0.25, -0.1}) {
        std::size_t hits = 0;
        for (double v : col0) {
            if (v <= x) ++hits;
        }
        CHECK(std::fabs(static_cast<double>(hits) / col0.size() - (1.0 + x)) < 0.005);
    }

    // P(W <= (-0.25,-0.25)) = 1 - 0.25 E max(Z_1, Z_2) = 1 - 0.25 * 4/3 = 2/3
    double p = test_stats::empirical_cdf_at(w, std::vector<double>{-0.25, -0.25});
    CHECK(std::fabs(p - 2.0 / 3.0) < 0.005);
}

TEST_CASE("GPD copula component branches") {
    CHECK(gpd_copula_component(0.3, 0.6) == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(gpd_copula_component(0.8, 0.2) == doctest::Approx(-0.875).epsilon(1e-15));
    // tie: both branches agree, the first one wins
    CHECK(gpd_copula_component(0.5, 0.5) == -0.5);
    CHECK(0.5 / (2.0 * 0.5) - 1.0 == -0.5);
}

TEST_CASE("GPD copula sample has uniform margins on [-1,0]") {
    GpdCopulaSpec spec{CopulaModel::independence(2)};
    Rng rng(41);
    const std::size_t n = 100000;
    Matrix v = sample_gpd_copula(spec, n, rng);
    for (std::size_t col : {std::size_t{0}, std::size_t{1}}) {
        double d = test_stats::ks_uniform(v.column(col), -1.0, 0.0);
        CHECK(d < 1.63 / std::sqrt(static_cast<double>(n)) + 0.002);
    }
    for (std::size_t r = 0; r < n; ++r) {
        REQUIRE(v(r, 0) >= -1.0);
        REQUIRE(v(r, 0) <= 0.0);
    }
}

TEST_CASE("GPD copula sample matches the exact near-zero CDF on a grid") {
    GpdCopulaSpec spec{CopulaModel::independence(2)};
    Rng rng(42);
    const std::size_t n = 200000;
    Matrix v = sample_gpd_copula(spec, n, rng);

    ZSamplerFn z = z_from_copula(spec.base);
    Rng mc_rng(43);
    for (double a : {-0.4, -0.3, -0.2, -0.1}) {
        for (double b : {-0.4, -0.3, -0.2, -0.1}) {
            std::vector<double> x{a, b};
            double emp = test_stats::empirical_cdf_at(v, x);
            McEstimate w = gpd_cdf_near_zero(z, x, 200000, mc_rng);
            double se = std::sqrt(emp * (1.0 - emp) / static_cast<double>(n) +
                                  w.std_error * w.std_error);
            INFO("x = (", a, ",", b, ") emp ", emp, " exact ", w.value);
            CHECK(std::fabs(emp - w.value) < 3.0 * se + 1e-6);
        }
    }
}

TEST_CASE("exact near-zero CDF for discrete Z") {
    DiscreteZ z = two_atom_z();
    CHECK(gpd_cdf_near_zero(z, std::vector<double>{0.0, 0.0}) == 1.0);
    for (double x : {-0.5, -0.3, -0.1}) {
        CHECK(gpd_cdf_near_zero(z, std::vector<double>{x, x}) ==
              doctest::Approx(1.0 - 2.0 * std::fabs(x)).epsilon(1e-14));
    }
    CHECK_THROWS_AS(gpd_cdf_near_zero(z, std::vector<double>{-0.6, -0.6}), std::domain_error);
    CHECK_THROWS_AS(gpd_cdf_near_zero(z, std::vector<double>{0.1, -0.1}), std::domain_error);
}

TEST_CASE("near-zero CDF for Z = 2S with independent S") {
    ZSamplerFn z = z_from_copula(CopulaModel::independence(2));
    Rng rng(44);
    McEstimate w = gpd_cdf_near_zero(z, std::vector<double>{-0.25, -0.25}, 1000000, rng);
    CHECK(std::fabs(w.value - 2.0 / 3.0) < 0.005);
    CHECK(w.std_error < 0.001);
}

TEST_CASE("DiscreteZ validation") {
    Matrix bad_mean(1, 2, 0.9);
    CHECK_THROWS_AS(DiscreteZ(std::move(bad_mean), {1.0}), std::invalid_argument);

    Matrix atoms(2, 2, 1.0);
    CHECK_THROWS_AS(DiscreteZ(std::move(atoms), {0.6, 0.6}), std::invalid_argument);

    Matrix neg(1, 2, 0.0);
    neg(0, 0) = -1.0;
    neg(0, 1) = 1.0;
    CHECK_THROWS_AS(DiscreteZ(std::move(neg), {1.0}), std::invalid_argument);
}

TEST_CASE("D-norm: exact values for discrete Z") {
    DiscreteZ l1 = two_atom_z();    // D-norm = l1 norm
    DiscreteZ sup = constant_z();   // D-norm = max norm

    CHECK(dnorm_exact(l1, std::vector<double>{1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dnorm_exact(l1, std::vector<double>{0.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dnorm_exact(l1, std::vector<double>{1.0, 1.0}) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(dnorm_exact(l1, std::vector<double>{-3.0, 4.0}) == doctest::Approx(7.0).epsilon(1e-15));

    CHECK(dnorm_exact(sup, std::vector<double>{1.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dnorm_exact(sup, std::vector<double>{-3.0, 4.0}) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("D-norm: homogeneity and triangle inequality hold exactly for discrete Z") {
    DiscreteZ z = two_atom_z();
    Rng rng(45);
    for (int i = 0; i < 200; ++i) {
        std::vector<double> x{4.0 * rng.uniform() - 2.0, 4.0 * rng.uniform() - 2.0};
        std::vector<double> y{4.0 * rng.uniform() - 2.0, 4.0 * rng.uniform() - 2.0};
        std::vector<double> two_x{2.0 * x[0], 2.0 * x[1]};
        std::vector<double> sum{x[0] + y[0], x[1] + y[1]};

        CHECK(dnorm_exact(z, two_x) == doctest::Approx(2.0 * dnorm_exact(z, x)).epsilon(1e-14));
        CHECK(dnorm_exact(z, sum) <= dnorm_exact(z, x) + dnorm_exact(z, y) + 1e-14);

        // norm sandwich: max norm <= D-norm <= l1 norm
        double d = dnorm_exact(z, x);
        CHECK(d >= std::max(std::fabs(x[0]), std::fabs(x[1])) - 1e-14);
        CHECK(d <= std::fabs(x[0]) + std::fabs(x[1]) + 1e-14);
    }
}

TEST_CASE("D-norm estimates for Z = 2S") {
    std::vector<double> ones{1.0, 1.0};

    // unit vectors: ||e_i||_D = E(Z_i) = 1
    ZSamplerFn indep = z_from_copula(CopulaModel::independence(2));
    Rng rng(46);
    McEstimate e1 = dnorm_estimate(indep, std::vector<double>{1.0, 0.0}, 200000, rng);
    CHECK(std::fabs(e1.value - 1.0) < 4.0 * e1.std_error + 1e-3);

    // independent S: E max(2U_1, 2U_2) = 4/3
    McEstimate d_indep = dnorm_estimate(indep, ones, 1000000, rng);
    CHECK(std::fabs(d_indep.value - 4.0 / 3.0) < 0.005);

    // comonotone S (rho -> 1 limit realized by a common-uniform sampler): E(2U) = 1
    ZSamplerFn comonotone = [](Rng& r) {
        double u = r.uniform();
        return std::vector<double>{2.0 * u, 2.0 * u};
    };
    McEstimate d_com = dnorm_estimate(comonotone, ones, 200000, rng);
    CHECK(std::fabs(d_com.value - 1.0) < 0.005);

    // ||(1,1)||_D decreases in rho for Gaussian-copula S (3 MC SE separation)
    std::vector<McEstimate> trend;
    for (double rho : {0.0, 0.5, 0.9}) {
        ZSamplerFn z = rho == 0.0 ? indep : z_from_copula(CopulaModel::gaussian(2, rho));
        Rng trend_rng(47);
        trend.push_back(dnorm_estimate(z, ones, 400000, trend_rng));
    }
    for (std::size_t i = 0; i + 1 < trend.size(); ++i) {
        double gap = trend[i].value - trend[i + 1].value;
        double se = std::sqrt(trend[i].std_error * trend[i].std_error +
                              trend[i + 1].std_error * trend[i + 1].std_error);
        CHECK(gap > 3.0 * se);
    }
}
