#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ptrisk/distributions.hpp"
#include "ptrisk/special_functions.hpp"
#include "support/test_stats.hpp"

using namespace ptrisk;

namespace {
// Table-based severity used throughout: commercial-banking-like parameters.
SplicedSeverity table_line_1() {
    return SplicedSeverity(Lognormal(2.19, 2.23), 918.02, GpdExcess(609.84, 0.82));
}
}  // namespace

TEST_CASE("standard normal CDF and quantile") {
    // reference values computed with 40-digit arithmetic
    CHECK(std_normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std_normal_quantile(0.025) == doctest::Approx(-1.9599639845400542).epsilon(1e-13));
    CHECK(std_normal_quantile(0.975) == doctest::Approx(1.9599639845400542).epsilon(1e-13));
    CHECK(std_normal_quantile(1e-6) == doctest::Approx(-4.7534243088228989).epsilon(1e-13));
    CHECK(std_normal_quantile(0.3) == doctest::Approx(-0.52440051270804078).epsilon(1e-13));
    CHECK(std_normal_quantile(0.9999) == doctest::Approx(3.7190164854556806).epsilon(1e-13));
    CHECK_THROWS_AS(std_normal_quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(std_normal_quantile(1.0), std::domain_error);

    // round trip on a fine grid
    for (int i = 1; i < 1000; ++i) {
        double p = i / 1000.0;
        CHECK(std_normal_cdf(std_normal_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
    }
}

TEST_CASE("EVD families per the standardized definitions") {
    CHECK(EvdFamily::gumbel().cdf(0.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(EvdFamily::frechet(1.0).cdf(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(EvdFamily::weibull(2.0).cdf(-0.5) == doctest::Approx(std::exp(-0.25)).epsilon(1e-15));

    // out-of-support clamps
    CHECK(EvdFamily::frechet(2.0).cdf(-1.0) == 0.0);
    CHECK(EvdFamily::frechet(2.0).cdf(0.0) == 0.0);
    CHECK(EvdFamily::weibull(2.0).cdf(0.5) == 1.0);

    CHECK_THROWS_AS(EvdFamily::frechet(0.0), std::invalid_argument);
    CHECK_THROWS_AS(EvdFamily::weibull(-1.0), std::invalid_argument);
}

TEST_CASE("standardized GPD families") {
    CHECK(GpdStdFamily::pareto(1.0).cdf(2.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(GpdStdFamily::beta(1.0).cdf(-0.25) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(GpdStdFamily::exponential().cdf(0.0) == 0.0);

    CHECK(GpdStdFamily::pareto(1.0).cdf(0.5) == 0.0);
    CHECK(GpdStdFamily::beta(2.0).cdf(-1.5) == 0.0);
    CHECK(GpdStdFamily::beta(2.0).cdf(0.5) == 1.0);
    CHECK(GpdStdFamily::exponential().cdf(-1.0) == 0.0);
}

TEST_CASE("monotone CDFs on 1000-point grids") {
    auto check_monotone = [](auto&& cdf, double lo, double hi) {
        double prev = -1.0;
        for (int i = 0; i <= 1000; ++i) {
            double x = lo + (hi - lo) * i / 1000.0;
            double f = cdf(x);
            CHECK(f >= prev);
            CHECK(f >= 0.0);
            CHECK(f <= 1.0);
            prev = f;
        }
    };
    check_monotone([](double x) { return EvdFamily::frechet(1.4).cdf(x); }, -1.0, 20.0);
    check_monotone([](double x) { return EvdFamily::weibull(0.7).cdf(x); }, -20.0, 1.0);
    check_monotone([](double x) { return EvdFamily::gumbel().cdf(x); }, -8.0, 8.0);
    check_monotone([](double x) { return GpdStdFamily::pareto(2.0).cdf(x); }, 0.0, 50.0);
    check_monotone([](double x) { return GpdStdFamily::beta(0.5).cdf(x); }, -2.0, 1.0);
    check_monotone([](double x) { return GpdStdFamily::exponential().cdf(x); }, -1.0, 20.0);
    check_monotone([](double x) { return GpdExcess(609.84, 0.82).cdf(x < 0 ? 0 : x); }, 0.0, 1e5);
    check_monotone([](double x) { return table_line_1().cdf(x); }, 0.0, 5e4);
}

TEST_CASE("GPD excess distribution") {
    GpdExcess g(1.0, 1.0);
    CHECK(g.cdf(1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(g.quantile(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.quantile(0.0) == 0.0);

    GpdExcess table(609.84, 0.82);
    CHECK(table.cdf(0.0) == 0.0);
    // oracle: direct 40-digit evaluation, cross-checked by quadrature of the density
    CHECK(table.cdf(609.84) == doctest::Approx(0.51822998011311518).epsilon(1e-14));
    CHECK(table.cdf(609.84 / 0.82) == doctest::Approx(0.57057210791947061).epsilon(1e-14));
    // high-precision oracle value of (beta/xi)((1-p)^-xi - 1)
    CHECK(table.quantile(0.99) == doctest::Approx(31720.294528456441).epsilon(1e-13));

    CHECK_THROWS_AS(table.cdf(-0.1), std::domain_error);
    CHECK_THROWS_AS(table.quantile(1.0), std::domain_error);
    CHECK_THROWS_AS(GpdExcess(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GpdExcess(1.0, 0.0), std::invalid_argument);

    // inverse consistency
    for (int i = 1; i < 100; ++i) {
        double p = i / 100.0;
        CHECK(table.cdf(table.quantile(p)) == doctest::Approx(p).epsilon(1e-10));
    }
}

TEST_CASE("lognormal distribution") {
    Lognormal ln(2.19, 2.23);
    CHECK(ln.cdf(0.0) == 0.0);
    CHECK(ln.cdf(-5.0) == 0.0);
    CHECK(ln.quantile(0.5) == doctest::Approx(std::exp(2.19)).epsilon(1e-13));
    for (int i = 1; i < 100; ++i) {
        double p = i / 100.0;
        CHECK(ln.cdf(ln.quantile(p)) == doctest::Approx(p).epsilon(1e-10));
    }
    CHECK_THROWS_AS(Lognormal(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ln.quantile(0.0), std::domain_error);
}

TEST_CASE("spliced severity CDF") {
    SplicedSeverity s = table_line_1();

    // body CDF at the threshold (40-digit oracle)
    CHECK(s.cdf(918.02) == doctest::Approx(0.9811097548699417).epsilon(1e-13));
    CHECK(s.cdf(1e-300) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(s.cdf(0.0) == 0.0);

    // splice identity at the tail median
    double f_u = s.body_cdf_at_threshold();
    double x = 918.02 + s.tail().quantile(0.5);
    CHECK(s.cdf(x) == doctest::Approx(f_u + (1.0 - f_u) * 0.5).epsilon(1e-14));

    // continuity at u: both branch expressions agree exactly
    double below = s.body().cdf(918.02);
    double above = f_u + (1.0 - f_u) * s.tail().cdf(0.0);
    CHECK(below == above);

    // GPD tail identity for x >= u
    for (double excess : {0.0, 1.0, 500.0, 609.84, 5000.0, 1e6}) {
        double xv = 918.02 + excess;
        double lhs = 1.0 - s.cdf(xv);
        double rhs = (1.0 - f_u) * std::pow(1.0 + 0.82 * excess / 609.84, -1.0 / 0.82);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("spliced severity quantile") {
    SplicedSeverity s = table_line_1();
    double f_u = s.body_cdf_at_threshold();

    CHECK(s.quantile(f_u) == doctest::Approx(918.02).epsilon(1e-12));
    CHECK(s.quantile(0.5) == doctest::Approx(std::exp(2.19)).epsilon(1e-13));  // below F(u)
    CHECK(s.quantile(0.999) > 918.02);

    for (double p : {0.001, 0.1, 0.5, 0.9, 0.98, f_u, 0.995, 0.9999}) {
        CHECK(s.cdf(s.quantile(p)) == doctest::Approx(p).epsilon(1e-10));
    }
    CHECK_THROWS_AS(s.quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(s.quantile(1.0), std::domain_error);
}

TEST_CASE("sample_spliced matches its distribution") {
    SplicedSeverity s = table_line_1();
    Rng rng(42);
    CHECK(sample_spliced(s, 0, rng).empty());

    Rng sample_rng(7);
    std::vector<double> sample = sample_spliced(s, 100000, sample_rng);
    double d = test_stats::ks_distance(sample, [&s](double x) { return s.cdf(x); });
    CHECK(d < 0.01);

    Rng a(123), b(123);
    CHECK(sample_spliced(s, 50, a) == sample_spliced(s, 50, b));
}

TEST_CASE("negative binomial pmf") {
    NegBin geo(1.0, 1.0);
    CHECK(geo.pmf(1) == doctest::Approx(0.25).epsilon(1e-14));  // geometric special case
    CHECK(geo.pmf(0) == doctest::Approx(0.5).epsilon(1e-14));

    NegBin nb(0.74, 46.10);
    CHECK(nb.pmf(0) == doctest::Approx(std::pow(1.0 + 46.10, -0.74)).epsilon(1e-13));
    CHECK(nb.mean() == doctest::Approx(34.114).epsilon(1e-12));
    CHECK(nb.variance() == doctest::Approx(0.74 * 46.10 * 47.10).epsilon(1e-12));

    double total = 0.0;
    for (unsigned n = 0; n <= 2000; ++n) {
        double p = nb.pmf(n);
        CHECK(p >= 0.0);
        total += p;
    }
    CHECK(total > 0.999);
    CHECK(total <= 1.0 + 1e-12);

    CHECK_THROWS_AS(NegBin(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(NegBin(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("negative binomial sampling moments") {
    NegBin nb(0.74, 46.10);
    Rng rng(2024);
    const std::size_t n = 1000000;
    std::vector<double> draws(n);
    for (std::size_t i = 0; i < n; ++i) draws[i] = static_cast<double>(sample_negbin(nb, rng));

    CHECK(test_stats::mean(draws) == doctest::Approx(34.114).epsilon(0.01));
    CHECK(test_stats::variance(draws) == doctest::Approx(1606.9).epsilon(0.03));

    Rng a(5), b(5);
    for (int i = 0; i < 100; ++i) CHECK(sample_negbin(nb, a) == sample_negbin(nb, b));
}
