#include "ptrisk/gpd_copula.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ptrisk {

double marginal_h_cdf(double x) {
    if (x > 0.0) throw std::domain_error("marginal_h_cdf: defined for x <= 0 only");
    if (x >= -0.5) return 1.0 + x;
    return 1.0 / (4.0 * -x);
}

ZSamplerFn z_from_copula(const CopulaModel& s_copula) {
    return [s_copula](Rng& rng) {
        Matrix s = sample_copula(s_copula, 1, rng);
        std::vector<double> z(s.cols());
        for (std::size_t i = 0; i < s.cols(); ++i) z[i] = 2.0 * s(0, i);
        return z;
    };
}

std::vector<double> w_point(double u, std::span<const double> z) {
    std::vector<double> out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        out[i] = z[i] > 0.0 ? -u / z[i] : -std::numeric_limits<double>::infinity();
    }
    return out;
}

Matrix sample_w_neighborhood(const ZSamplerFn& z_sampler, std::size_t dim, std::size_t n,
                             Rng& rng) {
    Matrix out(n, dim);
    for (std::size_t row = 0; row < n; ++row) {
        std::vector<double> z = z_sampler(rng);
        if (z.size() != dim) {
            throw std::invalid_argument("sample_w_neighborhood: Z sampler dimension mismatch");
        }
        double u = rng.uniform();
        std::vector<double> w = w_point(u, z);
        for (std::size_t i = 0; i < dim; ++i) out(row, i) = w[i];
    }
    return out;
}

double gpd_copula_component(double u, double s) {
    return u <= s ? -u / (2.0 * s) : s / (2.0 * u) - 1.0;
}

Matrix sample_gpd_copula(const GpdCopulaSpec& spec, std::size_t n, Rng& rng) {
    const std::size_t m = spec.dim();
    Matrix s = sample_copula(spec.base, n, rng);
    Matrix out(n, m);
    for (std::size_t row = 0; row < n; ++row) {
        double u = rng.uniform();
        for (std::size_t i = 0; i < m; ++i) out(row, i) = gpd_copula_component(u, s(row, i));
    }
    return out;
}

DiscreteZ::DiscreteZ(Matrix atoms_in, std::vector<double> probs_in)
    : atoms(std::move(atoms_in)), probs(std::move(probs_in)) {
    if (atoms.rows() != probs.size() || atoms.rows() == 0) {
        throw std::invalid_argument("DiscreteZ: need one probability per atom row");
    }
    double total = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0)) throw std::invalid_argument("DiscreteZ: probabilities must be >= 0");
        total += p;
    }
    if (std::fabs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("DiscreteZ: probabilities must sum to 1");
    }
    for (std::size_t c = 0; c < atoms.cols(); ++c) {
        double mean = 0.0;
        for (std::size_t k = 0; k < atoms.rows(); ++k) {
            if (atoms(k, c) < 0.0) throw std::invalid_argument("DiscreteZ: atoms must be >= 0");
            mean += probs[k] * atoms(k, c);
        }
        if (std::fabs(mean - 1.0) > 1e-9) {
            throw std::invalid_argument("DiscreteZ: E(Z_" + std::to_string(c) +
                                        ") = " + std::to_string(mean) + ", must equal 1");
        }
    }
}

double DiscreteZ::bound() const {
    double c = 0.0;
    for (double v : atoms.data()) c = std::max(c, v);
    return c;
}

namespace {

void check_near_zero_domain(std::span<const double> x, double c) {
    for (double xi : x) {
        if (xi > 0.0) throw std::domain_error("gpd_cdf_near_zero: x must be componentwise <= 0");
        if (c * -xi > 1.0 + 1e-12) {
            throw std::domain_error(
                "gpd_cdf_near_zero: outside the valid neighborhood (requires max_i c|x_i| <= 1, "
                "c = " + std::to_string(c) + ")");
        }
    }
}

double max_scaled(std::span<const double> weights, std::span<const double> z) {
    double m = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) m = std::max(m, weights[i] * z[i]);
    return m;
}

}  // namespace

double gpd_cdf_near_zero(const DiscreteZ& z, std::span<const double> x) {
    if (x.size() != z.dim()) throw std::invalid_argument("gpd_cdf_near_zero: dimension mismatch");
    check_near_zero_domain(x, z.bound());
    std::vector<double> w(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) w[i] = -x[i];
    double expectation = 0.0;
    for (std::size_t k = 0; k < z.atoms.rows(); ++k) {
        expectation += z.probs[k] * max_scaled(w, z.atoms.row(k));
    }
    return 1.0 - expectation;
}

McEstimate gpd_cdf_near_zero(const ZSamplerFn& z_sampler, std::span<const double> x,
                             std::size_t n_mc, Rng& rng, double c) {
    check_near_zero_domain(x, c);
    std::vector<double> w(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) w[i] = -x[i];
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t k = 0; k < n_mc; ++k) {
        double v = max_scaled(w, z_sampler(rng));
        sum += v;
        sum_sq += v * v;
    }
    const double n = static_cast<double>(n_mc);
    double mean = sum / n;
    double var = std::max(0.0, sum_sq / n - mean * mean);
    return McEstimate{1.0 - mean, std::sqrt(var / n)};
}

double dnorm_exact(const DiscreteZ& z, std::span<const double> x) {
    if (x.size() != z.dim()) throw std::invalid_argument("dnorm_exact: dimension mismatch");
    std::vector<double> w(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) w[i] = std::fabs(x[i]);
    double norm = 0.0;
    for (std::size_t k = 0; k < z.atoms.rows(); ++k) {
        norm += z.probs[k] * max_scaled(w, z.atoms.row(k));
    }
    return norm;
}

McEstimate dnorm_estimate(const ZSamplerFn& z_sampler, std::span<const double> x,
                          std::size_t n_mc, Rng& rng) {
    std::vector<double> w(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) w[i] = std::fabs(x[i]);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t k = 0; k < n_mc; ++k) {
        double v = max_scaled(w, z_sampler(rng));
        sum += v;
        sum_sq += v * v;
    }
    const double n = static_cast<double>(n_mc);
    double mean = sum / n;
    double var = std::max(0.0, sum_sq / n - mean * mean);
    return McEstimate{mean, std::sqrt(var / n)};
}

}  // namespace ptrisk
