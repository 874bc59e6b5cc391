#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ptrisk/copulas.hpp"
#include "ptrisk/matrix.hpp"
#include "ptrisk/rng.hpp"

namespace ptrisk {

/// GPD copula generated by the bounded mean-one vector Z := 2S, where S
/// follows the base copula. Columns of the resulting sample are uniform on
/// [-1,0] and the upper-tail block [-1/2,0]^m follows the GPD determined
/// by Z.
struct GpdCopulaSpec {
    CopulaModel base;  // distribution of S

    std::size_t dim() const { return base.dim(); }
};

/// Marginal CDF of -U/(2S_i): H(x) = 1+x on [-1/2,0], 1/(4|x|) below.
/// Throws std::domain_error for x > 0.
double marginal_h_cdf(double x);

/// Draws Z rows (bounded, mean one per coordinate) for the generic samplers.
using ZSamplerFn = std::function<std::vector<double>(Rng&)>;

/// Z sampler for Z = 2S with S from the given copula.
ZSamplerFn z_from_copula(const CopulaModel& s_copula);

/// The vector -u * (1/z_1, ..., 1/z_m). A zero coordinate of z maps to the
/// sentinel -infinity ("below any threshold").
std::vector<double> w_point(double u, std::span<const double> z);

/// n draws of -U(1/Z_1,...,1/Z_m) with U uniform(0,1) independent of Z;
/// follows a GPD with uniform margins in a left neighborhood of zero when
/// Z is bounded with E(Z_i) = 1.
Matrix sample_w_neighborhood(const ZSamplerFn& z_sampler, std::size_t dim, std::size_t n,
                             Rng& rng);

/// One coordinate of the GPD copula sample:
/// V_i = -u/(2 s_i) when u <= s_i, else s_i/(2u) - 1 (tie to the first branch).
double gpd_copula_component(double u, double s);

/// n rows of the GPD copula on [-1,0]^m, each row built from one U draw and
/// one row of S.
Matrix sample_gpd_copula(const GpdCopulaSpec& spec, std::size_t n, Rng& rng);

/// Z with finite support: atom rows with probabilities. Validated to have
/// non-negative atoms, probabilities summing to one and E(Z_i) = 1.
struct DiscreteZ {
    Matrix atoms;               // k x m
    std::vector<double> probs;  // k

    DiscreteZ(Matrix atoms, std::vector<double> probs);
    std::size_t dim() const { return atoms.cols(); }
    double bound() const;  ///< max atom coordinate (the c of the construction)
};

/// Monte Carlo estimate with its standard error.
struct McEstimate {
    double value;
    double std_error;
};

/// Exact W(x) = 1 - E[max_i(-x_i Z_i)] for discrete Z, valid on the
/// neighborhood max_i c |x_i| <= 1 (throws std::domain_error outside).
double gpd_cdf_near_zero(const DiscreteZ& z, std::span<const double> x);

/// Monte Carlo version of the same expectation; c is the caller-known bound
/// on Z (2 for Z = 2S).
McEstimate gpd_cdf_near_zero(const ZSamplerFn& z_sampler, std::span<const double> x,
                             std::size_t n_mc, Rng& rng, double c = 2.0);

/// D-norm ||x||_D = E[max_i |x_i| Z_i]; exact for discrete Z.
double dnorm_exact(const DiscreteZ& z, std::span<const double> x);
McEstimate dnorm_estimate(const ZSamplerFn& z_sampler, std::span<const double> x,
                          std::size_t n_mc, Rng& rng);

}  // namespace ptrisk
