#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ptrisk/copulas.hpp"
#include "ptrisk/gpd_copula.hpp"
#include "ptrisk/matrix.hpp"
#include "ptrisk/rng.hpp"

namespace ptrisk {

/// Multivariate piecing-together specification: below the threshold vector y
/// the sample follows the base copula (shifted to [-1,0]^m); above it the
/// upper tail is replaced by the GPD copula sample scaled back into place.
struct PtCopulaSpec {
    CopulaModel base;  // copula of Y, sampled on [0,1]^m and shifted by -1
    GpdCopulaSpec gpd;
    std::vector<double> threshold;  // y, componentwise in (-1, 0)

    PtCopulaSpec(CopulaModel base, GpdCopulaSpec gpd, std::vector<double> threshold);
    std::size_t dim() const { return base.dim(); }
};

/// Componentwise splice Q_i = Y_i when Y_i <= y_i, else -y_i V_i.
/// Rows of y_rows and v_rows are paired by index; y_rows must already live
/// on [-1,0]^m. Ties Y_i = y_i take the identity branch.
Matrix pt_combine(const Matrix& y_rows, const Matrix& v_rows, std::span<const double> y);

/// n rows of the pieced-together copula on [-1,0]^m. Y is drawn from rng
/// exactly as a plain base-copula sample would be (so paired runs share it);
/// V comes from an independent spawned substream.
Matrix sample_pt_copula(const PtCopulaSpec& spec, std::size_t n, Rng& rng);

/// Shift a sample on [-1,0]^m to [0,1]^m.
Matrix shift_to_unit_cube(const Matrix& q);

using QuantileFn = std::function<double(double)>;

/// Transform each column of a [0,1]^m sample by its quantile function.
/// Entries equal to 0 or 1 (possible in floating point only) are nudged
/// inward by one unit in the last place first.
Matrix transform_margins(const Matrix& q_tilde, const std::vector<QuantileFn>& quantiles);

/// P(Y_j > y_j, j in K) for a base copula on [-1,0]^m, by inclusion-exclusion
/// over the closed-form CDF. K holds 0-based coordinate indices.
double joint_survival_base(const CopulaModel& c, std::span<const double> y,
                           std::span<const std::size_t> k);

/// The scaling factor b_{i,K} = P(Y_j > y_j, j in K) / (-y_i).
double pt_scaling_b(const CopulaModel& c, std::span<const double> y,
                    std::span<const std::size_t> k, std::size_t i);

}  // namespace ptrisk
