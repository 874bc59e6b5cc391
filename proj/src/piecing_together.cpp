#include "ptrisk/piecing_together.hpp"

#include <cmath>
#include <stdexcept>

#include "ptrisk/errors.hpp"

namespace ptrisk {

PtCopulaSpec::PtCopulaSpec(CopulaModel base_in, GpdCopulaSpec gpd_in,
                           std::vector<double> threshold_in)
    : base(std::move(base_in)), gpd(std::move(gpd_in)), threshold(std::move(threshold_in)) {
    if (threshold.size() != base.dim() || gpd.dim() != base.dim()) {
        throw std::invalid_argument("PtCopulaSpec: dimension mismatch between base, GPD and y");
    }
    for (double y : threshold) {
        if (!(y > -1.0 && y < 0.0)) {
            throw std::invalid_argument("PtCopulaSpec: threshold components must lie in (-1, 0)");
        }
    }
    if (base.has_closed_form_cdf()) {
        std::vector<std::size_t> all(base.dim());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        if (!(joint_survival_base(base, threshold, all) > 0.0)) {
            throw std::invalid_argument("PtCopulaSpec: P(Y > y) must be positive");
        }
    }
}

Matrix pt_combine(const Matrix& y_rows, const Matrix& v_rows, std::span<const double> y) {
    if (y_rows.rows() != v_rows.rows() || y_rows.cols() != v_rows.cols() ||
        y_rows.cols() != y.size()) {
        throw std::invalid_argument("pt_combine: shape mismatch between Y, V and threshold");
    }
    Matrix q(y_rows.rows(), y_rows.cols());
    for (std::size_t r = 0; r < y_rows.rows(); ++r) {
        for (std::size_t i = 0; i < y_rows.cols(); ++i) {
            double yi = y_rows(r, i);
            q(r, i) = yi <= y[i] ? yi : -y[i] * v_rows(r, i);
        }
    }
    return q;
}

Matrix sample_pt_copula(const PtCopulaSpec& spec, std::size_t n, Rng& rng) {
    // V comes from a spawned substream; Y consumes the caller's stream the
    // way a plain base-copula draw would, so a paired plain run on the same
    // stream shares the Y rows and differs only in the substituted tail.
    Rng v_rng = rng.spawn();
    Matrix y_rows = sample_copula(spec.base, n, rng);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i < spec.dim(); ++i) y_rows(r, i) -= 1.0;
    }
    Matrix v_rows = sample_gpd_copula(spec.gpd, n, v_rng);
    return pt_combine(y_rows, v_rows, spec.threshold);
}

Matrix shift_to_unit_cube(const Matrix& q) {
    Matrix out(q.rows(), q.cols());
    for (std::size_t r = 0; r < q.rows(); ++r) {
        for (std::size_t i = 0; i < q.cols(); ++i) out(r, i) = q(r, i) + 1.0;
    }
    return out;
}

Matrix transform_margins(const Matrix& q_tilde, const std::vector<QuantileFn>& quantiles) {
    if (quantiles.size() != q_tilde.cols()) {
        throw std::invalid_argument("transform_margins: need one quantile function per column");
    }
    Matrix out(q_tilde.rows(), q_tilde.cols());
    for (std::size_t r = 0; r < q_tilde.rows(); ++r) {
        for (std::size_t i = 0; i < q_tilde.cols(); ++i) {
            double p = q_tilde(r, i);
            if (p <= 0.0) p = std::nextafter(0.0, 1.0);
            if (p >= 1.0) p = std::nextafter(1.0, 0.0);
            out(r, i) = quantiles[i](p);
        }
    }
    return out;
}

double joint_survival_base(const CopulaModel& c, std::span<const double> y,
                           std::span<const std::size_t> k) {
    if (k.empty()) throw std::invalid_argument("joint_survival_base: K must be non-empty");
    if (y.size() != c.dim()) throw std::invalid_argument("joint_survival_base: y dimension mismatch");
    if (!c.has_closed_form_cdf()) {
        throw UnsupportedOperationError(
            "joint_survival_base: base family has no closed-form CDF; evaluate the survival "
            "probability from a sample instead");
    }
    for (std::size_t idx : k) {
        if (idx >= c.dim()) throw std::invalid_argument("joint_survival_base: index out of range");
    }
    // Inclusion-exclusion: P(U_j > a_j, j in K) = sum over subsets J of K of
    // (-1)^|J| C(a on J, 1 elsewhere), with a_j = 1 + y_j.
    std::vector<double> u(c.dim(), 1.0);
    double total = 0.0;
    const std::size_t subsets = std::size_t{1} << k.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
        for (std::size_t b = 0; b < k.size(); ++b) {
            u[k[b]] = (mask >> b) & 1 ? 1.0 + y[k[b]] : 1.0;
        }
        int sign = __builtin_popcountll(mask) % 2 == 0 ? 1 : -1;
        total += sign * copula_cdf(c, u);
        for (std::size_t b = 0; b < k.size(); ++b) u[k[b]] = 1.0;
    }
    return total;
}

double pt_scaling_b(const CopulaModel& c, std::span<const double> y,
                    std::span<const std::size_t> k, std::size_t i) {
    if (!(y[i] < 0.0)) throw std::invalid_argument("pt_scaling_b: y_i must be negative");
    return joint_survival_base(c, y, k) / -y[i];
}

}  // namespace ptrisk
