#include "ptrisk/copulas.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ptrisk/errors.hpp"
#include "ptrisk/special_functions.hpp"

namespace ptrisk {

const char* copula_family_name(CopulaFamily f) {
    switch (f) {
        case CopulaFamily::Independence: return "independence";
        case CopulaFamily::Gaussian: return "gaussian";
        case CopulaFamily::StudentT: return "t";
        case CopulaFamily::Clayton: return "clayton";
        case CopulaFamily::Frank: return "frank";
        case CopulaFamily::Gumbel: return "gumbel";
    }
    return "?";
}

namespace {

void validate_corr(const Matrix& corr) {
    const std::size_t m = corr.rows();
    if (m < 2 || corr.cols() != m) {
        throw std::invalid_argument("CopulaModel: correlation matrix must be square, dim >= 2");
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (std::fabs(corr(i, i) - 1.0) > 1e-12) {
            throw std::invalid_argument("CopulaModel: correlation matrix must have unit diagonal");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (std::fabs(corr(i, j) - corr(j, i)) > 1e-12) {
                throw std::invalid_argument("CopulaModel: correlation matrix must be symmetric");
            }
        }
    }
}

Matrix equicorrelation(std::size_t dim, double rho) {
    if (!(rho >= 0.0 && rho < 1.0)) {
        throw std::invalid_argument("CopulaModel: rho must lie in [0,1)");
    }
    Matrix corr(dim, dim, rho);
    for (std::size_t i = 0; i < dim; ++i) corr(i, i) = 1.0;
    return corr;
}

void check_dim(std::size_t dim) {
    if (dim < 2) throw std::invalid_argument("CopulaModel: dim must be >= 2");
}

}  // namespace

CopulaModel CopulaModel::independence(std::size_t dim) {
    check_dim(dim);
    return CopulaModel(CopulaFamily::Independence, dim);
}

CopulaModel CopulaModel::gaussian(Matrix corr) {
    validate_corr(corr);
    CopulaModel c(CopulaFamily::Gaussian, corr.rows());
    c.chol_ = cholesky_lower(corr);  // rejects non-positive-definite input
    c.corr_ = std::move(corr);
    return c;
}

CopulaModel CopulaModel::gaussian(std::size_t dim, double rho) {
    check_dim(dim);
    return gaussian(equicorrelation(dim, rho));
}

CopulaModel CopulaModel::student_t(Matrix corr, double nu) {
    if (!(nu > 0.0)) throw std::invalid_argument("CopulaModel: degrees of freedom nu must be > 0");
    validate_corr(corr);
    CopulaModel c(CopulaFamily::StudentT, corr.rows());
    c.chol_ = cholesky_lower(corr);
    c.corr_ = std::move(corr);
    c.nu_ = nu;
    return c;
}

CopulaModel CopulaModel::student_t(std::size_t dim, double rho, double nu) {
    check_dim(dim);
    return student_t(equicorrelation(dim, rho), nu);
}

CopulaModel CopulaModel::clayton(std::size_t dim, double theta) {
    check_dim(dim);
    if (!(theta > 0.0)) throw std::invalid_argument("CopulaModel: Clayton theta must be > 0");
    CopulaModel c(CopulaFamily::Clayton, dim);
    c.theta_ = theta;
    return c;
}

CopulaModel CopulaModel::frank(std::size_t dim, double theta) {
    check_dim(dim);
    if (!(theta > 0.0)) throw std::invalid_argument("CopulaModel: Frank theta must be > 0");
    CopulaModel c(CopulaFamily::Frank, dim);
    c.theta_ = theta;
    return c;
}

CopulaModel CopulaModel::gumbel(std::size_t dim, double lambda) {
    check_dim(dim);
    if (!(lambda >= 1.0)) throw std::invalid_argument("CopulaModel: Gumbel lambda must be >= 1");
    CopulaModel c(CopulaFamily::Gumbel, dim);
    c.theta_ = lambda;
    return c;
}

bool CopulaModel::has_closed_form_cdf() const {
    return family_ != CopulaFamily::Gaussian && family_ != CopulaFamily::StudentT;
}

namespace {

double exp1(Rng& rng) { return -std::log(rng.uniform()); }

// Positive stable variate with index a in (0,1), Laplace transform exp(-t^a);
// Chambers-Mallows-Stuck construction.
double positive_stable(double a, Rng& rng) {
    double theta = std::numbers::pi * rng.uniform();
    double w = exp1(rng);
    double s = std::sin(a * theta) / std::pow(std::sin(theta), 1.0 / a) *
               std::pow(std::sin((1.0 - a) * theta) / w, (1.0 - a) / a);
    return s;
}

// Logarithmic-series variate on {1,2,...} with parameter p in (0,1),
// P(K = k) = p^k / (-k log(1-p)); Kemp's O(1) algorithm.
long logarithmic_series(double p, Rng& rng) {
    double u1 = rng.uniform();
    if (u1 > p) return 1;
    double q = -std::expm1(rng.uniform() * std::log1p(-p));  // 1 - (1-p)^U
    if (u1 < q * q) {
        long k = static_cast<long>(1.0 + std::log(u1) / std::log(q));
        return k < 1 ? 1 : k;
    }
    return u1 > q ? 1 : 2;
}

void sample_elliptical_row(const CopulaModel& c, const Matrix& chol, std::span<double> out,
                           Rng& rng) {
    const std::size_t m = c.dim();
    std::vector<double> z(m);
    for (std::size_t i = 0; i < m; ++i) z[i] = rng.normal();
    double scale = 1.0;
    if (c.family() == CopulaFamily::StudentT) {
        std::gamma_distribution<double> chi2(0.5 * c.nu(), 2.0);
        scale = std::sqrt(chi2(rng.engine()) / c.nu());
    }
    for (std::size_t i = 0; i < m; ++i) {
        double x = 0.0;
        for (std::size_t k = 0; k <= i; ++k) x += chol(i, k) * z[k];
        x /= scale;
        out[i] = c.family() == CopulaFamily::StudentT ? student_t_cdf(x, c.nu())
                                                      : std_normal_cdf(x);
    }
}

void sample_archimedean_row(const CopulaModel& c, std::span<double> out, Rng& rng) {
    const std::size_t m = c.dim();
    switch (c.family()) {
        case CopulaFamily::Clayton: {
            std::gamma_distribution<double> gamma(1.0 / c.theta(), 1.0);
            double frailty = gamma(rng.engine());
            for (std::size_t i = 0; i < m; ++i) {
                out[i] = std::pow(1.0 + exp1(rng) / frailty, -1.0 / c.theta());
            }
            break;
        }
        case CopulaFamily::Frank: {
            double p = -std::expm1(-c.theta());  // 1 - e^-theta
            double frailty = static_cast<double>(logarithmic_series(p, rng));
            for (std::size_t i = 0; i < m; ++i) {
                double t = exp1(rng) / frailty;
                out[i] = -std::log1p(-p * std::exp(-t)) / c.theta();
            }
            break;
        }
        case CopulaFamily::Gumbel: {
            if (c.theta() == 1.0) {  // degenerates to independence
                for (std::size_t i = 0; i < m; ++i) out[i] = rng.uniform();
                break;
            }
            double frailty = positive_stable(1.0 / c.theta(), rng);
            for (std::size_t i = 0; i < m; ++i) {
                out[i] = std::exp(-std::pow(exp1(rng) / frailty, 1.0 / c.theta()));
            }
            break;
        }
        default:
            for (std::size_t i = 0; i < m; ++i) out[i] = rng.uniform();
            break;
    }
}

}  // namespace

Matrix sample_copula(const CopulaModel& c, std::size_t n, Rng& rng) {
    Matrix out(n, c.dim());
    const bool elliptical =
        c.family() == CopulaFamily::Gaussian || c.family() == CopulaFamily::StudentT;
    for (std::size_t row = 0; row < n; ++row) {
        if (elliptical) {
            sample_elliptical_row(c, c.chol_, out.row(row), rng);
        } else {
            sample_archimedean_row(c, out.row(row), rng);
        }
    }
    return out;
}

double copula_cdf(const CopulaModel& c, std::span<const double> u) {
    if (u.size() != c.dim()) {
        throw std::invalid_argument("copula_cdf: argument dimension mismatch");
    }
    if (!c.has_closed_form_cdf()) {
        throw UnsupportedOperationError(
            "copula_cdf: no closed form for the " + std::string(copula_family_name(c.family())) +
            " copula; evaluate an empirical CDF from sample_copula instead");
    }
    for (double v : u) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::domain_error("copula_cdf: coordinates must lie in [0,1]");
        }
        if (v == 0.0) return 0.0;  // grounded
    }
    const std::size_t m = c.dim();
    switch (c.family()) {
        case CopulaFamily::Independence: {
            double prod = 1.0;
            for (double v : u) prod *= v;
            return prod;
        }
        case CopulaFamily::Clayton: {
            double s = 0.0;
            for (double v : u) s += std::pow(v, -c.theta()) - 1.0;
            return std::pow(1.0 + s, -1.0 / c.theta());
        }
        case CopulaFamily::Frank: {
            // C(u) = -log(1 + prod(e^{-theta u_i}-1) / (e^{-theta}-1)^{m-1}) / theta
            double ratio = 1.0;
            double denom = std::expm1(-c.theta());
            for (double v : u) ratio *= std::expm1(-c.theta() * v);
            for (std::size_t i = 0; i + 1 < m; ++i) ratio /= denom;
            return -std::log1p(ratio) / c.theta();
        }
        case CopulaFamily::Gumbel: {
            double s = 0.0;
            for (double v : u) s += std::pow(-std::log(v), c.theta());
            return std::exp(-std::pow(s, 1.0 / c.theta()));
        }
        default:
            break;
    }
    throw UnsupportedOperationError("copula_cdf: unhandled family");
}

double empirical_chi(const Matrix& samples, std::size_t i, std::size_t j, double u) {
    if (i >= samples.cols() || j >= samples.cols()) {
        throw std::invalid_argument("empirical_chi: column index out of range");
    }
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error("empirical_chi: level u must lie in (0,1)");
    std::size_t n_j = 0, n_both = 0;
    for (std::size_t r = 0; r < samples.rows(); ++r) {
        if (samples(r, j) > u) {
            ++n_j;
            if (samples(r, i) > u) ++n_both;
        }
    }
    if (n_j < 50) {
        throw InsufficientDataError("empirical_chi: only " + std::to_string(n_j) +
                                    " exceedances of level " + std::to_string(u) +
                                    " in the conditioning column; need at least 50");
    }
    return static_cast<double>(n_both) / static_cast<double>(n_j);
}

double stdf_estimate(const CopulaCdfFn& cdf, std::span<const double> x, double t) {
    if (!(t > 0.0 && t <= 0.1)) {
        throw std::domain_error("stdf_estimate: t must lie in (0, 0.1]");
    }
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0.0) throw std::domain_error("stdf_estimate: x must be componentwise <= 0");
        y[i] = 1.0 + t * x[i];
        if (!(y[i] >= 0.0 && y[i] <= 1.0)) {
            throw std::domain_error("stdf_estimate: 1 + t*x leaves the unit cube");
        }
    }
    return (1.0 - cdf(y)) / t;
}

double stdf_estimate(const CopulaModel& c, std::span<const double> x, double t) {
    return stdf_estimate([&c](std::span<const double> u) { return copula_cdf(c, u); }, x, t);
}

}  // namespace ptrisk
