#pragma once

namespace ptrisk {

/// Standard normal CDF, accurate to machine precision via erfc.
double std_normal_cdf(double x);

/// Standard normal quantile. Rational approximation refined with one Halley
/// step against the erfc-based CDF; absolute error below 1e-14 on (0,1).
/// Throws std::domain_error outside (0,1).
double std_normal_quantile(double p);

/// Regularized incomplete beta function I_x(a,b), a,b > 0, x in [0,1].
double regularized_incomplete_beta(double a, double b, double x);

/// CDF of Student's t with (possibly non-integer) nu > 0 degrees of freedom.
double student_t_cdf(double x, double nu);

}  // namespace ptrisk
