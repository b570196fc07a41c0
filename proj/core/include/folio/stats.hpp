#pragma once

#include <Eigen/Dense>
#include <span>

namespace folio {

double mean(std::span<const double> xs);

/// Sample standard deviation with the 1/(T-1) normalization.
double sample_stdev(std::span<const double> xs);

/// Column-wise sample means of a T x N observation matrix.
Eigen::VectorXd sample_means(const Eigen::MatrixXd& observations);

/// Sample covariance with the 1/(T-1) normalization.
Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& observations);

/// Standard normal quantile (inverse CDF), accurate to ~1e-9 relative.
double normal_quantile(double p);

} // namespace folio
