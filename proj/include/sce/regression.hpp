// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace sce {

struct LinearFit {
  Eigen::VectorXd coefficients;  // design-column order (intercept first by convention)
  Eigen::VectorXd residuals;
  std::vector<std::string> column_names;
};

struct LogisticFit {
  Eigen::VectorXd coefficients;
  bool converged = false;
  int iterations = 0;
};

/// Least squares via column-pivoted Householder QR (never normal
/// equations). Rank checked at relative tolerance 1e-10; near-collinear
/// subgroup designs under small strata are expected callers.
LinearFit ols(const Eigen::MatrixXd& design, const Eigen::VectorXd& response,
              std::vector<std::string> column_names = {});

/// Logistic regression by iteratively reweighted least squares. Stops when
/// the log-likelihood gradient sup-norm drops below tol. Separation does
/// not throw: the fit comes back converged=false with the last stable
/// iterate, so a long resampling loop is never aborted by one bad draw.
LogisticFit logistic(const Eigen::MatrixXd& design, const Eigen::VectorXd& response,
                     int max_iter = 100, double tol = 1e-8);

/// Inverse-logit predictions, clipped to [1e-6, 1 - 1e-6] because callers
/// divide by these values.
Eigen::VectorXd predict_prob(const LogisticFit& fit, const Eigen::MatrixXd& design);

}  // namespace sce
