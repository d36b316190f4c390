// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace sce {

/// Observed records of a study with noncompliance: outcome y, binary
/// assignment z (the instrument), binary treatment status s, and an n x p
/// covariate matrix (p may be 0). Immutable after construction by
/// convention; safe to share read-only across threads.
struct Dataset {
  Eigen::VectorXd y;
  Eigen::VectorXd z;
  Eigen::VectorXd s;
  Eigen::MatrixXd x;
  std::vector<std::string> x_names;  // optional; size p when present

  Eigen::Index n() const { return y.size(); }
  Eigen::Index p() const { return x.cols(); }
};

/// Cell counts by (assignment, treatment status) plus the plug-in
/// compliance probability n11/n1 shared by every estimator that needs it.
struct StrataCounts {
  long n = 0;
  long n0 = 0, n1 = 0;
  long n00 = 0, n01 = 0, n10 = 0, n11 = 0;
  double pi_c_hat = 0.0;
  // Units with z=0, s=1. A warning, not an error: IV and TSLS remain
  // defined when always-takers are present.
  long monotonicity_violations = 0;
};

/// Counts only; assumes z and s are already known to be binary.
StrataCounts tabulate(const Dataset& data);

/// Full validation: throws EmptyDataset, DimensionMismatch,
/// NonBinaryColumn, NonFiniteValue, or DegenerateArm.
StrataCounts validate(const Dataset& data);

/// Row-gather (used by bootstrap resampling and splitting).
Dataset take_rows(const Dataset& data, const std::vector<int>& rows);

/// Bitwise equality of all numeric content.
bool datasets_equal(const Dataset& a, const Dataset& b);

}  // namespace sce
