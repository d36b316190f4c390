// SPDX-License-Identifier: Apache-2.0
#include "sce/regression.hpp"

#include <algorithm>
#include <cmath>

#include "sce/error.hpp"

namespace sce {

namespace {

constexpr double kRankTolerance = 1e-10;
constexpr double kProbClip = 1e-6;
// Linear predictors beyond this are saturated; a converged gradient out
// here means separation, not a genuine MLE.
constexpr double kStableLp = 30.0;
constexpr double kDivergedLp = 50.0;

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

}  // namespace

LinearFit ols(const Eigen::MatrixXd& design, const Eigen::VectorXd& response,
              std::vector<std::string> column_names) {
  if (design.rows() != response.size()) {
    raise(ErrorCode::DimensionMismatch,
          "design has " + std::to_string(design.rows()) + " rows, response has " +
              std::to_string(response.size()));
  }
  if (design.rows() < design.cols()) {
    raise(ErrorCode::RankDeficient, "fewer rows than columns (" +
                                        std::to_string(design.rows()) + " < " +
                                        std::to_string(design.cols()) + ")");
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
  qr.setThreshold(kRankTolerance);
  qr.compute(design);
  if (qr.rank() < design.cols()) {
    raise(ErrorCode::RankDeficient, "design rank " + std::to_string(qr.rank()) +
                                        " < " + std::to_string(design.cols()) + " columns");
  }
  LinearFit fit;
  fit.coefficients = qr.solve(response);
  fit.residuals = response - design * fit.coefficients;
  fit.column_names = std::move(column_names);
  return fit;
}

LogisticFit logistic(const Eigen::MatrixXd& design, const Eigen::VectorXd& response,
                     int max_iter, double tol) {
  const Eigen::Index n = design.rows();
  const Eigen::Index p = design.cols();
  if (response.size() != n) {
    raise(ErrorCode::DimensionMismatch, "design/response row mismatch");
  }
  bool has0 = false, has1 = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (response[i] == 0.0) {
      has0 = true;
    } else if (response[i] == 1.0) {
      has1 = true;
    } else {
      raise(ErrorCode::InvalidArgument, "logistic response must be 0 or 1");
    }
  }
  if (!has0 || !has1) {
    raise(ErrorCode::AllSameResponse, "response is constant; score model undefined");
  }

  LogisticFit fit;
  fit.coefficients = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd lp = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd prob(n), sw(n), rhs(n);
  Eigen::MatrixXd weighted(n, p);

  for (int iter = 0; iter < max_iter; ++iter) {
    fit.iterations = iter + 1;
    for (Eigen::Index i = 0; i < n; ++i) prob[i] = sigmoid(lp[i]);
    const Eigen::VectorXd grad = design.transpose() * (response - prob);
    if (grad.lpNorm<Eigen::Infinity>() < tol) {
      fit.converged = lp.lpNorm<Eigen::Infinity>() < kStableLp;
      return fit;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      const double w = std::max(prob[i] * (1.0 - prob[i]), 1e-10);
      sw[i] = std::sqrt(w);
      rhs[i] = (response[i] - prob[i]) / sw[i];
    }
    weighted = sw.asDiagonal() * design;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
    qr.setThreshold(kRankTolerance);
    qr.compute(weighted);
    if (qr.rank() < p) {
      raise(ErrorCode::RankDeficient, "weighted design is rank-deficient");
    }
    const Eigen::VectorXd step = qr.solve(rhs);
    const Eigen::VectorXd candidate = fit.coefficients + step;
    const Eigen::VectorXd lp_candidate = design * candidate;
    if (!candidate.allFinite() || lp_candidate.lpNorm<Eigen::Infinity>() > kDivergedLp) {
      fit.converged = false;  // separation: keep the last stable iterate
      return fit;
    }
    fit.coefficients = candidate;
    lp = lp_candidate;
  }
  fit.converged = false;
  return fit;
}

Eigen::VectorXd predict_prob(const LogisticFit& fit, const Eigen::MatrixXd& design) {
  if (design.cols() != fit.coefficients.size()) {
    raise(ErrorCode::DimensionMismatch, "design has " + std::to_string(design.cols()) +
                                            " columns, fit expects " +
                                            std::to_string(fit.coefficients.size()));
  }
  Eigen::VectorXd lp = design * fit.coefficients;
  Eigen::VectorXd out(lp.size());
  for (Eigen::Index i = 0; i < lp.size(); ++i) {
    out[i] = std::clamp(sigmoid(lp[i]), kProbClip, 1.0 - kProbClip);
  }
  return out;
}

}  // namespace sce
