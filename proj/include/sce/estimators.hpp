// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "sce/dataset.hpp"
#include "sce/regression.hpp"

namespace sce {

enum class EstimatorId { IV, TSLS, PP, AT, PS, APS, IV_STRAT, AT_STRAT, PP_STRAT };

enum class FirstStage { LeastSquares, Logit };
enum class ScoreFamily { Logit, LeastSquares };

std::string estimator_label(EstimatorId id);
EstimatorId parse_estimator_id(const std::string& label);

struct EstimatorSpec {
  EstimatorId id = EstimatorId::TSLS;
  bool reference = false;
  int strata = 5;                                       // *_STRAT only
  FirstStage first_stage = FirstStage::LeastSquares;    // TSLS only
};

using Registry = std::vector<EstimatorSpec>;

/// Exactly one reference, at least one candidate, at most 10 candidates
/// (keeps the weight solver's active-set enumeration bounded), strata >= 2
/// for stratified entries.
void validate_registry(const Registry& registry);

/// Default registry: TSLS reference plus all eight other candidates.
Registry default_registry();

/// The evaluated candidate vector: reference first, then candidates in
/// registry order. Candidates that errored are dropped and recorded.
struct CandidateEstimates {
  double theta0 = 0.0;
  Eigen::VectorXd theta1;
  std::string reference_id;
  std::vector<std::string> ids;                           // surviving candidates
  std::vector<std::pair<std::string, std::string>> dropped;  // (id, reason)

  Eigen::Index k() const { return theta1.size(); }
};

/// Compliance-score model e(x) = P(complier | x), fit on the z=1 arm where
/// compliance is observed under strong monotonicity.
struct ScoreFit {
  ScoreFamily family = ScoreFamily::Logit;
  Eigen::VectorXd coefficients;  // (intercept, covariates)
  bool converged = true;
  /// Clipped probabilities for raw covariate rows (n x p).
  Eigen::VectorXd predict(const Eigen::MatrixXd& covariates) const;
};

ScoreFit fit_score_model(const Dataset& data, const StrataCounts& counts,
                         ScoreFamily family = ScoreFamily::Logit);

// Individual candidate estimators of the complier average causal effect.
double est_iv(const Dataset& data, const StrataCounts& counts);
double est_tsls(const Dataset& data, FirstStage first_stage = FirstStage::LeastSquares);
double est_pp(const Dataset& data);
double est_at(const Dataset& data);
double est_ps(const Dataset& data, const StrataCounts& counts, const ScoreFit& score);
double est_aps(const Dataset& data, const StrataCounts& counts, const ScoreFit& score);

/// Base estimator (IV, AT, or PP) computed within score quantile strata and
/// averaged over the strata that admit it. Degenerate strata are skipped;
/// throws AllStrataDegenerate when none remain.
double est_stratified(const Dataset& data, EstimatorId base, const ScoreFit& score,
                      int strata);

/// Evaluates the whole registry. A failing candidate is dropped with a
/// reason; a failing reference is fatal (ReferenceFailed).
CandidateEstimates estimate_all(const Dataset& data, const Registry& registry,
                                ScoreFamily score_family = ScoreFamily::Logit);

/// Closed-form variances of the weighting and IV estimators under the
/// constant-effect toy outcome model; test oracle only.
struct ToyVariances {
  double var_ps = 0.0;
  double var_iv = 0.0;
};
ToyVariances analytic_variances_toy(double sigma2, const StrataCounts& counts,
                                    const Eigen::VectorXd& e_hat_control);

}  // namespace sce
