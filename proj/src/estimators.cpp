// SPDX-License-Identifier: Apache-2.0
#include "sce/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "sce/error.hpp"

namespace sce {

namespace {

constexpr double kProbClip = 1e-6;
constexpr double kWeakFirstStage = 1e-10;
constexpr int kMaxCandidates = 10;

// [1 | focal | x]
Eigen::MatrixXd design_with(const Eigen::VectorXd& focal, const Eigen::MatrixXd& x) {
  Eigen::MatrixXd d(focal.size(), 2 + x.cols());
  d.col(0).setOnes();
  d.col(1) = focal;
  if (x.cols() > 0) d.rightCols(x.cols()) = x;
  return d;
}

// [1 | x]
Eigen::MatrixXd design_intercept(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd d(x.rows(), 1 + x.cols());
  d.col(0).setOnes();
  if (x.cols() > 0) d.rightCols(x.cols()) = x;
  return d;
}

std::vector<int> rows_where(const Dataset& data, bool (*pred)(double, double)) {
  std::vector<int> rows;
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    if (pred(data.z[i], data.s[i])) rows.push_back(static_cast<int>(i));
  }
  return rows;
}

}  // namespace

std::string estimator_label(EstimatorId id) {
  switch (id) {
    case EstimatorId::IV: return "iv";
    case EstimatorId::TSLS: return "tsls";
    case EstimatorId::PP: return "pp";
    case EstimatorId::AT: return "at";
    case EstimatorId::PS: return "ps";
    case EstimatorId::APS: return "aps";
    case EstimatorId::IV_STRAT: return "iv_strat";
    case EstimatorId::AT_STRAT: return "at_strat";
    case EstimatorId::PP_STRAT: return "pp_strat";
  }
  return "?";
}

EstimatorId parse_estimator_id(const std::string& label) {
  for (EstimatorId id : {EstimatorId::IV, EstimatorId::TSLS, EstimatorId::PP,
                         EstimatorId::AT, EstimatorId::PS, EstimatorId::APS,
                         EstimatorId::IV_STRAT, EstimatorId::AT_STRAT,
                         EstimatorId::PP_STRAT}) {
    if (estimator_label(id) == label) return id;
  }
  raise(ErrorCode::InvalidArgument, "unknown estimator id '" + label + "'");
}

void validate_registry(const Registry& registry) {
  if (registry.empty()) raise(ErrorCode::InvalidArgument, "registry is empty");
  int refs = 0;
  int candidates = 0;
  for (const EstimatorSpec& spec : registry) {
    spec.reference ? ++refs : ++candidates;
    const bool stratified = spec.id == EstimatorId::IV_STRAT ||
                            spec.id == EstimatorId::AT_STRAT ||
                            spec.id == EstimatorId::PP_STRAT;
    if (stratified && spec.strata < 2) {
      raise(ErrorCode::InvalidArgument,
            "stratified estimator '" + estimator_label(spec.id) + "' needs strata >= 2");
    }
  }
  if (refs != 1) {
    raise(ErrorCode::InvalidArgument,
          "registry must contain exactly one reference (found " + std::to_string(refs) + ")");
  }
  if (candidates < 1) raise(ErrorCode::InvalidArgument, "registry has no candidates");
  if (candidates > kMaxCandidates) {
    raise(ErrorCode::InvalidArgument,
          "registry capped at " + std::to_string(kMaxCandidates) + " candidates");
  }
}

Registry default_registry() {
  Registry r;
  r.push_back({EstimatorId::TSLS, true, 5, FirstStage::LeastSquares});
  for (EstimatorId id : {EstimatorId::IV, EstimatorId::AT, EstimatorId::PP,
                         EstimatorId::PS, EstimatorId::APS, EstimatorId::IV_STRAT,
                         EstimatorId::AT_STRAT, EstimatorId::PP_STRAT}) {
    r.push_back({id, false, 5, FirstStage::LeastSquares});
  }
  return r;
}

Eigen::VectorXd ScoreFit::predict(const Eigen::MatrixXd& covariates) const {
  if (covariates.cols() + 1 != coefficients.size()) {
    raise(ErrorCode::DimensionMismatch, "score model expects " +
                                            std::to_string(coefficients.size() - 1) +
                                            " covariates");
  }
  Eigen::VectorXd lp =
      Eigen::VectorXd::Constant(covariates.rows(), coefficients[0]);
  if (covariates.cols() > 0) lp += covariates * coefficients.tail(coefficients.size() - 1);
  Eigen::VectorXd out(lp.size());
  for (Eigen::Index i = 0; i < lp.size(); ++i) {
    double v;
    if (family == ScoreFamily::Logit) {
      v = lp[i] >= 0.0 ? 1.0 / (1.0 + std::exp(-lp[i]))
                       : std::exp(lp[i]) / (1.0 + std::exp(lp[i]));
    } else {
      v = lp[i];
    }
    out[i] = std::clamp(v, kProbClip, 1.0 - kProbClip);
  }
  return out;
}

ScoreFit fit_score_model(const Dataset& data, const StrataCounts& counts,
                         ScoreFamily family) {
  if (counts.n1 == 0) raise(ErrorCode::DegenerateArm, "no z=1 units to fit the score model");
  const std::vector<int> treated_arm =
      rows_where(data, [](double z, double) { return z == 1.0; });
  const Dataset arm = take_rows(data, treated_arm);
  const Eigen::MatrixXd design = design_intercept(arm.x);

  ScoreFit fit;
  fit.family = family;
  if (family == ScoreFamily::Logit) {
    const LogisticFit lf = logistic(design, arm.s);
    fit.coefficients = lf.coefficients;
    fit.converged = lf.converged;
  } else {
    bool has0 = (arm.s.array() == 0.0).any();
    bool has1 = (arm.s.array() == 1.0).any();
    if (!has0 || !has1) raise(ErrorCode::AllSameResponse, "treatment status constant in z=1 arm");
    fit.coefficients = ols(design, arm.s).coefficients;
  }
  return fit;
}

double est_iv(const Dataset& data, const StrataCounts& counts) {
  if (counts.n0 == 0 || counts.n1 == 0) {
    raise(ErrorCode::DegenerateArm, counts.n0 == 0 ? "no z=0 units" : "no z=1 units");
  }
  if (counts.n11 == 0) raise(ErrorCode::ZeroCompliance, "no treated units in the z=1 arm");
  double sum1 = 0.0, sum0 = 0.0;
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    (data.z[i] == 1.0 ? sum1 : sum0) += data.y[i];
  }
  const double itt = sum1 / static_cast<double>(counts.n1) -
                     sum0 / static_cast<double>(counts.n0);
  return itt / counts.pi_c_hat;
}

double est_tsls(const Dataset& data, FirstStage first_stage) {
  const Eigen::MatrixXd stage1 = design_with(data.z, data.x);
  Eigen::VectorXd fitted;
  double z_coef;
  if (first_stage == FirstStage::LeastSquares) {
    const LinearFit f1 = ols(stage1, data.s);
    z_coef = f1.coefficients[1];
    fitted = stage1 * f1.coefficients;
  } else {
    const LogisticFit f1 = logistic(stage1, data.s);
    z_coef = f1.coefficients[1];
    fitted = predict_prob(f1, stage1);
  }
  if (std::abs(z_coef) < kWeakFirstStage) {
    raise(ErrorCode::WeakFirstStage, "first-stage coefficient on z is ~0");
  }
  const LinearFit f2 = ols(design_with(fitted, data.x), data.y);
  return f2.coefficients[1];
}

double est_pp(const Dataset& data) {
  const std::vector<int> rows = rows_where(data, [](double z, double s) { return z == s; });
  const Dataset sub = take_rows(data, rows);
  const bool has0 = (sub.s.array() == 0.0).any();
  const bool has1 = (sub.s.array() == 1.0).any();
  if (rows.empty() || !has0 || !has1) {
    raise(ErrorCode::EmptySubgroup, "observed compliers lack both treatment statuses");
  }
  return ols(design_with(sub.s, sub.x), sub.y).coefficients[1];
}

double est_at(const Dataset& data) {
  return ols(design_with(data.s, data.x), data.y).coefficients[1];
}

double est_ps(const Dataset& data, const StrataCounts& counts, const ScoreFit& score) {
  if (counts.n11 == 0) raise(ErrorCode::ZeroCompliance, "pi_c_hat = 0");
  if (counts.n0 == 0) raise(ErrorCode::EmptySubgroup, "no z=0 units");
  const Eigen::VectorXd e_hat = score.predict(data.x);
  double treated = 0.0, weighted_control = 0.0;
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    if (data.z[i] == 1.0 && data.s[i] == 1.0) {
      treated += data.y[i];
    } else if (data.z[i] == 0.0) {
      weighted_control += data.y[i] * e_hat[i] / counts.pi_c_hat;
    }
  }
  return treated / static_cast<double>(counts.n11) -
         weighted_control / static_cast<double>(counts.n0);
}

double est_aps(const Dataset& data, const StrataCounts& counts, const ScoreFit& score) {
  if (counts.n11 == 0) raise(ErrorCode::ZeroCompliance, "pi_c_hat = 0");
  if (counts.n0 == 0) raise(ErrorCode::EmptySubgroup, "no z=0 units");
  const Eigen::Index p = data.p();

  const std::vector<int> treated =
      rows_where(data, [](double z, double s) { return z == 1.0 && s == 1.0; });
  const std::vector<int> control =
      rows_where(data, [](double z, double) { return z == 0.0; });

  const Dataset sub1 = take_rows(data, treated);
  const Dataset sub0 = take_rows(data, control);
  // Covariate slopes from the two subgroup outcome regressions; with p=0
  // the correction terms vanish and APS reduces to PS.
  Eigen::VectorXd beta1 = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd beta0 = Eigen::VectorXd::Zero(p);
  if (p > 0) {
    beta1 = ols(design_intercept(sub1.x), sub1.y).coefficients.tail(p);
    beta0 = ols(design_intercept(sub0.x), sub0.y).coefficients.tail(p);
  }

  const Eigen::VectorXd e_hat = score.predict(data.x);
  double term1 = 0.0, term2 = 0.0, term3 = 0.0;
  for (int r : treated) {
    const double adj = p > 0 ? data.x.row(r).dot(beta1) : 0.0;
    term1 += data.y[r] - adj;
  }
  for (int r : control) {
    const double adj = p > 0 ? data.x.row(r).dot(beta0) : 0.0;
    term2 += (data.y[r] - adj) * e_hat[r] / counts.pi_c_hat;
  }
  if (p > 0) {
    const Eigen::VectorXd delta = beta1 - beta0;
    for (int r : treated) term3 += data.x.row(r).dot(delta) * e_hat[r] / counts.pi_c_hat;
    for (int r : control) term3 += data.x.row(r).dot(delta) * e_hat[r] / counts.pi_c_hat;
  }
  return term1 / static_cast<double>(counts.n11) -
         term2 / static_cast<double>(counts.n0) +
         term3 / static_cast<double>(counts.n0 + counts.n11);
}

double est_stratified(const Dataset& data, EstimatorId base, const ScoreFit& score,
                      int strata) {
  if (base != EstimatorId::IV && base != EstimatorId::AT && base != EstimatorId::PP) {
    raise(ErrorCode::InvalidArgument, "stratified base must be iv, at, or pp");
  }
  if (strata < 1) raise(ErrorCode::InvalidArgument, "strata must be >= 1");
  const Eigen::Index n = data.n();
  const Eigen::VectorXd e_hat = score.predict(data.x);

  // Empirical-quantile breakpoints; tied values collapse into the lower
  // stratum so a constant score yields a single effective stratum.
  std::vector<double> sorted(e_hat.data(), e_hat.data() + n);
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> breaks;
  for (int j = 1; j < strata; ++j) {
    const std::size_t idx =
        (static_cast<std::size_t>(j) * static_cast<std::size_t>(n) +
         static_cast<std::size_t>(strata) - 1) / static_cast<std::size_t>(strata);
    breaks.push_back(sorted[idx - 1]);
  }

  std::vector<std::vector<int>> groups(static_cast<std::size_t>(strata));
  for (Eigen::Index i = 0; i < n; ++i) {
    std::size_t g = 0;
    for (double b : breaks) {
      if (e_hat[i] > b) ++g;
    }
    groups[g].push_back(static_cast<int>(i));
  }

  double sum = 0.0;
  int valid = 0;
  for (const std::vector<int>& rows : groups) {
    if (rows.empty()) continue;
    const Dataset sub = take_rows(data, rows);
    try {
      double value;
      switch (base) {
        case EstimatorId::IV: value = est_iv(sub, tabulate(sub)); break;
        case EstimatorId::AT: value = est_at(sub); break;
        default: value = est_pp(sub); break;
      }
      if (!std::isfinite(value)) continue;
      sum += value;
      ++valid;
    } catch (const Error&) {
      // stratum does not admit the base estimator; skip it
    }
  }
  if (valid == 0) {
    raise(ErrorCode::AllStrataDegenerate,
          "no stratum admits the base estimator '" + estimator_label(base) + "'");
  }
  return sum / static_cast<double>(valid);
}

CandidateEstimates estimate_all(const Dataset& data, const Registry& registry,
                                ScoreFamily score_family) {
  validate_registry(registry);
  const StrataCounts counts = validate(data);

  const bool needs_score = std::any_of(registry.begin(), registry.end(), [](const auto& s) {
    return s.id == EstimatorId::PS || s.id == EstimatorId::APS ||
           s.id == EstimatorId::IV_STRAT || s.id == EstimatorId::AT_STRAT ||
           s.id == EstimatorId::PP_STRAT;
  });
  ScoreFit score;
  std::unique_ptr<Error> score_failure;
  if (needs_score) {
    try {
      score = fit_score_model(data, counts, score_family);
    } catch (const Error& e) {
      score_failure = std::make_unique<Error>(e);
    }
  }

  auto evaluate = [&](const EstimatorSpec& spec) -> double {
    auto need_score = [&]() {
      if (score_failure) throw *score_failure;
    };
    switch (spec.id) {
      case EstimatorId::IV: return est_iv(data, counts);
      case EstimatorId::TSLS: return est_tsls(data, spec.first_stage);
      case EstimatorId::PP: return est_pp(data);
      case EstimatorId::AT: return est_at(data);
      case EstimatorId::PS: need_score(); return est_ps(data, counts, score);
      case EstimatorId::APS: need_score(); return est_aps(data, counts, score);
      case EstimatorId::IV_STRAT:
        need_score();
        return est_stratified(data, EstimatorId::IV, score, spec.strata);
      case EstimatorId::AT_STRAT:
        need_score();
        return est_stratified(data, EstimatorId::AT, score, spec.strata);
      case EstimatorId::PP_STRAT:
        need_score();
        return est_stratified(data, EstimatorId::PP, score, spec.strata);
    }
    raise(ErrorCode::InvalidArgument, "unknown estimator id");
  };

  CandidateEstimates out;
  std::vector<double> values;
  for (const EstimatorSpec& spec : registry) {
    const std::string label = estimator_label(spec.id);
    if (spec.reference) {
      try {
        out.theta0 = evaluate(spec);
        if (!std::isfinite(out.theta0)) {
          raise(ErrorCode::NumericalFailure, "non-finite estimate");
        }
        out.reference_id = label;
      } catch (const Error& e) {
        raise(ErrorCode::ReferenceFailed,
              "reference '" + label + "' failed: " + e.what());
      }
    } else {
      try {
        const double v = evaluate(spec);
        if (!std::isfinite(v)) raise(ErrorCode::NumericalFailure, "non-finite estimate");
        values.push_back(v);
        out.ids.push_back(label);
      } catch (const Error& e) {
        out.dropped.emplace_back(label, e.what());
      }
    }
  }
  out.theta1 = Eigen::Map<Eigen::VectorXd>(values.data(),
                                           static_cast<Eigen::Index>(values.size()));
  return out;
}

ToyVariances analytic_variances_toy(double sigma2, const StrataCounts& counts,
                                    const Eigen::VectorXd& e_hat_control) {
  if (counts.n11 == 0) raise(ErrorCode::ZeroCompliance, "pi_c_hat = 0");
  if (counts.n0 == 0 || e_hat_control.size() == 0) {
    raise(ErrorCode::EmptySubgroup, "control arm is empty");
  }
  const double n0 = static_cast<double>(counts.n0);
  const double n1 = static_cast<double>(counts.n1);
  const double n11 = static_cast<double>(counts.n11);
  const double pi2 = counts.pi_c_hat * counts.pi_c_hat;
  const double mean_e2 = e_hat_control.squaredNorm() /
                         static_cast<double>(e_hat_control.size());
  ToyVariances v;
  v.var_ps = sigma2 * (1.0 / n11 + mean_e2 / (n0 * pi2));
  v.var_iv = sigma2 * ((1.0 / n11) * (n1 / n11) + 1.0 / (n0 * pi2));
  return v;
}

}  // namespace sce
