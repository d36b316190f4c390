// SPDX-License-Identifier: Apache-2.0
#include "sce/dataset.hpp"

#include <cmath>

#include "sce/error.hpp"

namespace sce {

StrataCounts tabulate(const Dataset& data) {
  StrataCounts c;
  c.n = static_cast<long>(data.n());
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    const int zi = data.z[i] != 0.0 ? 1 : 0;
    const int si = data.s[i] != 0.0 ? 1 : 0;
    if (zi == 0) {
      ++c.n0;
      si == 0 ? ++c.n00 : ++c.n01;
    } else {
      ++c.n1;
      si == 0 ? ++c.n10 : ++c.n11;
    }
    if (zi == 0 && si == 1) ++c.monotonicity_violations;
  }
  c.pi_c_hat = c.n1 > 0 ? static_cast<double>(c.n11) / static_cast<double>(c.n1) : 0.0;
  return c;
}

StrataCounts validate(const Dataset& data) {
  const Eigen::Index n = data.n();
  if (n == 0) raise(ErrorCode::EmptyDataset, "dataset has no rows");
  if (data.z.size() != n || data.s.size() != n ||
      (data.x.size() > 0 && data.x.rows() != n)) {
    raise(ErrorCode::DimensionMismatch, "y, z, s, x must share the row count");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (data.z[i] != 0.0 && data.z[i] != 1.0) {
      raise(ErrorCode::NonBinaryColumn, "z contains a value outside {0,1} at row " +
                                            std::to_string(i + 1));
    }
    if (data.s[i] != 0.0 && data.s[i] != 1.0) {
      raise(ErrorCode::NonBinaryColumn, "s contains a value outside {0,1} at row " +
                                            std::to_string(i + 1));
    }
    if (!std::isfinite(data.y[i])) {
      raise(ErrorCode::NonFiniteValue, "y is not finite at row " + std::to_string(i + 1));
    }
  }
  if (!data.x.allFinite()) {
    raise(ErrorCode::NonFiniteValue, "covariate matrix contains a non-finite value");
  }
  StrataCounts c = tabulate(data);
  if (c.n0 == 0 || c.n1 == 0) {
    raise(ErrorCode::DegenerateArm,
          c.n0 == 0 ? "no units with z=0" : "no units with z=1");
  }
  return c;
}

Dataset take_rows(const Dataset& data, const std::vector<int>& rows) {
  Dataset out;
  const Eigen::Index m = static_cast<Eigen::Index>(rows.size());
  out.y.resize(m);
  out.z.resize(m);
  out.s.resize(m);
  out.x.resize(m, data.p());
  out.x_names = data.x_names;
  for (Eigen::Index i = 0; i < m; ++i) {
    const int r = rows[static_cast<std::size_t>(i)];
    out.y[i] = data.y[r];
    out.z[i] = data.z[r];
    out.s[i] = data.s[r];
    if (data.p() > 0) out.x.row(i) = data.x.row(r);
  }
  return out;
}

bool datasets_equal(const Dataset& a, const Dataset& b) {
  if (a.n() != b.n() || a.p() != b.p()) return false;
  for (Eigen::Index i = 0; i < a.n(); ++i) {
    if (a.y[i] != b.y[i] || a.z[i] != b.z[i] || a.s[i] != b.s[i]) return false;
  }
  for (Eigen::Index j = 0; j < a.p(); ++j) {
    for (Eigen::Index i = 0; i < a.n(); ++i) {
      if (a.x(i, j) != b.x(i, j)) return false;
    }
  }
  return true;
}

}  // namespace sce
