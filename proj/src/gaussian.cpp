// Copyright 2026 The privremap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "privremap/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "privremap/error.hpp"

namespace privremap {

namespace {

constexpr double kTwoPi = 2.0 * 3.141592653589793238462643383279502884;

Eigen::MatrixXd Submatrix(const Eigen::MatrixXd& m,
                          const std::vector<int>& rows,
                          const std::vector<int>& cols) {
  Eigen::MatrixXd out(rows.size(), cols.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < cols.size(); ++j) {
      out(i, j) = m(rows[i], cols[j]);
    }
  }
  return out;
}

Eigen::VectorXd Subvector(const Eigen::VectorXd& v,
                          const std::vector<int>& indices) {
  Eigen::VectorXd out(indices.size());
  for (size_t i = 0; i < indices.size(); ++i) {
    out(i) = v(indices[i]);
  }
  return out;
}

}  // namespace

GaussianJoint MakeGaussianJoint(Eigen::VectorXd mean, Eigen::MatrixXd cov) {
  const auto k = mean.size();
  if (cov.rows() != k || cov.cols() != k) {
    throw Error(ErrorCode::kInvalidArgument,
                "covariance dimensions do not match the mean");
  }
  const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale) {
    throw Error(ErrorCode::kInvalidArgument, "covariance is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.eigenvalues().minCoeff() < -kPsdTol * scale) {
    throw Error(ErrorCode::kInvalidArgument,
                "covariance is not positive semi-definite");
  }
  return GaussianJoint{std::move(mean), std::move(cov)};
}

GaussianConditioner::GaussianConditioner(const GaussianJoint& joint,
                                         std::vector<int> observed_indices)
    : observed_indices_(std::move(observed_indices)) {
  const int k = static_cast<int>(joint.mean.size());
  std::vector<bool> is_observed(k, false);
  for (int idx : observed_indices_) {
    if (idx < 0 || idx >= k) {
      throw Error(ErrorCode::kInvalidArgument,
                  "observed index out of range: " + std::to_string(idx));
    }
    if (is_observed[idx]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "observed indices must be distinct");
    }
    is_observed[idx] = true;
  }
  for (int i = 0; i < k; ++i) {
    if (!is_observed[i]) hidden_indices_.push_back(i);
  }

  observed_mean_ = Subvector(joint.mean, observed_indices_);
  hidden_mean_ = Subvector(joint.mean, hidden_indices_);
  const Eigen::MatrixXd cov_oo =
      Submatrix(joint.cov, observed_indices_, observed_indices_);
  const Eigen::MatrixXd cov_ho =
      Submatrix(joint.cov, hidden_indices_, observed_indices_);
  const Eigen::MatrixXd cov_hh =
      Submatrix(joint.cov, hidden_indices_, hidden_indices_);

  // Pseudo-inverse through the eigendecomposition; eigenvalues within
  // round-off of zero define the kernel, against which observed values are
  // later checked for consistency.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov_oo);
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  const Eigen::MatrixXd& vectors = solver.eigenvectors();
  const double lambda_max = lambda.size() > 0 ? lambda.cwiseAbs().maxCoeff()
                                              : 0.0;
  const double cutoff = lambda_max * kRankTol;

  Eigen::VectorXd inv_lambda(lambda.size());
  std::vector<int> null_columns;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) <= cutoff) {
      inv_lambda(i) = 0.0;
      null_columns.push_back(static_cast<int>(i));
    } else {
      inv_lambda(i) = 1.0 / lambda(i);
    }
  }
  null_space_.resize(lambda.size(), null_columns.size());
  for (size_t j = 0; j < null_columns.size(); ++j) {
    null_space_.col(j) = vectors.col(null_columns[j]);
  }

  const Eigen::MatrixXd pinv =
      vectors * inv_lambda.asDiagonal() * vectors.transpose();
  gain_ = cov_ho * pinv;
  cond_cov_ = cov_hh - gain_ * cov_ho.transpose();
  cond_cov_ = 0.5 * (cond_cov_ + cond_cov_.transpose());
  // Conditioning cannot increase a variance; clip the round-off excursions.
  for (Eigen::Index i = 0; i < cond_cov_.rows(); ++i) {
    cond_cov_(i, i) = std::clamp(cond_cov_(i, i), 0.0, cov_hh(i, i));
  }
}

Eigen::VectorXd GaussianConditioner::Mean(
    const Eigen::VectorXd& observed_values) const {
  if (observed_values.size() != observed_mean_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "observed values size does not match observed indices");
  }
  const Eigen::VectorXd residual = observed_values - observed_mean_;
  if (null_space_.cols() > 0) {
    const double scale = 1.0 + residual.norm();
    const Eigen::VectorXd projection = null_space_.transpose() * residual;
    if (projection.cwiseAbs().maxCoeff() > kConsistencyTol * scale) {
      throw Error(ErrorCode::kSingularObservation,
                  "observed values are inconsistent with a singular "
                  "observation covariance");
    }
  }
  return hidden_mean_ + gain_ * residual;
}

Conditional GaussianCondition(const GaussianJoint& joint,
                              const std::vector<int>& observed_indices,
                              const Eigen::VectorXd& observed_values) {
  GaussianConditioner conditioner(joint, observed_indices);
  return Conditional{conditioner.Mean(observed_values), conditioner.Cov()};
}

GaussianLogDensity::GaussianLogDensity(const GaussianJoint& joint)
    : mean_(joint.mean) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(joint.cov);
  eigenvectors_ = solver.eigenvectors();
  eigenvalues_ = solver.eigenvalues();
  const double lambda_max =
      eigenvalues_.size() > 0 ? eigenvalues_.cwiseAbs().maxCoeff() : 0.0;
  const double cutoff = lambda_max * kRankTol;
  log_norm_ = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues_.size(); ++i) {
    if (eigenvalues_(i) <= cutoff) {
      eigenvalues_(i) = 0.0;
    } else {
      log_norm_ -= 0.5 * std::log(kTwoPi * eigenvalues_(i));
    }
  }
}

double GaussianLogDensity::LogDensity(const Eigen::VectorXd& values) const {
  const Eigen::VectorXd residual = values - mean_;
  const Eigen::VectorXd coords = eigenvectors_.transpose() * residual;
  const double scale = 1.0 + residual.norm();
  double quad = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues_.size(); ++i) {
    if (eigenvalues_(i) == 0.0) {
      if (std::abs(coords(i)) > kConsistencyTol * scale) {
        return -std::numeric_limits<double>::infinity();
      }
    } else {
      quad += coords(i) * coords(i) / eigenvalues_(i);
    }
  }
  return log_norm_ - 0.5 * quad;
}

GaussianJoint Marginal(const GaussianJoint& joint,
                       const std::vector<int>& indices) {
  return GaussianJoint{Subvector(joint.mean, indices),
                       Submatrix(joint.cov, indices, indices)};
}

}  // namespace privremap
