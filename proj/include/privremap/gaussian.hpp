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

#ifndef PRIVREMAP_GAUSSIAN_HPP_
#define PRIVREMAP_GAUSSIAN_HPP_

#include <Eigen/Dense>
#include <vector>

namespace privremap {

// Covariance symmetry tolerance and the round-off slack allowed on
// eigenvalues of a nominally PSD matrix.
inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
// Eigenvalues below kRankTol * lambda_max are treated as exact zeros.
inline constexpr double kRankTol = 1e-12;
// An observation is consistent with a singular block when its component
// along each null direction is below this, scaled by the residual norm.
inline constexpr double kConsistencyTol = 1e-8;

// A small (k <= 4) joint Gaussian. Construction validates symmetry and
// positive semi-definiteness up to round-off.
struct GaussianJoint {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

GaussianJoint MakeGaussianJoint(Eigen::VectorXd mean, Eigen::MatrixXd cov);

struct Conditional {
  Eigen::VectorXd mean;  // over the hidden coordinates, in original order
  Eigen::MatrixXd cov;
};

// Conditions the hidden coordinates on exact observations of the listed
// coordinates. Precomputes the gain once so repeated conditioning on new
// values is a dot product; singular observed blocks are handled by
// pseudo-inverse, with observed values checked for consistency against the
// block's support (inconsistent values raise SingularObservation).
class GaussianConditioner {
 public:
  GaussianConditioner(const GaussianJoint& joint,
                      std::vector<int> observed_indices);

  Eigen::VectorXd Mean(const Eigen::VectorXd& observed_values) const;
  const Eigen::MatrixXd& Cov() const { return cond_cov_; }
  const std::vector<int>& hidden_indices() const { return hidden_indices_; }
  const Eigen::MatrixXd& gain() const { return gain_; }

 private:
  std::vector<int> observed_indices_;
  std::vector<int> hidden_indices_;
  Eigen::VectorXd observed_mean_;
  Eigen::VectorXd hidden_mean_;
  Eigen::MatrixXd gain_;        // Cov(hidden, observed) * pinv(Cov(observed))
  Eigen::MatrixXd cond_cov_;
  Eigen::MatrixXd null_space_;  // columns span the observed block's kernel
};

Conditional GaussianCondition(const GaussianJoint& joint,
                              const std::vector<int>& observed_indices,
                              const Eigen::VectorXd& observed_values);

// Log density of a (possibly rank-deficient) Gaussian, taken with respect to
// Lebesgue measure on its support. Values off the support of a singular
// covariance yield -infinity.
class GaussianLogDensity {
 public:
  explicit GaussianLogDensity(const GaussianJoint& joint);

  double LogDensity(const Eigen::VectorXd& values) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd eigenvectors_;
  Eigen::VectorXd eigenvalues_;  // ascending, negatives clamped to zero
  double log_norm_;              // -(1/2) sum over positive: log(2 pi lambda)
};

// Marginal of a subset of coordinates, in the given order.
GaussianJoint Marginal(const GaussianJoint& joint,
                       const std::vector<int>& indices);

}  // namespace privremap

#endif  // PRIVREMAP_GAUSSIAN_HPP_
