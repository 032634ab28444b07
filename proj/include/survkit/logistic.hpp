#pragma once

#include <Eigen/Core>
#include <vector>

#include "survkit/optimize.hpp"

namespace survkit {

struct LogisticModel {
  Eigen::VectorXd weights;  // d
  double intercept = 0.0;
  double l2_penalty = 0.0;  // intercept is never penalized
  bool converged = true;
};

// Maximizes the (optionally row-weighted) Bernoulli log-likelihood minus
// lambda * ||w||^2 / 2, by minimize() from zero initialization. Perfectly
// separable data with lambda = 0 cannot converge (weights diverge); the fit
// is returned with converged = false and the caller should set lambda > 0.
LogisticModel logistic_fit(const Eigen::MatrixXd& X, const std::vector<int>& y,
                           double l2_penalty, const std::vector<double>* row_weights = nullptr,
                           const OptimizerConfig& config = {});

Eigen::VectorXd logistic_predict(const LogisticModel& model, const Eigen::MatrixXd& X);

// Multinomial (softmax) regression against soft row targets, used for
// mixture gating updates. Parameters for the last class are pinned at zero.
// Targets are an n x K row-stochastic matrix.
struct SoftmaxModel {
  Eigen::MatrixXd weights;    // (K-1) x d
  Eigen::VectorXd intercepts; // K-1
  int n_classes = 2;
  bool converged = true;
};

SoftmaxModel softmax_fit(const Eigen::MatrixXd& X, const Eigen::MatrixXd& targets,
                         double l2_penalty, const std::vector<double>* row_weights = nullptr,
                         const OptimizerConfig& config = {},
                         const SoftmaxModel* warm_start = nullptr);

// Row-stochastic n x K matrix of class probabilities.
Eigen::MatrixXd softmax_predict(const SoftmaxModel& model, const Eigen::MatrixXd& X);

// Numerically stable helpers shared across likelihood code.
double log1pexp(double z);
double sigmoid(double z);

}  // namespace survkit
