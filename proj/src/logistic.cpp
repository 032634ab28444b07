#include "survkit/logistic.hpp"

#include <cmath>

#include "survkit/error.hpp"

namespace survkit {

double log1pexp(double z) {
  if (z > 35.0) return z;
  if (z < -35.0) return std::exp(z);
  return std::log1p(std::exp(z));
}

double sigmoid(double z) {
  if (z >= 0.0) {
    const double e = std::exp(-z);
    return 1.0 / (1.0 + e);
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

LogisticModel logistic_fit(const Eigen::MatrixXd& X, const std::vector<int>& y,
                           double l2_penalty, const std::vector<double>* row_weights,
                           const OptimizerConfig& config) {
  const auto n = X.rows();
  const auto d = X.cols();
  if (static_cast<Eigen::Index>(y.size()) != n)
    throw ValidationError("logistic_fit: label length mismatch");
  if (n < 2) throw ValidationError("logistic_fit: need at least 2 rows");
  if (l2_penalty < 0.0) throw ValidationError("logistic_fit: negative penalty");
  bool has_pos = false, has_neg = false;
  for (int v : y) {
    if (v != 0 && v != 1) throw ValidationError("logistic_fit: labels must be 0 or 1");
    (v == 1 ? has_pos : has_neg) = true;
  }
  if (l2_penalty == 0.0 && (!has_pos || !has_neg))
    throw ValidationError("logistic_fit: single-class data needs l2_penalty > 0");

  // Negative penalized log-likelihood over (w, b); b is x(d).
  auto objective = [&](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
    const Eigen::VectorXd w = x.head(d);
    const double b = x(d);
    double nll = 0.5 * l2_penalty * w.squaredNorm();
    grad->setZero();
    grad->head(d) = l2_penalty * w;
    const Eigen::VectorXd eta = (X * w).array() + b;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double wi = row_weights ? (*row_weights)[static_cast<std::size_t>(i)] : 1.0;
      const double z = eta(i);
      const double yi = static_cast<double>(y[static_cast<std::size_t>(i)]);
      nll += wi * (log1pexp(z) - yi * z);
      const double resid = wi * (sigmoid(z) - yi);
      grad->head(d) += resid * X.row(i).transpose();
      (*grad)(d) += resid;
    }
    return nll;
  };

  const OptimizeResult result = minimize(objective, Eigen::VectorXd::Zero(d + 1), config);
  LogisticModel model;
  model.weights = result.x.head(d);
  model.intercept = result.x(d);
  model.l2_penalty = l2_penalty;
  model.converged = result.converged();
  return model;
}

Eigen::VectorXd logistic_predict(const LogisticModel& model, const Eigen::MatrixXd& X) {
  Eigen::VectorXd eta = (X * model.weights).array() + model.intercept;
  for (Eigen::Index i = 0; i < eta.size(); ++i) eta(i) = sigmoid(eta(i));
  return eta;
}

SoftmaxModel softmax_fit(const Eigen::MatrixXd& X, const Eigen::MatrixXd& targets,
                         double l2_penalty, const std::vector<double>* row_weights,
                         const OptimizerConfig& config, const SoftmaxModel* warm_start) {
  const auto n = X.rows();
  const auto d = X.cols();
  const auto k = targets.cols();
  if (targets.rows() != n) throw ValidationError("softmax_fit: targets row mismatch");
  if (k < 1) throw ValidationError("softmax_fit: need at least one class");
  const auto kfree = k - 1;  // last class pinned at zero

  SoftmaxModel model;
  model.n_classes = static_cast<int>(k);
  if (kfree == 0) {
    model.weights.resize(0, d);
    model.intercepts.resize(0);
    return model;
  }

  // Parameter layout: kfree blocks of (w_k in R^d, b_k).
  const auto dim = kfree * (d + 1);
  auto unpack = [&](const Eigen::VectorXd& x, Eigen::MatrixXd* W, Eigen::VectorXd* b) {
    W->resize(kfree, d);
    b->resize(kfree);
    for (Eigen::Index c = 0; c < kfree; ++c) {
      W->row(c) = x.segment(c * (d + 1), d).transpose();
      (*b)(c) = x(c * (d + 1) + d);
    }
  };

  auto objective = [&](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
    Eigen::MatrixXd W;
    Eigen::VectorXd b;
    unpack(x, &W, &b);
    double nll = 0.5 * l2_penalty * W.squaredNorm();
    grad->setZero();
    for (Eigen::Index c = 0; c < kfree; ++c)
      grad->segment(c * (d + 1), d) = l2_penalty * W.row(c).transpose();

    Eigen::MatrixXd logits(n, k);
    logits.leftCols(kfree) = (X * W.transpose()).rowwise() + b.transpose();
    logits.col(kfree).setZero();
    for (Eigen::Index i = 0; i < n; ++i) {
      const double wi = row_weights ? (*row_weights)[static_cast<std::size_t>(i)] : 1.0;
      const double m = logits.row(i).maxCoeff();
      double lse = 0.0;
      for (Eigen::Index c = 0; c < k; ++c) lse += std::exp(logits(i, c) - m);
      lse = m + std::log(lse);
      for (Eigen::Index c = 0; c < k; ++c) {
        nll -= wi * targets(i, c) * (logits(i, c) - lse);
        if (c < kfree) {
          const double resid = wi * (std::exp(logits(i, c) - lse) - targets(i, c));
          grad->segment(c * (d + 1), d) += resid * X.row(i).transpose();
          (*grad)(c * (d + 1) + d) += resid;
        }
      }
    }
    return nll;
  };

  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(dim);
  if (warm_start && warm_start->weights.rows() == kfree && warm_start->weights.cols() == d) {
    for (Eigen::Index c = 0; c < kfree; ++c) {
      x0.segment(c * (d + 1), d) = warm_start->weights.row(c).transpose();
      x0(c * (d + 1) + d) = warm_start->intercepts(c);
    }
  }
  const OptimizeResult result = minimize(objective, x0, config);
  unpack(result.x, &model.weights, &model.intercepts);
  model.converged = result.converged();
  return model;
}

Eigen::MatrixXd softmax_predict(const SoftmaxModel& model, const Eigen::MatrixXd& X) {
  const auto n = X.rows();
  const auto k = static_cast<Eigen::Index>(model.n_classes);
  Eigen::MatrixXd probs(n, k);
  Eigen::MatrixXd logits(n, k);
  if (k > 1)
    logits.leftCols(k - 1) = (X * model.weights.transpose()).rowwise() +
                             model.intercepts.transpose();
  logits.col(k - 1).setZero();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double m = logits.row(i).maxCoeff();
    double z = 0.0;
    for (Eigen::Index c = 0; c < k; ++c) z += std::exp(logits(i, c) - m);
    for (Eigen::Index c = 0; c < k; ++c) probs(i, c) = std::exp(logits(i, c) - m) / z;
  }
  return probs;
}

}  // namespace survkit
