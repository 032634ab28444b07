#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>

namespace survkit {

// Objective oracle: fills *grad (same size as x) and returns f(x).
using ObjectiveFn = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd* grad)>;

struct OptimizerConfig {
  // Baseline contract is gradient descent with backtracking; L-BFGS is the
  // permitted faster method and the default. Both only accept steps
  // satisfying sufficient decrease, so the objective is non-increasing
  // across accepted iterates.
  enum class Method { kGradientDescent, kLbfgs };
  Method method = Method::kLbfgs;
  int max_iterations = 500;
  double gradient_tolerance = 1e-8;
  double initial_step = 1.0;
  double backtracking_factor = 0.5;
  double sufficient_decrease = 1e-4;  // Armijo c1
  int lbfgs_memory = 10;
};

struct OptimizeResult {
  enum class Status { kConverged, kMaxIterations, kNonFinite };
  Eigen::VectorXd x;        // last valid point
  double objective = 0.0;   // f at x
  double gradient_norm = 0.0;
  int iterations = 0;
  Status status = Status::kConverged;

  bool converged() const { return status == Status::kConverged; }
  bool failed() const { return status == Status::kNonFinite; }
  std::string status_message() const;
};

// Minimizes f from x0. Returns the best point found; status kNonFinite means
// the oracle produced a non-finite value and x holds the last valid iterate.
OptimizeResult minimize(const ObjectiveFn& f, const Eigen::VectorXd& x0,
                        const OptimizerConfig& config = {});

// Max over coordinates of |analytic - central_difference| / max(1, |analytic|,
// |central_difference|).
double check_gradient(const ObjectiveFn& f, const Eigen::VectorXd& point, double step = 1e-5);

}  // namespace survkit
