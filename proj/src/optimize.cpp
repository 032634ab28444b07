#include "survkit/optimize.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <vector>

#include "survkit/error.hpp"

namespace survkit {

std::string OptimizeResult::status_message() const {
  switch (status) {
    case Status::kConverged:
      return "converged: gradient norm below tolerance";
    case Status::kMaxIterations:
      return "stopped at max_iterations before reaching gradient tolerance";
    case Status::kNonFinite:
      return "non-finite objective or gradient encountered; returning last valid point";
  }
  return "unknown";
}

namespace {

bool finite(double v) { return std::isfinite(v); }
bool finite(const Eigen::VectorXd& v) { return v.allFinite(); }

}  // namespace

OptimizeResult minimize(const ObjectiveFn& f, const Eigen::VectorXd& x0,
                        const OptimizerConfig& config) {
  if (!(config.gradient_tolerance > 0.0))
    throw Error("minimize: gradient tolerance must be positive");
  if (!(config.backtracking_factor > 0.0 && config.backtracking_factor < 1.0))
    throw Error("minimize: backtracking factor must lie in (0,1)");

  OptimizeResult result;
  result.x = x0;

  Eigen::VectorXd grad(x0.size());
  double fx = f(x0, &grad);
  if (!finite(fx)) throw Error("minimize: objective not finite at the starting point");
  if (!finite(grad)) {
    result.objective = fx;
    result.gradient_norm = std::numeric_limits<double>::quiet_NaN();
    result.status = OptimizeResult::Status::kNonFinite;
    return result;
  }
  result.objective = fx;
  result.gradient_norm = grad.norm();

  // L-BFGS history (unused for plain gradient descent).
  std::deque<Eigen::VectorXd> s_hist, y_hist;
  std::deque<double> rho_hist;

  Eigen::VectorXd x = x0;
  for (int iter = 0; iter < config.max_iterations; ++iter) {
    result.iterations = iter;
    if (grad.norm() <= config.gradient_tolerance) {
      result.status = OptimizeResult::Status::kConverged;
      return result;
    }

    Eigen::VectorXd direction;
    if (config.method == OptimizerConfig::Method::kLbfgs && !s_hist.empty()) {
      // Two-loop recursion.
      Eigen::VectorXd q = grad;
      const auto m = s_hist.size();
      std::vector<double> alpha(m);
      for (std::size_t i = m; i-- > 0;) {
        alpha[i] = rho_hist[i] * s_hist[i].dot(q);
        q -= alpha[i] * y_hist[i];
      }
      const double gamma =
          s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
      q *= gamma;
      for (std::size_t i = 0; i < m; ++i) {
        const double beta = rho_hist[i] * y_hist[i].dot(q);
        q += (alpha[i] - beta) * s_hist[i];
      }
      direction = -q;
      if (direction.dot(grad) >= 0.0) direction = -grad;  // not a descent direction
    } else {
      direction = -grad;
    }

    // Backtracking line search with Armijo sufficient decrease.
    const double slope = grad.dot(direction);
    double step = config.initial_step;
    bool accepted = false;
    Eigen::VectorXd x_new, grad_new(x.size());
    double f_new = fx;
    for (int bt = 0; bt < 80; ++bt) {
      x_new = x + step * direction;
      f_new = f(x_new, &grad_new);
      if (finite(f_new) && finite(grad_new) &&
          f_new <= fx + config.sufficient_decrease * step * slope) {
        accepted = true;
        break;
      }
      step *= config.backtracking_factor;
    }
    if (!accepted) {
      // Distinguish a non-finite oracle from a step that merely got too small.
      x_new = x + step * direction;
      f_new = f(x_new, &grad_new);
      if (!finite(f_new) || !finite(grad_new)) {
        result.status = OptimizeResult::Status::kNonFinite;
        return result;
      }
      // No admissible decrease at the smallest step: declare convergence to
      // numerical precision.
      result.status = OptimizeResult::Status::kConverged;
      return result;
    }

    if (config.method == OptimizerConfig::Method::kLbfgs) {
      Eigen::VectorXd s = x_new - x;
      Eigen::VectorXd y = grad_new - grad;
      const double sy = s.dot(y);
      if (sy > 1e-12 * s.norm() * y.norm()) {
        s_hist.push_back(std::move(s));
        y_hist.push_back(std::move(y));
        rho_hist.push_back(1.0 / sy);
        if (static_cast<int>(s_hist.size()) > config.lbfgs_memory) {
          s_hist.pop_front();
          y_hist.pop_front();
          rho_hist.pop_front();
        }
      }
    }

    x = std::move(x_new);
    fx = f_new;
    grad = grad_new;
    result.x = x;
    result.objective = fx;
    result.gradient_norm = grad.norm();
  }
  result.iterations = config.max_iterations;
  result.status = grad.norm() <= config.gradient_tolerance
                      ? OptimizeResult::Status::kConverged
                      : OptimizeResult::Status::kMaxIterations;
  return result;
}

double check_gradient(const ObjectiveFn& f, const Eigen::VectorXd& point, double step) {
  Eigen::VectorXd analytic(point.size());
  f(point, &analytic);
  double worst = 0.0;
  Eigen::VectorXd x = point;
  Eigen::VectorXd unused(point.size());
  for (Eigen::Index i = 0; i < point.size(); ++i) {
    x(i) = point(i) + step;
    const double f_plus = f(x, &unused);
    x(i) = point(i) - step;
    const double f_minus = f(x, &unused);
    x(i) = point(i);
    const double fd = (f_plus - f_minus) / (2.0 * step);
    const double denom = std::max({1.0, std::abs(analytic(i)), std::abs(fd)});
    worst = std::max(worst, std::abs(analytic(i) - fd) / denom);
  }
  return worst;
}

}  // namespace survkit
