#pragma once

#include <Eigen/Core>
#include <cstdint>

namespace survkit {

// Covariate representation shared by the regression models: identity
// (linear models) or a single tanh hidden layer. Parameters are stored in a
// flat segment [W row-major (width x d), c (width)] so model objectives can
// concatenate trunk and head parameters into one optimizer vector.
struct Trunk {
  enum class Kind { kLinear, kHidden };
  Kind kind = Kind::kLinear;
  int width = 0;  // hidden units, kHidden only
  Eigen::Index input_dim = 0;

  Eigen::Index param_count() const {
    return kind == Kind::kLinear ? 0 : static_cast<Eigen::Index>(width) * (input_dim + 1);
  }
  Eigen::Index output_dim() const {
    return kind == Kind::kLinear ? input_dim : static_cast<Eigen::Index>(width);
  }

  // Hidden weights start at small seeded values so gradients flow through
  // the zero-initialized heads; a zero trunk would be a stationary saddle.
  // Linear trunks have no parameters.
  Eigen::VectorXd initial_params(std::uint64_t seed) const;

  // R = tanh(X W^T + c), or X itself for the linear trunk.
  Eigen::MatrixXd forward(const Eigen::VectorXd& params, const Eigen::MatrixXd& X) const;

  // Accumulates d(loss)/d(trunk params) into *grad given d(loss)/dR.
  // `activations` must be the matching forward() output.
  void backprop(const Eigen::VectorXd& params, const Eigen::MatrixXd& X,
                const Eigen::MatrixXd& activations, const Eigen::MatrixXd& d_activations,
                Eigen::VectorXd* grad) const;
};

}  // namespace survkit
