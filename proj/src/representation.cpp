#include "survkit/representation.hpp"

#include <cmath>

#include "survkit/error.hpp"
#include "survkit/rng.hpp"

namespace survkit {

Eigen::VectorXd Trunk::initial_params(std::uint64_t seed) const {
  Eigen::VectorXd params = Eigen::VectorXd::Zero(param_count());
  if (kind == Kind::kHidden) {
    if (width <= 0) throw ValidationError("Trunk: hidden width must be positive");
    Rng rng(derive_seed(seed, 0x7261'6d70ULL));
    const double scale = 0.5 / std::sqrt(static_cast<double>(std::max<Eigen::Index>(input_dim, 1)));
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(width) * input_dim; ++i)
      params(i) = scale * rng.normal();
    // Biases stay zero.
  }
  return params;
}

Eigen::MatrixXd Trunk::forward(const Eigen::VectorXd& params, const Eigen::MatrixXd& X) const {
  if (kind == Kind::kLinear) return X;
  const Eigen::Index h = width;
  const Eigen::Index d = input_dim;
  Eigen::MatrixXd W(h, d);
  for (Eigen::Index r = 0; r < h; ++r) W.row(r) = params.segment(r * d, d).transpose();
  const Eigen::VectorXd c = params.segment(h * d, h);
  Eigen::MatrixXd Z = (X * W.transpose()).rowwise() + c.transpose();
  return Z.array().tanh();
}

void Trunk::backprop(const Eigen::VectorXd& params, const Eigen::MatrixXd& X,
                     const Eigen::MatrixXd& activations, const Eigen::MatrixXd& d_activations,
                     Eigen::VectorXd* grad) const {
  if (kind == Kind::kLinear) return;
  (void)params;
  const Eigen::Index h = width;
  const Eigen::Index d = input_dim;
  // d/dz tanh = 1 - tanh^2.
  const Eigen::MatrixXd dZ =
      d_activations.array() * (1.0 - activations.array().square());
  for (Eigen::Index r = 0; r < h; ++r)
    grad->segment(r * d, d) += (dZ.col(r).transpose() * X).transpose();
  grad->segment(h * d, h) += dZ.colwise().sum().transpose();
}

}  // namespace survkit
