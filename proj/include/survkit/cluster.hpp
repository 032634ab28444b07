#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace survkit {

struct PcaState {
  Eigen::MatrixXd components;          // k x d, orthonormal rows
  Eigen::VectorXd explained_variance;  // k, descending
  Eigen::VectorXd mean;                // d
};

// Top-k eigenvectors of the population covariance of X. Each component's
// leading nonzero coordinate is made positive so the decomposition is
// sign-deterministic.
PcaState pca_fit(const Eigen::MatrixXd& X, int k);
Eigen::MatrixXd pca_transform(const PcaState& state, const Eigen::MatrixXd& X);
Eigen::MatrixXd pca_inverse_transform(const PcaState& state, const Eigen::MatrixXd& scores);

// Fitted clustering state shared by k-means and the diagonal-covariance GMM.
struct ClusteringState {
  enum class Method { kKmeans, kGmm };
  Method method = Method::kKmeans;
  Eigen::MatrixXd centers;    // K x d (means for GMM)
  Eigen::MatrixXd variances;  // K x d diagonal variances (GMM only)
  Eigen::VectorXd mixing;     // K mixing weights (GMM only)
  double score = 0.0;         // inertia (k-means) or log-likelihood (GMM)

  int n_clusters() const { return static_cast<int>(centers.rows()); }
};

// Lloyd iterations from k-means++ seeding, `restarts` independent starts,
// winner selected by (inertia, restart index). An emptied cluster is
// re-seeded at the point farthest from its assigned center.
ClusteringState kmeans(const Eigen::MatrixXd& X, int n_clusters, std::uint64_t seed,
                       int restarts = 10);

// Diagonal-covariance Gaussian mixture fit by EM, initialized from a k-means
// run per restart; per-dimension variances floored at 1e-6. The in-fit
// log-likelihood is checked non-decreasing at every EM step.
ClusteringState gmm_fit(const Eigen::MatrixXd& X, int n_clusters, std::uint64_t seed,
                        int restarts = 10);

// Hard assignments: nearest center (k-means) / highest posterior (GMM).
std::vector<int> cluster_assign(const ClusteringState& state, const Eigen::MatrixXd& X);

// GMM posterior responsibilities, n x K row-stochastic.
Eigen::MatrixXd gmm_responsibilities(const ClusteringState& state, const Eigen::MatrixXd& X);

}  // namespace survkit
