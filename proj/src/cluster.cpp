#include "survkit/cluster.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "survkit/error.hpp"
#include "survkit/rng.hpp"

namespace survkit {

PcaState pca_fit(const Eigen::MatrixXd& X, int k) {
  const auto n = X.rows();
  const auto d = X.cols();
  if (n == 0) throw ValidationError("pca_fit: empty input");
  if (k < 1 || k > d) throw ValidationError("pca_fit: k must lie in [1, d]");

  PcaState state;
  state.mean = X.colwise().mean();
  const Eigen::MatrixXd centered = X.rowwise() - state.mean.transpose();
  const Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw Error("pca_fit: eigendecomposition failed");

  // Eigen returns eigenvalues ascending; take the top k.
  state.components.resize(k, d);
  state.explained_variance.resize(k);
  for (int j = 0; j < k; ++j) {
    const auto src = d - 1 - j;
    Eigen::VectorXd v = solver.eigenvectors().col(src);
    for (Eigen::Index c = 0; c < d; ++c) {
      if (std::abs(v(c)) > 1e-12) {
        if (v(c) < 0.0) v = -v;
        break;
      }
    }
    state.components.row(j) = v.transpose();
    state.explained_variance(j) = std::max(solver.eigenvalues()(src), 0.0);
  }
  return state;
}

Eigen::MatrixXd pca_transform(const PcaState& state, const Eigen::MatrixXd& X) {
  return (X.rowwise() - state.mean.transpose()) * state.components.transpose();
}

Eigen::MatrixXd pca_inverse_transform(const PcaState& state, const Eigen::MatrixXd& scores) {
  return (scores * state.components).rowwise() + state.mean.transpose();
}

namespace {

constexpr double kGmmVarianceFloor = 1e-6;

double squared_distance(const Eigen::MatrixXd& X, Eigen::Index row,
                        const Eigen::MatrixXd& centers, Eigen::Index c) {
  return (X.row(row) - centers.row(c)).squaredNorm();
}

// k-means++ seeding. Falls back to a uniform pick when all remaining
// distances are zero (duplicated points).
Eigen::MatrixXd seed_centers(const Eigen::MatrixXd& X, int k, Rng* rng) {
  const auto n = X.rows();
  Eigen::MatrixXd centers(k, X.cols());
  centers.row(0) = X.row(static_cast<Eigen::Index>(rng->uniform_index(static_cast<std::uint64_t>(n))));
  std::vector<double> dist2(static_cast<std::size_t>(n));
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (int cc = 0; cc < c; ++cc)
        best = std::min(best, squared_distance(X, i, centers, cc));
      dist2[static_cast<std::size_t>(i)] = best;
      total += best;
    }
    Eigen::Index pick;
    if (total > 0.0) {
      pick = static_cast<Eigen::Index>(rng->discrete(cumulative_sum(dist2)));
    } else {
      pick = static_cast<Eigen::Index>(rng->uniform_index(static_cast<std::uint64_t>(n)));
    }
    centers.row(c) = X.row(pick);
  }
  return centers;
}

struct LloydResult {
  Eigen::MatrixXd centers;
  std::vector<int> assignment;
  double inertia = 0.0;
};

LloydResult lloyd(const Eigen::MatrixXd& X, Eigen::MatrixXd centers, int max_iter = 300) {
  const auto n = X.rows();
  const int k = static_cast<int>(centers.rows());
  std::vector<int> assignment(static_cast<std::size_t>(n), -1);
  for (int iter = 0; iter < max_iter; ++iter) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      int best_c = 0;
      double best = squared_distance(X, i, centers, 0);
      for (int c = 1; c < k; ++c) {
        const double d2 = squared_distance(X, i, centers, c);
        if (d2 < best) {
          best = d2;
          best_c = c;
        }
      }
      if (assignment[static_cast<std::size_t>(i)] != best_c) {
        assignment[static_cast<std::size_t>(i)] = best_c;
        changed = true;
      }
    }
    if (!changed) break;

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, X.cols());
    std::vector<Eigen::Index> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(assignment[static_cast<std::size_t>(i)]) += X.row(i);
      ++counts[static_cast<std::size_t>(assignment[static_cast<std::size_t>(i)])];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        centers.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
      } else {
        // Re-seed an emptied cluster at the point farthest from its center.
        Eigen::Index far_i = 0;
        double far_d = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
          const double d2 =
              squared_distance(X, i, centers, assignment[static_cast<std::size_t>(i)]);
          if (d2 > far_d) {
            far_d = d2;
            far_i = i;
          }
        }
        centers.row(c) = X.row(far_i);
      }
    }
  }
  double inertia = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    inertia += squared_distance(X, i, centers, assignment[static_cast<std::size_t>(i)]);
  return {std::move(centers), std::move(assignment), inertia};
}

}  // namespace

ClusteringState kmeans(const Eigen::MatrixXd& X, int n_clusters, std::uint64_t seed,
                       int restarts) {
  const auto n = X.rows();
  if (n_clusters < 1) throw ValidationError("kmeans: n_clusters must be positive");
  if (static_cast<Eigen::Index>(n_clusters) > n)
    throw ValidationError("kmeans: n_clusters exceeds number of rows");
  if (restarts < 1) throw ValidationError("kmeans: restarts must be positive");

  ClusteringState best;
  best.method = ClusteringState::Method::kKmeans;
  double best_inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    auto result = lloyd(X, seed_centers(X, n_clusters, &rng));
    if (result.inertia < best_inertia) {  // strict: ties keep the earlier restart
      best_inertia = result.inertia;
      best.centers = std::move(result.centers);
      best.score = result.inertia;
    }
  }
  return best;
}

namespace {

// Per-row log densities (n x K) for a diagonal Gaussian mixture, without the
// mixing weights.
Eigen::MatrixXd gmm_log_density(const Eigen::MatrixXd& X, const ClusteringState& state) {
  const auto n = X.rows();
  const auto d = X.cols();
  const int k = state.n_clusters();
  Eigen::MatrixXd logdens(n, k);
  for (int c = 0; c < k; ++c) {
    double log_norm = -0.5 * static_cast<double>(d) * std::log(2.0 * M_PI);
    for (Eigen::Index j = 0; j < d; ++j) log_norm -= 0.5 * std::log(state.variances(c, j));
    for (Eigen::Index i = 0; i < n; ++i) {
      double quad = 0.0;
      for (Eigen::Index j = 0; j < d; ++j) {
        const double diff = X(i, j) - state.centers(c, j);
        quad += diff * diff / state.variances(c, j);
      }
      logdens(i, c) = log_norm - 0.5 * quad;
    }
  }
  return logdens;
}

double gmm_e_step(const Eigen::MatrixXd& X, const ClusteringState& state,
                  Eigen::MatrixXd* resp) {
  const auto n = X.rows();
  const int k = state.n_clusters();
  const Eigen::MatrixXd logdens = gmm_log_density(X, state);
  resp->resize(n, k);
  double loglik = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double m = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c)
      m = std::max(m, logdens(i, c) + std::log(state.mixing(c)));
    double z = 0.0;
    for (int c = 0; c < k; ++c) {
      const double e = std::exp(logdens(i, c) + std::log(state.mixing(c)) - m);
      (*resp)(i, c) = e;
      z += e;
    }
    resp->row(i) /= z;
    loglik += m + std::log(z);
  }
  return loglik;
}

}  // namespace

ClusteringState gmm_fit(const Eigen::MatrixXd& X, int n_clusters, std::uint64_t seed,
                        int restarts) {
  const auto n = X.rows();
  const auto d = X.cols();
  if (n_clusters < 1) throw ValidationError("gmm_fit: n_clusters must be positive");
  if (static_cast<Eigen::Index>(n_clusters) > n)
    throw ValidationError("gmm_fit: n_clusters exceeds number of rows");

  ClusteringState best;
  double best_loglik = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    // Initialize from a single k-means start on this restart's stream.
    ClusteringState state;
    state.method = ClusteringState::Method::kGmm;
    state.centers = kmeans(X, n_clusters, derive_seed(seed, static_cast<std::uint64_t>(r)), 1)
                        .centers;
    state.variances.resize(n_clusters, d);
    state.mixing.resize(n_clusters);
    std::vector<int> assignment = cluster_assign(state, X);
    for (int c = 0; c < n_clusters; ++c) {
      Eigen::Index count = 0;
      Eigen::VectorXd var = Eigen::VectorXd::Zero(d);
      for (Eigen::Index i = 0; i < n; ++i) {
        if (assignment[static_cast<std::size_t>(i)] != c) continue;
        ++count;
        var += (X.row(i) - state.centers.row(c)).array().square().matrix().transpose();
      }
      state.mixing(c) = std::max(static_cast<double>(count), 1.0) / static_cast<double>(n);
      for (Eigen::Index j = 0; j < d; ++j)
        state.variances(c, j) =
            std::max(count > 0 ? var(j) / static_cast<double>(count) : 1.0, kGmmVarianceFloor);
    }
    state.mixing /= state.mixing.sum();

    Eigen::MatrixXd resp;
    double prev = -std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 300; ++iter) {
      const double loglik = gmm_e_step(X, state, &resp);
      if (std::isfinite(prev) && loglik + 1e-9 < prev)
        throw Error("gmm_fit: EM log-likelihood decreased");
      if (std::isfinite(prev) && std::abs(loglik - prev) < 1e-10 * std::max(1.0, std::abs(loglik)))
        break;
      prev = loglik;
      // M-step.
      for (int c = 0; c < n_clusters; ++c) {
        const double nc = resp.col(c).sum();
        if (nc <= 0.0) continue;
        state.mixing(c) = nc / static_cast<double>(n);
        Eigen::VectorXd mu = Eigen::VectorXd::Zero(d);
        for (Eigen::Index i = 0; i < n; ++i) mu += resp(i, c) * X.row(i).transpose();
        mu /= nc;
        state.centers.row(c) = mu.transpose();
        for (Eigen::Index j = 0; j < d; ++j) {
          double v = 0.0;
          for (Eigen::Index i = 0; i < n; ++i) {
            const double diff = X(i, j) - mu(j);
            v += resp(i, c) * diff * diff;
          }
          state.variances(c, j) = std::max(v / nc, kGmmVarianceFloor);
        }
      }
      state.mixing /= state.mixing.sum();
    }
    state.score = prev;
    if (prev > best_loglik) {
      best_loglik = prev;
      best = state;
    }
  }
  return best;
}

std::vector<int> cluster_assign(const ClusteringState& state, const Eigen::MatrixXd& X) {
  const auto n = X.rows();
  std::vector<int> labels(static_cast<std::size_t>(n));
  if (state.method == ClusteringState::Method::kGmm && state.mixing.size() > 0) {
    const Eigen::MatrixXd resp = gmm_responsibilities(state, X);
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index arg = 0;
      resp.row(i).maxCoeff(&arg);
      // Ties resolve to the lowest index.
      for (Eigen::Index c = 0; c < resp.cols(); ++c) {
        if (resp(i, c) == resp(i, arg)) {
          arg = c;
          break;
        }
      }
      labels[static_cast<std::size_t>(i)] = static_cast<int>(arg);
    }
    return labels;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    int best_c = 0;
    double best = (X.row(i) - state.centers.row(0)).squaredNorm();
    for (int c = 1; c < state.n_clusters(); ++c) {
      const double d2 = (X.row(i) - state.centers.row(c)).squaredNorm();
      if (d2 < best) {
        best = d2;
        best_c = c;
      }
    }
    labels[static_cast<std::size_t>(i)] = best_c;
  }
  return labels;
}

Eigen::MatrixXd gmm_responsibilities(const ClusteringState& state, const Eigen::MatrixXd& X) {
  if (state.method != ClusteringState::Method::kGmm)
    throw ValidationError("gmm_responsibilities: state is not a GMM");
  Eigen::MatrixXd resp;
  gmm_e_step(X, state, &resp);
  return resp;
}

}  // namespace survkit
