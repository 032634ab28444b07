#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "survkit/dataset.hpp"
#include "survkit/optimize.hpp"
#include "survkit/representation.hpp"
#include "survkit/step_curve.hpp"

namespace survkit {

// Weighted Breslow partial log-likelihood of a Cox model as a function of
// the per-row risk scores eta. Sorting and tie grouping happen once at
// construction; eval() is O(n) per call.
class CoxLikelihood {
 public:
  CoxLikelihood(std::vector<double> times, std::vector<int> events,
                std::vector<double> weights);

  // Partial log-likelihood; optionally fills d(value)/d(eta).
  double eval(const Eigen::VectorXd& eta, Eigen::VectorXd* d_eta = nullptr) const;

  // Weighted Breslow baseline cumulative hazard at the given risk scores.
  StepCurve baseline(const Eigen::VectorXd& eta) const;

  double event_weight() const { return event_weight_; }
  std::size_t n_rows() const { return times_.size(); }

 private:
  std::vector<double> times_;
  std::vector<int> events_;
  std::vector<double> weights_;
  std::vector<std::size_t> order_;        // ascending time
  std::vector<std::size_t> group_start_;  // tie-group boundaries into order_
  double event_weight_ = 0.0;
};

struct CoxFitOptions {
  double l2_penalty = 0.0;
  Trunk::Kind representation = Trunk::Kind::kLinear;
  int hidden_width = 0;
  std::uint64_t init_seed = 0;  // hidden trunk initialization only
  OptimizerConfig optimizer;
};

struct FitReport {
  bool converged = true;
  int iterations = 0;
  double gradient_norm = 0.0;
  std::string message;
};

struct CoxModel {
  Trunk trunk;
  Eigen::VectorXd head;    // linear head on the trunk output (beta when linear)
  Eigen::VectorXd params;  // full flat parameter vector [trunk, head]
  StepCurve baseline;      // Breslow cumulative hazard H0
  std::size_t n_train = 0;
  std::size_t d_features = 0;
  std::size_t n_train_events = 0;
  FitReport report;

  // Risk scores h(x) for each row of X.
  Eigen::VectorXd risk_score(const Eigen::MatrixXd& X) const;
};

// Maximizes the weighted Breslow partial log-likelihood minus
// l2 * ||theta||^2 / 2 from zero-initialized heads. Effective row weights
// are the product of dataset weights and `extra_weights` when both exist.
// Divergence under a monotone likelihood (l2 = 0) surfaces as
// report.converged = false with a message advising a positive penalty.
CoxModel cox_fit(const SurvivalDataset& data, const CoxFitOptions& options = {},
                 const std::vector<double>* extra_weights = nullptr);

// S(t|x) = exp(-H0(t) * exp(h(x))) at each requested time.
Eigen::VectorXd cox_predict_survival(const CoxModel& model, const Eigen::VectorXd& x,
                                     const std::vector<double>& times);
Eigen::VectorXd cox_predict_risk(const CoxModel& model, const Eigen::VectorXd& x,
                                 const std::vector<double>& times);
// Batched: n x m matrix over rows of X and the time grid.
Eigen::MatrixXd cox_predict_survival_matrix(const CoxModel& model, const Eigen::MatrixXd& X,
                                            const std::vector<double>& times);

struct CounterfactualOptions {
  CoxFitOptions arm_fit;
  // An arm trained with fewer events than this refuses to predict.
  std::size_t min_arm_events = 10;
};

// Separate Cox models on the treated (a=1) and control (a=0) strata.
struct CounterfactualPair {
  CoxModel model_treated;
  CoxModel model_control;
  std::size_t min_arm_events = 10;

  const CoxModel& arm(int a) const { return a == 1 ? model_treated : model_control; }
};

CounterfactualPair counterfactual_fit(const SurvivalDataset& data,
                                      const CounterfactualOptions& options = {});

// Mean predicted survival under do(A=arm) over all supplied rows.
Eigen::VectorXd counterfactual_mean_survival(const CounterfactualPair& pair,
                                             const Eigen::MatrixXd& features, int arm,
                                             const std::vector<double>& times);

}  // namespace survkit
