#include "survkit/coxph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "survkit/error.hpp"

namespace survkit {

CoxLikelihood::CoxLikelihood(std::vector<double> times, std::vector<int> events,
                             std::vector<double> weights)
    : times_(std::move(times)), events_(std::move(events)), weights_(std::move(weights)) {
  const std::size_t n = times_.size();
  if (n == 0) throw ValidationError("cox: empty dataset");
  if (events_.size() != n || weights_.size() != n)
    throw ValidationError("cox: outcome length mismatch");
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::sort(order_.begin(), order_.end(),
            [&](std::size_t a, std::size_t b) { return times_[a] < times_[b]; });
  group_start_.push_back(0);
  for (std::size_t k = 1; k < n; ++k)
    if (times_[order_[k]] != times_[order_[k - 1]]) group_start_.push_back(k);
  group_start_.push_back(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (weights_[i] < 0.0) throw ValidationError("cox: negative weight");
    if (events_[i] == 1) event_weight_ += weights_[i];
  }
}

double CoxLikelihood::eval(const Eigen::VectorXd& eta, Eigen::VectorXd* d_eta) const {
  const std::size_t n = times_.size();
  if (static_cast<std::size_t>(eta.size()) != n)
    throw ValidationError("cox: eta length mismatch");

  const double eta_max = eta.maxCoeff();
  // r_i = w_i * exp(eta_i - eta_max); risk sums stay bounded.
  Eigen::VectorXd rel(n);
  for (std::size_t i = 0; i < n; ++i)
    rel[static_cast<Eigen::Index>(i)] =
        weights_[i] * std::exp(eta(static_cast<Eigen::Index>(i)) - eta_max);

  const std::size_t n_groups = group_start_.size() - 1;
  // Risk-set sums per tie group, accumulated from the latest time backwards.
  std::vector<double> risk_sum(n_groups, 0.0);
  std::vector<double> death_weight(n_groups, 0.0);
  double acc = 0.0;
  for (std::size_t g = n_groups; g-- > 0;) {
    for (std::size_t k = group_start_[g]; k < group_start_[g + 1]; ++k) {
      const std::size_t i = order_[k];
      acc += rel[static_cast<Eigen::Index>(i)];
      if (events_[i] == 1) death_weight[g] += weights_[i];
    }
    risk_sum[g] = acc;
  }

  double value = 0.0;
  if (d_eta) d_eta->setZero(static_cast<Eigen::Index>(n));
  // Ascending sweep: cumulative sum of D_u / S_u over death-time groups u <= t
  // equals the Breslow hazard increment needed in the eta gradient.
  double hazard_acc = 0.0;
  for (std::size_t g = 0; g < n_groups; ++g) {
    if (death_weight[g] > 0.0) {
      value -= death_weight[g] * (std::log(risk_sum[g]) + eta_max);
      hazard_acc += death_weight[g] / risk_sum[g];
    }
    for (std::size_t k = group_start_[g]; k < group_start_[g + 1]; ++k) {
      const std::size_t i = order_[k];
      if (events_[i] == 1) value += weights_[i] * eta(static_cast<Eigen::Index>(i));
      if (d_eta)
        (*d_eta)(static_cast<Eigen::Index>(i)) =
            (events_[i] == 1 ? weights_[i] : 0.0) -
            rel[static_cast<Eigen::Index>(i)] * hazard_acc;
    }
  }
  return value;
}

StepCurve CoxLikelihood::baseline(const Eigen::VectorXd& eta) const {
  const std::size_t n = times_.size();
  const double eta_max = eta.maxCoeff();
  Eigen::VectorXd rel(n);
  for (std::size_t i = 0; i < n; ++i)
    rel[static_cast<Eigen::Index>(i)] =
        weights_[i] * std::exp(eta(static_cast<Eigen::Index>(i)) - eta_max);

  const std::size_t n_groups = group_start_.size() - 1;
  std::vector<double> risk_sum(n_groups, 0.0);
  std::vector<double> death_weight(n_groups, 0.0);
  double acc = 0.0;
  for (std::size_t g = n_groups; g-- > 0;) {
    for (std::size_t k = group_start_[g]; k < group_start_[g + 1]; ++k) {
      const std::size_t i = order_[k];
      acc += rel[static_cast<Eigen::Index>(i)];
      if (events_[i] == 1) death_weight[g] += weights_[i];
    }
    risk_sum[g] = acc;
  }

  std::vector<double> jump_times, values;
  double cumhaz = 0.0;
  for (std::size_t g = 0; g < n_groups; ++g) {
    if (death_weight[g] <= 0.0) continue;
    cumhaz += death_weight[g] / risk_sum[g] * std::exp(-eta_max);
    jump_times.push_back(times_[order_[group_start_[g]]]);
    values.push_back(cumhaz);
  }
  return StepCurve(StepCurve::Kind::kCumulativeHazard, 0.0, std::move(jump_times),
                   std::move(values));
}

namespace {

std::vector<double> effective_weights(const SurvivalDataset& data,
                                      const std::vector<double>* extra_weights) {
  const std::size_t n = data.n_rows();
  std::vector<double> w(n, 1.0);
  if (data.weights)
    for (std::size_t i = 0; i < n; ++i) w[i] = (*data.weights)[i];
  if (extra_weights) {
    if (extra_weights->size() != n)
      throw ValidationError("cox_fit: extra weight length mismatch");
    for (std::size_t i = 0; i < n; ++i) w[i] *= (*extra_weights)[i];
  }
  return w;
}

}  // namespace

CoxModel cox_fit(const SurvivalDataset& data, const CoxFitOptions& options,
                 const std::vector<double>* extra_weights) {
  const auto d = data.features.cols();
  if (static_cast<std::size_t>(data.features.rows()) != data.n_rows())
    throw ValidationError("cox_fit: features/outcomes mismatch");

  const std::vector<double> weights = effective_weights(data, extra_weights);
  double event_weight = 0.0;
  std::size_t n_events = 0;
  for (std::size_t i = 0; i < data.n_rows(); ++i) {
    if (data.events[i] == 1) {
      n_events += 1;
      event_weight += weights[i];
    }
  }
  if (event_weight <= 0.0) throw FitError("cox_fit: no events with positive weight");

  CoxModel model;
  model.trunk.kind = options.representation;
  model.trunk.width = options.hidden_width;
  model.trunk.input_dim = d;
  if (options.representation == Trunk::Kind::kHidden && options.hidden_width <= 0)
    throw ValidationError("cox_fit: hidden representation needs hidden_width > 0");

  const Eigen::Index trunk_dim = model.trunk.param_count();
  const Eigen::Index head_dim = model.trunk.output_dim();
  const Eigen::Index dim = trunk_dim + head_dim;

  CoxLikelihood lik(data.times, data.events, weights);
  const double lambda = options.l2_penalty;

  auto objective = [&](const Eigen::VectorXd& params, Eigen::VectorXd* grad) {
    const Eigen::VectorXd trunk_params = params.head(trunk_dim);
    const Eigen::VectorXd head = params.tail(head_dim);
    const Eigen::MatrixXd activations = model.trunk.forward(trunk_params, data.features);
    const Eigen::VectorXd eta = activations * head;
    Eigen::VectorXd d_eta;
    const double pl = lik.eval(eta, grad ? &d_eta : nullptr);
    const double value = -pl + 0.5 * lambda * params.squaredNorm();
    if (grad) {
      grad->setZero(dim);
      // d(-PL)/d(head) and chain into the trunk.
      grad->tail(head_dim) = -(activations.transpose() * d_eta);
      if (trunk_dim > 0) {
        const Eigen::MatrixXd d_act = -(d_eta * head.transpose());
        Eigen::VectorXd trunk_grad = Eigen::VectorXd::Zero(trunk_dim);
        model.trunk.backprop(trunk_params, data.features, activations, d_act, &trunk_grad);
        grad->head(trunk_dim) += trunk_grad;
      }
      *grad += lambda * params;
    }
    return value;
  };

  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(dim);
  x0.head(trunk_dim) = model.trunk.initial_params(options.init_seed);
  const OptimizeResult result = minimize(objective, x0, options.optimizer);
  if (result.failed())
    throw FitError("cox_fit: optimizer hit a non-finite objective: " + result.status_message());

  model.params = result.x;
  model.head = result.x.tail(head_dim);
  model.n_train = data.n_rows();
  model.d_features = static_cast<std::size_t>(d);
  model.n_train_events = n_events;
  model.report.converged = result.converged();
  model.report.iterations = result.iterations;
  model.report.gradient_norm = result.gradient_norm;
  if (!result.converged())
    model.report.message =
        "partial likelihood did not converge (possible monotone likelihood); "
        "consider l2_penalty > 0";

  const Eigen::MatrixXd activations =
      model.trunk.forward(result.x.head(trunk_dim), data.features);
  Eigen::VectorXd eta = activations * model.head;
  model.baseline = lik.baseline(eta);
  return model;
}

Eigen::VectorXd CoxModel::risk_score(const Eigen::MatrixXd& X) const {
  const Eigen::Index trunk_dim = trunk.param_count();
  const Eigen::MatrixXd activations = trunk.forward(params.head(trunk_dim), X);
  return activations * head;
}

Eigen::VectorXd cox_predict_survival(const CoxModel& model, const Eigen::VectorXd& x,
                                     const std::vector<double>& times) {
  Eigen::MatrixXd X(1, x.size());
  X.row(0) = x.transpose();
  return cox_predict_survival_matrix(model, X, times).row(0).transpose();
}

Eigen::VectorXd cox_predict_risk(const CoxModel& model, const Eigen::VectorXd& x,
                                 const std::vector<double>& times) {
  return Eigen::VectorXd::Ones(static_cast<Eigen::Index>(times.size())) -
         cox_predict_survival(model, x, times);
}

Eigen::MatrixXd cox_predict_survival_matrix(const CoxModel& model, const Eigen::MatrixXd& X,
                                            const std::vector<double>& times) {
  const Eigen::VectorXd scores = model.risk_score(X);
  Eigen::MatrixXd out(X.rows(), static_cast<Eigen::Index>(times.size()));
  for (std::size_t j = 0; j < times.size(); ++j) {
    const double h0 = times[j] <= 0.0 ? 0.0 : model.baseline.eval(times[j]);
    for (Eigen::Index i = 0; i < X.rows(); ++i)
      out(i, static_cast<Eigen::Index>(j)) = std::exp(-h0 * std::exp(scores(i)));
  }
  return out;
}

CounterfactualPair counterfactual_fit(const SurvivalDataset& data,
                                      const CounterfactualOptions& options) {
  if (!data.treatment) throw ValidationError("counterfactual_fit: treatment column required");
  const auto treated_rows = data.arm_rows(1);
  const auto control_rows = data.arm_rows(0);
  if (treated_rows.empty() || control_rows.empty())
    throw FitError("counterfactual_fit: both treatment arms must be present");
  CounterfactualPair pair;
  pair.min_arm_events = options.min_arm_events;
  pair.model_treated = cox_fit(data.subset(treated_rows), options.arm_fit);
  pair.model_control = cox_fit(data.subset(control_rows), options.arm_fit);
  return pair;
}

Eigen::VectorXd counterfactual_mean_survival(const CounterfactualPair& pair,
                                             const Eigen::MatrixXd& features, int arm,
                                             const std::vector<double>& times) {
  if (arm != 0 && arm != 1)
    throw ValidationError("counterfactual_mean_survival: arm must be 0 or 1");
  if (features.rows() == 0)
    throw ValidationError("counterfactual_mean_survival: no rows supplied");
  const CoxModel& model = pair.arm(arm);
  if (model.n_train_events < pair.min_arm_events)
    throw FitError("counterfactual_mean_survival: arm " + std::to_string(arm) +
                   " was trained on fewer than " + std::to_string(pair.min_arm_events) +
                   " events; prediction refused");
  const Eigen::MatrixXd surv = cox_predict_survival_matrix(model, features, times);
  return surv.colwise().mean().transpose();
}

}  // namespace survkit
