#include "regret/subject.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "regret/error.hpp"

namespace regret {

void validate(const SubjectModel& model) {
  eval_weight(model.w_true, 0.5);  // throws on a bad gamma
  if (!(model.beta >= 1.0 && model.beta <= 3.0)) fail(ErrorKind::config, "subject beta must lie in [1, 3]");
  if (!(model.noise_sigma >= 0.0)) fail(ErrorKind::config, "noise sigma must be >= 0");
  validate(model.memberships);
}

double power_q(double x, double beta) { return std::copysign(std::pow(std::abs(x), beta), x); }

SyntheticSubject::SyntheticSubject(const SubjectModel& model) : model_(model), rng_(model.seed) {
  validate(model_);
}

double SyntheticSubject::true_net_advantage(const DecisionProblem& problem) const {
  const double beta = model_.beta;
  return net_advantage(problem, model_.w_true, [beta](double x) { return power_q(x, beta); });
}

FuzzyResponse SyntheticSubject::respond(const DecisionProblem& problem) {
  double e = true_net_advantage(problem);
  if (model_.noise_sigma > 0.0) {
    std::normal_distribution<double> noise(0.0, model_.noise_sigma);
    e += noise(rng_);
  }
  return respond_at(model_.memberships, e);
}

FuzzyResponse respond_at(const MembershipSet& memberships, double e_rh) {
  const std::array<double, 3> analog = {eval_membership(memberships.robot, e_rh),
                                        eval_membership(memberships.equal, e_rh),
                                        eval_membership(memberships.human, e_rh)};
  FuzzyResponse r{snap_to_scale(analog[0]), snap_to_scale(analog[1]), snap_to_scale(analog[2]), std::nullopt};
  if (r.mu_robot == 0.0 && r.mu_equal == 0.0 && r.mu_human == 0.0) {
    const auto dominant = std::max_element(analog.begin(), analog.end()) - analog.begin();
    (dominant == 0 ? r.mu_robot : dominant == 1 ? r.mu_equal : r.mu_human) = 0.25;
  }
  return r;
}

double closed_form_p_star(const SubjectModel& model, const Table2Row& row) {
  // Evaluated directly from the ground truth rather than through net_advantage.
  const double gain = power_q(-row.xh_norm, model.beta);
  const double loss = power_q(row.xr_norm - row.xh_norm, model.beta);
  const auto e_at = [&](double p) {
    const double weight = eval_weight(model.w_true, p);
    return weight * gain + (1.0 - weight) * loss;
  };
  double lo = 0.0;
  double hi = 1.0;
  if (!(e_at(lo) < 0.0 && e_at(hi) > 0.0)) {
    fail(ErrorKind::model, "net advantage does not cross zero on row " + std::to_string(row.index));
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (e_at(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace regret
