#include "regret/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "regret/error.hpp"

namespace regret {

namespace {

bool in_unit_interval(double p) { return p >= 0.0 && p <= 1.0; }

void check_gamma(const WeightingSpec& spec) {
  if (spec.family == WeightFamily::identity) return;
  if (!(spec.gamma >= kMinGamma && spec.gamma <= kMaxGamma)) {
    fail(ErrorKind::parameter, "gamma " + std::to_string(spec.gamma) + " outside [0.3, 1.5]");
  }
}

double raw_weight(const WeightingSpec& spec, double p) {
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  switch (spec.family) {
    case WeightFamily::identity:
      return p;
    case WeightFamily::tversky_kahneman: {
      const double g = spec.gamma;
      const double num = std::pow(p, g);
      return num / std::pow(num + std::pow(1.0 - p, g), 1.0 / g);
    }
    case WeightFamily::prelec:
      return std::exp(-std::pow(-std::log(p), spec.gamma));
  }
  return p;
}

double lerp_segment(double x0, double y0, double x1, double y1, double x) {
  return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

}  // namespace

void validate(const DecisionProblem& problem) {
  const auto& [xr, xh, p, scale] = problem;
  if (!(xr >= -1.0 && xr < xh && xh < 0.0)) {
    fail(ErrorKind::domain, "decision problem needs -1 <= xr < xh < 0, got xr=" + std::to_string(xr) +
                                " xh=" + std::to_string(xh));
  }
  if (!in_unit_interval(p)) fail(ErrorKind::domain, "p_r outside [0, 1]: " + std::to_string(p));
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    fail(ErrorKind::domain, "money_scale must be > 0, got " + std::to_string(scale));
  }
}

std::string_view to_string(WeightFamily family) noexcept {
  switch (family) {
    case WeightFamily::identity: return "identity";
    case WeightFamily::tversky_kahneman: return "tversky-kahneman";
    case WeightFamily::prelec: return "prelec";
  }
  return "identity";
}

std::optional<WeightFamily> parse_weight_family(std::string_view text) noexcept {
  if (text == "identity") return WeightFamily::identity;
  if (text == "tversky-kahneman" || text == "tk") return WeightFamily::tversky_kahneman;
  if (text == "prelec") return WeightFamily::prelec;
  return std::nullopt;
}

double eval_weight(const WeightingSpec& spec, double p) {
  check_gamma(spec);
  if (!in_unit_interval(p)) fail(ErrorKind::domain, "probability outside [0, 1]: " + std::to_string(p));
  return raw_weight(spec, p);
}

double invert_weight(const WeightingSpec& spec, double weight) {
  check_gamma(spec);
  if (!in_unit_interval(weight)) fail(ErrorKind::domain, "weight outside [0, 1]: " + std::to_string(weight));
  if (weight == 0.0 || weight == 1.0 || spec.family == WeightFamily::identity) return weight;
  if (spec.family == WeightFamily::prelec) {
    return std::exp(-std::pow(-std::log(weight), 1.0 / spec.gamma));
  }
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    if (raw_weight(spec, mid) < weight) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

QCurve::QCurve(const std::array<double, kPoints>& q_values) : values_(q_values) {
  for (double v : values_) {
    if (!std::isfinite(v) || !(v < 0.0)) {
      fail(ErrorKind::domain, "Q grid values must be finite and negative, got " + std::to_string(v));
    }
  }
}

QCurve QCurve::identity() { return QCurve(kDeltas); }

QCurve QCurve::from_function(const std::function<double(double)>& q) {
  std::array<double, kPoints> values{};
  std::transform(kDeltas.begin(), kDeltas.end(), values.begin(), q);
  return QCurve(values);
}

bool QCurve::is_monotone() const noexcept {
  return std::is_sorted(values_.begin(), values_.end());
}

QCurve QCurve::scaled(double factor) const {
  if (!(factor > 0.0)) fail(ErrorKind::domain, "Q scale factor must be positive");
  auto values = values_;
  for (double& v : values) v *= factor;
  return QCurve(values);
}

double eval_q(const QCurve& curve, double delta) {
  if (!(std::abs(delta) <= 1.0)) fail(ErrorKind::domain, "Q argument outside [-1, 1]: " + std::to_string(delta));
  if (delta > 0.0) return -eval_q(curve, -delta);
  if (delta == 0.0) return 0.0;

  const auto& xs = QCurve::kDeltas;
  const auto& ys = curve.values();
  if (delta < xs.front()) return lerp_segment(xs[0], ys[0], xs[1], ys[1], delta);
  if (delta >= xs.back()) return lerp_segment(xs.back(), ys.back(), 0.0, 0.0, delta);

  const auto upper = std::upper_bound(xs.begin(), xs.end(), delta);
  const auto k = static_cast<std::size_t>(upper - xs.begin());
  return lerp_segment(xs[k - 1], ys[k - 1], xs[k], ys[k], delta);
}

double net_advantage(const DecisionProblem& problem, const WeightingSpec& w, const QCurve& q) {
  return net_advantage(problem, w, [&q](double d) { return eval_q(q, d); });
}

double net_advantage(const DecisionProblem& problem, const WeightingSpec& w,
                     const std::function<double(double)>& q) {
  validate(problem);
  const double weight = eval_weight(w, problem.p_r);
  const double gain = q(0.0 - problem.xh_norm);
  const double loss = q(problem.xr_norm - problem.xh_norm);
  return weight * gain + (1.0 - weight) * loss;
}

std::string_view to_string(Choice choice) noexcept {
  switch (choice) {
    case Choice::robot: return "robot";
    case Choice::human: return "human";
    case Choice::indifferent: return "indifferent";
  }
  return "indifferent";
}

Choice predict_choice(double e_rh, double epsilon) {
  if (!(epsilon >= 0.0)) fail(ErrorKind::parameter, "indifference tolerance must be >= 0");
  if (e_rh > epsilon) return Choice::robot;
  if (e_rh < -epsilon) return Choice::human;
  return Choice::indifferent;
}

std::int64_t expected_value_cents(const DecisionProblem& problem, Side side) {
  validate(problem);
  const double dollars = side == Side::robot
                             ? (1.0 - problem.p_r) * problem.xr_norm * problem.money_scale
                             : problem.xh_norm * problem.money_scale;
  return std::llround(dollars * 100.0);
}

double expected_value(const DecisionProblem& problem, Side side) {
  return static_cast<double>(expected_value_cents(problem, side)) / 100.0;
}

}  // namespace regret
