#pragma once

// Regret-theory decision model for the robot-vs-human lottery pair.
//
// All quantities are in normalized units: an outcome x is stored as x / |x|max,
// where |x|max (money_scale) is the amount whose loss the subject would
// significantly regret. Dollars only appear in display code.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

namespace regret {

/// One robot-vs-human choice problem.
///
/// Robot option: $0 with probability p_r, xr_norm with probability 1 - p_r.
/// Human option: xh_norm with certainty.
struct DecisionProblem {
  double xr_norm = -1.0;     // [-1, 0)
  double xh_norm = -0.5;     // (-1, 0), strictly above xr_norm
  double p_r = 0.5;          // [0, 1]
  double money_scale = 1.0;  // dollars, > 0

  friend bool operator==(const DecisionProblem&, const DecisionProblem&) = default;
};

/// Throws ErrorKind::domain when the problem violates xr < xh < 0, xr >= -1,
/// p_r in [0, 1] or money_scale > 0.
void validate(const DecisionProblem& problem);

enum class WeightFamily { identity, tversky_kahneman, prelec };

std::string_view to_string(WeightFamily family) noexcept;
std::optional<WeightFamily> parse_weight_family(std::string_view text) noexcept;

inline constexpr double kMinGamma = 0.3;
inline constexpr double kMaxGamma = 1.5;

struct WeightingSpec {
  WeightFamily family = WeightFamily::identity;
  double gamma = 1.0;  // ignored for identity

  static WeightingSpec identity() { return {}; }
  static WeightingSpec tversky_kahneman(double g) { return {WeightFamily::tversky_kahneman, g}; }
  static WeightingSpec prelec(double g) { return {WeightFamily::prelec, g}; }

  friend bool operator==(const WeightingSpec&, const WeightingSpec&) = default;
};

/// Probability weighting w(p).
///   identity:          p
///   tversky-kahneman:  p^g / (p^g + (1-p)^g)^(1/g)
///   prelec:            exp(-(-ln p)^g)
/// Endpoints are exact. Throws ErrorKind::parameter for gamma outside
/// [0.3, 1.5] (non-identity families) and ErrorKind::domain for p outside [0, 1].
double eval_weight(const WeightingSpec& spec, double p);

/// Inverse of eval_weight on [0, 1], to within 1e-13.
double invert_weight(const WeightingSpec& spec, double weight);

/// Pointwise regret-utility function Q on the nine chain deltas
/// -0.9, -0.8, ..., -0.1, odd-extended through Q(0) = 0.
class QCurve {
 public:
  static constexpr std::size_t kPoints = 9;
  static constexpr std::array<double, kPoints> kDeltas = {-0.9, -0.8, -0.7, -0.6, -0.5,
                                                          -0.4, -0.3, -0.2, -0.1};
  static constexpr double kAnchorDelta = -0.5;
  static constexpr std::size_t kAnchorIndex = 4;

  /// q_values[k] is Q(kDeltas[k]); every value must be finite and negative.
  explicit QCurve(const std::array<double, kPoints>& q_values);

  /// Q(delta) = delta on the grid.
  static QCurve identity();
  static QCurve from_function(const std::function<double(double)>& q);

  const std::array<double, kPoints>& values() const noexcept { return values_; }
  double at_grid(std::size_t index) const { return values_.at(index); }
  double anchor_value() const noexcept { return values_[kAnchorIndex]; }

  /// True when Q is non-decreasing from -0.9 to -0.1 (as a utility difference
  /// should be). Noisy chains are stored regardless.
  bool is_monotone() const noexcept;

  QCurve scaled(double factor) const;

  friend bool operator==(const QCurve&, const QCurve&) = default;

 private:
  std::array<double, kPoints> values_;
};

/// Piecewise-linear interpolation over the grid plus (0, 0), odd-extended to
/// positive arguments; linear continuation of the outermost segment on
/// [-1, -0.9). Throws ErrorKind::domain for |delta| > 1.
double eval_q(const QCurve& curve, double delta);

/// e_rh = w(p_r) Q(0 - xh) + (1 - w(p_r)) Q(xr - xh).
double net_advantage(const DecisionProblem& problem, const WeightingSpec& w, const QCurve& q);

/// Same formula with an arbitrary odd Q (used by ground-truth subjects).
double net_advantage(const DecisionProblem& problem, const WeightingSpec& w,
                     const std::function<double(double)>& q);

enum class Choice { robot, human, indifferent };

std::string_view to_string(Choice choice) noexcept;

inline constexpr double kDefaultIndifferenceTolerance = 1e-9;

Choice predict_choice(double e_rh, double epsilon = kDefaultIndifferenceTolerance);

enum class Side { robot, human };

/// Expected value of one option in whole cents.
std::int64_t expected_value_cents(const DecisionProblem& problem, Side side);

/// Expected value in dollars, rounded to cents.
double expected_value(const DecisionProblem& problem, Side side);

}  // namespace regret
