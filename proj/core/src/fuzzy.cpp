#include "regret/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "regret/error.hpp"

namespace regret {

bool is_scale_level(double mu) noexcept {
  return std::find(kScaleLevels.begin(), kScaleLevels.end(), mu) != kScaleLevels.end();
}

double snap_to_scale(double mu) {
  if (!(mu >= 0.0 && mu <= 1.0)) fail(ErrorKind::domain, "membership outside [0, 1]: " + std::to_string(mu));
  return std::floor(mu * 4.0 + 0.5) / 4.0;
}

void validate_response(const FuzzyResponse& r) {
  for (double mu : {r.mu_robot, r.mu_equal, r.mu_human}) {
    if (!is_scale_level(mu)) {
      fail(ErrorKind::level, "membership " + std::to_string(mu) + " is not one of 0, 0.25, 0.5, 0.75, 1");
    }
  }
  if (r.mu_robot == 0.0 && r.mu_equal == 0.0 && r.mu_human == 0.0) {
    fail(ErrorKind::empty_response, "at least one membership must be above zero");
  }
  if (r.respond_ms && *r.respond_ms < 0) fail(ErrorKind::input, "respond_ms must be nonnegative");
}

std::string_view to_string(ResponseClass value) noexcept {
  switch (value) {
    case ResponseClass::indifferent: return "indifferent";
    case ResponseClass::robot_leaning: return "robot-leaning";
    case ResponseClass::human_leaning: return "human-leaning";
  }
  return "indifferent";
}

ResponseClass classify_response(const FuzzyResponse& r) {
  validate_response(r);
  if (r.mu_equal >= kIndifferenceLevel && r.mu_equal >= std::max(r.mu_robot, r.mu_human)) {
    return ResponseClass::indifferent;
  }
  if (r.mu_robot > r.mu_human) return ResponseClass::robot_leaning;
  if (r.mu_human > r.mu_robot) return ResponseClass::human_leaning;
  return ResponseClass::indifferent;
}

std::string_view to_string(Label label) noexcept {
  switch (label) {
    case Label::prefer_robot: return "prefer-robot";
    case Label::equally_liking: return "equally-liking";
    case Label::prefer_human: return "prefer-human";
  }
  return "equally-liking";
}

void validate(const MembershipSpec& spec) {
  if (spec.label == Label::equally_liking) {
    const auto* t = std::get_if<Triangle>(&spec.shape);
    if (t == nullptr) fail(ErrorKind::config, "equally-liking membership must be triangular");
    if (!(t->half_width > 0.0)) fail(ErrorKind::config, "triangle half_width must be > 0");
    return;
  }
  const auto* ramp = std::get_if<Ramp>(&spec.shape);
  if (ramp == nullptr) fail(ErrorKind::config, "side-label membership must be a saturating ramp");
  if (!(ramp->onset < ramp->saturation)) fail(ErrorKind::config, "ramp onset must be below its saturation point");
}

double eval_membership(const MembershipSpec& spec, double e_rh) {
  validate(spec);
  if (const auto* t = std::get_if<Triangle>(&spec.shape)) {
    return std::max(0.0, 1.0 - std::abs(e_rh - t->center) / t->half_width);
  }
  const auto& ramp = std::get<Ramp>(spec.shape);
  const double e = spec.label == Label::prefer_human ? -e_rh : e_rh;
  return std::clamp((e - ramp.onset) / (ramp.saturation - ramp.onset), 0.0, 1.0);
}

void validate(const MembershipSet& set) {
  if (set.robot.label != Label::prefer_robot || set.equal.label != Label::equally_liking ||
      set.human.label != Label::prefer_human) {
    fail(ErrorKind::config, "membership set labels out of place");
  }
  validate(set.robot);
  validate(set.equal);
  validate(set.human);
}

}  // namespace regret
