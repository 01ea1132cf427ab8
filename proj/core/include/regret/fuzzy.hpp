#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>

namespace regret {

/// The five rating levels of each membership scale, bottom to top.
inline constexpr std::array<double, 5> kScaleLevels = {0.0, 0.25, 0.5, 0.75, 1.0};

bool is_scale_level(double mu) noexcept;

/// Nearest scale level, ties rounding up. Throws ErrorKind::domain outside [0, 1].
double snap_to_scale(double mu);

/// A subject's answer: degree of match for each of the three linguistic labels.
struct FuzzyResponse {
  double mu_robot = 0.0;
  double mu_equal = 0.0;
  double mu_human = 0.0;
  std::optional<std::int64_t> respond_ms;  // telemetry only

  friend bool operator==(const FuzzyResponse&, const FuzzyResponse&) = default;
};

/// Throws ErrorKind::level for an off-scale membership and
/// ErrorKind::empty_response when all three are zero.
void validate_response(const FuzzyResponse& response);

enum class ResponseClass { indifferent, robot_leaning, human_leaning };

std::string_view to_string(ResponseClass value) noexcept;

// Indifferent when "equally liking" is rated at least "much" and is maximal;
// otherwise the larger side membership wins and a tie counts as indifferent.
inline constexpr double kIndifferenceLevel = 0.75;

ResponseClass classify_response(const FuzzyResponse& response);

enum class Label { prefer_robot, equally_liking, prefer_human };

std::string_view to_string(Label label) noexcept;

struct Triangle {
  double center = 0.0;
  double half_width = 0.3;
};

struct Ramp {
  double onset = 0.0;
  double saturation = 0.5;
};

/// Membership function of one label over e_rh. Equally-liking is a triangle;
/// the side labels are saturating ramps, prefer-human evaluated at -e.
struct MembershipSpec {
  Label label = Label::equally_liking;
  std::variant<Triangle, Ramp> shape = Triangle{};

  static MembershipSpec equally_liking(Triangle t = {}) { return {Label::equally_liking, t}; }
  static MembershipSpec prefer_robot(Ramp r = {}) { return {Label::prefer_robot, r}; }
  static MembershipSpec prefer_human(Ramp r = {}) { return {Label::prefer_human, r}; }
};

void validate(const MembershipSpec& spec);

double eval_membership(const MembershipSpec& spec, double e_rh);

/// The three label functions used together.
struct MembershipSet {
  MembershipSpec robot = MembershipSpec::prefer_robot();
  MembershipSpec equal = MembershipSpec::equally_liking();
  MembershipSpec human = MembershipSpec::prefer_human();
};

void validate(const MembershipSet& set);

}  // namespace regret
