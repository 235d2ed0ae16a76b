#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ecfuzz {

enum class Level { Min, Intermediate, Max };
enum class Action { Down, Stay, Up };

const char* to_string(Level l);
const char* to_string(Action a);

struct MembershipFunction {
  double left, peak, right;  // left <= peak <= right
  double eval(double x) const;
};

double membership_eval(const MembershipFunction& mf, double x);

// Input sets shared by all three inputs (universe [0,1]) and output sets
// (universe [-1,1]). Triangles with half-width 0.5 resp. 1.
namespace sets {
inline constexpr MembershipFunction kMin{-0.5, 0.0, 0.5};
inline constexpr MembershipFunction kIntermediate{0.0, 0.5, 1.0};
inline constexpr MembershipFunction kMax{0.5, 1.0, 1.5};
inline constexpr MembershipFunction kDown{-2.0, -1.0, 0.0};
inline constexpr MembershipFunction kStay{-1.0, 0.0, 1.0};
inline constexpr MembershipFunction kUp{0.0, 1.0, 2.0};
}  // namespace sets

const MembershipFunction& level_set(Level l);

// The three load inputs; clamped to [0,1] before evaluation.
struct ControllerInputs {
  double storage_room = 0.0;
  double pre_computing = 0.0;
  double doubling = 0.0;
};

struct FuzzyRule {
  std::optional<Level> storage;  // nullopt = matches any storage level
  Level pre_computing;
  Level doubling;
  Action consequent;
  double weight = 1.0;  // in (0,1]
  std::string source;   // verbatim origin text (file line or built-in row)
};

struct RuleBase {
  std::vector<FuzzyRule> rules;
  std::string name;

  // The 26-rule table. Three rows carry stray level tokens in their doubling
  // column ("L", "A", "L" at rows 7, 11, 13); they are read as Min,
  // Intermediate, Min so that the 26 antecedents are distinct and only
  // (Intermediate, Max, Min) has no rule. The original tokens stay in source.
  static RuleBase full26();
  // The 9-rule reduction: storage ignored, one rule per
  // (pre_computing, doubling) pair.
  static RuleBase dominant9();
};

inline constexpr double kStayBand = 0.15;  // |crisp| <= band reads as Stay

struct ControllerDecision {
  double crisp = 0.0;  // in [-1, 1]
  Action action = Action::Stay;
  std::vector<std::pair<std::size_t, double>> fired;  // (rule index, activation)
  bool no_rule_fired = false;
};

// Mamdani step: per rule, activation = weight * min of antecedent
// memberships; output sets are scaled by activation and aggregated by max;
// the crisp value is the exact centroid of the aggregate. Zero total
// activation yields Stay at crisp 0 with no_rule_fired set.
ControllerDecision infer(const RuleBase& rb, const ControllerInputs& in,
                         double stay_band = kStayBand);

// Applies the action to the current window width, clamped to [lo, hi].
unsigned decide_window(const RuleBase& rb, const ControllerInputs& in, unsigned current,
                       unsigned lo = 2, unsigned hi = 12, double stay_band = kStayBand);

enum class InputAxis { Storage, PreComputing, Doubling };

const char* to_string(InputAxis a);

struct SurfacePoint {
  double a, b;  // free-input coordinates
  double crisp;
};

// Crisp output over the two free inputs' unit square, the remaining input
// held at fixed_value (default: doubling at 0.5). Points are emitted row by
// row, first axis fastest. Free axes keep the storage/pre/doubling order.
struct SurfaceGrid {
  InputAxis axis_a, axis_b;
  InputAxis fixed_axis;
  double fixed_value;
  unsigned resolution;
  std::vector<SurfacePoint> points;
};

SurfaceGrid surface_grid(const RuleBase& rb,
                         std::optional<std::pair<InputAxis, double>> fixed = std::nullopt,
                         unsigned resolution = 51);

}  // namespace ecfuzz
