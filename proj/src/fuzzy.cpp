#include "ecfuzz/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ecfuzz {

const char* to_string(Level l) {
  switch (l) {
    case Level::Min: return "Mi";
    case Level::Intermediate: return "I";
    case Level::Max: return "Mx";
  }
  return "?";
}

const char* to_string(Action a) {
  switch (a) {
    case Action::Down: return "D";
    case Action::Stay: return "S";
    case Action::Up: return "U";
  }
  return "?";
}

const char* to_string(InputAxis a) {
  switch (a) {
    case InputAxis::Storage: return "storage";
    case InputAxis::PreComputing: return "precomputing";
    case InputAxis::Doubling: return "doubling";
  }
  return "?";
}

double MembershipFunction::eval(double x) const {
  if (x <= left || x >= right) return 0.0;
  if (x == peak) return 1.0;
  if (x < peak) return (x - left) / (peak - left);
  return (right - x) / (right - peak);
}

double membership_eval(const MembershipFunction& mf, double x) { return mf.eval(x); }

const MembershipFunction& level_set(Level l) {
  switch (l) {
    case Level::Min: return sets::kMin;
    case Level::Intermediate: return sets::kIntermediate;
    case Level::Max: return sets::kMax;
  }
  throw std::logic_error("bad level");
}

namespace {

FuzzyRule rule(const char* storage, Level pre, Level dbl, Action act, std::string src) {
  FuzzyRule r;
  if (storage[0] != 'a') {  // "any" vs a level token
    r.storage = storage[0] == 'M' && storage[1] == 'i'   ? Level::Min
                : storage[0] == 'I'                      ? Level::Intermediate
                                                         : Level::Max;
  }
  r.pre_computing = pre;
  r.doubling = dbl;
  r.consequent = act;
  r.source = std::move(src);
  return r;
}

constexpr Level Mi = Level::Min, In = Level::Intermediate, Mx = Level::Max;
constexpr Action D = Action::Down, S = Action::Stay, U = Action::Up;

}  // namespace

RuleBase RuleBase::full26() {
  RuleBase rb;
  rb.name = "full26";
  rb.rules = {
      rule("Mi", Mi, Mi, U, "Mi Mi Mi U"),
      rule("Mi", Mi, In, U, "Mi Mi I U"),
      rule("Mi", Mi, Mx, S, "Mi Mi Mx S"),
      rule("Mi", In, Mi, U, "Mi I Mi U"),
      rule("Mi", In, In, U, "Mi I I U"),
      rule("Mi", In, Mx, S, "Mi I Mx S"),
      rule("Mi", Mx, Mi, U, "Mi Mx L U"),  // stray "L" read as Mi
      rule("Mi", Mx, In, S, "Mi Mx I S"),
      rule("Mi", Mx, Mx, S, "Mi Mx Mx S"),
      rule("I", Mi, Mi, U, "I Mi Mi U"),
      rule("I", Mi, In, U, "I Mi A U"),  // stray "A" read as I
      rule("I", Mi, Mx, S, "I Mi Mx S"),
      rule("I", In, Mi, U, "I I L U"),  // stray "L" read as Mi
      rule("I", In, In, S, "I I I S"),
      rule("I", In, Mx, D, "I I Mx D"),
      rule("I", Mx, In, S, "I Mx I S"),
      rule("I", Mx, Mx, S, "I Mx Mx S"),
      rule("Mx", Mi, Mi, S, "Mx Mi Mi S"),
      rule("Mx", Mi, In, S, "Mx Mi I S"),
      rule("Mx", Mi, Mx, D, "Mx Mi Mx D"),
      rule("Mx", In, Mi, S, "Mx I Mi S"),
      rule("Mx", In, In, S, "Mx I I S"),
      rule("Mx", In, Mx, D, "Mx I Mx D"),
      rule("Mx", Mx, Mi, D, "Mx Mx Mi D"),
      rule("Mx", Mx, In, D, "Mx Mx I D"),
      rule("Mx", Mx, Mx, D, "Mx Mx Mx D"),
  };
  return rb;
}

RuleBase RuleBase::dominant9() {
  RuleBase rb;
  rb.name = "dominant9";
  rb.rules = {
      rule("any", Mi, Mi, U, "any Mi Mi U"),
      rule("any", Mi, In, U, "any Mi I U"),
      rule("any", Mi, Mx, S, "any Mi Mx S"),
      rule("any", In, Mi, U, "any I Mi U"),
      rule("any", In, In, U, "any I I U"),
      rule("any", In, Mx, S, "any I Mx S"),
      rule("any", Mx, Mi, U, "any Mx Mi U"),
      rule("any", Mx, In, S, "any Mx I S"),
      rule("any", Mx, Mx, S, "any Mx Mx S"),
  };
  return rb;
}

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Centroid of g(x) = max(sd*ramp_down, ss*ramp_stay, su*ramp_up) on [-1,1],
// computed exactly. On each half-interval g is the max of two lines, so the
// only extra breakpoints are the crossovers -ss/(sd+ss) and ss/(ss+su).
double exact_centroid(double sd, double ss, double su) {
  double bps[5];  // -1, 0, 1 and up to one crossover per half
  std::size_t nb = 0;
  bps[nb++] = -1.0;
  if (sd + ss > 0.0) {
    double c = -ss / (sd + ss);
    if (c > -1.0 && c < 0.0) bps[nb++] = c;
  }
  bps[nb++] = 0.0;
  if (ss + su > 0.0) {
    double c = ss / (ss + su);
    if (c > 0.0 && c < 1.0) bps[nb++] = c;
  }
  bps[nb++] = 1.0;

  auto g = [&](double x) {
    double v = ss * (1.0 - std::abs(x));
    if (x <= 0.0) v = std::max(v, sd * -x);
    if (x >= 0.0) v = std::max(v, su * x);
    return std::max(v, 0.0);
  };

  double area = 0.0, moment = 0.0;
  for (std::size_t i = 0; i + 1 < nb; ++i) {
    double l = bps[i], r = bps[i + 1], gl = g(l), gr = g(r);
    area += 0.5 * (gl + gr) * (r - l);
    // integral of x*g over a segment where g is linear
    moment += (r - l) * (gl * (2.0 * l + r) + gr * (l + 2.0 * r)) / 6.0;
  }
  return area > 0.0 ? moment / area : 0.0;
}

Action action_for(double crisp, double stay_band) {
  if (crisp > stay_band) return Action::Up;
  if (crisp < -stay_band) return Action::Down;
  return Action::Stay;
}

}  // namespace

ControllerDecision infer(const RuleBase& rb, const ControllerInputs& in, double stay_band) {
  const double s = clamp01(in.storage_room);
  const double p = clamp01(in.pre_computing);
  const double d = clamp01(in.doubling);

  ControllerDecision out;
  double strength[3] = {0.0, 0.0, 0.0};  // Down, Stay, Up
  for (std::size_t i = 0; i < rb.rules.size(); ++i) {
    const FuzzyRule& r = rb.rules[i];
    double m = r.storage ? level_set(*r.storage).eval(s) : 1.0;
    m = std::min(m, level_set(r.pre_computing).eval(p));
    m = std::min(m, level_set(r.doubling).eval(d));
    double activation = r.weight * m;
    if (activation <= 0.0) continue;
    out.fired.emplace_back(i, activation);
    double& agg = strength[static_cast<int>(r.consequent)];
    agg = std::max(agg, activation);
  }

  if (rb.rules.empty() || out.fired.empty()) {
    out.no_rule_fired = true;
    out.crisp = 0.0;
    out.action = Action::Stay;
    return out;
  }
  out.crisp = exact_centroid(strength[0], strength[1], strength[2]);
  out.action = action_for(out.crisp, stay_band);
  return out;
}

unsigned decide_window(const RuleBase& rb, const ControllerInputs& in, unsigned current,
                       unsigned lo, unsigned hi, double stay_band) {
  switch (infer(rb, in, stay_band).action) {
    case Action::Up: current = current < hi ? current + 1 : hi; break;
    case Action::Down: current = current > lo ? current - 1 : lo; break;
    case Action::Stay: break;
  }
  return std::clamp(current, lo, hi);
}

SurfaceGrid surface_grid(const RuleBase& rb, std::optional<std::pair<InputAxis, double>> fixed,
                         unsigned resolution) {
  if (resolution < 2) throw std::invalid_argument("surface resolution must be >= 2");
  SurfaceGrid grid;
  grid.fixed_axis = fixed ? fixed->first : InputAxis::Doubling;
  grid.fixed_value = fixed ? clamp01(fixed->second) : 0.5;
  grid.resolution = resolution;
  // free axes keep the (storage, precomputing, doubling) order
  switch (grid.fixed_axis) {
    case InputAxis::Storage:
      grid.axis_a = InputAxis::PreComputing;
      grid.axis_b = InputAxis::Doubling;
      break;
    case InputAxis::PreComputing:
      grid.axis_a = InputAxis::Storage;
      grid.axis_b = InputAxis::Doubling;
      break;
    case InputAxis::Doubling:
      grid.axis_a = InputAxis::Storage;
      grid.axis_b = InputAxis::PreComputing;
      break;
  }

  grid.points.reserve(static_cast<std::size_t>(resolution) * resolution);
  for (unsigned j = 0; j < resolution; ++j) {
    double b = static_cast<double>(j) / (resolution - 1);
    for (unsigned i = 0; i < resolution; ++i) {
      double a = static_cast<double>(i) / (resolution - 1);
      ControllerInputs in;
      auto set = [&](InputAxis ax, double v) {
        switch (ax) {
          case InputAxis::Storage: in.storage_room = v; break;
          case InputAxis::PreComputing: in.pre_computing = v; break;
          case InputAxis::Doubling: in.doubling = v; break;
        }
      };
      set(grid.axis_a, a);
      set(grid.axis_b, b);
      set(grid.fixed_axis, grid.fixed_value);
      grid.points.push_back({a, b, infer(rb, in).crisp});
    }
  }
  return grid;
}

}  // namespace ecfuzz
