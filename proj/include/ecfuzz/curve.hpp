#pragma once

#include <optional>
#include <stdexcept>
#include <utility>

#include "ecfuzz/field.hpp"

namespace ecfuzz {

/// 4a^3 + 27b^2 == 0: the curve has singular points.
struct SingularCurve : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A point that does not satisfy the curve equation was passed in.
struct OffCurve : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// y^2 = x^3 + ax + b over GF(p), nonsingular. In strict mode the group
// operations validate inputs and outputs against the curve equation.
class CurveParams {
 public:
  CurveParams(FieldElement a, FieldElement b);

  const PrimeField& field() const { return a_.field(); }
  const FieldElement& a() const { return a_; }
  const FieldElement& b() const { return b_; }

  bool strict() const { return strict_; }
  CurveParams with_strict(bool on) const;

 private:
  FieldElement a_, b_;
  bool strict_ = false;
};

CurveParams make_curve(const FieldElement& a, const FieldElement& b);

// Affine point or the point at infinity.
class CurvePoint {
 public:
  static CurvePoint infinity() { return CurvePoint(); }
  CurvePoint(FieldElement x, FieldElement y);

  bool is_infinity() const { return !xy_.has_value(); }
  const FieldElement& x() const;
  const FieldElement& y() const;

  friend bool operator==(const CurvePoint& p, const CurvePoint& q);
  friend bool operator!=(const CurvePoint& p, const CurvePoint& q) { return !(p == q); }

 private:
  CurvePoint() = default;
  std::optional<std::pair<FieldElement, FieldElement>> xy_;
};

bool on_curve(const CurvePoint& p, const CurveParams& e);

// (x, y) -> (x, -y); infinity and 2-torsion points are their own negatives.
CurvePoint negate(const CurvePoint& p);

CurvePoint point_add(const CurvePoint& p, const CurvePoint& q, const CurveParams& e);
CurvePoint point_double(const CurvePoint& p, const CurveParams& e);

}  // namespace ecfuzz
