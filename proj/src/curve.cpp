#include "ecfuzz/curve.hpp"

namespace ecfuzz {

CurveParams::CurveParams(FieldElement a, FieldElement b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.field() != b_.field()) throw FieldMismatch("curve coefficients from different fields");
  const PrimeField& f = a_.field();
  FieldElement disc =
      f.element(4) * a_ * a_ * a_ + f.element(27) * b_ * b_;  // 4a^3 + 27b^2
  if (disc.is_zero())
    throw SingularCurve("4a^3 + 27b^2 = 0 over GF(" + f.modulus().get_str() + ")");
}

CurveParams CurveParams::with_strict(bool on) const {
  CurveParams c = *this;
  c.strict_ = on;
  return c;
}

CurveParams make_curve(const FieldElement& a, const FieldElement& b) { return {a, b}; }

CurvePoint::CurvePoint(FieldElement x, FieldElement y) {
  if (x.field() != y.field()) throw FieldMismatch("point coordinates from different fields");
  xy_.emplace(std::move(x), std::move(y));
}

const FieldElement& CurvePoint::x() const {
  if (is_infinity()) throw std::logic_error("infinity has no x coordinate");
  return xy_->first;
}

const FieldElement& CurvePoint::y() const {
  if (is_infinity()) throw std::logic_error("infinity has no y coordinate");
  return xy_->second;
}

bool operator==(const CurvePoint& p, const CurvePoint& q) {
  if (p.is_infinity() || q.is_infinity()) return p.is_infinity() == q.is_infinity();
  return p.x() == q.x() && p.y() == q.y();
}

bool on_curve(const CurvePoint& p, const CurveParams& e) {
  if (p.is_infinity()) return true;
  if (p.x().field() != e.field()) return false;
  const FieldElement& x = p.x();
  return p.y() * p.y() == x * x * x + e.a() * x + e.b();
}

CurvePoint negate(const CurvePoint& p) {
  if (p.is_infinity()) return p;
  return {p.x(), -p.y()};
}

namespace {

void check_input(const CurvePoint& p, const CurveParams& e, const char* who) {
  if (!on_curve(p, e)) throw OffCurve(std::string(who) + ": input point not on curve");
}

// strict mode re-checks what the formulas produced
void check_output(const CurvePoint& r, const CurveParams& e, const char* who) {
  if (!on_curve(r, e))
    throw std::logic_error(std::string(who) + ": result fell off the curve (internal error)");
}

}  // namespace

CurvePoint point_add(const CurvePoint& p, const CurvePoint& q, const CurveParams& e) {
  if (e.strict()) {
    check_input(p, e, "point_add");
    check_input(q, e, "point_add");
  }
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  if (p.x() == q.x()) {
    if (p.y() == -q.y()) return CurvePoint::infinity();  // Q = -P (covers y = 0)
    return point_double(p, e);                           // P = Q
  }
  FieldElement lam = (q.y() - p.y()) / (q.x() - p.x());
  FieldElement x3 = lam * lam - p.x() - q.x();
  FieldElement y3 = lam * (p.x() - x3) - p.y();
  CurvePoint r{x3, y3};
  if (e.strict()) check_output(r, e, "point_add");
  return r;
}

CurvePoint point_double(const CurvePoint& p, const CurveParams& e) {
  if (e.strict()) check_input(p, e, "point_double");
  if (p.is_infinity()) return p;
  if (p.y().is_zero()) return CurvePoint::infinity();  // vertical tangent
  const PrimeField& f = e.field();
  FieldElement lam = (f.element(3) * p.x() * p.x() + e.a()) / (f.element(2) * p.y());
  FieldElement x3 = lam * lam - p.x() - p.x();
  FieldElement y3 = lam * (p.x() - x3) - p.y();
  CurvePoint r{x3, y3};
  if (e.strict()) check_output(r, e, "point_double");
  return r;
}

}  // namespace ecfuzz
