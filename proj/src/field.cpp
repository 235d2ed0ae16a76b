#include "ecfuzz/field.hpp"

#include <utility>

namespace ecfuzz {

namespace {

Int canonical(Int v, const Int& p) {
  Int r = v % p;
  if (r < 0) r += p;
  return r;
}

}  // namespace

PrimeField::PrimeField(Int p) {
  if (p <= 3) throw BadModulus("modulus must be an odd prime > 3, got " + p.get_str());
  if (mpz_even_p(p.get_mpz_t())) throw BadModulus("modulus is even: " + p.get_str());
  // 25 Miller-Rabin rounds on top of GMP's base tests
  if (mpz_probab_prime_p(p.get_mpz_t(), 25) == 0)
    throw BadModulus("modulus is composite: " + p.get_str());
  p_ = std::make_shared<const Int>(std::move(p));
}

std::size_t PrimeField::bit_length() const { return mpz_sizeinbase(p_->get_mpz_t(), 2); }

std::size_t PrimeField::element_bytes() const { return (bit_length() + 7) / 8; }

FieldElement PrimeField::element(Int v) const {
  return FieldElement(*this, canonical(std::move(v), *p_));
}

FieldElement PrimeField::zero() const { return FieldElement(*this, 0); }

FieldElement PrimeField::one() const { return FieldElement(*this, 1); }

PrimeField make_field(const Int& p) { return PrimeField(p); }

namespace {

const PrimeField& common_field(const FieldElement& a, const FieldElement& b) {
  if (a.field() != b.field())
    throw FieldMismatch("elements of GF(" + a.field().modulus().get_str() + ") and GF(" +
                        b.field().modulus().get_str() + ") combined");
  return a.field();
}

}  // namespace

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  const PrimeField& f = common_field(a, b);
  Int s = a.value() + b.value();
  if (s >= f.modulus()) s -= f.modulus();
  return f.element(std::move(s));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  const PrimeField& f = common_field(a, b);
  Int s = a.value() - b.value();
  if (s < 0) s += f.modulus();
  return f.element(std::move(s));
}

FieldElement FieldElement::operator-() const {
  if (v_ == 0) return *this;
  return field_.element(field_.modulus() - v_);
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  const PrimeField& f = common_field(a, b);
  return f.element(a.value() * b.value());
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  return a * b.inverse();
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.field() == b.field() && a.value() == b.value();
}

FieldElement FieldElement::inverse() const {
  if (v_ == 0) throw DivideByZero("inverse of 0 in GF(" + field_.modulus().get_str() + ")");
  // extended Euclid: maintain r = old_s * p + ... ; only the s-track matters
  Int old_r = field_.modulus(), r = v_;
  Int old_s = 0, s = 1;
  while (r != 0) {
    Int q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  // old_r = gcd = 1 since p is prime and v_ != 0
  return field_.element(std::move(old_s));
}

FieldElement FieldElement::pow(const Int& e) const {
  Int out;
  mpz_powm(out.get_mpz_t(), v_.get_mpz_t(), e.get_mpz_t(), field_.modulus().get_mpz_t());
  return field_.element(std::move(out));
}

ModMulTrace fuzzy_modmul(const PrimeField& f, const Int& x, const Int& y,
                         const std::optional<Int>& t) {
  if (x < 0 || y < 0) throw std::invalid_argument("fuzzy_modmul needs non-negative operands");
  if (t && *t <= 0)
    throw std::invalid_argument("fuzzy_modmul multiplier t must be positive, got " + t->get_str());

  const Int& p = f.modulus();
  const std::size_t n = (y == 0) ? 0 : mpz_sizeinbase(y.get_mpz_t(), 2);
  Int ones = (Int(1) << n) - 1;  // 2^n - 1
  Int z = ones - y;              // weight of the zero bits

  Int t_eff = 0;
  if (z != 0) {
    if (t) {
      t_eff = *t;
    } else {
      // round(x*y / (p*z)), half away from zero; may be 0 for small products
      Int num = x * y, den = p * z;
      t_eff = (2 * num + den) / (2 * den);
    }
  }

  ModMulTrace trace{{}, t_eff, 0, 0, f.zero()};
  Int pt = p * t_eff;
  for (std::size_t pos = 0; pos < n; ++pos) {
    int bit = mpz_tstbit(y.get_mpz_t(), pos) ? 1 : 0;
    Int weight = Int(1) << pos;
    Int term = bit ? Int(weight * x) : Int(-weight * pt);
    trace.raw_sum += term;
    trace.steps.push_back({pos, bit, std::move(term)});
  }

  trace.reduced = f.element(trace.raw_sum);
  // steps a repeated +/-p reduction would take (computed directly)
  trace.reduction_steps = abs(trace.raw_sum - trace.reduced.value()) / p;
  return trace;
}

}  // namespace ecfuzz
