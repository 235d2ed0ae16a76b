#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ecfuzz {

using Int = mpz_class;

/// Modulus rejected: composite, even, or <= 3.
struct BadModulus : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Elements of two different fields were combined.
struct FieldMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Inverse of zero requested.
struct DivideByZero : std::domain_error {
  using std::domain_error::domain_error;
};

class FieldElement;

// GF(p) for an odd prime p > 3. Cheap to copy; two instances with the same
// modulus are the same field.
class PrimeField {
 public:
  explicit PrimeField(Int p);

  const Int& modulus() const { return *p_; }
  std::size_t bit_length() const;
  // ceil(bit_length/8); used for table memory accounting
  std::size_t element_bytes() const;

  FieldElement element(Int v) const;  // canonical residue of v, any sign
  FieldElement zero() const;
  FieldElement one() const;

  friend bool operator==(const PrimeField& l, const PrimeField& r) {
    return l.p_ == r.p_ || *l.p_ == *r.p_;
  }
  friend bool operator!=(const PrimeField& l, const PrimeField& r) { return !(l == r); }

 private:
  std::shared_ptr<const Int> p_;
};

PrimeField make_field(const Int& p);

// Residue in [0, p). Arithmetic via operators; inverse() is extended Euclid.
class FieldElement {
 public:
  const Int& value() const { return v_; }
  const PrimeField& field() const { return field_; }
  bool is_zero() const { return v_ == 0; }

  FieldElement operator-() const;
  FieldElement inverse() const;
  FieldElement pow(const Int& e) const;  // e >= 0

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

 private:
  friend class PrimeField;
  FieldElement(PrimeField f, Int v) : field_(std::move(f)), v_(std::move(v)) {}

  PrimeField field_;
  Int v_;
};

// One scanned bit of Y: the signed term it contributed to the running sum.
struct ModMulStep {
  std::size_t bit_position;  // 0 = least significant
  int bit;                   // 0 or 1
  Int term;                  // +weight*X for 1-bits, -weight*(p*t) for 0-bits
};

// Full record of a repeated-subtraction modular multiplication.
// Invariants: sum of step terms == raw_sum; reduced == raw_sum mod p.
struct ModMulTrace {
  std::vector<ModMulStep> steps;  // ascending bit position
  Int multiplier_t;               // effective t (0 when Y has no zero bits)
  Int raw_sum;
  Int reduction_steps;  // +/-p steps a plain repeated-subtraction reduction takes
  FieldElement reduced;
};

// Multiplies x*y mod p by scanning the bits of y: 1-bits add weight*x, 0-bits
// subtract weight*(p*t), then the small raw sum is reduced to [0, p).
// When t is not supplied it is chosen as round(x*y / (p*(2^n-1-y))), which
// keeps |raw_sum| locally minimal; t must be > 0 when supplied explicitly.
ModMulTrace fuzzy_modmul(const PrimeField& f, const Int& x, const Int& y,
                         const std::optional<Int>& t = std::nullopt);

}  // namespace ecfuzz
