#pragma once

#include <cstddef>
#include <vector>

#include "ecfuzz/field.hpp"

namespace ecfuzz {

inline constexpr unsigned kMinPsize = 2;
inline constexpr unsigned kMaxPsize = 12;

// MSB-first digit string over {-1, 0, +1}.
struct SignedDigitString {
  std::vector<int> digits;
};

Int evaluate(const SignedDigitString& s);
std::size_t signed_weight(const SignedDigitString& s);  // nonzero digit count

// Plain binary digits of k (k >= 1), no leading zero.
SignedDigitString binary_digits(const Int& k);

// Replaces each maximal run of >= 2 ones by (+1, 0...0, -1), then cancels any
// adjacent opposite-sign pairs the substitution created. Never increases the
// nonzero-digit count.
SignedDigitString recode_runs(const Int& k);

// Windowed form of a scalar. Each step doubles `doublings` times (the zero
// run preceding the window plus the window's own width) and then, for a
// nonzero digit, adds digit*P. A final step may carry digit 0: a trailing
// zero run with no addition. Horner evaluation over the steps recovers k.
struct SignedWindowSequence {
  struct Step {
    std::size_t doublings;
    long digit;  // odd, |digit| <= 2^psize - 1; or 0 on the trailing step
  };
  long leading_digit = 0;      // first window's value, always positive odd
  unsigned leading_width = 0;  // bits the leading window consumed
  std::vector<Step> steps;
  unsigned psize = 0;
};

Int evaluate(const SignedWindowSequence& seq);

// Greedy MSB->LSB scan of the binary digits: a 0-bit becomes a doubling, a
// 1-bit opens the longest window of width <= psize that ends in a 1 (so every
// window value is odd). All digits positive.
SignedWindowSequence sliding_windows(const Int& k, unsigned psize);

// Signed-window form derived from the identity k = 2^n - Comp - 1 with
// n = bitlength(k), Comp = (2^n - 1) - k: digit string +1 at position n,
// minus the bits of Comp, minus 1 at position 0; digits are normalized to
// {-1,0,+1} and adjacent opposite-sign pairs cancelled, then windowed by the
// same greedy scan (windows end at a nonzero digit, values odd and signed).
// Falls back to sliding_windows(k, psize) whenever the signed route would
// need at least as many additions.
SignedWindowSequence ones_complement_recode(const Int& k, unsigned psize);

struct CostPrediction {
  std::size_t doublings = 0;
  std::size_t additions = 0;
  std::size_t table_size = 0;      // odd multiples stored beyond 1P: 2^(psize-1) - 1
  std::size_t nominal_precomp = 0; // all window values 1..2^psize-1: 2^psize - 1
};

// Costs of evaluating seq: doublings = sum of step doublings (equivalently
// bitlength - leading width), additions = nonzero non-leading windows.
CostPrediction predict_cost(const SignedWindowSequence& seq);

}  // namespace ecfuzz
