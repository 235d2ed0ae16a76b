#include "ecfuzz/recoding.hpp"

#include <stdexcept>
#include <string>

namespace ecfuzz {

namespace {

void require_positive(const Int& k) {
  if (k < 1) throw std::invalid_argument("scalar must be >= 1, got " + k.get_str());
}

void require_psize(unsigned psize) {
  if (psize < kMinPsize || psize > kMaxPsize)
    throw std::invalid_argument("window width must lie in [" + std::to_string(kMinPsize) + "," +
                                std::to_string(kMaxPsize) + "], got " + std::to_string(psize));
}

// Cancels adjacent opposite-sign pairs until none remain:
// (+1,-1) -> (0,+1) and (-1,+1) -> (0,-1), MSB side first. Value-preserving.
void cancel_adjacent(std::vector<int>& d) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      if (d[i] == 1 && d[i + 1] == -1) {
        d[i] = 0;
        d[i + 1] = 1;
        changed = true;
      } else if (d[i] == -1 && d[i + 1] == 1) {
        d[i] = 0;
        d[i + 1] = -1;
        changed = true;
      }
    }
  }
}

void trim_leading_zeros(std::vector<int>& d) {
  std::size_t lead = 0;
  while (lead < d.size() && d[lead] == 0) ++lead;
  d.erase(d.begin(), d.begin() + lead);
}

// Greedy MSB->LSB windowing of a digit string whose leading digit is nonzero.
// Windows are the longest slices of width <= psize that end in a nonzero
// digit, so window values are odd; between windows zeros accumulate into the
// next step's doubling count.
SignedWindowSequence windows_of(const std::vector<int>& digits, unsigned psize) {
  SignedWindowSequence seq;
  seq.psize = psize;
  const std::size_t n = digits.size();

  auto window_at = [&](std::size_t i) {
    std::size_t limit = std::min<std::size_t>(psize, n - i);
    std::size_t w = 1;  // digits[i] != 0, so width 1 always qualifies
    for (std::size_t j = limit; j >= 1; --j) {
      if (digits[i + j - 1] != 0) {
        w = j;
        break;
      }
    }
    long v = 0;
    for (std::size_t t = 0; t < w; ++t) v = v * 2 + digits[i + t];
    return std::pair<std::size_t, long>{w, v};
  };

  auto [w0, v0] = window_at(0);
  seq.leading_digit = v0;
  seq.leading_width = static_cast<unsigned>(w0);

  std::size_t zeros = 0;
  for (std::size_t i = w0; i < n;) {
    if (digits[i] == 0) {
      ++zeros;
      ++i;
      continue;
    }
    auto [w, v] = window_at(i);
    seq.steps.push_back({zeros + w, v});
    zeros = 0;
    i += w;
  }
  if (zeros > 0) seq.steps.push_back({zeros, 0});
  return seq;
}

std::vector<int> bits_of(const Int& k) {
  const std::size_t n = mpz_sizeinbase(k.get_mpz_t(), 2);
  std::vector<int> d(n);
  for (std::size_t i = 0; i < n; ++i)
    d[i] = mpz_tstbit(k.get_mpz_t(), n - 1 - i) ? 1 : 0;
  return d;
}

}  // namespace

Int evaluate(const SignedDigitString& s) {
  Int v = 0;
  for (int d : s.digits) v = v * 2 + d;
  return v;
}

std::size_t signed_weight(const SignedDigitString& s) {
  std::size_t w = 0;
  for (int d : s.digits)
    if (d != 0) ++w;
  return w;
}

SignedDigitString binary_digits(const Int& k) {
  require_positive(k);
  return {bits_of(k)};
}

SignedDigitString recode_runs(const Int& k) {
  require_positive(k);
  std::vector<int> bits = bits_of(k);
  // each maximal run of >= 2 ones, bits[i..j]: +1 carried left, -1 at the end
  std::vector<int> d(bits.size() + 1, 0);
  std::size_t i = 0;
  while (i < bits.size()) {
    if (bits[i] == 0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < bits.size() && bits[j + 1] == 1) ++j;
    if (j == i) {
      d[i + 1] = 1;  // lone 1, unchanged
    } else {
      // maximal runs are separated by zeros, so these slots are still free
      d[i] = 1;
      d[j + 1] = -1;
    }
    i = j + 1;
  }
  // a run's trailing -1 next to the following run's +1 cancels to a lone digit
  cancel_adjacent(d);
  trim_leading_zeros(d);
  return {d};
}

Int evaluate(const SignedWindowSequence& seq) {
  Int v = seq.leading_digit;
  for (const auto& st : seq.steps) {
    v <<= st.doublings;
    v += st.digit;
  }
  return v;
}

SignedWindowSequence sliding_windows(const Int& k, unsigned psize) {
  require_positive(k);
  require_psize(psize);
  return windows_of(bits_of(k), psize);
}

SignedWindowSequence ones_complement_recode(const Int& k, unsigned psize) {
  require_positive(k);
  require_psize(psize);

  // k = 2^n - Comp - 1, Comp = (2^n - 1) - k, as a digit string over
  // positions n..0: +1, then -Comp's bits, and -1 more at position 0
  const std::size_t n = mpz_sizeinbase(k.get_mpz_t(), 2);
  Int comp = (Int(1) << n) - 1 - k;
  std::vector<int> d(n + 1, 0);
  d[0] = 1;
  for (std::size_t pos = 0; pos < n; ++pos)
    if (mpz_tstbit(comp.get_mpz_t(), pos)) d[n - pos] -= 1;
  d[n] -= 1;

  // normalize digits into {-1,0,+1}, borrows travel toward the MSB
  int carry = 0;
  for (std::size_t pos = 0; pos <= n; ++pos) {
    std::size_t i = n - pos;
    int v = d[i] + carry;
    carry = 0;
    if (v < -1) {
      v += 2;
      carry = -1;
    } else if (v > 1) {
      v -= 2;
      carry = 1;
    }
    d[i] = v;
  }
  // carry out is impossible: the leading +1 absorbs every borrow
  if (carry != 0) throw std::logic_error("ones-complement digits overflowed");

  cancel_adjacent(d);
  trim_leading_zeros(d);

  SignedWindowSequence signed_seq = windows_of(d, psize);
  signed_seq.psize = psize;

  // the signed route only pays off when it saves additions
  SignedWindowSequence plain = sliding_windows(k, psize);
  if (predict_cost(signed_seq).additions >= predict_cost(plain).additions) return plain;
  return signed_seq;
}

CostPrediction predict_cost(const SignedWindowSequence& seq) {
  CostPrediction c;
  for (const auto& st : seq.steps) {
    c.doublings += st.doublings;
    if (st.digit != 0) ++c.additions;
  }
  c.table_size = (std::size_t{1} << (seq.psize - 1)) - 1;
  c.nominal_precomp = (std::size_t{1} << seq.psize) - 1;
  return c;
}

}  // namespace ecfuzz
