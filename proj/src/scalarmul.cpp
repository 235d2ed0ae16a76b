#include "ecfuzz/scalarmul.hpp"

#include <stdexcept>

namespace ecfuzz {

namespace {

void require_on_curve(const CurvePoint& p, const CurveParams& e) {
  if (!on_curve(p, e)) throw OffCurve("base point is not on the curve");
}

// Accumulator that mirrors point work with integer multiples for the chain.
struct Tracked {
  CurvePoint point;
  Int multiple;
  Chain* chain;

  void record() {
    if (chain) chain->push_back(multiple);
  }
  void start(CurvePoint p, Int m) {
    point = std::move(p);
    multiple = std::move(m);
    record();
  }
  void dbl(const CurveParams& e, CostReport& cost) {
    point = point_double(point, e);
    multiple *= 2;
    ++cost.doublings;
    record();
  }
  void add(const CurvePoint& q, const Int& m, const CurveParams& e, CostReport& cost) {
    point = point_add(point, q, e);
    multiple += m;
    ++cost.additions;
    record();
  }
};

}  // namespace

const CurvePoint& WindowTable::odd_multiple(long m) const {
  if (m < 1 || m % 2 == 0 || static_cast<std::size_t>(m / 2) >= entries_.size())
    throw std::invalid_argument("window table holds odd multiples 1.." +
                                std::to_string(2 * entries_.size() - 1) + ", asked for " +
                                std::to_string(m));
  return entries_[static_cast<std::size_t>(m / 2)];
}

std::pair<CurvePoint, CostReport> mul_double_add(const Int& k, const CurvePoint& p,
                                                 const CurveParams& e, Chain* chain) {
  if (k < 0) throw std::invalid_argument("scalar must be >= 0, got " + k.get_str());
  require_on_curve(p, e);
  CostReport cost{0, 0, 0, 0, "binary"};
  if (k == 0) return {CurvePoint::infinity(), cost};

  SignedDigitString bits = binary_digits(k);
  Tracked acc{CurvePoint::infinity(), 0, chain};
  acc.start(p, 1);  // leading 1-bit, not an addition
  for (std::size_t i = 1; i < bits.digits.size(); ++i) {
    acc.dbl(e, cost);
    if (bits.digits[i]) acc.add(p, 1, e, cost);
  }
  return {acc.point, cost};
}

std::pair<WindowTable, CostReport> precompute_table(const CurvePoint& p, unsigned psize,
                                                    const CurveParams& e) {
  if (psize < kMinPsize || psize > kMaxPsize)
    throw std::invalid_argument("window width out of range: " + std::to_string(psize));
  require_on_curve(p, e);

  CostReport cost{0, 0, 0, 0, "precompute"};
  std::vector<CurvePoint> entries;
  entries.reserve(std::size_t{1} << (psize - 1));
  entries.push_back(p);
  CurvePoint twice = point_double(p, e);
  ++cost.doublings;
  for (std::size_t i = 1; i < (std::size_t{1} << (psize - 1)); ++i) {
    entries.push_back(point_add(entries.back(), twice, e));  // (2i+1)P = (2i-1)P + 2P
    ++cost.additions;
  }
  cost.table_size = entries.size() - 1;
  cost.nominal_precomp = (std::size_t{1} << psize) - 1;
  return {WindowTable(p, psize, std::move(entries)), cost};
}

namespace {

std::pair<CurvePoint, CostReport> run_windows(const SignedWindowSequence& seq,
                                              const WindowTable& table, const CurveParams& e,
                                              Chain* chain, std::string strategy) {
  CostPrediction predicted = predict_cost(seq);
  CostReport cost{0, 0, predicted.table_size, predicted.nominal_precomp, std::move(strategy)};

  Tracked acc{CurvePoint::infinity(), 0, chain};
  acc.start(table.odd_multiple(seq.leading_digit), seq.leading_digit);
  for (const auto& st : seq.steps) {
    for (std::size_t i = 0; i < st.doublings; ++i) acc.dbl(e, cost);
    if (st.digit > 0) {
      acc.add(table.odd_multiple(st.digit), st.digit, e, cost);
    } else if (st.digit < 0) {
      // negation is free; the combining addition is what costs
      acc.add(negate(table.odd_multiple(-st.digit)), st.digit, e, cost);
    }
  }
  return {acc.point, cost};
}

}  // namespace

std::pair<CurvePoint, CostReport> mul_window(const Int& k, const WindowTable& table,
                                             const CurveParams& e, Chain* chain) {
  require_on_curve(table.base(), e);
  return run_windows(sliding_windows(k, table.psize()), table, e, chain, "window");
}

std::pair<CurvePoint, CostReport> mul_window(const Int& k, const CurvePoint& p, unsigned psize,
                                             const CurveParams& e, Chain* chain) {
  auto [table, build] = precompute_table(p, psize, e);
  return mul_window(k, table, e, chain);
}

std::pair<CurvePoint, CostReport> mul_signed_window(const Int& k, const WindowTable& table,
                                                    const CurveParams& e, Chain* chain) {
  require_on_curve(table.base(), e);
  return run_windows(ones_complement_recode(k, table.psize()), table, e, chain,
                     "ones-complement");
}

std::pair<CurvePoint, CostReport> mul_signed_window(const Int& k, const CurvePoint& p,
                                                    unsigned psize, const CurveParams& e,
                                                    Chain* chain) {
  auto [table, build] = precompute_table(p, psize, e);
  return mul_signed_window(k, table, e, chain);
}

std::pair<CurvePoint, CostReport> mul_runs(const Int& k, const CurvePoint& p,
                                           const CurveParams& e, Chain* chain) {
  require_on_curve(p, e);
  SignedDigitString digits = recode_runs(k);
  CostReport cost{0, 0, 0, 0, "runs"};

  CurvePoint minus_p = negate(p);
  Tracked acc{CurvePoint::infinity(), 0, chain};
  // leading digit of a positive scalar's recoding is always +1
  acc.start(p, 1);
  for (std::size_t i = 1; i < digits.digits.size(); ++i) {
    acc.dbl(e, cost);
    if (digits.digits[i] == 1) acc.add(p, 1, e, cost);
    if (digits.digits[i] == -1) acc.add(minus_p, -1, e, cost);
  }
  return {acc.point, cost};
}

}  // namespace ecfuzz
