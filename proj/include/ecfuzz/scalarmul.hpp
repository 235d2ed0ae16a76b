#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ecfuzz/curve.hpp"
#include "ecfuzz/recoding.hpp"

namespace ecfuzz {

// Operation counts for one multiplication (or one table build). The first
// placement into the empty accumulator is not an addition; a point
// subtraction counts as an addition; negation is free. Table-building cost is
// never folded into a multiplication's counts.
struct CostReport {
  std::size_t doublings = 0;
  std::size_t additions = 0;
  std::size_t table_size = 0;       // odd multiples beyond 1P the strategy needs
  std::size_t nominal_precomp = 0;  // 2^psize - 1 convention
  std::string strategy;
};

// Odd multiples {1P, 3P, ..., (2^psize - 1)P}.
class WindowTable {
 public:
  const CurvePoint& base() const { return base_; }
  unsigned psize() const { return psize_; }
  std::size_t entry_count() const { return entries_.size(); }  // 2^(psize-1)
  const CurvePoint& odd_multiple(long m) const;                // m odd, 1 <= m <= 2^psize-1

 private:
  friend std::pair<WindowTable, CostReport> precompute_table(const CurvePoint&, unsigned,
                                                             const CurveParams&);
  WindowTable(CurvePoint base, unsigned psize, std::vector<CurvePoint> entries)
      : base_(std::move(base)), psize_(psize), entries_(std::move(entries)) {}

  CurvePoint base_;
  unsigned psize_;
  std::vector<CurvePoint> entries_;
};

// Integer multiples of the base point the accumulator passes through: the
// leading window first, then one entry after every doubling and addition.
using Chain = std::vector<Int>;

// Left-to-right binary double-and-add; the correctness oracle for the rest.
// k = 0 yields infinity at zero cost.
std::pair<CurvePoint, CostReport> mul_double_add(const Int& k, const CurvePoint& p,
                                                 const CurveParams& e, Chain* chain = nullptr);

// Builds the odd-multiple table: one doubling for 2P, then 2^(psize-1) - 1
// additions. The report carries the build cost.
std::pair<WindowTable, CostReport> precompute_table(const CurvePoint& p, unsigned psize,
                                                    const CurveParams& e);

// Evaluates sliding_windows(k, psize) against the table.
std::pair<CurvePoint, CostReport> mul_window(const Int& k, const WindowTable& table,
                                             const CurveParams& e, Chain* chain = nullptr);
std::pair<CurvePoint, CostReport> mul_window(const Int& k, const CurvePoint& p, unsigned psize,
                                             const CurveParams& e, Chain* chain = nullptr);

// Evaluates ones_complement_recode(k, psize); negative digits combine via the
// (free) negated table entry, costing one addition like any other window.
std::pair<CurvePoint, CostReport> mul_signed_window(const Int& k, const WindowTable& table,
                                                    const CurveParams& e, Chain* chain = nullptr);
std::pair<CurvePoint, CostReport> mul_signed_window(const Int& k, const CurvePoint& p,
                                                    unsigned psize, const CurveParams& e,
                                                    Chain* chain = nullptr);

// Evaluates recode_runs(k) digit by digit (add P or add -P).
std::pair<CurvePoint, CostReport> mul_runs(const Int& k, const CurvePoint& p,
                                           const CurveParams& e, Chain* chain = nullptr);

}  // namespace ecfuzz
