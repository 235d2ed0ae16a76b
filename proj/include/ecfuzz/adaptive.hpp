#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ecfuzz/fuzzy.hpp"
#include "ecfuzz/scalarmul.hpp"

namespace ecfuzz {

// Resource state of one node running the adaptive loop.
struct NodeState {
  std::size_t storage_capacity = 0;  // bytes available for the window table
  std::size_t table_bytes_used = 0;
  double ema_precompute_load = 0.0;  // in [0,1]
  double ema_doubling_load = 0.0;    // in [0,1]
  unsigned current_psize = 0;
};

// Controller inputs read off the node state: storage_room = used/capacity
// (1 = no room left), the two loads straight from their EMAs.
ControllerInputs derive_inputs(const NodeState& state);

struct AdaptiveConfig {
  std::size_t storage_capacity = 1 << 20;
  double ema_alpha = 0.2;
  unsigned initial_psize = 4;
  bool controller_enabled = true;
};

struct StepRecord {
  Int k;
  unsigned psize = 0;
  bool rebuilt = false;
  CostReport mul_cost;
  CostReport table_cost;  // zeros unless rebuilt
  std::size_t table_bytes = 0;
  ControllerInputs inputs;        // as seen before the step
  ControllerDecision decision;    // applied only when the controller is enabled
};

struct AdaptiveReport {
  std::vector<StepRecord> steps;
  std::size_t total_doublings = 0;
  std::size_t total_additions = 0;
  std::size_t total_table_doublings = 0;
  std::size_t total_table_additions = 0;
  std::size_t rebuilds = 0;
};

// One node's closed loop: each step derives inputs, lets the controller move
// psize (clamped to [2,12] and forced down until the table fits in
// storage_capacity), rebuilds the odd-multiple table when psize changed,
// multiplies with mul_window, then folds the step's normalized cost shares
// into the EMAs. Table bytes = entries * 2 * field element bytes.
class AdaptiveSession {
 public:
  // Throws if even the psize-2 table cannot fit in storage_capacity.
  AdaptiveSession(CurveParams curve, CurvePoint base, RuleBase rules, AdaptiveConfig config);

  std::pair<CurvePoint, StepRecord> step(const Int& k);
  AdaptiveReport run(const std::vector<Int>& workload);

  const NodeState& state() const { return state_; }
  std::size_t table_bytes_for(unsigned psize) const;

 private:
  CurveParams curve_;
  CurvePoint base_;
  RuleBase rules_;
  AdaptiveConfig config_;
  NodeState state_;
  std::optional<WindowTable> table_;
};

}  // namespace ecfuzz
