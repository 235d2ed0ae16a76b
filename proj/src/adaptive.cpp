#include "ecfuzz/adaptive.hpp"

#include <algorithm>
#include <stdexcept>

namespace ecfuzz {

ControllerInputs derive_inputs(const NodeState& state) {
  ControllerInputs in;
  in.storage_room =
      state.storage_capacity
          ? std::min(1.0, static_cast<double>(state.table_bytes_used) /
                              static_cast<double>(state.storage_capacity))
          : 1.0;
  in.pre_computing = std::clamp(state.ema_precompute_load, 0.0, 1.0);
  in.doubling = std::clamp(state.ema_doubling_load, 0.0, 1.0);
  return in;
}

AdaptiveSession::AdaptiveSession(CurveParams curve, CurvePoint base, RuleBase rules,
                                 AdaptiveConfig config)
    : curve_(std::move(curve)),
      base_(std::move(base)),
      rules_(std::move(rules)),
      config_(config) {
  if (!on_curve(base_, curve_)) throw OffCurve("adaptive base point not on curve");
  if (config_.initial_psize < kMinPsize || config_.initial_psize > kMaxPsize)
    throw std::invalid_argument("initial window width out of range");
  if (!(config_.ema_alpha > 0.0 && config_.ema_alpha <= 1.0))
    throw std::invalid_argument("EMA alpha must lie in (0,1]");
  if (table_bytes_for(kMinPsize) > config_.storage_capacity)
    throw std::invalid_argument(
        "storage capacity cannot hold even the smallest window table (" +
        std::to_string(table_bytes_for(kMinPsize)) + " bytes needed)");
  state_.storage_capacity = config_.storage_capacity;
  state_.current_psize = config_.initial_psize;
}

std::size_t AdaptiveSession::table_bytes_for(unsigned psize) const {
  // 2^(psize-1) points, two coordinates each
  return (std::size_t{1} << (psize - 1)) * 2 * curve_.field().element_bytes();
}

std::pair<CurvePoint, StepRecord> AdaptiveSession::step(const Int& k) {
  StepRecord rec;
  rec.k = k;
  rec.inputs = derive_inputs(state_);
  rec.decision = infer(rules_, rec.inputs);

  unsigned psize = state_.current_psize;
  if (config_.controller_enabled)
    psize = decide_window(rules_, rec.inputs, psize, kMinPsize, kMaxPsize);
  while (table_bytes_for(psize) > state_.storage_capacity && psize > kMinPsize) --psize;

  rec.rebuilt = !table_ || table_->psize() != psize;
  if (rec.rebuilt) {
    auto [table, build] = precompute_table(base_, psize, curve_);
    table_ = std::move(table);
    rec.table_cost = build;
    state_.table_bytes_used = table_bytes_for(psize);
  }
  rec.psize = psize;
  rec.table_bytes = state_.table_bytes_used;

  CurvePoint result = CurvePoint::infinity();
  if (k > 0) {
    auto [point, cost] = mul_window(k, *table_, curve_);
    result = point;
    rec.mul_cost = cost;
  } else {
    rec.mul_cost.strategy = "window";
  }

  // per-step load shares; the rebuild is charged to the precompute share
  const double table_ops =
      rec.rebuilt ? static_cast<double>(rec.table_cost.doublings + rec.table_cost.additions) : 0.0;
  const double mul_ops = static_cast<double>(rec.mul_cost.doublings + rec.mul_cost.additions);
  const double total = table_ops + mul_ops;
  const double pre_share = total > 0.0 ? table_ops / total : 0.0;
  const double dbl_share =
      total > 0.0 ? static_cast<double>(rec.mul_cost.doublings) / total : 0.0;
  const double a = config_.ema_alpha;
  state_.ema_precompute_load = (1.0 - a) * state_.ema_precompute_load + a * pre_share;
  state_.ema_doubling_load = (1.0 - a) * state_.ema_doubling_load + a * dbl_share;
  state_.current_psize = psize;

  return {result, rec};
}

AdaptiveReport AdaptiveSession::run(const std::vector<Int>& workload) {
  AdaptiveReport report;
  report.steps.reserve(workload.size());
  for (const Int& k : workload) {
    auto [point, rec] = step(k);
    report.total_doublings += rec.mul_cost.doublings;
    report.total_additions += rec.mul_cost.additions;
    report.total_table_doublings += rec.table_cost.doublings;
    report.total_table_additions += rec.table_cost.additions;
    if (rec.rebuilt) ++report.rebuilds;
    report.steps.push_back(std::move(rec));
  }
  return report;
}

}  // namespace ecfuzz
