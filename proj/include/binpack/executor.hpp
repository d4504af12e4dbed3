#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "binpack/algorithms.hpp"

namespace binpack {

/// What a max-min procedure may look at: the two ends of the remaining
/// sorted sequence and the open bins. Nothing else about the items.
struct Observation {
  std::optional<Size> head;
  std::optional<Size> tail;
  std::size_t remaining = 0;
  std::vector<BinState> open_bins;
};

struct PackHead {
  BinIndex bin;
};
struct PackTail {
  BinIndex bin;
};
struct OpenBin {};
struct CloseBin {
  BinIndex bin;
};

using Action = std::variant<PackHead, PackTail, OpenBin, CloseBin>;

std::string describe(const Action& action);

class DecisionProcedure {
 public:
  virtual ~DecisionProcedure() = default;
  virtual Action decide(const Observation& observation) = 0;
  virtual std::string name() const = 0;
};

/// Fresh, identically initialised procedures; the adversary replays a
/// procedure on two instances and needs the same internal state for both.
using ProcedureFactory = std::function<std::unique_ptr<DecisionProcedure>()>;

/// MM as a policy: head into the open bin if it fits, else tail, else close.
std::unique_ptr<DecisionProcedure> make_mm_policy(CardinalityCap cap = CardinalityCap::unbounded());
/// Next Fit Decreasing as a policy: only ever packs the head.
std::unique_ptr<DecisionProcedure> make_always_head_policy(CardinalityCap cap = CardinalityCap::unbounded());
/// Mirror image of always-head: only ever packs the tail.
std::unique_ptr<DecisionProcedure> make_always_tail_policy(CardinalityCap cap = CardinalityCap::unbounded());
/// Picks uniformly among feasible pack actions; opens a bin (or closes a
/// random one when at the space limit) only when nothing fits.
std::unique_ptr<DecisionProcedure> make_random_policy(std::uint64_t seed,
                                                      CardinalityCap cap = CardinalityCap::unbounded(),
                                                      SpaceBound space = SpaceBound::unbounded());

/// Builds a factory by name: "mm", "always-head", "always-tail", "random".
ProcedureFactory procedure_factory(const std::string& name, std::uint64_t seed = 0,
                                   CardinalityCap cap = CardinalityCap::unbounded(),
                                   SpaceBound space = SpaceBound::unbounded());

/// Resumable executor for max-min decision procedures.
///
/// The session sorts the instance (stably) and then exposes only the head and
/// tail of the remaining sequence. Every action is checked: packed items must
/// fit by size and cardinality, at most B bins may be open, closed bins never
/// reopen, and the total number of actions is bounded by a step budget
/// (default 4n). Items in events and packings use original instance indices.
///
/// Opening a bin while another open bin is still empty, or closing an empty
/// bin, is rejected so that used bin indices always form a prefix.
class MaxMinSession {
 public:
  MaxMinSession(const Instance& instance, SpaceBound space, CardinalityCap cap,
                std::optional<std::size_t> step_budget = std::nullopt);

  bool finished() const noexcept { return head_ == tail_end_; }
  Observation observe() const;

  /// Applies one action; returns the pack event it produced, if any.
  std::optional<TraceEvent> apply(const Action& action);

  /// Asks `procedure` for actions until one item is packed. Returns that
  /// event, or nullopt when the session had already finished.
  std::optional<TraceEvent> advance(DecisionProcedure& procedure);

  /// Runs to completion and returns the full trace.
  Trace finish(DecisionProcedure& procedure);

  const std::vector<TraceEvent>& events() const noexcept { return events_; }
  /// Assignment so far; unpacked items are mapped to bin 0.
  Packing packing() const;

  /// Number of items taken from the head / tail so far.
  std::size_t head_taken() const noexcept { return head_; }
  std::size_t tail_taken() const noexcept { return sorted_.size() - tail_end_; }
  std::size_t steps() const noexcept { return steps_; }
  std::size_t bins_opened() const noexcept { return bins_.size(); }

  /// Position in sorted order of an original item index.
  std::size_t sorted_position(std::size_t item) const { return position_of_.at(item); }

 private:
  struct Bin {
    Rational load;
    std::size_t count = 0;
    bool open = true;
  };

  Bin& open_bin(BinIndex bin, const char* what);
  TraceEvent pack(std::size_t pos, End end, BinIndex bin);

  std::vector<Size> sorted_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> position_of_;
  SpaceBound space_;
  CardinalityCap cap_;
  std::size_t budget_;

  std::size_t head_ = 0;
  std::size_t tail_end_ = 0;
  std::size_t steps_ = 0;
  std::size_t open_count_ = 0;
  std::vector<Bin> bins_;
  std::vector<TraceEvent> events_;
  std::vector<BinIndex> assignment_;
};

/// Runs `procedure` to completion on `instance`.
Trace run_maxmin(DecisionProcedure& procedure, const Instance& instance, SpaceBound space,
                 CardinalityCap cap, std::optional<std::size_t> step_budget = std::nullopt);

}  // namespace binpack
