#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "binpack/core.hpp"

namespace binpack {

/// Per-bin item limit: unbounded, or k >= 2.
class CardinalityCap {
 public:
  static CardinalityCap unbounded() { return CardinalityCap(); }
  /// Throws ParameterError for k < 2.
  static CardinalityCap of(std::size_t k);
  static CardinalityCap from_optional(std::optional<std::size_t> k) {
    return k ? of(*k) : unbounded();
  }

  bool bounded() const noexcept { return k_.has_value(); }
  std::size_t k() const { return k_.value(); }
  std::optional<std::size_t> as_optional() const noexcept { return k_; }
  /// Whether a bin currently holding `count` items may take one more.
  bool admits(std::size_t count) const noexcept { return !k_ || count < *k_; }

  bool operator==(const CardinalityCap&) const = default;

 private:
  CardinalityCap() = default;
  std::optional<std::size_t> k_;
};

/// Maximum number of simultaneously open bins: unbounded, or B >= 1.
class SpaceBound {
 public:
  static SpaceBound unbounded() { return SpaceBound(); }
  static SpaceBound of(std::size_t b);

  bool bounded() const noexcept { return b_.has_value(); }
  std::size_t limit() const { return b_.value(); }
  bool admits(std::size_t open) const noexcept { return !b_ || open < *b_; }

  bool operator==(const SpaceBound&) const = default;

 private:
  SpaceBound() = default;
  std::optional<std::size_t> b_;
};

enum class End { Head, Tail };

/// One packed item: its index in the input instance, the end of the remaining
/// sorted sequence it was taken from, and the bin it went to.
struct TraceEvent {
  std::size_t item;
  End end;
  BinIndex bin;

  bool operator==(const TraceEvent&) const = default;
};

struct Trace {
  std::vector<TraceEvent> events;
  Packing packing;
};

/// Rebuilds the assignment implied by a list of events.
Packing replay(const std::vector<TraceEvent>& events, std::size_t item_count,
               std::optional<std::size_t> cap = std::nullopt);

/// Next Fit (NF / NF_k) on the sequence as given.
Packing run_nf(const Instance& instance, CardinalityCap cap = CardinalityCap::unbounded());
/// Next Fit Decreasing (NFD / NFD_k).
Packing run_nfd(const Instance& instance, CardinalityCap cap = CardinalityCap::unbounded());
/// First Fit on the sequence as given.
Packing run_ff(const Instance& instance);
/// First Fit Decreasing.
Packing run_ffd(const Instance& instance);

/// MM (unbounded cap) or MM_k: sort, then fill the single open bin with head
/// items while they fit, then tail items while they fit; close when neither
/// fits or, with a cap, after k items.
Trace run_mm(const Instance& instance, CardinalityCap cap = CardinalityCap::unbounded());

/// Packings returned by the functions above index items in the original order
/// of `instance`, even for the sorting variants.

enum class Algorithm { NF, NFD, FF, FFD, MM };

struct AlgorithmSpec {
  Algorithm algorithm;
  CardinalityCap cap = CardinalityCap::unbounded();

  /// "mm", "mm_3", "nfd_2", ...
  std::string id() const;
};

/// Parses "nf", "nfd", "ff", "ffd", "mm", optionally suffixed "_k". Throws
/// ParameterError on unknown names or a cap on FF/FFD.
AlgorithmSpec parse_algorithm(const std::string& name,
                              std::optional<std::size_t> k = std::nullopt);

Packing run_algorithm(const AlgorithmSpec& spec, const Instance& instance);

}  // namespace binpack
