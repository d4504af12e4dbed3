#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "binpack/algorithms.hpp"
#include "binpack/analysis.hpp"
#include "binpack/core.hpp"

namespace binpack {

struct OptResult {
  std::size_t opt = 0;
  Packing witness;
  std::uint64_t nodes_explored = 0;
};

/// 16, or the value of BINPACK_ORACLE_LIMIT when set to a positive integer.
std::size_t default_oracle_limit();

/// Exact OPT / OPT_k by depth-first branch and bound over items in
/// non-increasing order. Bins with identical (load, count) are tried once,
/// and a branch is cut when its lower bound reaches the incumbent (first-fit
/// decreasing, respecting the cap when there is one). The witness
/// indexes items in the original order. Throws SizeLimitError above `limit`
/// items (default_oracle_limit() when not given).
OptResult opt_exact(const Instance& instance, CardinalityCap cap = CardinalityCap::unbounded(),
                    std::optional<std::size_t> limit = std::nullopt);

inline constexpr std::size_t kEnumerationLimit = 9;

/// Visits every feasible packing exactly once, up to relabeling of bins.
/// Bins are numbered by their smallest item index. Throws SizeLimitError for
/// more than kEnumerationLimit items.
void enumerate_packings(const Instance& instance, CardinalityCap cap,
                        const std::function<void(const Packing&)>& visit);

std::vector<Packing> all_packings(const Instance& instance,
                                  CardinalityCap cap = CardinalityCap::unbounded());

/// Supremum of the total weight of a multiset of at most `max_items` items
/// that fits in one bin, for a piecewise-constant weight function. Sizes may
/// approach each class's open lower end, so a count vector (n_j) is feasible
/// iff sum_j n_j * lower_j < 1. For W2/W3 the default item limit is k; for W1
/// it is 12. Throws UnsupportedError for W4, ParameterError above 12 items.
Rational max_weight_config(const WeightFunction& w, std::optional<std::size_t> max_items = std::nullopt);

}  // namespace binpack
