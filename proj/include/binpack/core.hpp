#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "binpack/rational.hpp"

namespace binpack {

/// An item size: an exact rational in (0, 1], kept in lowest terms.
class Size {
 public:
  /// Throws ParameterError unless 0 < value <= 1.
  explicit Size(Rational value);
  Size(long num, long den);

  /// Parses the instance-file item syntax ("p/q" or a decimal literal).
  static Size parse(std::string_view text);

  const Rational& value() const noexcept { return value_; }

  friend bool operator==(const Size& a, const Size& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Size& a, const Size& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Rational value_;
};

using ParamMap = std::map<std::string, Rational>;

/// Records which generator produced an instance and with which parameters.
struct GeneratorMeta {
  std::string name;
  ParamMap params;

  bool operator==(const GeneratorMeta&) const = default;
};

/// An ordered item sequence. Order matters: algorithms consume it front to back.
class Instance {
 public:
  Instance() = default;
  explicit Instance(std::vector<Size> items, std::optional<GeneratorMeta> meta = std::nullopt)
      : items_(std::move(items)), meta_(std::move(meta)) {}

  /// Test/CLI convenience: each string is parsed with Size::parse.
  static Instance of(std::initializer_list<std::string_view> sizes);

  const std::vector<Size>& items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  const Size& operator[](std::size_t i) const { return items_[i]; }

  const std::optional<GeneratorMeta>& meta() const noexcept { return meta_; }
  void set_meta(GeneratorMeta meta) { meta_ = std::move(meta); }

 private:
  std::vector<Size> items_;
  std::optional<GeneratorMeta> meta_;
};

/// 1-based bin number; bins are numbered in the order they are opened.
using BinIndex = std::size_t;

/// Item i (0-based position in the instance) goes to bin assignment[i].
struct Packing {
  std::vector<BinIndex> assignment;
  std::optional<std::size_t> cardinality_cap;

  bool operator==(const Packing&) const = default;
};

struct BinState {
  BinIndex index = 0;
  Rational load;
  std::size_t count = 0;
};

struct Violation {
  enum class Kind { Capacity, Cardinality, NonPrefix };
  Kind kind;
  BinIndex bin;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Stable non-increasing sort; returns a new instance with the same metadata.
Instance sort_nonincreasing(const Instance& instance);

/// Permutation used by sort_nonincreasing: element p is the original index of
/// the item that lands at sorted position p.
std::vector<std::size_t> sorted_order(const Instance& instance);

bool is_nonincreasing(const Instance& instance);

/// Throws StructuralError when the assignment length differs from the item count.
ValidationReport validate_packing(const Instance& instance, const Packing& packing);

Rational total_size(const Instance& instance);

std::size_t num_bins(const Packing& packing);

/// Item indices per bin; element b lists the items of bin b + 1 in index order.
std::vector<std::vector<std::size_t>> bin_contents(const Packing& packing);

std::vector<BinState> bin_states(const Instance& instance, const Packing& packing);

/// Re-expresses a packing of `sort_nonincreasing(instance)` in terms of the
/// original item order, given `order = sorted_order(instance)`.
Packing unsort_packing(const Packing& sorted_packing, const std::vector<std::size_t>& order);

}  // namespace binpack
