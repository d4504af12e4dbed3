#include "binpack/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

#include "binpack/errors.hpp"

namespace binpack {

std::size_t default_oracle_limit() {
  if (const char* env = std::getenv("BINPACK_ORACLE_LIMIT")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 16;
}

namespace {

std::size_t ceil_div(std::int64_t x, std::int64_t cap) {
  return x <= 0 ? 0 : static_cast<std::size_t>((x + cap - 1) / cap);
}

std::size_t ceil_div(const Rational& x, const Rational& cap) {
  if (sgn(x) <= 0) return 0;
  return static_cast<std::size_t>(ceil(Rational(x / cap)).get_ui());
}

/// Branch and bound over sorted sizes; `Num` is either scaled 64-bit
/// integers or exact rationals.
template <class Num>
class BranchAndBound {
 public:
  BranchAndBound(std::vector<Num> sizes, Num capacity, CardinalityCap cap)
      : sizes_(std::move(sizes)), capacity_(std::move(capacity)), cap_(cap),
        suffix_(sizes_.size() + 1, Num(0)), assign_(sizes_.size(), 0) {
    for (std::size_t i = sizes_.size(); i-- > 0;) suffix_[i] = suffix_[i + 1] + sizes_[i];
  }

  void seed(std::size_t bins, std::vector<BinIndex> assignment) {
    best_ = bins;
    best_assign_ = std::move(assignment);
  }

  void run(std::size_t global_lower) {
    global_lower_ = global_lower;
    if (best_ > global_lower_) search(0);
  }

  std::size_t best() const { return best_; }
  const std::vector<BinIndex>& best_assignment() const { return best_assign_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  bool admits(std::size_t b, const Num& item) const {
    return cap_.admits(count_[b]) && load_[b] + item <= capacity_;
  }

  std::size_t lower_bound(std::size_t i) const {
    const std::size_t used = load_.size();
    const Num& smallest = sizes_.back();
    Num usable_room(0);
    std::size_t usable_slots = 0;
    for (std::size_t b = 0; b < used; ++b) {
      if (admits(b, smallest)) {
        usable_room += capacity_ - load_[b];
        if (cap_.bounded()) usable_slots += cap_.k() - count_[b];
      }
    }
    std::size_t lb = used + ceil_div(Num(suffix_[i] - usable_room), capacity_);
    if (cap_.bounded()) {
      std::size_t rest = sizes_.size() - i;
      if (rest > usable_slots) lb = std::max(lb, used + (rest - usable_slots + cap_.k() - 1) / cap_.k());
    }
    return lb;
  }

  void search(std::size_t i) {
    ++nodes_;
    if (i == sizes_.size()) {
      if (load_.size() < best_) {
        best_ = load_.size();
        best_assign_ = assign_;
      }
      return;
    }
    if (lower_bound(i) >= best_) return;

    const Num& item = sizes_[i];
    const std::size_t used = load_.size();

    // An item that exactly completes a bin can always go there when there
    // is no cardinality cap (swap argument with the items that would fill it).
    if (!cap_.bounded()) {
      for (std::size_t b = 0; b < used; ++b) {
        if (load_[b] + item == capacity_) {
          place(i, b);
          search(i + 1);
          unplace(i, b);
          return;
        }
      }
    }

    for (std::size_t b = 0; b < used && best_ > global_lower_; ++b) {
      if (!admits(b, item)) continue;
      bool seen = false;
      for (std::size_t c = 0; c < b && !seen; ++c) {
        seen = load_[c] == load_[b] && count_[c] == count_[b];
      }
      if (seen) continue;
      place(i, b);
      search(i + 1);
      unplace(i, b);
    }
    if (used + 1 < best_ && best_ > global_lower_) {
      load_.push_back(Num(0));
      count_.push_back(0);
      place(i, used);
      search(i + 1);
      load_.pop_back();
      count_.pop_back();
    }
  }

  void place(std::size_t i, std::size_t b) {
    load_[b] += sizes_[i];
    ++count_[b];
    assign_[i] = b + 1;
  }
  void unplace(std::size_t i, std::size_t b) {
    load_[b] -= sizes_[i];
    --count_[b];
    assign_[i] = 0;
  }

  std::vector<Num> sizes_;
  Num capacity_;
  CardinalityCap cap_;
  std::vector<Num> suffix_;
  std::vector<Num> load_;
  std::vector<std::size_t> count_;
  std::vector<BinIndex> assign_;
  std::vector<BinIndex> best_assign_;
  std::size_t best_ = std::numeric_limits<std::size_t>::max();
  std::size_t global_lower_ = 0;
  std::uint64_t nodes_ = 0;
};

/// First fit over sorted items honouring the cap; a valid starting incumbent.
std::vector<BinIndex> first_fit_sorted(const std::vector<Size>& sorted, CardinalityCap cap) {
  std::vector<Rational> loads;
  std::vector<std::size_t> counts;
  std::vector<BinIndex> assign;
  assign.reserve(sorted.size());
  for (const Size& s : sorted) {
    std::size_t b = 0;
    while (b < loads.size() && (loads[b] + s.value() > 1 || !cap.admits(counts[b]))) ++b;
    if (b == loads.size()) {
      loads.emplace_back(0);
      counts.push_back(0);
    }
    loads[b] += s.value();
    ++counts[b];
    assign.push_back(b + 1);
  }
  return assign;
}

template <class Num>
OptResult solve(std::vector<Num> sizes, Num capacity, const std::vector<Size>& sorted,
                CardinalityCap cap, std::size_t global_lower) {
  BranchAndBound<Num> bb(std::move(sizes), std::move(capacity), cap);
  auto incumbent = first_fit_sorted(sorted, cap);
  std::size_t incumbent_bins = 0;
  for (BinIndex b : incumbent) incumbent_bins = std::max(incumbent_bins, b);
  bb.seed(incumbent_bins, std::move(incumbent));
  bb.run(global_lower);
  OptResult result;
  result.opt = bb.best();
  result.witness.assignment = bb.best_assignment();
  result.witness.cardinality_cap = cap.as_optional();
  result.nodes_explored = bb.nodes();
  return result;
}

}  // namespace

OptResult opt_exact(const Instance& instance, CardinalityCap cap, std::optional<std::size_t> limit) {
  const std::size_t max_items = limit.value_or(default_oracle_limit());
  if (instance.size() > max_items) {
    throw SizeLimitError("exact solver limited to " + std::to_string(max_items) + " items, got " +
                         std::to_string(instance.size()));
  }
  if (instance.empty()) return OptResult{0, Packing{{}, cap.as_optional()}, 0};

  const auto order = sorted_order(instance);
  std::vector<Size> sorted;
  sorted.reserve(order.size());
  for (std::size_t i : order) sorted.push_back(instance[i]);

  std::size_t global_lower = ceil(total_size(instance)).get_ui();
  if (cap.bounded()) global_lower = std::max(global_lower, (instance.size() + cap.k() - 1) / cap.k());

  Integer common = 1;
  for (const Size& s : sorted) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), s.value().get_den_mpz_t());

  OptResult result;
  // Scaled sums stay below 2^62 when the capacity is below 2^56 and n <= 64.
  if (instance.size() <= 64 && common < (Integer(1) << 56)) {
    std::vector<std::int64_t> scaled;
    scaled.reserve(sorted.size());
    for (const Size& s : sorted) {
      Integer v = s.value().get_num() * (common / s.value().get_den());
      scaled.push_back(v.get_si());
    }
    result = solve<std::int64_t>(std::move(scaled), common.get_si(), sorted, cap, global_lower);
  } else {
    std::vector<Rational> exact;
    exact.reserve(sorted.size());
    for (const Size& s : sorted) exact.push_back(s.value());
    result = solve<Rational>(std::move(exact), Rational(1), sorted, cap, global_lower);
  }
  result.witness = unsort_packing(result.witness, order);
  return result;
}

void enumerate_packings(const Instance& instance, CardinalityCap cap,
                        const std::function<void(const Packing&)>& visit) {
  const std::size_t n = instance.size();
  if (n > kEnumerationLimit) {
    throw SizeLimitError("enumeration limited to " + std::to_string(kEnumerationLimit) + " items, got " +
                         std::to_string(n));
  }
  Packing current{std::vector<BinIndex>(n, 0), cap.as_optional()};
  std::vector<Rational> loads;
  std::vector<std::size_t> counts;

  // Restricted growth strings: item i joins an existing block or opens the
  // next one, so each set partition appears once.
  std::function<void(std::size_t)> extend = [&](std::size_t i) {
    if (i == n) {
      visit(current);
      return;
    }
    const Rational& s = instance[i].value();
    for (std::size_t b = 0; b < loads.size(); ++b) {
      if (loads[b] + s > 1 || !cap.admits(counts[b])) continue;
      loads[b] += s;
      ++counts[b];
      current.assignment[i] = b + 1;
      extend(i + 1);
      loads[b] -= s;
      --counts[b];
    }
    loads.push_back(s);
    counts.push_back(1);
    current.assignment[i] = loads.size();
    extend(i + 1);
    loads.pop_back();
    counts.pop_back();
  };
  extend(0);
}

std::vector<Packing> all_packings(const Instance& instance, CardinalityCap cap) {
  std::vector<Packing> out;
  enumerate_packings(instance, cap, [&](const Packing& p) { out.push_back(p); });
  return out;
}

Rational max_weight_config(const WeightFunction& w, std::optional<std::size_t> max_items) {
  const auto classes = weight_classes(w);
  const std::size_t budget =
      max_items.value_or(w.kind() == WeightFunction::Kind::W1 ? std::size_t{12} : w.k());
  if (budget > 12) throw ParameterError("max_weight_config supports at most 12 items");

  Rational best = 0;
  std::function<void(std::size_t, std::size_t, const Rational&, const Rational&)> walk =
      [&](std::size_t c, std::size_t items_left, const Rational& size_floor, const Rational& total) {
        if (c == classes.size()) {
          if (total > best) best = total;
          return;
        }
        Rational floor_sum = size_floor;
        Rational weight_total = total;
        for (std::size_t n = 0;; ++n) {
          walk(c + 1, items_left - n, floor_sum, weight_total);
          if (n == items_left) break;
          floor_sum += classes[c].lower;
          if (floor_sum >= 1) break;
          weight_total += classes[c].weight;
        }
      };
  walk(0, budget, Rational(0), Rational(0));
  return best;
}

}  // namespace binpack
