#include "binpack/core.hpp"

#include <algorithm>
#include <numeric>

#include "binpack/errors.hpp"

namespace binpack {

Size::Size(Rational value) : value_(std::move(value)) {
  value_.canonicalize();
  if (sgn(value_) <= 0 || value_ > 1) {
    throw ParameterError("item size " + to_string(value_) + " outside (0, 1]");
  }
}

Size::Size(long num, long den) : Size(make_rational(num, den)) {}

Size Size::parse(std::string_view text) { return Size(parse_rational(text)); }

Instance Instance::of(std::initializer_list<std::string_view> sizes) {
  std::vector<Size> items;
  items.reserve(sizes.size());
  for (auto s : sizes) items.push_back(Size::parse(s));
  return Instance(std::move(items));
}

std::vector<std::size_t> sorted_order(const Instance& instance) {
  std::vector<std::size_t> order(instance.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return instance[a] > instance[b];
  });
  return order;
}

Instance sort_nonincreasing(const Instance& instance) {
  std::vector<Size> items;
  items.reserve(instance.size());
  for (std::size_t i : sorted_order(instance)) items.push_back(instance[i]);
  return Instance(std::move(items), instance.meta());
}

bool is_nonincreasing(const Instance& instance) {
  return std::is_sorted(instance.items().begin(), instance.items().end(), std::greater<>{});
}

ValidationReport validate_packing(const Instance& instance, const Packing& packing) {
  if (packing.assignment.size() != instance.size()) {
    throw StructuralError("assignment has " + std::to_string(packing.assignment.size()) +
                          " entries for " + std::to_string(instance.size()) + " items");
  }
  ValidationReport report;
  BinIndex highest = 0;
  for (BinIndex b : packing.assignment) highest = std::max(highest, b);

  std::vector<Rational> load(highest + 1);
  std::vector<std::size_t> count(highest + 1, 0);
  for (std::size_t i = 0; i < instance.size(); ++i) {
    BinIndex b = packing.assignment[i];
    if (b == 0) {
      report.violations.push_back({Violation::Kind::NonPrefix, 0,
                                   "item " + std::to_string(i + 1) + " assigned to bin 0"});
      continue;
    }
    load[b] += instance[i].value();
    ++count[b];
  }
  for (BinIndex b = 1; b <= highest; ++b) {
    if (count[b] == 0) {
      report.violations.push_back({Violation::Kind::NonPrefix, b,
                                   "bin " + std::to_string(b) + " is empty but a later bin is used"});
      continue;
    }
    if (load[b] > 1) {
      report.violations.push_back({Violation::Kind::Capacity, b,
                                   "bin " + std::to_string(b) + " load " + to_string(load[b]) +
                                       " > 1"});
    }
    if (packing.cardinality_cap && count[b] > *packing.cardinality_cap) {
      report.violations.push_back({Violation::Kind::Cardinality, b,
                                   "bin " + std::to_string(b) + " holds " +
                                       std::to_string(count[b]) + " > " +
                                       std::to_string(*packing.cardinality_cap) + " items"});
    }
  }
  return report;
}

Rational total_size(const Instance& instance) {
  Rational sum = 0;
  for (const Size& s : instance.items()) sum += s.value();
  return sum;
}

std::size_t num_bins(const Packing& packing) {
  std::vector<BinIndex> used(packing.assignment);
  std::sort(used.begin(), used.end());
  return static_cast<std::size_t>(std::unique(used.begin(), used.end()) - used.begin());
}

std::vector<std::vector<std::size_t>> bin_contents(const Packing& packing) {
  BinIndex highest = 0;
  for (BinIndex b : packing.assignment) highest = std::max(highest, b);
  std::vector<std::vector<std::size_t>> bins(highest);
  for (std::size_t i = 0; i < packing.assignment.size(); ++i) {
    if (packing.assignment[i] > 0) bins[packing.assignment[i] - 1].push_back(i);
  }
  return bins;
}

std::vector<BinState> bin_states(const Instance& instance, const Packing& packing) {
  auto contents = bin_contents(packing);
  std::vector<BinState> states;
  states.reserve(contents.size());
  for (std::size_t b = 0; b < contents.size(); ++b) {
    BinState s;
    s.index = b + 1;
    for (std::size_t i : contents[b]) s.load += instance[i].value();
    s.count = contents[b].size();
    states.push_back(std::move(s));
  }
  return states;
}

Packing unsort_packing(const Packing& sorted_packing, const std::vector<std::size_t>& order) {
  Packing out;
  out.cardinality_cap = sorted_packing.cardinality_cap;
  out.assignment.assign(order.size(), 0);
  for (std::size_t p = 0; p < order.size(); ++p) out.assignment[order[p]] = sorted_packing.assignment[p];
  return out;
}

}  // namespace binpack
