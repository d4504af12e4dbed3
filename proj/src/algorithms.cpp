#include "binpack/algorithms.hpp"

#include "binpack/errors.hpp"

namespace binpack {

CardinalityCap CardinalityCap::of(std::size_t k) {
  if (k < 2) throw ParameterError("cardinality cap must be at least 2, got " + std::to_string(k));
  CardinalityCap c;
  c.k_ = k;
  return c;
}

SpaceBound SpaceBound::of(std::size_t b) {
  if (b < 1) throw ParameterError("space bound must be at least 1");
  SpaceBound s;
  s.b_ = b;
  return s;
}

Packing replay(const std::vector<TraceEvent>& events, std::size_t item_count,
               std::optional<std::size_t> cap) {
  Packing p;
  p.cardinality_cap = cap;
  p.assignment.assign(item_count, 0);
  for (const auto& e : events) {
    if (e.item >= item_count) throw StructuralError("trace event refers to item " + std::to_string(e.item));
    p.assignment[e.item] = e.bin;
  }
  return p;
}

Packing run_nf(const Instance& instance, CardinalityCap cap) {
  Packing p;
  p.cardinality_cap = cap.as_optional();
  p.assignment.reserve(instance.size());
  BinIndex bin = 0;
  Rational load = 0;
  std::size_t count = 0;
  for (const Size& s : instance.items()) {
    if (bin == 0 || load + s.value() > 1 || !cap.admits(count)) {
      ++bin;
      load = 0;
      count = 0;
    }
    load += s.value();
    ++count;
    p.assignment.push_back(bin);
  }
  return p;
}

Packing run_nfd(const Instance& instance, CardinalityCap cap) {
  auto order = sorted_order(instance);
  return unsort_packing(run_nf(sort_nonincreasing(instance), cap), order);
}

Packing run_ff(const Instance& instance) {
  Packing p;
  p.assignment.reserve(instance.size());
  std::vector<Rational> loads;
  for (const Size& s : instance.items()) {
    std::size_t b = 0;
    while (b < loads.size() && loads[b] + s.value() > 1) ++b;
    if (b == loads.size()) loads.emplace_back(0);
    loads[b] += s.value();
    p.assignment.push_back(b + 1);
  }
  return p;
}

Packing run_ffd(const Instance& instance) {
  auto order = sorted_order(instance);
  return unsort_packing(run_ff(sort_nonincreasing(instance)), order);
}

Trace run_mm(const Instance& instance, CardinalityCap cap) {
  const auto order = sorted_order(instance);
  const std::size_t n = instance.size();
  auto size_at = [&](std::size_t pos) -> const Rational& { return instance[order[pos]].value(); };

  Trace trace;
  trace.packing.cardinality_cap = cap.as_optional();
  trace.packing.assignment.assign(n, 0);
  auto put = [&](std::size_t pos, End end, BinIndex bin) {
    trace.packing.assignment[order[pos]] = bin;
    trace.events.push_back({order[pos], end, bin});
  };

  // h and t are 0-based positions into the sorted sequence; the remaining
  // items are [h, t_end).
  std::size_t h = 0;
  std::size_t t_end = n;
  BinIndex bin = 1;
  Rational load = 0;
  while (h < t_end) {
    std::size_t packed = 0;
    while (h < t_end && cap.admits(packed)) {
      if (load + size_at(h) <= 1) {
        load += size_at(h);
        put(h, End::Head, bin);
        ++h;
      } else if (load + size_at(t_end - 1) <= 1) {
        load += size_at(t_end - 1);
        put(t_end - 1, End::Tail, bin);
        --t_end;
      } else {
        break;
      }
      ++packed;
    }
    ++bin;
    load = 0;
  }
  return trace;
}

std::string AlgorithmSpec::id() const {
  std::string base;
  switch (algorithm) {
    case Algorithm::NF: base = "nf"; break;
    case Algorithm::NFD: base = "nfd"; break;
    case Algorithm::FF: base = "ff"; break;
    case Algorithm::FFD: base = "ffd"; break;
    case Algorithm::MM: base = "mm"; break;
  }
  if (cap.bounded()) base += "_" + std::to_string(cap.k());
  return base;
}

AlgorithmSpec parse_algorithm(const std::string& name, std::optional<std::size_t> k) {
  std::string base = name;
  if (auto us = name.find('_'); us != std::string::npos) {
    base = name.substr(0, us);
    std::string digits = name.substr(us + 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw ParameterError("unknown algorithm '" + name + "'");
    }
    std::size_t suffix = std::stoul(digits);
    if (k && *k != suffix) throw ParameterError("conflicting cardinality caps for '" + name + "'");
    k = suffix;
  }
  AlgorithmSpec spec{Algorithm::NF, CardinalityCap::from_optional(k)};
  if (base == "nf") {
    spec.algorithm = Algorithm::NF;
  } else if (base == "nfd") {
    spec.algorithm = Algorithm::NFD;
  } else if (base == "ff") {
    spec.algorithm = Algorithm::FF;
  } else if (base == "ffd") {
    spec.algorithm = Algorithm::FFD;
  } else if (base == "mm") {
    spec.algorithm = Algorithm::MM;
  } else {
    throw ParameterError("unknown algorithm '" + name + "'");
  }
  if ((spec.algorithm == Algorithm::FF || spec.algorithm == Algorithm::FFD) && spec.cap.bounded()) {
    throw ParameterError("no cardinality-constrained variant of " + base);
  }
  return spec;
}

Packing run_algorithm(const AlgorithmSpec& spec, const Instance& instance) {
  switch (spec.algorithm) {
    case Algorithm::NF: return run_nf(instance, spec.cap);
    case Algorithm::NFD: return run_nfd(instance, spec.cap);
    case Algorithm::FF: return run_ff(instance);
    case Algorithm::FFD: return run_ffd(instance);
    case Algorithm::MM: return run_mm(instance, spec.cap).packing;
  }
  throw ParameterError("unknown algorithm");
}

}  // namespace binpack
