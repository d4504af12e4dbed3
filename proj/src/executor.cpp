#include "binpack/executor.hpp"

#include <random>

#include "binpack/errors.hpp"

namespace binpack {

std::string describe(const Action& action) {
  struct Visitor {
    std::string operator()(const PackHead& a) const { return "PackHead(" + std::to_string(a.bin) + ")"; }
    std::string operator()(const PackTail& a) const { return "PackTail(" + std::to_string(a.bin) + ")"; }
    std::string operator()(const OpenBin&) const { return "OpenBin"; }
    std::string operator()(const CloseBin& a) const { return "CloseBin(" + std::to_string(a.bin) + ")"; }
  };
  return std::visit(Visitor{}, action);
}

namespace {

bool fits(const BinState& bin, const std::optional<Size>& item, CardinalityCap cap) {
  return item && cap.admits(bin.count) && bin.load + item->value() <= 1;
}

const BinState* latest_open(const Observation& obs) {
  return obs.open_bins.empty() ? nullptr : &obs.open_bins.back();
}

class MmPolicy final : public DecisionProcedure {
 public:
  explicit MmPolicy(CardinalityCap cap) : cap_(cap) {}
  Action decide(const Observation& obs) override {
    const BinState* bin = latest_open(obs);
    if (!bin) return OpenBin{};
    if (fits(*bin, obs.head, cap_)) return PackHead{bin->index};
    if (fits(*bin, obs.tail, cap_)) return PackTail{bin->index};
    return CloseBin{bin->index};
  }
  std::string name() const override { return "mm"; }

 private:
  CardinalityCap cap_;
};

class OneEndPolicy final : public DecisionProcedure {
 public:
  OneEndPolicy(End end, CardinalityCap cap) : end_(end), cap_(cap) {}
  Action decide(const Observation& obs) override {
    const BinState* bin = latest_open(obs);
    if (!bin) return OpenBin{};
    if (end_ == End::Head && fits(*bin, obs.head, cap_)) return PackHead{bin->index};
    if (end_ == End::Tail && fits(*bin, obs.tail, cap_)) return PackTail{bin->index};
    return CloseBin{bin->index};
  }
  std::string name() const override { return end_ == End::Head ? "always-head" : "always-tail"; }

 private:
  End end_;
  CardinalityCap cap_;
};

class RandomPolicy final : public DecisionProcedure {
 public:
  RandomPolicy(std::uint64_t seed, CardinalityCap cap, SpaceBound space)
      : seed_(seed), rng_(seed), cap_(cap), space_(space) {}

  Action decide(const Observation& obs) override {
    std::vector<Action> packs;
    for (const BinState& bin : obs.open_bins) {
      if (fits(bin, obs.head, cap_)) packs.emplace_back(PackHead{bin.index});
      if (obs.remaining > 1 && fits(bin, obs.tail, cap_)) packs.emplace_back(PackTail{bin.index});
    }
    if (!packs.empty()) return packs[pick(packs.size())];
    if (space_.admits(obs.open_bins.size())) return OpenBin{};
    return CloseBin{obs.open_bins[pick(obs.open_bins.size())].index};
  }
  std::string name() const override { return "random(" + std::to_string(seed_) + ")"; }

 private:
  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }

  std::uint64_t seed_;
  std::mt19937_64 rng_;
  CardinalityCap cap_;
  SpaceBound space_;
};

}  // namespace

std::unique_ptr<DecisionProcedure> make_mm_policy(CardinalityCap cap) {
  return std::make_unique<MmPolicy>(cap);
}

std::unique_ptr<DecisionProcedure> make_always_head_policy(CardinalityCap cap) {
  return std::make_unique<OneEndPolicy>(End::Head, cap);
}

std::unique_ptr<DecisionProcedure> make_always_tail_policy(CardinalityCap cap) {
  return std::make_unique<OneEndPolicy>(End::Tail, cap);
}

std::unique_ptr<DecisionProcedure> make_random_policy(std::uint64_t seed, CardinalityCap cap,
                                                      SpaceBound space) {
  return std::make_unique<RandomPolicy>(seed, cap, space);
}

ProcedureFactory procedure_factory(const std::string& name, std::uint64_t seed, CardinalityCap cap,
                                   SpaceBound space) {
  if (name == "mm") return [cap] { return make_mm_policy(cap); };
  if (name == "always-head") return [cap] { return make_always_head_policy(cap); };
  if (name == "always-tail") return [cap] { return make_always_tail_policy(cap); };
  if (name == "random") return [seed, cap, space] { return make_random_policy(seed, cap, space); };
  throw ParameterError("unknown procedure '" + name + "'");
}

MaxMinSession::MaxMinSession(const Instance& instance, SpaceBound space, CardinalityCap cap,
                             std::optional<std::size_t> step_budget)
    : order_(sorted_order(instance)),
      position_of_(instance.size()),
      space_(space),
      cap_(cap),
      budget_(step_budget.value_or(4 * instance.size())),
      tail_end_(instance.size()),
      assignment_(instance.size(), 0) {
  sorted_.reserve(instance.size());
  for (std::size_t p = 0; p < order_.size(); ++p) {
    sorted_.push_back(instance[order_[p]]);
    position_of_[order_[p]] = p;
  }
}

Observation MaxMinSession::observe() const {
  Observation obs;
  obs.remaining = tail_end_ - head_;
  if (!finished()) {
    obs.head = sorted_[head_];
    obs.tail = sorted_[tail_end_ - 1];
  }
  for (std::size_t b = 0; b < bins_.size(); ++b) {
    if (bins_[b].open) obs.open_bins.push_back({b + 1, bins_[b].load, bins_[b].count});
  }
  return obs;
}

MaxMinSession::Bin& MaxMinSession::open_bin(BinIndex bin, const char* what) {
  if (bin == 0 || bin > bins_.size()) {
    throw ProtocolError(std::string(what) + " refers to nonexistent bin " + std::to_string(bin), steps_);
  }
  Bin& b = bins_[bin - 1];
  if (!b.open) throw ProtocolError(std::string(what) + " refers to closed bin " + std::to_string(bin), steps_);
  return b;
}

TraceEvent MaxMinSession::pack(std::size_t pos, End end, BinIndex bin) {
  const char* what = end == End::Head ? "PackHead" : "PackTail";
  Bin& b = open_bin(bin, what);
  if (!cap_.admits(b.count)) {
    throw ProtocolError(std::string(what) + " exceeds cardinality cap in bin " + std::to_string(bin), steps_);
  }
  if (b.load + sorted_[pos].value() > 1) {
    throw ProtocolError(std::string(what) + " overfills bin " + std::to_string(bin) + " (load " +
                            to_string(b.load) + " + " + to_string(sorted_[pos].value()) + ")",
                        steps_);
  }
  b.load += sorted_[pos].value();
  ++b.count;
  TraceEvent event{order_[pos], end, bin};
  assignment_[order_[pos]] = bin;
  events_.push_back(event);
  return event;
}

std::optional<TraceEvent> MaxMinSession::apply(const Action& action) {
  ++steps_;
  if (finished()) throw ProtocolError(describe(action) + " after all items were packed", steps_);
  if (const auto* a = std::get_if<PackHead>(&action)) {
    TraceEvent e = pack(head_, End::Head, a->bin);
    ++head_;
    return e;
  }
  if (const auto* a = std::get_if<PackTail>(&action)) {
    TraceEvent e = pack(tail_end_ - 1, End::Tail, a->bin);
    --tail_end_;
    return e;
  }
  if (std::holds_alternative<OpenBin>(action)) {
    if (!space_.admits(open_count_)) {
      throw ProtocolError("OpenBin would exceed " + std::to_string(space_.limit()) + " open bins", steps_);
    }
    for (const Bin& b : bins_) {
      if (b.open && b.count == 0) throw ProtocolError("OpenBin while an open bin is still empty", steps_);
    }
    bins_.push_back(Bin{});
    ++open_count_;
    return std::nullopt;
  }
  const auto& close = std::get<CloseBin>(action);
  Bin& b = open_bin(close.bin, "CloseBin");
  if (b.count == 0) throw ProtocolError("CloseBin on empty bin " + std::to_string(close.bin), steps_);
  b.open = false;
  --open_count_;
  return std::nullopt;
}

std::optional<TraceEvent> MaxMinSession::advance(DecisionProcedure& procedure) {
  while (!finished()) {
    if (steps_ >= budget_) {
      throw BudgetError(procedure.name() + " exceeded its budget of " + std::to_string(budget_) +
                        " actions");
    }
    if (auto event = apply(procedure.decide(observe()))) return event;
  }
  return std::nullopt;
}

Trace MaxMinSession::finish(DecisionProcedure& procedure) {
  while (advance(procedure)) {
  }
  return Trace{events_, packing()};
}

Packing MaxMinSession::packing() const {
  return Packing{assignment_, cap_.as_optional()};
}

Trace run_maxmin(DecisionProcedure& procedure, const Instance& instance, SpaceBound space,
                 CardinalityCap cap, std::optional<std::size_t> step_budget) {
  MaxMinSession session(instance, space, cap, step_budget);
  return session.finish(procedure);
}

}  // namespace binpack
