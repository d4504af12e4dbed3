#include <gtest/gtest.h>

#include "binpack/algorithms.hpp"
#include "binpack/errors.hpp"
#include "binpack/oracle.hpp"
#include "test_support.hpp"

namespace binpack {
namespace {

using testing::grouped;
using testing::groups;

const CardinalityCap kUnbounded = CardinalityCap::unbounded();

TEST(NextFit, HandTraces) {
  const Instance five = Instance::of({"0.6", "0.5", "0.4", "0.3", "0.2"});
  EXPECT_EQ(grouped(five, run_nf(five)), groups({{"0.6"}, {"0.5", "0.4"}, {"0.3", "0.2"}}));

  const Instance tenths = Instance::of({"0.1", "0.1", "0.1"});
  EXPECT_EQ(grouped(tenths, run_nf(tenths, CardinalityCap::of(2))), groups({{"0.1", "0.1"}, {"0.1"}}));

  EXPECT_EQ(num_bins(run_nf(Instance())), 0u);
  EXPECT_EQ(num_bins(run_nf(Instance(), CardinalityCap::of(3))), 0u);
}

TEST(NextFitDecreasing, HandTraces) {
  const Instance a = Instance::of({"0.7", "0.7", "0.3", "0.3"});
  EXPECT_EQ(grouped(a, run_nfd(a)), groups({{"0.7"}, {"0.7", "0.3"}, {"0.3"}}));

  const Instance b = Instance::of({"0.4", "0.4", "0.4", "0.1", "0.1"});
  EXPECT_EQ(grouped(b, run_nfd(b, CardinalityCap::of(2))), groups({{"0.4", "0.4"}, {"0.4", "0.1"}, {"0.1"}}));

  EXPECT_EQ(num_bins(run_nfd(Instance::of({"1"}))), 1u);
  EXPECT_EQ(num_bins(run_nfd(Instance::of({"1"}), CardinalityCap::of(2))), 1u);
}

TEST(FirstFit, HandTraces) {
  const Instance a = Instance::of({"0.3", "0.8", "0.3", "0.4"});
  EXPECT_EQ(grouped(a, run_ff(a)), groups({{"0.3", "0.3", "0.4"}, {"0.8"}}));
  // First bin gets items 0, 2, 3; the 0.8 opens bin 2.
  EXPECT_EQ(run_ff(a).assignment, (std::vector<BinIndex>{1, 2, 1, 1}));
  EXPECT_EQ(num_bins(run_ff(Instance::of({"0.5", "0.5", "0.5"}))), 2u);
  EXPECT_EQ(num_bins(run_ff(Instance())), 0u);
}

TEST(FirstFitDecreasing, HandTraces) {
  const Instance a = Instance::of({"0.3", "0.8", "0.3", "0.4"});
  EXPECT_EQ(grouped(a, run_ffd(a)), groups({{"0.8"}, {"0.4", "0.3", "0.3"}}));
  EXPECT_EQ(run_ffd(a).assignment, (std::vector<BinIndex>{2, 1, 2, 2}));
  EXPECT_EQ(num_bins(run_ffd(Instance::of({"0.6", "0.6", "0.6"}))), 3u);
  EXPECT_EQ(num_bins(run_ffd(Instance::of({"0.5", "0.5"}))), 1u);
}

TEST(MaxMin, HandTraces) {
  const Instance five = Instance::of({"0.6", "0.5", "0.4", "0.3", "0.2"});
  const Trace mm = run_mm(five);
  EXPECT_EQ(grouped(five, mm.packing), groups({{"0.6", "0.2"}, {"0.5", "0.4"}, {"0.3"}}));

  const Instance pairs = Instance::of({"0.7", "0.7", "0.3", "0.3"});
  EXPECT_EQ(grouped(pairs, run_mm(pairs).packing), groups({{"0.7", "0.3"}, {"0.7", "0.3"}}));
  EXPECT_EQ(num_bins(run_nfd(pairs)), 3u);

  const Trace mm2 = run_mm(five, CardinalityCap::of(2));
  EXPECT_EQ(grouped(five, mm2.packing), groups({{"0.6", "0.2"}, {"0.5", "0.4"}, {"0.3"}}));
}

TEST(MaxMin, TraceRecordsEndsInOrder) {
  const Instance five = Instance::of({"0.6", "0.5", "0.4", "0.3", "0.2"});
  const Trace t = run_mm(five);
  // 0.6 head, 0.5 does not fit so 0.2 tail; bin 2: 0.5, 0.4 heads; bin 3: 0.3.
  const std::vector<TraceEvent> expected{{0, End::Head, 1}, {4, End::Tail, 1}, {1, End::Head, 2},
                                         {2, End::Head, 2}, {3, End::Head, 3}};
  EXPECT_EQ(t.events, expected);
  EXPECT_EQ(replay(t.events, five.size()), t.packing);
}

TEST(MaxMin, EmptyInstance) {
  EXPECT_TRUE(run_mm(Instance()).events.empty());
  EXPECT_EQ(num_bins(run_mm(Instance()).packing), 0u);
}

TEST(Algorithms, EveryPackingIsValidUnderItsCap) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 200; ++t) {
    const Instance in = t % 2 ? testing::grid_instance(rng, 1 + t % 25) : testing::boundary_instance(rng, 1 + t % 25);
    for (auto cap : {kUnbounded, CardinalityCap::of(2), CardinalityCap::of(3), CardinalityCap::of(5)}) {
      for (const Packing& p : {run_nf(in, cap), run_nfd(in, cap), run_mm(in, cap).packing}) {
        EXPECT_EQ(p.cardinality_cap, cap.as_optional());
        EXPECT_TRUE(validate_packing(in, p).ok());
      }
    }
    EXPECT_TRUE(validate_packing(in, run_ff(in)).ok());
    EXPECT_TRUE(validate_packing(in, run_ffd(in)).ok());
  }
}

TEST(Algorithms, DecreasingVariantsEqualPlainOnSortedInput) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const Instance in = testing::grid_instance(rng, 1 + t % 20, 60);
    const auto order = sorted_order(in);
    const Instance sorted = sort_nonincreasing(in);
    for (auto cap : {kUnbounded, CardinalityCap::of(3)}) {
      EXPECT_EQ(run_nfd(in, cap), unsort_packing(run_nf(sorted, cap), order));
    }
    EXPECT_EQ(run_ffd(in), unsort_packing(run_ff(sorted), order));
  }
}

TEST(Algorithms, Deterministic) {
  std::mt19937_64 rng(3);
  const Instance in = testing::boundary_instance(rng, 30);
  EXPECT_EQ(run_mm(in).events, run_mm(in).events);
  EXPECT_EQ(run_mm(in, CardinalityCap::of(3)).packing, run_mm(in, CardinalityCap::of(3)).packing);
}

// A bin that is not the last one was closed either because it holds k items
// or because even the smallest remaining item did not fit.
TEST(MaxMin, CloseReasonsFollowFromTrace) {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 300; ++t) {
    const Instance in = t % 2 ? testing::grid_instance(rng, 2 + t % 30) : testing::boundary_instance(rng, 2 + t % 30);
    for (auto cap : {kUnbounded, CardinalityCap::of(2), CardinalityCap::of(4)}) {
      const Trace tr = run_mm(in, cap);
      std::vector<bool> packed(in.size(), false);
      Rational load = 0;
      std::size_t count = 0;
      for (std::size_t e = 0; e < tr.events.size(); ++e) {
        const TraceEvent& ev = tr.events[e];
        packed[ev.item] = true;
        load += in[ev.item].value();
        ++count;
        const bool closes = e + 1 < tr.events.size() && tr.events[e + 1].bin != ev.bin;
        if (!closes) continue;
        EXPECT_EQ(tr.events[e + 1].bin, ev.bin + 1);
        std::optional<Rational> smallest;
        for (std::size_t i = 0; i < in.size(); ++i) {
          if (!packed[i] && (!smallest || in[i].value() < *smallest)) smallest = in[i].value();
        }
        ASSERT_TRUE(smallest.has_value());
        EXPECT_TRUE((cap.bounded() && count == cap.k()) || load + *smallest > 1)
            << "bin " << ev.bin << " closed early on test " << t;
        load = 0;
        count = 0;
      }
    }
  }
}

// For sorted I whose MM_2 packing has a sole class-1 item, let p be the
// largest such index. Items packed with 1..p by any feasible packing are a
// subset of those packed with 1..p by MM_2.
TEST(MaxMin2, PartnersOfLeadingBigItemsAreForced) {
  std::mt19937_64 rng(23);
  int applicable = 0;
  for (int t = 0; t < 400; ++t) {
    const std::size_t n = 2 + t % 7;
    const Instance in =
        sort_nonincreasing(t % 2 ? testing::grid_instance(rng, n, 24) : testing::boundary_instance(rng, n, 120));
    const Packing f = run_mm(in, CardinalityCap::of(2)).packing;
    const auto contents = bin_contents(f);
    std::optional<std::size_t> p;
    for (const auto& bin : contents) {
      if (bin.size() == 1 && in[bin[0]].value() * 2 > 1) p = std::max(p.value_or(0), bin[0]);
    }
    if (!p) continue;
    ++applicable;
    auto partners = [&](const Packing& g) {
      std::vector<bool> with_leading(in.size(), false);
      std::vector<bool> bin_has_leading(in.size() + 1, false);
      for (std::size_t i = 0; i <= *p; ++i) bin_has_leading[g.assignment[i]] = true;
      for (std::size_t j = 0; j < in.size(); ++j) {
        if (j > *p && bin_has_leading[g.assignment[j]]) with_leading[j] = true;
      }
      return with_leading;
    };
    const auto U = partners(f);
    enumerate_packings(in, kUnbounded, [&](const Packing& g) {
      const auto W = partners(g);
      for (std::size_t j = 0; j < in.size(); ++j) ASSERT_TRUE(!W[j] || U[j]) << "test " << t << " item " << j;
    });
  }
  EXPECT_GT(applicable, 50);
}

TEST(AlgorithmSpec, ParsesNamesAndCaps) {
  EXPECT_EQ(parse_algorithm("mm").id(), "mm");
  EXPECT_EQ(parse_algorithm("mm", 3).id(), "mm_3");
  EXPECT_EQ(parse_algorithm("nf_2").id(), "nf_2");
  EXPECT_EQ(parse_algorithm("nfd", 4).cap, CardinalityCap::of(4));
  EXPECT_THROW(parse_algorithm("ffd", 3), ParameterError);
  EXPECT_THROW(parse_algorithm("best-fit"), ParameterError);
  EXPECT_THROW(CardinalityCap::of(1), ParameterError);
  EXPECT_THROW(SpaceBound::of(0), ParameterError);
}

}  // namespace
}  // namespace binpack
