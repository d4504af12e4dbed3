// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fail.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "binpack/adversary.hpp"
#include "binpack/analysis.hpp"
#include "binpack/executor.hpp"
#include "binpack/harness.hpp"
#include "binpack/oracle.hpp"

using namespace binpack;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Instance random_trial(std::mt19937_64& rng, std::size_t max_n, SizeModel model, std::size_t k = 9) {
  std::uniform_int_distribution<std::size_t> n(1, max_n);
  RandomInstanceSpec spec;
  spec.n = n(rng);
  spec.model = model;
  spec.k = k;
  return random_instance(spec, rng);
}

Outcome constants() {
  Outcome o;
  const std::vector<long> pis{2, 3, 7, 43, 1807};
  for (std::size_t i = 1; i <= 5; ++i) {
    if (pi(i) != pis[i - 1]) o = {false, "pi(" + std::to_string(i) + ") = " + pi(i).get_str()};
  }
  const std::vector<Rational> lambdas{make_rational(3, 2), make_rational(11, 6), 2, make_rational(21, 10)};
  for (std::size_t k = 2; k <= 5; ++k) {
    if (lambda(k) != lambdas[k - 2]) o = {false, "lambda(" + std::to_string(k) + ") = " + to_string(lambda(k))};
  }
  const Rational g5 = gamma_partial_sum(5);
  if (g5 < make_rational(16910, 10000) || g5 > make_rational(16911, 10000)) {
    o = {false, "gamma partial sum K=5 = " + to_string(g5)};
  }
  if (o.pass) o.detail = "pi(1..5), lambda(2..5) exact; gamma_5 = " + std::to_string(g5.get_d());
  return o;
}

Outcome mm2_optimality() {
  std::mt19937_64 rng(2024);
  const auto cap = CardinalityCap::of(2);
  std::size_t equal = 0;
  for (int t = 0; t < 1000; ++t) {
    const Instance in = random_trial(rng, 14, t % 2 ? SizeModel::Grid : SizeModel::Mixed, 2);
    const std::size_t opt = opt_exact(in, cap, 14).opt;
    const std::size_t mm = num_bins(run_mm(in, cap).packing);
    if (mm == opt) ++equal;
  }
  return {equal == 1000, std::to_string(equal) + "/1000 instances with MM_2 = OPT_2"};
}

Outcome upper_bounds() {
  struct Case {
    std::string bound;
    std::optional<std::size_t> k;
  };
  const std::vector<Case> cases{{"mm_cr", std::nullopt}, {"mm_k_cr", 3}, {"mm_k_cr", 4}, {"mm_k_cr", 5},
                                {"nfd_gamma", std::nullopt}, {"nfd_k", 2}, {"nfd_k", 3}, {"nfd_k", 4},
                                {"nf_k", 2}, {"nf_k", 3}, {"nf_k", 4}};
  std::size_t violations = 0, trials = 0;
  std::uint64_t seed = 300;
  for (const auto& c : cases) {
    VerifyConfig config;
    config.bound = c.bound;
    config.k = c.k;
    config.trials = 500;
    config.max_n = 12;
    config.seed = ++seed;
    config.model = SizeModel::Mixed;
    const auto r = run_verify(config);
    violations += r.violations + r.skipped;
    trials += r.rows.size();
  }
  return {violations == 0, std::to_string(trials) + " trials over 11 bound/k pairs, " + std::to_string(violations) +
                               " violations or skips"};
}

Outcome lower_bound_generators() {
  Outcome o;
  std::ostringstream detail;
  auto bins = [](const CertifiedInstance& ci, const std::string& alg, std::optional<std::size_t> k) {
    verify_certificate(ci);
    return num_bins(run_algorithm(parse_algorithm(alg, k), ci.instance));
  };
  auto expect = [&](const std::string& what, std::size_t got, std::size_t low, std::optional<std::size_t> high) {
    detail << what << "=" << got << " ";
    if (got < low || (high && got > *high)) o.pass = false;
  };
  expect("maxmin-unit(20):MM", bins(gen_maxmin_unit_lb(20), "mm", std::nullopt), 25, std::nullopt);
  expect("maxmin-bounded(30,1):MM", bins(gen_maxmin_bounded_lb(30, 1), "mm", std::nullopt), 34, std::nullopt);
  const std::size_t gamma_cap = floor(gamma_upper_for_bounds() * 42 + 3).get_ui();
  expect("presorted(3,42):NFD", bins(gen_presorted_bounded_lb(3, 42), "nfd", std::nullopt), 68, gamma_cap);
  expect("online(2,10):NF_2", bins(gen_online_unit_lb(2, 10), "nf", 2), 18, std::nullopt);
  expect("kcard(8,21,1):MM_8", bins(gen_kcard_bounded_lb(8, 21, 1), "mm", 8), 31, std::nullopt);

  // Small members of every family are confirmed by the exact solver.
  const std::vector<CertifiedInstance> small{gen_maxmin_unit_lb(2),      gen_maxmin_unit_lb(4),
                                             gen_maxmin_unit_lb(4, true), gen_maxmin_bounded_lb(3, 1),
                                             gen_presorted_bounded_lb(3, 4), gen_kcard_bounded_lb(4, 3, 1),
                                             gen_online_unit_lb(2, 4),   gen_online_unit_lb(4, 4)};
  std::size_t confirmed = 0;
  for (const auto& ci : small) {
    const auto cap = CardinalityCap::from_optional(ci.certificate.cardinality_cap);
    if (opt_exact(ci.instance, cap, ci.instance.size()).opt == ci.claimed_opt) ++confirmed;
  }
  detail << "oracle-confirmed " << confirmed << "/" << small.size();
  if (confirmed != small.size()) o.pass = false;
  o.detail = detail.str();
  return o;
}

Outcome adaptive_adversary() {
  std::vector<std::pair<std::string, ProcedureFactory>> procs{{"mm", procedure_factory("mm")},
                                                              {"always-head", procedure_factory("always-head")},
                                                              {"always-tail", procedure_factory("always-tail")}};
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    procs.emplace_back("random(" + std::to_string(seed) + ")", procedure_factory("random", seed));
  }
  std::size_t ok = 0, runs = 0;
  std::string failure;
  for (std::size_t m : {1, 2}) {
    for (const auto& [name, factory] : procs) {
      ++runs;
      try {
        const auto out = adversary_unbounded(factory, m);
        if (out.inequality_ok && out.oracle_checked) {
          ++ok;
        } else if (failure.empty()) {
          failure = name + " m=" + std::to_string(m) + " not oracle-checked";
        }
      } catch (const std::exception& e) {
        if (failure.empty()) failure = name + " m=" + std::to_string(m) + ": " + e.what();
      }
    }
  }
  return {ok == runs, std::to_string(ok) + "/" + std::to_string(runs) + " runs with inequality_ok and oracle-confirmed OPT" +
                          (failure.empty() ? "" : "; first failure: " + failure)};
}

/// Random bin contents: items drawn one at a time while they still fit.
std::vector<Size> random_bin(std::mt19937_64& rng, std::size_t max_items) {
  std::vector<Size> items;
  Rational room = 1;
  std::uniform_int_distribution<long> anchor(1, 12), offset(-2, 2);
  std::bernoulli_distribution near_boundary(0.5);
  std::uniform_int_distribution<std::size_t> count(1, max_items);
  const std::size_t target = count(rng);
  while (items.size() < target && room >= make_rational(1, 5040)) {
    Rational x;
    if (near_boundary(rng)) {
      x = make_rational(1, anchor(rng)) + make_rational(offset(rng), 5040);
    } else {
      const long steps = std::max<long>(1, floor(Rational(room * 5040)).get_si());
      std::uniform_int_distribution<long> g(1, steps);
      x = make_rational(g(rng), 5040);
    }
    if (sgn(x) <= 0 || x > room) continue;
    items.emplace_back(x);
    room -= x;
  }
  return items;
}

Outcome weight_lemmas() {
  Outcome o;
  std::ostringstream detail;
  for (std::size_t k : {3, 4, 5, 7}) {
    if (max_weight_config(WeightFunction::w2(k)) != lambda(k) - make_rational(1, static_cast<long>(k))) {
      o.pass = false;
      detail << "max w2(" << k << ") wrong; ";
    }
    if (max_weight_config(WeightFunction::w3(k)) != lambda(k)) {
      o.pass = false;
      detail << "max w3(" << k << ") wrong; ";
    }
  }
  std::mt19937_64 rng(66);
  std::size_t sampled = 0, over = 0;
  auto sample = [&](const WeightFunction& w, std::size_t max_items, const Rational& bound) {
    for (int t = 0; t < 10000; ++t) {
      const Instance bin(random_bin(rng, max_items));
      ++sampled;
      if (weight_sum(w, bin) > bound) ++over;
    }
  };
  for (std::size_t k : {3, 4, 5, 7}) {
    const Rational kk = static_cast<unsigned long>(k);
    sample(WeightFunction::w2(k), k, lambda(k) - 1 / kk);
    sample(WeightFunction::w3(k), k, lambda(k));
    sample(WeightFunction::w4(k), k, 3 - 2 / kk);
  }
  sample(WeightFunction::w4(2), 2, 2);
  sample(WeightFunction::w1(), 12, make_rational(3, 2));
  if (over) o.pass = false;
  detail << "sup values exact for k in {3,4,5,7}; " << sampled << " random bins, " << over << " above bound";
  o.detail = detail.str();
  return o;
}

Outcome cross_validation() {
  std::mt19937_64 rng(777);
  std::size_t mm_equal = 0, nfd_equal = 0;
  for (int t = 0; t < 200; ++t) {
    const Instance in = random_trial(rng, 30, t % 2 ? SizeModel::Grid : SizeModel::Boundary);
    auto mm = make_mm_policy();
    if (run_maxmin(*mm, in, SpaceBound::of(1), CardinalityCap::unbounded()).packing == run_mm(in).packing) ++mm_equal;
    auto head = make_always_head_policy();
    if (run_maxmin(*head, in, SpaceBound::of(1), CardinalityCap::unbounded()).packing == run_nfd(in)) ++nfd_equal;
  }
  return {mm_equal == 200 && nfd_equal == 200, "MM policy = run_mm on " + std::to_string(mm_equal) +
                                                   "/200, always-head = run_nfd on " + std::to_string(nfd_equal) + "/200"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 constants", constants},
      {"2 MM_2 optimality", mm2_optimality},
      {"3 upper-bound suite", upper_bounds},
      {"4 lower-bound generators", lower_bound_generators},
      {"5 adaptive adversary", adaptive_adversary},
      {"6 weight lemmas", weight_lemmas},
      {"7 cross-validation", cross_validation},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << name << "  (" << o.detail << ", " << secs
              << " s)" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
