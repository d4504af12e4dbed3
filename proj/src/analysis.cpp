#include "binpack/analysis.hpp"

#include <mutex>

#include "binpack/errors.hpp"

namespace binpack {

Integer pi(std::size_t i) {
  if (i == 0) throw ParameterError("pi is indexed from 1");
  static std::mutex mutex;
  static std::vector<Integer> table{Integer(2)};
  std::lock_guard lock(mutex);
  while (table.size() < i) {
    const Integer& last = table.back();
    table.push_back(last * (last - 1) + 1);
  }
  return table[i - 1];
}

Rational gamma_partial_sum(std::size_t terms) {
  Rational sum = 0;
  for (std::size_t i = 1; i <= terms; ++i) sum += Rational(Integer(1), pi(i) - 1);
  return sum;
}

GammaBounds gamma(const Rational& tolerance) {
  if (sgn(tolerance) <= 0) throw ParameterError("gamma tolerance must be positive");
  GammaBounds g{0, 0, 0};
  for (;;) {
    Rational tail(Integer(2), pi(g.terms + 1) - 1);
    tail.canonicalize();
    if (tail < tolerance) {
      g.upper = g.lower + tail;
      return g;
    }
    ++g.terms;
    g.lower += Rational(Integer(1), pi(g.terms) - 1);
  }
}

Rational lambda(std::size_t k) {
  if (k == 0) throw ParameterError("lambda is indexed from 1");
  const Rational floor_term = make_rational(1, static_cast<long>(k));
  Rational sum = 0;
  for (std::size_t i = 1; i <= k; ++i) {
    // Once pi_i - 1 >= k every remaining term is 1/k; avoid huge pi values.
    if (pi(i) - 1 >= Integer(static_cast<unsigned long>(k))) {
      sum += floor_term * static_cast<long>(k - i + 1);
      break;
    }
    sum += Rational(Integer(1), pi(i) - 1);
  }
  sum.canonicalize();
  return sum;
}

WeightFunction WeightFunction::w2(std::size_t k) {
  if (k < 3) throw ParameterError("w2 needs k >= 3");
  return WeightFunction(Kind::W2, k);
}

WeightFunction WeightFunction::w3(std::size_t k) {
  if (k < 2) throw ParameterError("w3 needs k >= 2");
  return WeightFunction(Kind::W3, k);
}

WeightFunction WeightFunction::w4(std::size_t k) {
  if (k < 2) throw ParameterError("w4 needs k >= 2");
  return WeightFunction(Kind::W4, k);
}

std::string WeightFunction::name() const {
  switch (kind_) {
    case Kind::W1: return "w1";
    case Kind::W2: return "w2(k=" + std::to_string(k_) + ")";
    case Kind::W3: return "w3(k=" + std::to_string(k_) + ")";
    case Kind::W4: return "w4(k=" + std::to_string(k_) + ")";
  }
  return "?";
}

std::size_t size_class(const Size& x, std::optional<std::size_t> k) {
  // x in (1/(j+1), 1/j]  <=>  j = floor(1/x)
  Integer j = floor(Rational(x.value().get_den(), x.value().get_num()));
  if (k && j >= Integer(static_cast<unsigned long>(*k))) return *k;
  return static_cast<std::size_t>(j.get_ui());
}

namespace {

Rational unit_fraction(std::size_t j) { return make_rational(1, static_cast<long>(j)); }

}  // namespace

std::vector<WeightClass> weight_classes(const WeightFunction& w) {
  std::vector<WeightClass> classes;
  switch (w.kind()) {
    case WeightFunction::Kind::W1:
      classes.push_back({make_rational(1, 2), 1, 1});
      classes.push_back({make_rational(1, 3), make_rational(1, 2), make_rational(1, 2)});
      classes.push_back({0, make_rational(1, 3), 0});
      return classes;
    case WeightFunction::Kind::W2:
    case WeightFunction::Kind::W3: {
      const std::size_t k = w.k();
      for (std::size_t j = 1; j < k; ++j) {
        Rational wt = unit_fraction(j);
        if (j == 1 && w.kind() == WeightFunction::Kind::W2) wt = 1 - unit_fraction(k);
        classes.push_back({unit_fraction(j + 1), unit_fraction(j), wt});
      }
      classes.push_back({0, unit_fraction(k), unit_fraction(k)});
      return classes;
    }
    case WeightFunction::Kind::W4:
      break;
  }
  throw UnsupportedError("w4 is piecewise linear and has no class table");
}

Rational weight(const WeightFunction& w, const Size& x) {
  switch (w.kind()) {
    case WeightFunction::Kind::W1: {
      std::size_t j = size_class(x, 3);
      return j == 1 ? Rational(1) : (j == 2 ? make_rational(1, 2) : Rational(0));
    }
    case WeightFunction::Kind::W2: {
      std::size_t j = size_class(x, w.k());
      return j == 1 ? 1 - unit_fraction(w.k()) : unit_fraction(j);
    }
    case WeightFunction::Kind::W3:
      return unit_fraction(size_class(x, w.k()));
    case WeightFunction::Kind::W4: {
      const Rational half_inv = make_rational(1, 2 * static_cast<long>(w.k()));
      if (x.value() > 1 - half_inv) return 2 - unit_fraction(w.k());
      if (x.value() > half_inv) return 2 * x.value();
      return unit_fraction(w.k());
    }
  }
  throw ParameterError("unknown weight function");
}

Rational weight_sum(const WeightFunction& w, const Instance& instance) {
  Rational sum = 0;
  for (const Size& s : instance.items()) sum += weight(w, s);
  return sum;
}

namespace {

std::size_t require(const std::optional<std::size_t>& v, const char* what, const std::string& bound) {
  if (!v) throw ParameterError("bound '" + bound + "' needs parameter " + what);
  return *v;
}

Rational r(std::size_t v) { return Rational(static_cast<unsigned long>(v)); }

BoundCheck at_most(std::string name, std::size_t alg, Rational rhs, std::string relation) {
  BoundCheck c{std::move(name), std::move(relation), r(alg), std::move(rhs), false};
  c.satisfied = c.lhs <= c.rhs;
  return c;
}

BoundCheck at_least(std::string name, std::size_t alg, Rational rhs, std::string relation) {
  BoundCheck c{std::move(name), std::move(relation), r(alg), std::move(rhs), false};
  c.satisfied = c.lhs >= c.rhs;
  return c;
}

}  // namespace

const Rational& gamma_upper_for_bounds() {
  static const Rational upper = gamma(make_rational(1, 1000000000)).upper;
  return upper;
}

std::vector<std::string> bound_names() {
  return {"mm_cr",          "tsuchiya",          "mm_k_cr",
          "nfd_gamma",      "nfd_k",             "nf_k",
          "maxmin_unit_lb", "maxmin3_unit_lb",   "maxmin_bounded_lb",
          "presorted_bounded_lb", "kcard_bounded_lb", "online_unit_lb",
          "adversary_16_15"};
}

BoundCheck check_bound(const std::string& name, std::size_t alg, std::size_t opt_bins,
                       const BoundParams& params) {
  const Rational opt = r(opt_bins);
  if (name == "mm_cr") {
    return at_most(name, alg, make_rational(3, 2) * opt + 1, "alg <= 3/2*opt + 1");
  }
  if (name == "tsuchiya") {
    BoundCheck c{name, "alg == opt", r(alg), opt, alg == opt_bins};
    return c;
  }
  if (name == "mm_k_cr") {
    std::size_t k = require(params.k, "k", name);
    if (k < 3) throw ParameterError("mm_k_cr needs k >= 3");
    return at_most(name, alg, (lambda(k) - unit_fraction(k)) * opt + r(k),
                   "alg <= (lambda_k - 1/k)*opt + k");
  }
  if (name == "nfd_gamma") {
    return at_most(name, alg, gamma_upper_for_bounds() * opt + 3, "alg <= gamma_hi*opt + 3");
  }
  if (name == "nfd_k") {
    std::size_t k = require(params.k, "k", name);
    return at_most(name, alg, lambda(k) * opt + r(k), "alg <= lambda_k*opt + k");
  }
  if (name == "nf_k") {
    std::size_t k = require(params.k, "k", name);
    return at_most(name, alg, (3 - make_rational(2, static_cast<long>(k))) * opt + 1,
                   "alg <= (3 - 2/k)*opt + 1");
  }
  if (name == "maxmin_unit_lb") {
    return at_least(name, alg, make_rational(5, 4) * opt - make_rational(1, 4), "alg >= 5/4*opt - 1/4");
  }
  if (name == "maxmin3_unit_lb") {
    return at_least(name, alg, make_rational(4, 3) * opt - make_rational(4, 3), "alg >= 4/3*opt - 4/3");
  }
  if (name == "maxmin_bounded_lb") {
    std::size_t B = require(params.B, "B", name);
    return at_least(name, alg, make_rational(7, 6) * opt - r(B), "alg >= 7/6*opt - B");
  }
  if (name == "presorted_bounded_lb") {
    std::size_t B = require(params.B, "B", name);
    std::size_t K = require(params.K, "K", name);
    return at_least(name, alg, gamma_partial_sum(K) * opt - r(B) * r(K - 1),
                    "alg >= (sum_{i<=K} 1/(pi_i - 1))*opt - B(K - 1)");
  }
  if (name == "kcard_bounded_lb") {
    std::size_t k = require(params.k, "k", name);
    std::size_t B = require(params.B, "B", name);
    if (k < 4) throw ParameterError("kcard_bounded_lb needs k >= 4");
    if (k <= 6) {
      return at_least(name, alg,
                      (make_rational(5, 3) - unit_fraction(k - 1)) * opt - r(B) * r(k + 5) / 6,
                      "alg >= (5/3 - 1/(k-1))*opt - B(k+5)/6");
    }
    if (k == 7) return at_least(name, alg, make_rational(3, 2) * opt - 2 * r(B), "alg >= 3/2*opt - 2B");
    return at_least(name, alg, make_rational(3, 2) * opt - r(B) / 2, "alg >= 3/2*opt - B/2");
  }
  if (name == "online_unit_lb") {
    std::size_t k = require(params.k, "k", name);
    if (k == 2) return at_least(name, alg, 2 * opt - 2, "alg >= 2*opt - 2");
    return at_least(name, alg, (3 - make_rational(2, static_cast<long>(k))) * opt - 5 + unit_fraction(k) * 5,
                    "alg >= (3 - 2/k)*opt - 5 + 5/k");
  }
  if (name == "adversary_16_15") {
    BoundCheck c{name, "alg > 16/15*(opt - 1)", r(alg), make_rational(16, 15) * (opt - 1), false};
    c.satisfied = c.lhs > c.rhs;
    return c;
  }
  throw ParameterError("unknown bound '" + name + "'");
}

RatioReport ratio_report(const AlgorithmSpec& algorithm, const Instance& instance,
                         std::size_t opt_bins, OptSource source, const std::string& bound,
                         BoundParams params) {
  if (opt_bins == 0) throw ParameterError("ratio report needs opt_bins >= 1");
  if (!params.k && algorithm.cap.bounded()) params.k = algorithm.cap.k();
  RatioReport report;
  report.algorithm = algorithm.id();
  report.meta = instance.meta();
  report.alg_bins = num_bins(run_algorithm(algorithm, instance));
  report.opt_bins = opt_bins;
  report.opt_source = source;
  report.ratio = r(report.alg_bins) / r(opt_bins);
  report.bound = check_bound(bound, report.alg_bins, opt_bins, params);
  return report;
}

}  // namespace binpack
