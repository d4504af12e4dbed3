#include "binpack/adversary.hpp"

#include <string>

#include "binpack/analysis.hpp"
#include "binpack/errors.hpp"
#include "binpack/oracle.hpp"

namespace binpack {

namespace {

void require(bool condition, const std::string& what) {
  if (!condition) throw ParameterError(what);
}

Rational power(const Rational& base, long exponent) {
  Rational result = 1;
  Rational factor = exponent < 0 ? Rational(1 / base) : base;
  for (long e = exponent < 0 ? -exponent : exponent; e > 0; --e) result *= factor;
  return result;
}

Rational from_count(std::size_t n) { return Rational(Integer(static_cast<unsigned long>(n))); }

/// Finishes a generator: builds the instance and runs the shared checks.
CertifiedInstance finish(std::string family, std::vector<Rational> sizes,
                         std::vector<BinIndex> assignment, std::optional<std::size_t> cap,
                         std::size_t claimed_opt, ParamMap params) {
  std::vector<Size> items;
  items.reserve(sizes.size());
  for (Rational& s : sizes) {
    require(sgn(s) > 0 && s <= 1, family + ": generated size " + to_string(s) + " outside (0, 1]");
    items.emplace_back(std::move(s));
  }
  CertifiedInstance ci;
  ci.family = family;
  ci.instance = Instance(std::move(items), GeneratorMeta{family, params});
  ci.certificate = Packing{std::move(assignment), cap};
  ci.claimed_opt = claimed_opt;
  ci.params = std::move(params);
  ci.certification = "total";
  verify_certificate(ci);
  return ci;
}

}  // namespace

std::vector<std::string> family_names() {
  return {"maxmin-unit", "maxmin-bounded", "presorted-bounded", "kcard-bounded", "online-unit"};
}

CertifiedInstance gen_maxmin_unit_lb(std::size_t m, bool cap3) {
  require(m >= 2 && m % 2 == 0, "maxmin-unit: m must be even and at least 2");
  const Rational r = make_rational(1, 3);
  const Rational delta = make_rational(1, 40);
  const Rational shrink = 1 - r - r * r;
  const Rational rm3 = power(r, static_cast<long>(m) - 3);
  const Rational eps = delta * rm3 * shrink / 4;

  require(sgn(r) > 0 && sgn(shrink) > 0, "maxmin-unit: need 0 < r and r + r^2 < 1");
  require(sgn(eps) > 0 && sgn(delta) > 0, "maxmin-unit: eps and delta must be positive");
  require(eps + delta < make_rational(1, 20), "maxmin-unit: need eps + delta < 1/20");
  require(delta * rm3 * shrink > 2 * eps, "maxmin-unit: need delta r^(m-3) (1 - r - r^2) > 2 eps");

  std::vector<Rational> a(m + 1), b(m + 1);
  for (std::size_t i = 1; i <= m; ++i) {
    const Rational step = delta * power(r, static_cast<long>(i) - 1);
    a[i] = make_rational(1, 2) + step;
    b[i] = make_rational(1, 4) - eps - step;
  }
  const Rational c = make_rational(1, 4) + eps;
  for (std::size_t i = 1; i + 2 <= m; ++i) {
    require(a[i] + b[i + 1] + b[i + 2] > 1, "maxmin-unit: need a_i + b_(i+1) + b_(i+2) > 1");
  }

  std::vector<Rational> sizes;
  std::vector<BinIndex> assignment(3 * m);
  for (std::size_t i = 1; i <= m; ++i) {
    sizes.push_back(a[i]);
    assignment[i - 1] = i;
  }
  for (std::size_t i = 1; i <= m; ++i) {
    sizes.push_back(c);
    assignment[m + i - 1] = i;
  }
  for (std::size_t i = m; i >= 1; --i) {
    sizes.push_back(b[i]);
    assignment[3 * m - i] = i;
  }

  ParamMap params{{"m", from_count(m)}, {"r", r}, {"eps", eps}, {"delta", delta}};
  if (cap3) params["k"] = 3;
  return finish("maxmin-unit", std::move(sizes), std::move(assignment),
                cap3 ? std::optional<std::size_t>(3) : std::nullopt, m, std::move(params));
}

CertifiedInstance gen_maxmin_bounded_lb(std::size_t m, std::size_t B, std::optional<Rational> eps_in) {
  require(B >= 1, "maxmin-bounded: B must be at least 1");
  require(m >= 1 && m % 3 == 0, "maxmin-bounded: m must be a positive multiple of 3");
  require(m >= 2 * B, "maxmin-bounded: need m >= 2B");
  const Rational eps = eps_in.value_or(make_rational(1, 100));
  require(sgn(eps) > 0 && eps < make_rational(1, 84), "maxmin-bounded: need 0 < eps < 1/84");

  const Rational sizes_by_group[3] = {make_rational(1, 2) + eps, make_rational(1, 3) + eps,
                                      make_rational(1, 6) - 2 * eps};
  std::vector<Rational> sizes;
  std::vector<BinIndex> assignment;
  for (const Rational& s : sizes_by_group) {
    for (std::size_t i = 1; i <= m; ++i) {
      sizes.push_back(s);
      assignment.push_back(i);
    }
  }
  return finish("maxmin-bounded", std::move(sizes), std::move(assignment), std::nullopt, m,
                {{"m", from_count(m)}, {"B", from_count(B)}, {"eps", eps}});
}

CertifiedInstance gen_presorted_bounded_lb(std::size_t K, std::size_t m) {
  require(K >= 1 && K <= 5, "presorted-bounded: K must be between 1 and 5");
  require(m >= 1, "presorted-bounded: m must be positive");
  const Rational eps = 1 / (from_count(K) * Rational(pi(K + 1) - 1));

  Rational per_bin = 0;
  std::vector<Rational> classes;
  for (std::size_t i = 1; i <= K; ++i) {
    const Rational p(pi(i));
    const Rational s = 1 / p + eps;
    require(s * (p - 1) <= 1, "presorted-bounded: need (1/pi_i + eps)(pi_i - 1) <= 1");
    per_bin += s;
    classes.push_back(s);
  }
  require(per_bin == 1, "presorted-bounded: one item per class must fill a bin exactly");

  std::vector<Rational> sizes;
  std::vector<BinIndex> assignment;
  for (const Rational& s : classes) {
    for (std::size_t i = 1; i <= m; ++i) {
      sizes.push_back(s);
      assignment.push_back(i);
    }
  }
  return finish("presorted-bounded", std::move(sizes), std::move(assignment), std::nullopt, m,
                {{"K", from_count(K)}, {"m", from_count(m)}, {"eps", eps}});
}

CertifiedInstance gen_kcard_bounded_lb(std::size_t k, std::size_t m, std::size_t B,
                                       std::optional<Rational> eps_in) {
  require(k >= 4, "kcard-bounded: k must be at least 4");
  require(B >= 1, "kcard-bounded: B must be at least 1");
  require(m >= 1 && m % 3 == 0, "kcard-bounded: m must be a positive multiple of 3");
  require(m % (k - 1) == 0, "kcard-bounded: m must be divisible by k - 1");
  require(m >= (k - 1) * B, "kcard-bounded: need m >= (k - 1)B");
  const Rational eps = eps_in.value_or(make_rational(1, 200));
  require(sgn(eps) > 0 && eps < make_rational(1, 126), "kcard-bounded: need 0 < eps < 1/126");

  const Rational sizes_by_group[3] = {make_rational(1, 2) + eps, make_rational(1, 3) + eps,
                                      make_rational(1, 6) - 3 * eps};
  std::vector<Rational> sizes;
  std::vector<BinIndex> assignment;
  for (const Rational& s : sizes_by_group) {
    for (std::size_t i = 1; i <= m; ++i) {
      sizes.push_back(s);
      assignment.push_back(i);
    }
  }
  const Rational tiny = eps / from_count(k - 3);
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 0; j < k - 3; ++j) {
      sizes.push_back(tiny);
      assignment.push_back(i);
    }
  }
  return finish("kcard-bounded", std::move(sizes), std::move(assignment), k, m,
                {{"k", from_count(k)}, {"m", from_count(m)}, {"B", from_count(B)}, {"eps", eps}});
}

CertifiedInstance gen_online_unit_lb(std::size_t k, std::size_t m) {
  require(k >= 2, "online-unit: k must be at least 2");
  require(m >= 3, "online-unit: m must be at least 3");
  const std::size_t N = m - 1;
  const Rational eps = 1 / (4 * from_count(N));
  const Rational delta = k > 2 ? Rational(eps / (2 * from_count(k - 2))) : Rational(eps / 2);
  const Rational spread = from_count(k - 2) * delta;
  require(sgn(from_count(N) * eps) > 0 && from_count(N) * eps < make_rational(1, 2),
          "online-unit: need 0 < N eps < 1/2");
  if (k > 2) require(sgn(spread) > 0 && spread < eps, "online-unit: need 0 < (k - 2) delta < eps");

  std::vector<Rational> sizes;
  std::vector<BinIndex> assignment;
  for (std::size_t i = 1; i <= N; ++i) {
    sizes.push_back(make_rational(1, 2) + from_count(i) * eps - spread);
    // a_i shares with b_(i+1); a_N is alone in bin N + 1.
    assignment.push_back(i < N ? i : N + 1);
    sizes.push_back(make_rational(1, 2) - from_count(i - 1) * eps);
    // b_1 is alone in bin N; b_i joins a_(i-1).
    assignment.push_back(i == 1 ? N : i - 1);
  }
  if (k > 2) {
    for (std::size_t i = 1; i + 1 <= N; ++i) {
      for (std::size_t j = 0; j < k - 2; ++j) {
        sizes.push_back(delta);
        assignment.push_back(i);
      }
    }
  }
  ParamMap params{{"k", from_count(k)}, {"m", from_count(m)}, {"N", from_count(N)}, {"eps", eps}};
  if (k > 2) params["delta"] = delta;
  return finish("online-unit", std::move(sizes), std::move(assignment), k, m, std::move(params));
}

void verify_certificate(const CertifiedInstance& ci) {
  const std::string prefix = ci.family + ": ";
  auto report = validate_packing(ci.instance, ci.certificate);
  if (!report.ok()) throw StructuralError(prefix + "certificate invalid: " + report.violations.front().detail);
  if (num_bins(ci.certificate) != ci.claimed_opt) {
    throw StructuralError(prefix + "certificate uses " + std::to_string(num_bins(ci.certificate)) +
                          " bins, claimed " + std::to_string(ci.claimed_opt));
  }
  // The online family is deliberately interleaved; every other family is sorted.
  if (ci.family != "online-unit" && !is_nonincreasing(ci.instance)) {
    throw StructuralError(prefix + "instance is not sorted non-increasing");
  }
  if (ci.certification == "total") {
    const Integer lower = ceil(total_size(ci.instance));
    if (lower != static_cast<unsigned long>(ci.claimed_opt)) {
      throw StructuralError(prefix + "ceil(total size) = " + lower.get_str() + " does not match claimed " +
                            std::to_string(ci.claimed_opt));
    }
  } else if (ci.certification == "oracle") {
    const auto cap = CardinalityCap::from_optional(ci.certificate.cardinality_cap);
    const auto result = opt_exact(ci.instance, cap, ci.instance.size());
    if (result.opt != ci.claimed_opt) {
      throw StructuralError(prefix + "oracle optimum " + std::to_string(result.opt) + " does not match claimed " +
                            std::to_string(ci.claimed_opt));
    }
  } else {
    throw StructuralError(prefix + "unknown certification '" + ci.certification + "'");
  }
}

namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

Instance repeat_blocks(const std::vector<std::pair<std::size_t, Rational>>& blocks) {
  std::vector<Size> items;
  for (const auto& [count, size] : blocks) {
    for (std::size_t i = 0; i < count; ++i) items.emplace_back(size);
  }
  return Instance(std::move(items));
}

bool same_moves(const std::vector<TraceEvent>& a, const std::vector<TraceEvent>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].end != b[i].end || a[i].bin != b[i].bin) return false;
  }
  return true;
}

bool beats_16_15(std::size_t alg, std::size_t opt) {
  // alg > 16/15 (opt - 1), kept in integers; opt >= 1 here.
  return 15 * alg > 16 * (opt - 1);
}

}  // namespace

AdversaryOutcome adversary_unbounded(const ProcedureFactory& factory, std::size_t m,
                                     const AdversaryOptions& options) {
  require(m >= 1, "adversary: m must be positive");
  const Rational eps = options.eps.value_or(make_rational(1, 40));
  require(sgn(eps) > 0 && eps < make_rational(1, 36), "adversary: need 0 < eps < 1/36");
  const auto cap = CardinalityCap::unbounded();

  const Rational big = make_rational(1, 3) + 2 * eps;
  const Rational mid = make_rational(1, 3) + eps;
  const Rational small = make_rational(1, 3) - 3 * eps;

  AdversaryOutcome out;
  out.N = 4 * m;
  const std::size_t N = out.N;
  out.plus = repeat_blocks({{N, big}, {N, mid}, {N, small}});

  // Run on I+ until the last big item (sorted position N - 1) or the first
  // small item (sorted position 2N) is packed.
  auto proc_plus = factory();
  MaxMinSession plus(out.plus, options.space, cap);
  while (true) {
    auto event = plus.advance(*proc_plus);
    if (!event) throw StructuralError("adversary: I+ finished before an interruption point");
    const std::size_t pos = plus.sorted_position(event->item);
    if (pos == N - 1 || pos == 2 * N) break;
  }
  out.N1 = plus.head_taken();
  out.N2 = plus.tail_taken();
  if (out.N1 > N || out.N2 > N || std::max(out.N1, out.N2) != N) {
    throw StructuralError("adversary: interrupted with N1=" + std::to_string(out.N1) +
                          ", N2=" + std::to_string(out.N2));
  }
  const std::vector<TraceEvent> prefix = plus.events();

  out.minus = repeat_blocks({{out.N1 + 1, big}, {out.N2 + 1, small}});
  auto proc_minus = factory();
  MaxMinSession minus(out.minus, options.space, cap);
  while (minus.head_taken() < out.N1 || minus.tail_taken() < out.N2) {
    if (!minus.advance(*proc_minus)) break;
  }
  if (!same_moves(prefix, minus.events())) {
    throw StructuralError("adversary: the runs on I+ and I- diverged before the interruption point");
  }

  out.alg_plus = num_bins(plus.finish(*proc_plus).packing);
  out.alg_minus = num_bins(minus.finish(*proc_minus).packing);

  out.opt_plus = N;
  const std::size_t n1 = out.N1 + 1, n2 = out.N2 + 1;
  out.opt_minus = 2 * n1 <= n2 ? ceil_div(n1 + n2, 3) : ceil_div(2 * out.N1 + out.N2 + 3, 4);

  if (options.oracle_limit > 0 && out.plus.size() <= options.oracle_limit) {
    const auto check_plus = opt_exact(out.plus, cap, options.oracle_limit);
    const auto check_minus = opt_exact(out.minus, cap, options.oracle_limit);
    if (check_plus.opt != out.opt_plus || check_minus.opt != out.opt_minus) {
      throw StructuralError("adversary: oracle disagrees with the closed forms (I+: " +
                            std::to_string(check_plus.opt) + " vs " + std::to_string(out.opt_plus) +
                            ", I-: " + std::to_string(check_minus.opt) + " vs " +
                            std::to_string(out.opt_minus) + ")");
    }
    out.oracle_checked = true;
  }

  if (beats_16_15(out.alg_minus, out.opt_minus)) {
    out.chose_minus = true;
    out.chosen_instance = out.minus;
    out.alg_bins = out.alg_minus;
    out.opt_bins = out.opt_minus;
  } else if (beats_16_15(out.alg_plus, out.opt_plus)) {
    out.chosen_instance = out.plus;
    out.alg_bins = out.alg_plus;
    out.opt_bins = out.opt_plus;
  } else {
    throw TheoremViolation("adversary: alg <= 16/15 (opt - 1) on both I+ (" + std::to_string(out.alg_plus) +
                           " vs " + std::to_string(out.opt_plus) + ") and I- (" +
                           std::to_string(out.alg_minus) + " vs " + std::to_string(out.opt_minus) + ")");
  }
  out.inequality_ok = true;
  return out;
}

}  // namespace binpack
