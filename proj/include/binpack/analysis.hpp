#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "binpack/algorithms.hpp"
#include "binpack/core.hpp"

namespace binpack {

/// pi_1 = 2, pi_{i+1} = pi_i (pi_i - 1) + 1. Memoized; safe to call from
/// several threads.
Integer pi(std::size_t i);

/// sum_{i=1}^{terms} 1 / (pi_i - 1)
Rational gamma_partial_sum(std::size_t terms);

/// Certified enclosure of gamma = sum_i 1 / (pi_i - 1).
struct GammaBounds {
  Rational lower;       ///< partial sum
  Rational upper;       ///< partial sum + tail bound
  std::size_t terms;    ///< number of summed terms
};

/// Smallest number of terms whose tail bound 2 / (pi_{K+1} - 1) is below
/// `tolerance` (terms shrink at least geometrically with ratio 1/2).
GammaBounds gamma(const Rational& tolerance);

/// lambda_k = sum_{i=1}^{k} max{1/(pi_i - 1), 1/k}
Rational lambda(std::size_t k);

/// Item weight functions used by the ratio analyses.
class WeightFunction {
 public:
  enum class Kind { W1, W2, W3, W4 };

  static WeightFunction w1() { return WeightFunction(Kind::W1, 0); }
  /// k >= 3
  static WeightFunction w2(std::size_t k);
  /// k >= 2
  static WeightFunction w3(std::size_t k);
  /// k >= 2
  static WeightFunction w4(std::size_t k);

  Kind kind() const noexcept { return kind_; }
  /// Cardinality parameter; 0 for W1.
  std::size_t k() const noexcept { return k_; }
  std::string name() const;

 private:
  WeightFunction(Kind kind, std::size_t k) : kind_(kind), k_(k) {}
  Kind kind_;
  std::size_t k_;
};

/// One piece of a piecewise-constant weight function: sizes in
/// (lower, upper] weigh `weight`.
struct WeightClass {
  Rational lower;
  Rational upper;
  Rational weight;
};

/// Classes ordered from the largest sizes down. Throws UnsupportedError for
/// W4, which is piecewise linear.
std::vector<WeightClass> weight_classes(const WeightFunction& w);

Rational weight(const WeightFunction& w, const Size& x);
Rational weight_sum(const WeightFunction& w, const Instance& instance);

/// Index j >= 1 with x in (1/(j+1), 1/j], capped at `k` when given.
std::size_t size_class(const Size& x, std::optional<std::size_t> k = std::nullopt);

// ---------------------------------------------------------------------------
// Named inequalities between an algorithm's bin count and the optimum.

struct BoundParams {
  std::optional<std::size_t> k;  ///< cardinality cap
  std::optional<std::size_t> B;  ///< open-bin limit
  std::optional<std::size_t> K;  ///< number of size classes (presorted family)
};

struct BoundCheck {
  std::string name;
  std::string relation;  ///< human-readable form, e.g. "alg <= 3/2*opt + 1"
  Rational lhs;          ///< alg bins
  Rational rhs;
  bool satisfied = false;
};

/// Known names:
///   mm_cr                alg <= 3/2 opt + 1
///   tsuchiya             alg == opt                  (MM_2)
///   mm_k_cr              alg <= (lambda_k - 1/k) opt + k
///   nfd_gamma            alg <= gamma_hi opt + 3
///   nfd_k                alg <= lambda_k opt + k
///   nf_k                 alg <= (3 - 2/k) opt + 1
///   maxmin_unit_lb       alg >= 5/4 opt - 1/4
///   maxmin3_unit_lb      alg >= 4/3 opt - 4/3
///   maxmin_bounded_lb    alg >= 7/6 opt - B
///   presorted_bounded_lb alg >= (sum_{i<=K} 1/(pi_i - 1)) opt - B(K - 1)
///   kcard_bounded_lb     k in 4..6: alg >= (5/3 - 1/(k-1)) opt - B(k+5)/6
///                        k = 7:     alg >= 3/2 opt - 2B
///                        k >= 8:    alg >= 3/2 opt - B/2
///   online_unit_lb       k = 2: alg >= 2 opt - 2;  k >= 3: alg >= (3 - 2/k) opt - 5 + 5/k
///   adversary_16_15      alg > 16/15 (opt - 1)
/// Throws ParameterError for unknown names or missing parameters.
BoundCheck check_bound(const std::string& name, std::size_t alg_bins, std::size_t opt_bins,
                       const BoundParams& params = {});

std::vector<std::string> bound_names();

/// gamma upper end used by nfd_gamma.
const Rational& gamma_upper_for_bounds();

enum class OptSource { Exact, Certified };

struct RatioReport {
  std::string algorithm;
  std::optional<GeneratorMeta> meta;
  std::size_t alg_bins = 0;
  std::size_t opt_bins = 0;
  OptSource opt_source = OptSource::Exact;
  Rational ratio;
  BoundCheck bound;
};

/// Runs the algorithm, then evaluates the named bound. A missing params.k is
/// taken from the algorithm's cap. Throws ParameterError when opt_bins is 0.
RatioReport ratio_report(const AlgorithmSpec& algorithm, const Instance& instance,
                         std::size_t opt_bins, OptSource source, const std::string& bound,
                         BoundParams params = {});

}  // namespace binpack
