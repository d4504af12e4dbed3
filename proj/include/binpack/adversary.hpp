#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "binpack/algorithms.hpp"
#include "binpack/core.hpp"
#include "binpack/executor.hpp"

namespace binpack {

/// A lower-bound instance together with a packing that proves OPT <= claimed_opt.
struct CertifiedInstance {
  std::string family;
  Instance instance;
  Packing certificate;
  std::size_t claimed_opt = 0;
  ParamMap params;
  /// "total": ceil(total size) equals claimed_opt, so the certificate is optimal.
  /// "oracle": the exact solver agreed.
  std::string certification;
};

/// Family names accepted by generate_family: maxmin-unit, maxmin-bounded,
/// presorted-bounded, kcard-bounded, online-unit.
std::vector<std::string> family_names();

/// Items a_1..a_m, m copies of c, b_m..b_1 with r = 1/3 and small rational
/// delta, eps. Every bin {a_i, c, b_i} is exactly full. With cap3 the
/// certificate is also checked under a cap of 3.
CertifiedInstance gen_maxmin_unit_lb(std::size_t m, bool cap3 = false);

/// m items of each of 1/2+eps, 1/3+eps, 1/6-2eps; needs 3 | m, m >= 2B and
/// 0 < eps < 1/84. Default eps = 1/100.
CertifiedInstance gen_maxmin_bounded_lb(std::size_t m, std::size_t B,
                                        std::optional<Rational> eps = std::nullopt);

/// m items of each 1/pi_i + eps for i <= K, eps = 1/(K (pi_{K+1} - 1)).
/// K <= 5.
CertifiedInstance gen_presorted_bounded_lb(std::size_t K, std::size_t m);

/// 1/2+eps, 1/3+eps, 1/6-3eps (m each), then (k-3)m items of eps/(k-3).
/// Needs k >= 4, 3 | m, (k-1) | m, m >= (k-1)B, 0 < eps < 1/126.
/// Default eps = 1/200.
CertifiedInstance gen_kcard_bounded_lb(std::size_t k, std::size_t m, std::size_t B,
                                       std::optional<Rational> eps = std::nullopt);

/// Interleaved a_1, b_1, ..., a_N, b_N (N = m - 1) followed by (k-2)(N-1)
/// delta items. Not sorted: the bound is for online algorithms.
CertifiedInstance gen_online_unit_lb(std::size_t k, std::size_t m);

/// Checks the certificate and the claimed optimum; throws StructuralError
/// with a description on failure.
void verify_certificate(const CertifiedInstance& ci);

struct AdversaryOptions {
  std::optional<Rational> eps;  ///< default 1/40, must be < 1/36
  SpaceBound space = SpaceBound::unbounded();
  /// Item limit for the oracle cross-check of both OPT values; 0 skips it.
  std::size_t oracle_limit = 26;
};

struct AdversaryOutcome {
  bool chose_minus = false;  ///< I- when true, I+ otherwise
  Instance chosen_instance;
  Instance plus;
  Instance minus;
  std::size_t N = 0;
  std::size_t N1 = 0;
  std::size_t N2 = 0;
  std::size_t alg_plus = 0;
  std::size_t alg_minus = 0;
  std::size_t opt_plus = 0;
  std::size_t opt_minus = 0;
  bool oracle_checked = false;
  std::size_t alg_bins = 0;  ///< on the chosen instance
  std::size_t opt_bins = 0;
  bool inequality_ok = false;
};

/// Adaptive adversary against max-min procedures with N = 4m. The procedure
/// is run on I+ until it packs the last (1/3+2eps)-item or the first
/// (1/3-3eps)-item; I- is built from the counts seen so far, and the
/// instance on which alg > 16/15 (opt - 1) is returned.
///
/// Procedures must decide from head, tail and open bins only; the executor
/// also reports the remaining count, but a procedure reading it could tell
/// I+ and I- apart and the construction no longer applies.
///
/// Throws StructuralError when the runs on I+ and I- diverge before the
/// interruption point, and TheoremViolation when neither inequality holds.
AdversaryOutcome adversary_unbounded(const ProcedureFactory& factory, std::size_t m,
                                     const AdversaryOptions& options = {});

}  // namespace binpack
