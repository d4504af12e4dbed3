#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "binpack/adversary.hpp"
#include "binpack/analysis.hpp"
#include "binpack/core.hpp"

namespace binpack {

// ---------------------------------------------------------------------------
// Random instances

enum class SizeModel {
  Grid,      ///< uniform over g/D for g = 1..D
  Boundary,  ///< 1/j + g/D with j in 2..max(k, 9) and |g| <= 3
  Mixed,     ///< each item picks Grid or Boundary with equal odds
};

SizeModel parse_size_model(const std::string& name);

struct RandomInstanceSpec {
  std::size_t n = 10;
  SizeModel model = SizeModel::Grid;
  std::uint64_t denominator = 2520;
  std::size_t k = 9;  ///< largest class index used by the Boundary model
};

Instance random_instance(const RandomInstanceSpec& spec, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Report rows

/// One CSV line / JSON object:
///   family,m,k,B,algorithm,alg_bins,opt_bins,ratio_num,ratio_den,bound,satisfied
/// k and B are empty in CSV and null in JSON when absent. In JSON the ratio
/// is a single "p/q" string.
struct ReportRow {
  std::string family;
  std::size_t m = 0;
  std::optional<std::size_t> k;
  std::optional<std::size_t> B;
  std::string algorithm;
  std::size_t alg_bins = 0;
  std::size_t opt_bins = 0;
  Rational ratio;
  std::string bound;
  bool satisfied = false;

  bool operator==(const ReportRow& other) const = default;
};

const std::string& csv_header();
std::string to_csv(const ReportRow& row);
/// Throws ParseError on malformed input.
ReportRow row_from_csv(const std::string& line);
nlohmann::json to_json(const ReportRow& row);
ReportRow row_from_json(const nlohmann::json& j);

enum class OutputFormat { Csv, Json };
OutputFormat parse_output_format(const std::string& name);
void write_rows(std::ostream& out, const std::vector<ReportRow>& rows, OutputFormat format);

// ---------------------------------------------------------------------------
// Experiments

/// Random-instance check of one upper bound (or the MM_2 equality) against
/// the exact optimum.
struct VerifyConfig {
  std::string bound = "mm_cr";
  std::optional<std::size_t> k;  ///< required for mm_k_cr, nfd_k, nf_k
  std::size_t trials = 100;
  std::size_t max_n = 12;
  std::uint64_t seed = 1;
  SizeModel model = SizeModel::Grid;
  std::uint64_t denominator = 2520;
  std::optional<std::size_t> oracle_limit;
};

struct VerifyResult {
  std::vector<ReportRow> rows;
  std::size_t violations = 0;
  /// Trials larger than the oracle limit; they have no row.
  std::size_t skipped = 0;
};

/// Algorithm that a named upper bound is about: mm_cr -> mm, tsuchiya ->
/// mm_2, mm_k_cr -> mm_k, nfd_gamma -> nfd, nfd_k -> nfd_k, nf_k -> nf_k.
AlgorithmSpec algorithm_for_bound(const std::string& bound, std::optional<std::size_t> k);

VerifyResult run_verify(const VerifyConfig& config);

struct SweepConfig {
  std::string family;
  std::vector<std::size_t> ms;
  /// Algorithm names; empty means the family's default (mm, mm, nfd, mm, nf).
  std::vector<std::string> algorithms;
  std::optional<std::size_t> k;
  std::size_t B = 1;
  std::size_t K = 3;
  bool cap3 = false;
};

/// Generates a certified instance by family name with the given parameters.
CertifiedInstance generate_family(const std::string& family, std::size_t m, std::optional<std::size_t> k,
                                  std::size_t B, std::size_t K, bool cap3,
                                  std::optional<Rational> eps = std::nullopt);

/// One row per (m, algorithm), checked against the family's lower bound and
/// sorted by (m, algorithm).
std::vector<ReportRow> run_sweep(const SweepConfig& config);

/// Entry point of the command-line tool. Exit codes: 0 ok, 1 violation,
/// 2 usage or input error, 3 construction error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace binpack
