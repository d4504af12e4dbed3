#include "binpack/harness.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "binpack/errors.hpp"
#include "binpack/executor.hpp"
#include "binpack/io.hpp"
#include "binpack/oracle.hpp"

namespace binpack {

SizeModel parse_size_model(const std::string& name) {
  if (name == "grid") return SizeModel::Grid;
  if (name == "boundary") return SizeModel::Boundary;
  if (name == "mixed") return SizeModel::Mixed;
  throw ParameterError("unknown size model '" + name + "' (grid, boundary, mixed)");
}

namespace {

Rational grid_size(std::uint64_t D, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> g(1, D);
  return Rational(Integer(static_cast<unsigned long>(g(rng))), Integer(static_cast<unsigned long>(D)));
}

Rational boundary_size(std::uint64_t D, std::size_t k, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> j(2, std::max<std::size_t>(k, 9));
  std::uniform_int_distribution<long> g(-3, 3);
  const std::size_t denom = j(rng);
  const long offset = g(rng);
  Rational value = make_rational(1, static_cast<long>(denom)) + make_rational(offset, static_cast<long>(D));
  if (sgn(value) <= 0 || value > 1) return grid_size(D, rng);
  return value;
}

}  // namespace

Instance random_instance(const RandomInstanceSpec& spec, std::mt19937_64& rng) {
  if (spec.denominator == 0) throw ParameterError("grid denominator must be positive");
  std::vector<Size> items;
  items.reserve(spec.n);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t i = 0; i < spec.n; ++i) {
    SizeModel model = spec.model;
    if (model == SizeModel::Mixed) model = coin(rng) ? SizeModel::Grid : SizeModel::Boundary;
    items.emplace_back(model == SizeModel::Grid ? grid_size(spec.denominator, rng)
                                                : boundary_size(spec.denominator, spec.k, rng));
  }
  return Instance(std::move(items));
}

// ---------------------------------------------------------------------------

const std::string& csv_header() {
  static const std::string header =
      "family,m,k,B,algorithm,alg_bins,opt_bins,ratio_num,ratio_den,bound,satisfied";
  return header;
}

namespace {

std::string optional_field(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : ""; }

std::size_t parse_count(const std::string& field, const std::string& what) {
  if (field.empty() || !std::all_of(field.begin(), field.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw ParseError("bad " + what + " '" + field + "'", 0);
  }
  return std::stoull(field);
}

std::optional<std::size_t> parse_optional_count(const std::string& field, const std::string& what) {
  if (field.empty()) return std::nullopt;
  return parse_count(field, what);
}

}  // namespace

std::string to_csv(const ReportRow& row) {
  std::ostringstream s;
  s << row.family << ',' << row.m << ',' << optional_field(row.k) << ',' << optional_field(row.B) << ','
    << row.algorithm << ',' << row.alg_bins << ',' << row.opt_bins << ',' << row.ratio.get_num().get_str()
    << ',' << row.ratio.get_den().get_str() << ',' << row.bound << ',' << (row.satisfied ? "true" : "false");
  return s.str();
}

ReportRow row_from_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  if (fields.size() != 11) throw ParseError("expected 11 CSV fields, got " + std::to_string(fields.size()), 0);
  ReportRow row;
  row.family = fields[0];
  row.m = parse_count(fields[1], "m");
  row.k = parse_optional_count(fields[2], "k");
  row.B = parse_optional_count(fields[3], "B");
  row.algorithm = fields[4];
  row.alg_bins = parse_count(fields[5], "alg_bins");
  row.opt_bins = parse_count(fields[6], "opt_bins");
  row.ratio = parse_rational(fields[7] + "/" + fields[8]);
  row.bound = fields[9];
  if (fields[10] != "true" && fields[10] != "false") throw ParseError("bad satisfied '" + fields[10] + "'", 0);
  row.satisfied = fields[10] == "true";
  return row;
}

nlohmann::json to_json(const ReportRow& row) {
  nlohmann::json j;
  j["family"] = row.family;
  j["m"] = row.m;
  j["k"] = row.k ? nlohmann::json(*row.k) : nlohmann::json(nullptr);
  j["B"] = row.B ? nlohmann::json(*row.B) : nlohmann::json(nullptr);
  j["algorithm"] = row.algorithm;
  j["alg_bins"] = row.alg_bins;
  j["opt_bins"] = row.opt_bins;
  j["ratio"] = to_string(row.ratio);
  j["bound"] = row.bound;
  j["satisfied"] = row.satisfied;
  return j;
}

ReportRow row_from_json(const nlohmann::json& j) {
  try {
    ReportRow row;
    row.family = j.at("family").get<std::string>();
    row.m = j.at("m").get<std::size_t>();
    if (!j.at("k").is_null()) row.k = j.at("k").get<std::size_t>();
    if (!j.at("B").is_null()) row.B = j.at("B").get<std::size_t>();
    row.algorithm = j.at("algorithm").get<std::string>();
    row.alg_bins = j.at("alg_bins").get<std::size_t>();
    row.opt_bins = j.at("opt_bins").get<std::size_t>();
    row.ratio = parse_rational(j.at("ratio").get<std::string>());
    row.bound = j.at("bound").get<std::string>();
    row.satisfied = j.at("satisfied").get<bool>();
    return row;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad report row: ") + e.what(), 0);
  }
}

OutputFormat parse_output_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw ParameterError("unknown format '" + name + "' (csv, json)");
}

void write_rows(std::ostream& out, const std::vector<ReportRow>& rows, OutputFormat format) {
  if (format == OutputFormat::Csv) {
    out << csv_header() << '\n';
    for (const ReportRow& row : rows) out << to_csv(row) << '\n';
    return;
  }
  nlohmann::json array = nlohmann::json::array();
  for (const ReportRow& row : rows) array.push_back(to_json(row));
  out << array.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

AlgorithmSpec algorithm_for_bound(const std::string& bound, std::optional<std::size_t> k) {
  auto need_k = [&]() -> std::size_t {
    if (!k) throw ParameterError("bound '" + bound + "' needs k");
    return *k;
  };
  if (bound == "mm_cr") return parse_algorithm("mm");
  if (bound == "tsuchiya") return parse_algorithm("mm", 2);
  if (bound == "mm_k_cr") return parse_algorithm("mm", need_k());
  if (bound == "nfd_gamma") return parse_algorithm("nfd");
  if (bound == "nfd_k") return parse_algorithm("nfd", need_k());
  if (bound == "nf_k") return parse_algorithm("nf", need_k());
  throw ParameterError("bound '" + bound + "' is not an upper bound checked by verify");
}

namespace {

ReportRow make_row(const std::string& family, std::size_t m, const RatioReport& report,
                   std::optional<std::size_t> k, std::optional<std::size_t> B) {
  ReportRow row;
  row.family = family;
  row.m = m;
  row.k = k;
  row.B = B;
  row.algorithm = report.algorithm;
  row.alg_bins = report.alg_bins;
  row.opt_bins = report.opt_bins;
  row.ratio = report.ratio;
  row.bound = report.bound.name;
  row.satisfied = report.bound.satisfied;
  return row;
}

}  // namespace

VerifyResult run_verify(const VerifyConfig& config) {
  if (config.trials == 0) throw ParameterError("verify needs at least one trial");
  if (config.max_n == 0) throw ParameterError("verify needs max_n >= 1");
  const AlgorithmSpec spec = algorithm_for_bound(config.bound, config.k);
  const std::size_t limit = config.oracle_limit.value_or(default_oracle_limit());

  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<std::size_t> size_of(1, config.max_n);
  VerifyResult result;
  for (std::size_t trial = 1; trial <= config.trials; ++trial) {
    RandomInstanceSpec rs;
    rs.n = size_of(rng);
    rs.model = config.model;
    rs.denominator = config.denominator;
    rs.k = spec.cap.bounded() ? spec.cap.k() : 9;
    const Instance instance = random_instance(rs, rng);
    if (instance.size() > limit) {
      ++result.skipped;
      continue;
    }
    const auto opt = opt_exact(instance, spec.cap, limit);
    const auto report = ratio_report(spec, instance, opt.opt, OptSource::Exact, config.bound);
    if (!report.bound.satisfied) ++result.violations;
    result.rows.push_back(make_row("random", trial, report, spec.cap.as_optional(), std::nullopt));
  }
  return result;
}

CertifiedInstance generate_family(const std::string& family, std::size_t m, std::optional<std::size_t> k,
                                  std::size_t B, std::size_t K, bool cap3, std::optional<Rational> eps) {
  auto need_k = [&]() -> std::size_t {
    if (!k) throw ParameterError(family + " needs k");
    return *k;
  };
  if (family == "maxmin-unit") return gen_maxmin_unit_lb(m, cap3);
  if (family == "maxmin-bounded") return gen_maxmin_bounded_lb(m, B, eps);
  if (family == "presorted-bounded") return gen_presorted_bounded_lb(K, m);
  if (family == "kcard-bounded") return gen_kcard_bounded_lb(need_k(), m, B, eps);
  if (family == "online-unit") return gen_online_unit_lb(need_k(), m);
  throw ParameterError("unknown family '" + family + "'");
}

namespace {

struct FamilyPlan {
  std::string default_algorithm;
  std::string bound;
  std::optional<std::size_t> cap;
  BoundParams params;
  std::optional<std::size_t> row_B;
};

FamilyPlan plan_for(const SweepConfig& c) {
  FamilyPlan p;
  if (c.family == "maxmin-unit") {
    p.default_algorithm = "mm";
    p.bound = c.cap3 ? "maxmin3_unit_lb" : "maxmin_unit_lb";
    p.cap = c.cap3 ? std::optional<std::size_t>(3) : c.k;
    p.params.B = 1;
    p.row_B = 1;
  } else if (c.family == "maxmin-bounded") {
    p.default_algorithm = "mm";
    p.bound = "maxmin_bounded_lb";
    p.cap = c.k;
    p.params.B = c.B;
    p.row_B = c.B;
  } else if (c.family == "presorted-bounded") {
    p.default_algorithm = "nfd";
    p.bound = "presorted_bounded_lb";
    p.cap = c.k;
    p.params.B = 1;
    p.params.K = c.K;
    p.row_B = 1;
  } else if (c.family == "kcard-bounded") {
    p.default_algorithm = "mm";
    p.bound = "kcard_bounded_lb";
    p.cap = c.k;
    p.params.B = c.B;
    p.row_B = c.B;
  } else if (c.family == "online-unit") {
    p.default_algorithm = "nf";
    p.bound = "online_unit_lb";
    p.cap = c.k;
    p.params.B = 1;
    p.row_B = 1;
  } else {
    throw ParameterError("unknown family '" + c.family + "'");
  }
  p.params.k = p.cap;
  return p;
}

}  // namespace

std::vector<ReportRow> run_sweep(const SweepConfig& config) {
  if (config.ms.empty()) throw ParameterError("sweep needs at least one m");
  const FamilyPlan plan = plan_for(config);
  std::vector<std::string> algorithms = config.algorithms;
  if (algorithms.empty()) algorithms.push_back(plan.default_algorithm);

  std::vector<ReportRow> rows;
  for (std::size_t m : config.ms) {
    const auto ci = generate_family(config.family, m, config.k, config.B, config.K, config.cap3);
    for (const std::string& name : algorithms) {
      const AlgorithmSpec spec = parse_algorithm(name, plan.cap);
      const auto report =
          ratio_report(spec, ci.instance, ci.claimed_opt, OptSource::Certified, plan.bound, plan.params);
      rows.push_back(make_row(config.family, m, report, plan.cap, plan.row_B));
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    return std::tie(a.m, a.algorithm) < std::tie(b.m, b.algorithm);
  });
  return rows;
}

// ---------------------------------------------------------------------------
// Command line

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitConstruction = 3;

void print_assignment(std::ostream& out, const Packing& packing) {
  out << "packing:";
  for (BinIndex b : packing.assignment) out << ' ' << b;
  out << '\n';
}

std::optional<Rational> optional_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_rational(text);
}

/// Writes to --output when given, otherwise to `out`.
template <class Fn>
void with_output(const std::string& path, std::ostream& out, Fn&& fn) {
  if (path.empty()) {
    fn(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw ParameterError("cannot write '" + path + "'");
  fn(file);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bin packing lab: max-min and next-fit algorithms, exact optimum, lower-bound instances"};
  app.require_subcommand(1);

  std::string input, alg = "mm", family, proc = "mm", format = "csv", output, bound = "mm_cr", model = "grid",
              eps_text, out_prefix;
  std::optional<std::size_t> k, limit;
  std::size_t m = 1, B = 1, K = 3, trials = 100, max_n = 12;
  std::uint64_t seed = 1, denominator = 2520;
  std::vector<std::size_t> ms;
  std::vector<std::string> algs;
  bool show_packing = false, show_trace = false, cap3 = false;

  auto* pack = app.add_subcommand("pack", "Run one algorithm on an instance file");
  pack->add_option("--alg", alg, "nf, nfd, ff, ffd or mm")->required();
  pack->add_option("--k", k, "Cardinality cap");
  pack->add_option("--input", input, "Instance file")->required();
  pack->add_flag("--packing", show_packing, "Print the bin of every item");
  pack->add_flag("--trace", show_trace, "Print head/tail events (mm only)");

  auto* opt = app.add_subcommand("opt", "Exact optimum of an instance file");
  opt->add_option("--k", k, "Cardinality cap");
  opt->add_option("--input", input, "Instance file")->required();
  opt->add_option("--limit", limit, "Largest instance the solver accepts");
  opt->add_flag("--packing", show_packing, "Print an optimal packing");

  auto* generate = app.add_subcommand("generate", "Write a lower-bound instance and its certificate");
  generate->add_option("--family", family, "maxmin-unit, maxmin-bounded, presorted-bounded, kcard-bounded, online-unit")
      ->required();
  generate->add_option("--m", m, "Optimal number of bins")->required();
  generate->add_option("--k", k, "Cardinality cap");
  generate->add_option("--B", B, "Open-bin limit");
  generate->add_option("--K", K, "Number of size classes");
  generate->add_option("--eps", eps_text, "Override epsilon (p/q)");
  generate->add_flag("--cap3", cap3, "Certify maxmin-unit under a cap of 3");
  generate->add_option("--out", out_prefix, "Output prefix for <prefix>.txt and <prefix>.json");

  auto* verify = app.add_subcommand("verify", "Check an upper bound on random instances");
  verify->add_option("--bound", bound, "mm_cr, tsuchiya, mm_k_cr, nfd_gamma, nfd_k or nf_k");
  verify->add_option("--k", k, "Cardinality cap");
  verify->add_option("--trials", trials, "Number of random instances");
  verify->add_option("--max-n", max_n, "Largest item count");
  verify->add_option("--seed", seed, "Random seed");
  verify->add_option("--model", model, "grid, boundary or mixed");
  verify->add_option("--D", denominator, "Grid denominator");
  verify->add_option("--limit", limit, "Oracle item limit");
  verify->add_option("--format", format, "csv or json");
  verify->add_option("--output", output, "Write rows to this file");

  auto* sweep = app.add_subcommand("sweep", "Run algorithms across a lower-bound family");
  sweep->add_option("--family", family, "Instance family")->required();
  sweep->add_option("--m", ms, "Values of m")->required()->delimiter(',');
  sweep->add_option("--alg", algs, "Algorithms")->delimiter(',');
  sweep->add_option("--k", k, "Cardinality cap");
  sweep->add_option("--B", B, "Open-bin limit");
  sweep->add_option("--K", K, "Number of size classes");
  sweep->add_flag("--cap3", cap3, "maxmin-unit under a cap of 3");
  sweep->add_option("--format", format, "csv or json");
  sweep->add_option("--output", output, "Write rows to this file");

  auto* adversary = app.add_subcommand("adversary", "Run the adaptive I+/I- adversary against a procedure");
  adversary->add_option("--proc", proc, "mm, always-head, always-tail or random");
  adversary->add_option("--m", m, "N = 4m");
  adversary->add_option("--seed", seed, "Seed for the random procedure");
  adversary->add_option("--B", B, "Open-bin limit of the procedure (default unbounded)");
  adversary->add_option("--eps", eps_text, "Override epsilon (p/q)");
  adversary->add_option("--limit", limit, "Oracle item limit for the cross-check (0 disables)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (pack->parsed()) {
      const Instance instance = read_instance_file(input);
      const AlgorithmSpec spec = parse_algorithm(alg, k);
      if (show_trace && spec.algorithm != Algorithm::MM) throw ParameterError("--trace is only available for mm");
      Packing packing;
      if (spec.algorithm == Algorithm::MM) {
        const Trace trace = run_mm(instance, spec.cap);
        packing = trace.packing;
        if (show_trace) {
          for (const TraceEvent& e : trace.events) {
            out << (e.end == End::Head ? "head" : "tail") << ' ' << e.item + 1 << " -> " << e.bin << '\n';
          }
        }
      } else {
        packing = run_algorithm(spec, instance);
      }
      out << "bins: " << num_bins(packing) << '\n';
      if (show_packing) print_assignment(out, packing);
      return kExitOk;
    }

    if (opt->parsed()) {
      const Instance instance = read_instance_file(input);
      const auto result = opt_exact(instance, CardinalityCap::from_optional(k), limit);
      out << "opt: " << result.opt << '\n';
      if (show_packing) print_assignment(out, result.witness);
      return kExitOk;
    }

    if (generate->parsed()) {
      const auto ci = generate_family(family, m, k, B, K, cap3, optional_rational(eps_text));
      const std::string prefix = out_prefix.empty() ? family + "-m" + std::to_string(m) : out_prefix;
      {
        std::ofstream file(prefix + ".txt");
        if (!file) throw ParameterError("cannot write '" + prefix + ".txt'");
        write_instance(file, ci.instance);
      }
      {
        std::ofstream file(prefix + ".json");
        if (!file) throw ParameterError("cannot write '" + prefix + ".json'");
        nlohmann::json j;
        j["family"] = ci.family;
        j["claimed_opt"] = ci.claimed_opt;
        j["certification"] = ci.certification;
        j["params"] = params_to_json(ci.params);
        j["certificate"] = packing_to_json(ci.certificate);
        file << j.dump(2) << '\n';
      }
      out << "items: " << ci.instance.size() << '\n';
      out << "claimed_opt: " << ci.claimed_opt << '\n';
      out << "wrote: " << prefix << ".txt " << prefix << ".json\n";
      return kExitOk;
    }

    if (verify->parsed()) {
      VerifyConfig config;
      config.bound = bound;
      config.k = k;
      config.trials = trials;
      config.max_n = max_n;
      config.seed = seed;
      config.model = parse_size_model(model);
      config.denominator = denominator;
      config.oracle_limit = limit;
      const OutputFormat fmt = parse_output_format(format);
      const auto result = run_verify(config);
      with_output(output, out, [&](std::ostream& s) { write_rows(s, result.rows, fmt); });
      err << "trials: " << config.trials << ", checked: " << result.rows.size()
          << ", skipped: " << result.skipped << ", violations: " << result.violations << '\n';
      return result.violations == 0 ? kExitOk : kExitViolation;
    }

    if (sweep->parsed()) {
      SweepConfig config;
      config.family = family;
      config.ms = ms;
      config.algorithms = algs;
      config.k = k;
      config.B = B;
      config.K = K;
      config.cap3 = cap3;
      const OutputFormat fmt = parse_output_format(format);
      const auto rows = run_sweep(config);
      with_output(output, out, [&](std::ostream& s) { write_rows(s, rows, fmt); });
      const bool all_ok = std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.satisfied; });
      return all_ok ? kExitOk : kExitViolation;
    }

    if (adversary->parsed()) {
      AdversaryOptions options;
      options.eps = optional_rational(eps_text);
      const SpaceBound space = adversary->count("--B") ? SpaceBound::of(B) : SpaceBound::unbounded();
      options.space = space;
      if (limit) options.oracle_limit = *limit;
      const auto factory = procedure_factory(proc, seed, CardinalityCap::unbounded(), space);
      const auto outcome = adversary_unbounded(factory, m, options);
      out << "chosen: " << (outcome.chose_minus ? "I-" : "I+") << '\n';
      out << "N: " << outcome.N << '\n';
      out << "N1: " << outcome.N1 << '\n';
      out << "N2: " << outcome.N2 << '\n';
      out << "I+: items=" << outcome.plus.size() << " alg=" << outcome.alg_plus << " opt=" << outcome.opt_plus
          << '\n';
      out << "I-: items=" << outcome.minus.size() << " alg=" << outcome.alg_minus << " opt=" << outcome.opt_minus
          << '\n';
      out << "alg_bins: " << outcome.alg_bins << '\n';
      out << "opt_bins: " << outcome.opt_bins << '\n';
      out << "oracle_checked: " << (outcome.oracle_checked ? "true" : "false") << '\n';
      out << "inequality_ok: " << (outcome.inequality_ok ? "true" : "false") << '\n';
      return kExitOk;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const TheoremViolation& e) {
    err << "error: " << e.what() << '\n';
    return kExitViolation;
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConstruction;
  } catch (const ProtocolError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConstruction;
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConstruction;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace binpack
