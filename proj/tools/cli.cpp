#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <variant>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "symq/adversary.hpp"
#include "symq/function_io.hpp"
#include "symq/measures.hpp"
#include "symq/qcount.hpp"
#include "symq/spectral.hpp"
#include "symq/verify.hpp"

namespace symq::cli {

namespace {

using nlohmann::json;

/// Raised for bad flag combinations detected after parsing.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Globals {
  std::string format = "json";
  std::optional<double> tol;
  std::uint64_t seed = 0;
};

struct Source {
  std::string file;
  std::string gen;
  int n = -1;
};

void add_source(CLI::App* sub, Source& s) {
  sub->add_option("--file", s.file, "Function JSON file");
  sub->add_option("--gen", s.gen, "threshold:k | gapmaj | parity | extremal-c | extremal-g | or | and | constant:v");
  sub->add_option("--n", s.n, "Arity for --gen");
}

FunctionData generate(const std::string& gen, int n) {
  if (n < 0) throw UsageError("--gen requires --n");
  const auto colon = gen.find(':');
  const std::string name = gen.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : gen.substr(colon + 1);
  const auto integer_arg = [&]() {
    if (arg.empty()) throw UsageError("generator '" + name + "' needs an argument, e.g. " + name + ":1");
    std::size_t used = 0;
    const int v = std::stoi(arg, &used);
    if (used != arg.size()) throw UsageError("bad generator argument '" + arg + "'");
    return v;
  };
  if (name == "threshold") return make_threshold(n, integer_arg());
  if (name == "or") return make_threshold(n, 1);
  if (name == "and") return make_threshold(n, n);
  if (name == "gapmaj") return make_gapmaj(n);
  if (name == "parity") return make_parity(n);
  if (name == "extremal-c") return extremal_C_function(n);
  if (name == "extremal-g") return extremal_G(n);
  if (name == "constant") {
    const int v = integer_arg();
    if (v != 0 && v != 1) throw UsageError("constant takes 0 or 1");
    return make_constant(n, v == 1 ? Value::One : Value::Zero);
  }
  throw UsageError("unknown generator '" + name + "'");
}

FunctionData resolve(const Source& s) {
  if (s.file.empty() == s.gen.empty()) throw UsageError("give exactly one of --file or --gen");
  if (!s.file.empty()) return load_function(s.file);
  return generate(s.gen, s.n);
}

std::optional<SymmetricProfile> profile_of(const FunctionData& data) {
  if (const auto* p = std::get_if<SymmetricProfile>(&data)) return *p;
  const auto& table = std::get<BooleanFunction>(data);
  if (table.is_symmetric()) return table.to_profile();
  return std::nullopt;
}

/// Integers that fit 64 bits are emitted as numbers, larger ones as strings.
json big(const BigInt& v) {
  if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) return v.convert_to<std::uint64_t>();
  return v.str();
}

std::string csv_cell(const json& v) {
  std::string s;
  if (v.is_string())
    s = v.get<std::string>();
  else if (v.is_number_float())
    s = format_number(v.get<double>());
  else if (v.is_null())
    s = "";
  else
    s = v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

/// Header row of keys and one row of values; nested values are inlined as JSON.
std::string flat_csv(const json& record) {
  std::ostringstream head, row;
  bool first = true;
  for (const auto& [key, value] : record.items()) {
    head << (first ? "" : ",") << key;
    row << (first ? "" : ",") << csv_cell(value);
    first = false;
  }
  return head.str() + "\n" + row.str() + "\n";
}

void emit(std::ostream& out, const Globals& g, const json& record, const std::string& csv = {}) {
  if (g.format == "csv")
    out << (csv.empty() ? flat_csv(record) : csv);
  else
    out << record.dump(2) << '\n';
}

json measure_json(const MeasureReport& m) {
  return {{"s0", m.s0},   {"s1", m.s1},   {"s", m.s},   {"bs0", m.bs0},
          {"bs1", m.bs1}, {"bs", m.bs},   {"C0", m.C0}, {"C1", m.C1},
          {"C", m.C},     {"FC0", json_number(m.FC0)}, {"FC1", json_number(m.FC1)}, {"FC", json_number(m.FC)}};
}

json scheme_json(const SchemeCheck& c, SchemeMode mode) {
  json j{{"mode", std::string(to_string(mode))},
         {"feasible", c.feasible},
         {"objective", json_number(c.objective)},
         {"worst_violation", json_number(c.worst_violation)},
         {"pairs_checked", c.pairs_checked}};
  if (c.worst_pair) j["worst_pair"] = {c.worst_pair->first, c.worst_pair->second};
  return j;
}

json relational_json(const RelationalBound& b, const std::string& relation) {
  return {{"relation", relation},
          {"m", big(b.m)},
          {"mprime", big(b.mprime)},
          {"l", big(b.l)},
          {"lprime", big(b.lprime)},
          {"bound", json_number(b.bound)}};
}

bool is_gapmaj(const std::optional<SymmetricProfile>& p) {
  return p && is_gapmaj_arity(p->arity()) && *p == make_gapmaj(p->arity());
}

std::pair<RelationalBound, std::string> default_relation(const FunctionData& data) {
  const auto profile = profile_of(data);
  if (is_gapmaj(profile)) return {relational_bound(gapmaj_relation(profile->arity())), "gapmaj-subset"};
  const BooleanFunction table = as_table(data);
  return {relational_bound(sensitive_edge_relation(table)), "sensitive-edges"};
}

// -- subcommands ------------------------------------------------------------------

int cmd_measure(const Globals& g, const Source& src, bool force_table, std::optional<double> eps, std::ostream& out) {
  const FunctionData data = resolve(src);
  const auto profile = profile_of(data);
  json j{{"n", arity_of(data)}};
  MeasureReport m;
  if (std::holds_alternative<SymmetricProfile>(data) && !force_table) {
    m = aggregate_symmetric(std::get<SymmetricProfile>(data));
    j["method"] = "symmetric";
  } else {
    m = aggregate(as_table(data));
    j["method"] = "table";
  }
  j.update(measure_json(m));
  if (eps) {
    if (!profile || !profile->is_total()) throw UsageError("--eps needs a total symmetric function");
    j["approx_degree"] = approx_degree_symmetric(*profile, *eps);
    j["approx_eps"] = json_number(*eps);
  }
  emit(out, g, j);
  return kExitOk;
}

int cmd_spectral(const Globals& g, const Source& src, std::ostream& out) {
  const FunctionData data = resolve(src);
  const BooleanFunction f = as_table(data);
  const auto profile = profile_of(data);
  const int n = f.arity();
  PowerIterationOptions opts;
  if (g.tol) opts.tol = *g.tol;
  const double lambda = lambda_of(f, opts);
  json j{{"n", n}, {"lambda", json_number(lambda)}};
  bool ok = true;
  if (!f.is_constant()) {
    const double upper = lambda_upper_s0s1(f);
    j["upper_s0s1"] = json_number(upper);
    ok = ok && lambda <= upper + 1e-6;
  }
  if (profile && profile->is_total()) {
    const double lower = lambda_lower_bound(*profile);
    j["lower_bound"] = json_number(lower);
    ok = ok && lambda >= lower - 1e-6;
    const std::vector<int> ks = decompose_thresholds(*profile);
    const DecompositionCheck d = check_threshold_decomposition(*profile);
    j["decomposition"] = {{"thresholds", ks},
                          {"function_edges", d.function_edges},
                          {"threshold_edges", d.threshold_edges},
                          {"disjoint", d.disjoint},
                          {"equal", d.equal}};
    ok = ok && d.disjoint && d.equal;
    if (ks.size() == 1 && (*profile)[n] == Value::One) {
      const int k = ks.front();
      j["threshold"] = k;
      j["closed_form"] = json_number(lambda_threshold_closed(n, k));
      if (n <= 14) {
        const StretchWitness w = stretch_witness(n, k);
        j["stretch"] = {{"exact", w.exact}, {"stretch", json_number(w.stretch)}, {"expected", json_number(w.expected)}};
        ok = ok && w.exact;
      }
    }
  }
  j["ok"] = ok;
  emit(out, g, j);
  return ok ? kExitOk : kExitViolation;
}

struct AdversaryFlags {
  bool relational = false;
  bool explicit_scheme = false;
  bool emit_scheme = false;
  std::string scheme_file;
  std::optional<double> uniform;
  std::string mode = "MM";
};

int cmd_adversary(const Globals& g, const Source& src, const AdversaryFlags& a, std::ostream& out) {
  const FunctionData data = resolve(src);
  const auto profile = profile_of(data);
  const SchemeMode mode = scheme_mode_from_string(a.mode);
  if (!a.relational && !a.explicit_scheme && a.scheme_file.empty() && !a.uniform)
    throw UsageError("choose at least one of --relational, --explicit, --scheme, --uniform");

  json j{{"n", arity_of(data)}};
  bool ok = true;
  if (a.relational) {
    const auto [bound, name] = default_relation(data);
    const json rel = relational_json(bound, name);
    // A lone relational query prints the bare record.
    if (!a.explicit_scheme && a.scheme_file.empty() && !a.uniform) {
      emit(out, g, rel);
      return kExitOk;
    }
    j["relational"] = rel;
  }
  if (a.explicit_scheme) {
    if (!profile) throw UsageError("--explicit needs a symmetric function");
    const SchemeCheck c = check_explicit_scheme(*profile, mode);
    j["explicit"] = scheme_json(c, mode);
    j["explicit"]["t_f"] = t_of(*profile);
    if (a.emit_scheme) j["explicit"]["scheme"] = explicit_scheme(*profile).to_json()["entries"];
    ok = ok && c.feasible;
  }
  if (!a.scheme_file.empty()) {
    std::ifstream in(a.scheme_file);
    if (!in) throw UsageError("cannot open scheme file " + a.scheme_file);
    json sj;
    try {
      in >> sj;
    } catch (const json::parse_error& e) {
      throw UsageError(std::string("malformed scheme file: ") + e.what());
    }
    const BooleanFunction f = as_table(data);
    const SchemeCheck c = check_scheme(f, WeightScheme::from_json(f.arity(), sj), mode);
    j["scheme"] = scheme_json(c, mode);
    ok = ok && c.feasible;
  }
  if (a.uniform) {
    if (!profile) throw UsageError("--uniform needs a symmetric function");
    const SchemeCheck c = check_level_scheme(*profile, uniform_level_scheme(profile->arity(), *a.uniform), mode);
    j["uniform"] = scheme_json(c, mode);
    j["uniform"]["weight"] = json_number(*a.uniform);
    ok = ok && c.feasible;
  }
  emit(out, g, j);
  return ok ? kExitOk : kExitViolation;
}

struct QcountFlags {
  std::int64_t n = -1;
  std::int64_t t = -1;
  double eps = 1.0 / 3.0;
  std::optional<double> delta;
  int M = 0;
  int reps = 1;
  bool decide = false;
  bool exact = false;
  bool sample = false;
  int trials = 0;
};

int cmd_qcount(const Globals& g, const QcountFlags& q, std::ostream& out) {
  if (q.n < 1 || q.t < 0) throw UsageError("qcount needs --n and --t");
  if (q.exact && q.sample) throw UsageError("--exact and --sample are exclusive");
  if (q.trials < 0) throw UsageError("--trials must be non-negative");
  json j;
  if (q.decide) {
    if (q.delta || q.M != 0) throw UsageError("--decide fixes delta and M");
    const GapMajDecision d = decide_gapmaj(q.n, q.t, q.eps, g.seed, q.exact);
    j = {{"n", q.n},
         {"t", q.t},
         {"M", d.M},
         {"r", d.repetitions},
         {"delta", json_number(d.delta)},
         {"queries", d.queries},
         {"query_constant", json_number(d.query_constant)},
         {"bit", d.bit},
         {"estimate", json_number(d.estimate)},
         {"single_run_success", json_number(d.single_run_success)},
         {"success_prob_exact", json_number(d.success_prob_exact)}};
    if (q.trials > 0) {
      const int correct = 2 * q.t > q.n ? 1 : 0;
      int hits = 0;
      for (int i = 0; i < q.trials; ++i)
        hits += decide_gapmaj(q.n, q.t, q.eps, derive_seed(g.seed, static_cast<std::uint64_t>(i))).bit == correct;
      j["trials"] = q.trials;
      j["empirical_success"] = json_number(static_cast<double>(hits) / q.trials);
    }
  } else {
    CountingConfig cfg;
    cfg.n = q.n;
    cfg.t = q.t;
    cfg.eps = q.eps;
    cfg.delta = q.delta.value_or(0.1);
    cfg.M = q.M == 0 ? 64 : q.M;
    cfg.repetitions = q.reps;
    const CountResult r = estimate_count(cfg, g.seed, q.exact);
    j = {{"n", q.n},
         {"t", q.t},
         {"M", r.M},
         {"r", r.repetitions},
         {"delta", json_number(cfg.delta)},
         {"queries", r.queries},
         {"estimate", json_number(r.estimate)},
         {"success_prob_exact", json_number(r.success_prob_exact)}};
    if (q.trials > 0) {
      const double lo = (1 - cfg.delta) * static_cast<double>(cfg.t), hi = (1 + cfg.delta) * static_cast<double>(cfg.t);
      int hits = 0;
      for (int i = 0; i < q.trials; ++i) {
        const double e = estimate_count(cfg, derive_seed(g.seed, static_cast<std::uint64_t>(i))).estimate;
        hits += e >= lo - 1e-9 && e <= hi + 1e-9;
      }
      j["trials"] = q.trials;
      j["empirical_success"] = json_number(static_cast<double>(hits) / q.trials);
    }
  }
  emit(out, g, j);
  return kExitOk;
}

int cmd_scan(const Globals& g, int n, const std::string& checks, std::ostream& out) {
  if (n < 0) throw UsageError("scan needs --n");
  ScanOptions opts;
  if (g.tol) opts.tolerance = *g.tol;
  const ScanReport report = scan_symmetric(n, parse_checks(checks, n), opts);
  emit(out, g, report.to_json(), report.to_csv());
  return report.ok() ? kExitOk : kExitViolation;
}

int cmd_report(const Globals& g, const Source& src, bool relational, double eps, std::ostream& out) {
  const FunctionData data = resolve(src);
  std::optional<RelationalBound> rel;
  if (relational || is_gapmaj(profile_of(data))) rel = default_relation(data).first;
  HierarchyOptions opts;
  opts.approx_eps = eps;
  if (g.tol) opts.tolerance = *g.tol;
  const HierarchyReport report = hierarchy_report(as_table(data), rel, opts);
  emit(out, g, report.to_json(), report.to_csv());
  return report.ok() ? kExitOk : kExitViolation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complexity measures, adversary bounds and quantum counting for Boolean functions", "symq"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tol", g.tol, "Numeric tolerance (power iteration, scan and report checks)");
  app.add_option("--seed", g.seed, "Random seed");

  Source measure_src, spectral_src, adversary_src, report_src;
  bool force_table = false;
  std::optional<double> measure_eps;
  auto* measure = app.add_subcommand("measure", "Complexity measures of a function")->fallthrough();
  add_source(measure, measure_src);
  measure->add_flag("--table", force_table, "Evaluate on the truth table even for symmetric input");
  measure->add_option("--eps", measure_eps, "Also report the eps-approximate degree");

  auto* spectral = app.add_subcommand("spectral", "Spectral sensitivity and its bounds")->fallthrough();
  add_source(spectral, spectral_src);

  AdversaryFlags adv;
  auto* adversary = app.add_subcommand("adversary", "Relational bound and weight-scheme certification")->fallthrough();
  add_source(adversary, adversary_src);
  adversary->add_flag("--relational", adv.relational, "Relational bound (subset relation for GapMaj, sensitive edges otherwise)");
  adversary->add_flag("--explicit", adv.explicit_scheme, "Check the explicit Left/Right/Middle scheme");
  adversary->add_flag("--emit", adv.emit_scheme, "Include the explicit scheme entries");
  adversary->add_option("--scheme", adv.scheme_file, "Weight scheme JSON file to check");
  adversary->add_option("--uniform", adv.uniform, "Check the uniform scheme with this weight");
  adversary->add_option("--mode", adv.mode, "MM, MMprime or EC");

  QcountFlags qc;
  auto* qcount = app.add_subcommand("qcount", "Simulated quantum counting")->fallthrough();
  qcount->add_option("--n", qc.n, "Search-space size")->required();
  qcount->add_option("--t", qc.t, "Marked count (true Hamming weight)")->required();
  qcount->add_option("--eps", qc.eps, "Allowed error");
  qcount->add_option("--delta", qc.delta, "Relative accuracy (estimate mode)");
  qcount->add_option("--M", qc.M, "Phase-register size (estimate mode, default 64)");
  qcount->add_option("--reps", qc.reps, "Repetitions, odd; 0 amplifies to eps (estimate mode)");
  qcount->add_flag("--decide", qc.decide, "Decide GapMaj instead of estimating");
  qcount->add_flag("--exact", qc.exact, "No sampling; report exact quantities");
  qcount->add_flag("--sample", qc.sample, "Sample outcomes (default)");
  qcount->add_option("--trials", qc.trials, "Monte Carlo trials for an empirical success rate");

  int scan_n = -1;
  std::string scan_checks = "all";
  auto* scan = app.add_subcommand("scan", "Exhaustive checks over symmetric profiles")->fallthrough();
  scan->add_option("--n", scan_n, "Arity")->required();
  scan->add_option("--checks", scan_checks, "all or a comma-separated list");

  bool report_relational = false;
  double report_eps = 1.0 / 3.0;
  auto* report = app.add_subcommand("report", "Hierarchy of measures for one function")->fallthrough();
  add_source(report, report_src);
  report->add_flag("--relational", report_relational, "Include the sensitive-edge relational bound");
  report->add_option("--eps", report_eps, "Error for the approximate degree");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (measure->parsed()) return cmd_measure(g, measure_src, force_table, measure_eps, out);
    if (spectral->parsed()) return cmd_spectral(g, spectral_src, out);
    if (adversary->parsed()) return cmd_adversary(g, adversary_src, adv, out);
    if (qcount->parsed()) return cmd_qcount(g, qc, out);
    if (scan->parsed()) return cmd_scan(g, scan_n, scan_checks, out);
    if (report->parsed()) return cmd_report(g, report_src, report_relational, report_eps, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitViolation;
  }
  return kExitUsage;
}

}  // namespace symq::cli
