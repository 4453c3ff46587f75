#include "symq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "symq/function_io.hpp"
#include "symq/spectral.hpp"

namespace symq {

namespace {

constexpr int kMaxScanArity = 12;

struct CheckInfo {
  ScanCheck check;
  std::string_view name;
  int cap;
};

constexpr CheckInfo kChecks[] = {
    {ScanCheck::C2s, "c2s", 12},
    {ScanCheck::Bs32, "bs32", 12},
    {ScanCheck::BsFormula, "bs-formula", 8},
    {ScanCheck::CFormula, "c-formula", 10},
    {ScanCheck::Decomposition, "decomposition", 10},
    {ScanCheck::Sandwich, "sandwich", 10},
    {ScanCheck::Hierarchy, "hierarchy", 12},
    {ScanCheck::ExplicitScheme, "explicit-scheme", 12},
    {ScanCheck::FcReduced, "fc-reduced", 10},
};

const CheckInfo& info(ScanCheck check) {
  for (const auto& c : kChecks)
    if (c.check == check) return c;
  throw std::logic_error("unknown scan check");
}

std::string fmt(double v) { return format_number(v); }
nlohmann::json number(double v) { return json_number(v); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// Running argmax of num/den over profile codes.
class RatioTracker {
 public:
  explicit RatioTracker(std::string metric) { best_.metric = std::move(metric); best_.numerator = -1; }

  void offer(std::int64_t num, std::int64_t den, std::uint64_t code) {
    if (den <= 0) return;
    const std::int64_t lhs = num * best_.denominator, rhs = best_.numerator * den;
    if (lhs > rhs) {
      best_.numerator = num;
      best_.denominator = den;
      best_.codes.assign(1, code);
    } else if (lhs == rhs) {
      best_.codes.push_back(code);
    }
  }

  RatioArgmax result() const {
    RatioArgmax r = best_;
    if (r.numerator < 0) r.numerator = 0;
    return r;
  }

 private:
  RatioArgmax best_;
};

std::uint64_t code_of(const SymmetricProfile& f) {
  std::uint64_t code = 0;
  for (int w = 0; w <= f.arity(); ++w) {
    if (!f.defined(w)) return ~std::uint64_t{0};
    if (f[w] == Value::One) code |= std::uint64_t{1} << w;
  }
  return code;
}

}  // namespace

std::string_view to_string(ScanCheck check) { return info(check).name; }

std::vector<ScanCheck> all_checks() {
  std::vector<ScanCheck> out;
  for (const auto& c : kChecks) out.push_back(c.check);
  return out;
}

int check_arity_cap(ScanCheck check) { return info(check).cap; }

std::vector<ScanCheck> parse_checks(std::string_view list, int n) {
  std::vector<ScanCheck> out;
  if (list == "all") {
    for (const auto& c : kChecks)
      if (n <= c.cap) out.push_back(c.check);
    return out;
  }
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t end = std::min(list.find(',', start), list.size());
    const std::string_view name = list.substr(start, end - start);
    const auto it = std::find_if(std::begin(kChecks), std::end(kChecks), [&](const CheckInfo& c) { return c.name == name; });
    if (it == std::end(kChecks)) throw std::invalid_argument("unknown check '" + std::string(name) + "'");
    if (std::find(out.begin(), out.end(), it->check) == out.end()) out.push_back(it->check);
    start = end + 1;
  }
  return out;
}

bool RatioArgmax::contains(const SymmetricProfile& f) const {
  return std::binary_search(codes.begin(), codes.end(), code_of(f));
}

std::size_t ScanReport::violations() const {
  std::size_t v = 0;
  for (const auto& t : tallies) v += t.violations;
  return v;
}

const RatioArgmax& ScanReport::ratio(std::string_view metric) const {
  for (const auto& r : argmax)
    if (r.metric == metric) return r;
  throw std::invalid_argument("no ratio '" + std::string(metric) + "' in the report");
}

nlohmann::json ScanReport::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["profiles"] = profiles;
  j["violations"] = violations();
  auto checks = nlohmann::json::array();
  for (const auto& t : tallies) checks.push_back({{"check", t.check}, {"evaluated", t.evaluated}, {"violations", t.violations}});
  j["checks"] = checks;
  auto ces = nlohmann::json::array();
  for (const auto& c : counterexamples) {
    nlohmann::json e{{"check", c.check}, {"profile", c.profile}, {"detail", c.detail}};
    if (c.weight >= 0) e["weight"] = c.weight;
    ces.push_back(e);
  }
  j["counterexamples"] = ces;
  auto ratios = nlohmann::json::array();
  constexpr std::size_t kListed = 32;
  for (const auto& r : argmax) {
    auto listed = nlohmann::json::array();
    for (std::size_t i = 0; i < std::min(kListed, r.codes.size()); ++i)
      listed.push_back(profile_from_code(n, r.codes[i]).to_string());
    ratios.push_back({{"metric", r.metric},
                      {"numerator", r.numerator},
                      {"denominator", r.denominator},
                      {"value", number(r.value())},
                      {"count", r.codes.size()},
                      {"profiles", listed}});
  }
  j["argmax"] = ratios;
  return j;
}

std::string ScanReport::to_csv() const {
  std::ostringstream os;
  os << "check,evaluated,violations\n";
  for (const auto& t : tallies) os << t.check << ',' << t.evaluated << ',' << t.violations << '\n';
  if (!counterexamples.empty()) {
    os << "check,profile,weight,detail\n";
    for (const auto& c : counterexamples)
      os << c.check << ',' << c.profile << ',' << c.weight << ',' << csv_field(c.detail) << '\n';
  }
  return os.str();
}

ScanReport scan_symmetric(int n, const std::vector<ScanCheck>& checks, ScanOptions options) {
  if (n < 1 || n > kMaxScanArity) throw std::invalid_argument("scan supports 1 <= n <= " + std::to_string(kMaxScanArity));
  for (ScanCheck c : checks)
    if (n > check_arity_cap(c))
      throw std::invalid_argument("check " + std::string(to_string(c)) + " is limited to n <= " +
                                  std::to_string(check_arity_cap(c)));

  ScanReport report;
  report.n = n;
  for (ScanCheck c : checks) report.tallies.push_back({std::string(to_string(c)), 0, 0});
  RatioTracker c_over_s("C/s"), bs_over_s("bs/s"), cb_over_sb("Cb/sb");
  std::optional<ExplicitSchemeCertifier> certifier;
  const double tol = options.tolerance;

  const std::uint64_t count = std::uint64_t{1} << (n + 1);
  for (std::uint64_t code = 0; code < count; ++code) {
    const SymmetricProfile f = profile_from_code(n, code);
    const std::string name = f.to_string();
    const bool constant = f.is_constant();
    const MeasureReport m = aggregate_symmetric(f);
    std::optional<BooleanFunction> table;
    const auto tbl = [&]() -> const BooleanFunction& {
      if (!table) table.emplace(BooleanFunction::from_profile(f));
      return *table;
    };
    ++report.profiles;

    if (!constant) {
      c_over_s.offer(m.C, m.s, code);
      bs_over_s.offer(m.bs, m.s, code);
      // max(C0/s0, C1/s1) over outputs with positive sensitivity
      if (m.s0 > 0 && (m.s1 == 0 || std::int64_t{m.C0} * m.s1 >= std::int64_t{m.C1} * m.s0))
        cb_over_sb.offer(m.C0, m.s0, code);
      else
        cb_over_sb.offer(m.C1, m.s1, code);
    }

    for (std::size_t k = 0; k < checks.size(); ++k) {
      CheckTally& tally = report.tallies[k];
      const auto fail = [&](int weight, std::string detail) {
        ++tally.violations;
        report.counterexamples.push_back({tally.check, name, weight, std::move(detail)});
      };
      switch (checks[k]) {
        case ScanCheck::C2s:
          ++tally.evaluated;
          if (m.C > 2 * m.s) fail(-1, "C=" + std::to_string(m.C) + " s=" + std::to_string(m.s));
          break;
        case ScanCheck::Bs32:
          ++tally.evaluated;
          if (2 * m.bs > 3 * m.s) fail(-1, "bs=" + std::to_string(m.bs) + " s=" + std::to_string(m.s));
          break;
        case ScanCheck::BsFormula:
          for (int z = 0; z <= n; ++z) {
            ++tally.evaluated;
            const int closed = symmetric_bs_closed_form(f, z);
            const int brute = local_block_sensitivity_bruteforce(tbl(), representative(n, z));
            if (closed != brute) fail(z, "closed=" + std::to_string(closed) + " brute=" + std::to_string(brute));
          }
          break;
        case ScanCheck::CFormula:
          for (int z = 0; z <= n; ++z) {
            ++tally.evaluated;
            const int closed = symmetric_C_closed_form(f, z);
            const int brute = local_certificate(tbl(), representative(n, z)).size;
            if (closed != brute) fail(z, "closed=" + std::to_string(closed) + " brute=" + std::to_string(brute));
          }
          break;
        case ScanCheck::Decomposition: {
          ++tally.evaluated;
          const DecompositionCheck d = check_threshold_decomposition(f);
          if (!d.equal || !d.disjoint)
            fail(-1, "edges=" + std::to_string(d.function_edges) + " threshold_edges=" + std::to_string(d.threshold_edges));
          break;
        }
        case ScanCheck::Sandwich: {
          if (constant) break;
          ++tally.evaluated;
          const double lambda = lambda_of(tbl());
          const double lower = lambda_lower_bound(f), upper = lambda_upper_s0s1(tbl());
          if (lambda < lower - tol || lambda > upper + tol)
            fail(-1, "lower=" + fmt(lower) + " lambda=" + fmt(lambda) + " upper=" + fmt(upper));
          break;
        }
        case ScanCheck::Hierarchy:
          ++tally.evaluated;
          if (!(m.s <= m.bs && m.bs <= m.FC + tol && m.FC <= m.C + tol))
            fail(-1, "s=" + std::to_string(m.s) + " bs=" + std::to_string(m.bs) + " FC=" + fmt(m.FC) +
                         " C=" + std::to_string(m.C));
          break;
        case ScanCheck::ExplicitScheme: {
          if (constant) break;
          ++tally.evaluated;
          if (!certifier) certifier.emplace(n);
          const SchemeCheck mm = certifier->check(f, SchemeMode::MM);
          const SchemeCheck mmp = certifier->check(f, SchemeMode::MMPrime);
          const double cap = 3.0 * std::sqrt(static_cast<double>(t_of(f)) * n);
          if (!mm.feasible || !mmp.feasible || mm.objective > cap + kSchemeTolerance)
            fail(-1, "mm_violation=" + fmt(mm.worst_violation) + " mmprime_violation=" + fmt(mmp.worst_violation) +
                         " objective=" + fmt(mm.objective) + " cap=" + fmt(cap));
          break;
        }
        case ScanCheck::FcReduced:
          for (int z = 0; z <= n; ++z) {
            ++tally.evaluated;
            const double full = fractional_certificate(tbl(), representative(n, z));
            const double reduced = fractional_certificate_symmetric(f, z);
            if (std::abs(full - reduced) > 1e-7) fail(z, "full=" + fmt(full) + " reduced=" + fmt(reduced));
          }
          break;
      }
    }
  }
  report.argmax = {c_over_s.result(), bs_over_s.result(), cb_over_sb.result()};
  return report;
}

SymmetricProfile extremal_C_function(int n) {
  if (n < 5 || n % 2 == 0) throw std::invalid_argument("extremal C function needs odd n >= 5");
  std::vector<Value> v(static_cast<std::size_t>(n) + 1, Value::Zero);
  v[static_cast<std::size_t>((n - 1) / 2)] = Value::One;
  v[static_cast<std::size_t>((n + 1) / 2)] = Value::One;
  return SymmetricProfile(n, std::move(v));
}

SymmetricProfile extremal_G(int n) {
  if (n < 4 || n % 4 != 0) throw std::invalid_argument("G needs a positive multiple of 4");
  std::vector<Value> v(static_cast<std::size_t>(n) + 1, Value::Zero);
  v[static_cast<std::size_t>(n / 2)] = Value::One;
  v[static_cast<std::size_t>(n / 2 + 1)] = Value::One;
  return SymmetricProfile(n, std::move(v));
}

ExtremalCReport extremal_C_report(int n) {
  ExtremalCReport r;
  r.n = n;
  r.measures = aggregate_symmetric(extremal_C_function(n));
  r.c1_is_twice_s1 = r.measures.C1 == 2 * r.measures.s1;
  r.c_is_2s_minus_4 = r.measures.C == 2 * r.measures.s - 4;
  return r;
}

ExtremalGReport extremal_G_report(int n) {
  ExtremalGReport r;
  r.n = n;
  const SymmetricProfile g = extremal_G(n);
  r.measures = aggregate_symmetric(g);
  r.bs_matches = 4 * r.measures.bs == 3 * n;
  r.s_matches = r.measures.s == n / 2 + 2;
  if (n <= kMaxBruteForceArity) {
    const BooleanFunction table = BooleanFunction::from_profile(g);
    int bs = 0;
    for (int z = 0; z <= n; ++z) bs = std::max(bs, local_block_sensitivity_bruteforce(table, representative(n, z)));
    r.bs_bruteforce = bs;
  }
  return r;
}

std::optional<double> HierarchyReport::value(std::string_view measure) const {
  for (const auto& row : rows)
    if (row.measure == measure) return row.value;
  return std::nullopt;
}

bool HierarchyReport::ok() const {
  return std::none_of(relations.begin(), relations.end(),
                      [](const HierarchyRelation& r) { return r.asserted && r.holds == false; });
}

nlohmann::json HierarchyReport::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  auto rs = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json e{{"measure", row.measure}, {"value", row.value ? number(*row.value) : nlohmann::json(nullptr)}};
    if (!row.note.empty()) e["note"] = row.note;
    rs.push_back(e);
  }
  j["rows"] = rs;
  auto rel = nlohmann::json::array();
  for (const auto& r : relations)
    rel.push_back({{"relation", r.relation},
                   {"asserted", r.asserted},
                   {"holds", r.holds ? nlohmann::json(*r.holds) : nlohmann::json(nullptr)}});
  j["relations"] = rel;
  j["ok"] = ok();
  return j;
}

std::string HierarchyReport::to_csv() const {
  std::ostringstream os;
  os << "measure,value,note\n";
  for (const auto& row : rows) os << row.measure << ',' << (row.value ? fmt(*row.value) : "") << ',' << csv_field(row.note) << '\n';
  os << "relation,asserted,holds\n";
  for (const auto& r : relations)
    os << csv_field(r.relation) << ',' << (r.asserted ? "true" : "false") << ','
       << (r.holds ? (*r.holds ? "true" : "false") : "") << '\n';
  return os.str();
}

HierarchyReport hierarchy_report(const BooleanFunction& f, const std::optional<RelationalBound>& relational,
                                 HierarchyOptions options) {
  const int n = f.arity();
  const double tol = options.tolerance;
  HierarchyReport report;
  report.n = n;
  const bool constant = f.is_constant();
  const std::optional<SymmetricProfile> profile = f.is_symmetric() ? std::optional(f.to_profile()) : std::nullopt;

  const MeasureReport m = aggregate(f);
  report.rows.push_back({"s", m.s, ""});
  report.rows.push_back({"bs", m.bs, ""});
  report.rows.push_back({"C", m.C, ""});
  report.rows.push_back({"FC", m.FC, ""});

  std::optional<double> lambda;
  if (n <= kMaxSpectralArity) lambda = lambda_of(f);
  report.rows.push_back({"lambda", lambda, lambda ? "" : "arity above spectral cap"});

  std::optional<double> lower;
  std::string lower_note;
  if (profile && profile->is_total())
    lower = lambda_lower_bound(*profile);
  else
    lower_note = "total symmetric functions only";
  report.rows.push_back({"lambda_lower_bound", lower, lower_note});

  const std::optional<double> upper = constant ? 0.0 : lambda_upper_s0s1(f);
  report.rows.push_back({"lambda_upper_s0s1", upper, ""});

  std::optional<double> mm;
  std::string mm_note;
  if (constant) {
    mm = 0.0;
    mm_note = "no cross pairs";
  } else if (profile && profile->is_total() && n <= 14) {
    const SchemeCheck c = check_explicit_scheme(*profile, SchemeMode::MM);
    mm = c.objective;
    mm_note = c.feasible ? "explicit scheme, feasible" : "explicit scheme, INFEASIBLE";
  } else if (profile && is_gapmaj_arity(n) && *profile == make_gapmaj(n)) {
    const SchemeCheck c = check_level_scheme(*profile, uniform_level_scheme(n, 1.0 / exact_sqrt(n)), SchemeMode::MM);
    mm = c.objective;
    mm_note = c.feasible ? "uniform scheme 1/sqrt(n), feasible" : "uniform scheme 1/sqrt(n), INFEASIBLE";
  } else {
    mm_note = "no constructive scheme";
  }
  report.rows.push_back({"mm_objective", mm, mm_note});

  report.rows.push_back({"relational_bound", relational ? std::optional(relational->bound) : std::nullopt,
                         relational ? "" : "no relation supplied"});

  std::optional<double> adeg;
  std::string adeg_note = "eps=" + fmt(options.approx_eps);
  if (profile && profile->is_total())
    adeg = approx_degree_symmetric(*profile, options.approx_eps);
  else
    adeg_note = "total symmetric functions only";
  report.rows.push_back({"approx_degree", adeg, adeg_note});

  const auto relation = [&](std::string name, bool asserted, std::optional<bool> holds) {
    report.relations.push_back({std::move(name), asserted, holds});
  };
  relation("s <= bs", true, m.s <= m.bs);
  relation("bs <= FC", true, m.bs <= m.FC + tol);
  relation("FC <= C", true, m.FC <= m.C + tol);
  const auto both = [](const std::optional<double>& a, const std::optional<double>& b) { return a && b; };
  relation("lambda_lower_bound <= lambda", true,
           both(lower, lambda) ? std::optional(*lower <= *lambda + tol) : std::nullopt);
  relation("lambda <= lambda_upper_s0s1", true,
           both(lambda, upper) ? std::optional(*lambda <= *upper + tol) : std::nullopt);
  relation("lambda <= mm_objective", true, both(lambda, mm) ? std::optional(*lambda <= *mm + tol) : std::nullopt);
  relation("relational_bound <= mm_objective", false,
           relational && mm ? std::optional(relational->bound <= *mm + tol) : std::nullopt);
  relation("lambda <= 2 approx_degree", false,
           both(lambda, adeg) ? std::optional(*lambda <= 2 * *adeg + tol) : std::nullopt);
  return report;
}

}  // namespace symq
