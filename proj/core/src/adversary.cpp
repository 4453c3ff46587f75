#include "symq/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "symq/measures.hpp"

namespace symq {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<Input> level_inputs(int n, int weight) {
  std::vector<Input> out;
  for (Input x = 0; x < (Input{1} << n); ++x)
    if (hamming_weight(x) == weight) out.push_back(x);
  return out;
}

std::string input_string(int n, Input x) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if (bit(x, i)) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

Input parse_input(int n, const std::string& s) {
  if (static_cast<int>(s.size()) != n) throw std::invalid_argument("input string must have length " + std::to_string(n));
  Input x = 0;
  for (int i = 0; i < n; ++i) {
    const char c = s[static_cast<std::size_t>(i)];
    if (c == '1')
      x |= Input{1} << i;
    else if (c != '0')
      throw std::invalid_argument("input string must be over {0,1}");
  }
  return x;
}

void note_violation(SchemeCheck& r, double violation, Input x, Input y) {
  if (violation > r.worst_violation) {
    r.worst_violation = violation;
    r.worst_pair = std::make_pair(x, y);
  }
}

void finish(SchemeCheck& r) { r.feasible = r.worst_violation <= kSchemeTolerance; }

double combine(double a, double b, SchemeMode mode) {
  return mode == SchemeMode::MM ? std::sqrt(a * b) : a * b;
}

/// Heavy/light weights of the explicit scheme. When t_f > n/2 there is no
/// Middle region and adjacent Left/Right levels meet; light weights become 1 so
/// those pairs still reach 1.
struct ExplicitWeights {
  int t = 0;
  double heavy = 0.0;
  double light = 0.0;
};

ExplicitWeights explicit_weights(const SymmetricProfile& f) {
  if (!f.is_total()) throw std::invalid_argument("explicit scheme requires a total profile");
  if (f.is_constant()) throw std::invalid_argument("explicit scheme requires a non-constant profile");
  const int n = f.arity();
  ExplicitWeights w;
  w.t = t_of(f);
  w.heavy = std::sqrt(static_cast<double>(n) / w.t);
  w.light = 2 * w.t > n ? 1.0 : std::sqrt(static_cast<double>(w.t) / n);
  return w;
}

double explicit_weight(int n, const ExplicitWeights& w, Input x, int i) {
  const int z = hamming_weight(x);
  const bool one = bit(x, i);
  if (z < w.t) return one ? w.heavy : w.light;
  if (z > n - w.t) return one ? w.light : w.heavy;
  // Middle: the t lowest-index positions of each kind.
  const Input same = one ? x : ~x & ((Input{1} << n) - 1);
  const int rank = std::popcount(same & ((Input{1} << i) - 1));
  return rank < w.t ? w.heavy : 0.0;
}

}  // namespace

// -- relational bound ------------------------------------------------------------

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void validate_relation(const BooleanFunction& f, const InputRelation& rel) {
  if (rel.n != f.arity()) throw std::invalid_argument("relation arity differs from the function");
  if (rel.X.empty() || rel.Y.empty()) throw std::invalid_argument("relation needs non-empty X and Y");
  const Value vx = f(rel.X.front());
  if (vx == Value::Undefined) throw std::invalid_argument("relation input outside the domain");
  for (Input x : rel.X)
    if (f(x) != vx) throw std::invalid_argument("X must share one defined output");
  for (Input y : rel.Y)
    if (f(y) != opposite(vx)) throw std::invalid_argument("Y must carry the opposite output of X");
}

InputRelation sensitive_edge_relation(const BooleanFunction& f) {
  InputRelation rel;
  rel.n = f.arity();
  for (Input x = 0; x < f.size(); ++x) {
    if (local_sensitivity(f, x) == 0) continue;
    if (f(x) == Value::Zero) rel.X.push_back(x);
    if (f(x) == Value::One) rel.Y.push_back(x);
  }
  rel.related = [](Input x, Input y) { return std::popcount(x ^ y) == 1; };
  return rel;
}

SubsetLevelRelation gapmaj_relation(int n) {
  if (!is_gapmaj_arity(n)) throw std::invalid_argument("GapMaj needs an even perfect square n >= 4");
  const int r = exact_sqrt(n);
  return {n, n / 2 - r, n / 2 + r};
}

InputRelation to_explicit(const SubsetLevelRelation& rel) {
  if (rel.n > 20) throw std::invalid_argument("explicit enumeration is limited to n <= 20");
  InputRelation out;
  out.n = rel.n;
  out.X = level_inputs(rel.n, rel.low);
  out.Y = level_inputs(rel.n, rel.high);
  out.related = [](Input x, Input y) { return (x & ~y) == 0; };
  return out;
}

RelationalBound relational_bound(const InputRelation& rel) {
  if (rel.X.empty() || rel.Y.empty()) throw std::invalid_argument("relation needs non-empty X and Y");
  if (!rel.related) throw std::invalid_argument("relation has no membership predicate");
  const int n = rel.n;
  std::vector<std::uint64_t> deg_y(rel.Y.size(), 0);
  std::vector<std::uint64_t> deg_yi(rel.Y.size() * static_cast<std::size_t>(n), 0);
  std::uint64_t m = std::numeric_limits<std::uint64_t>::max(), l = 0;
  std::uint64_t pairs = 0;
  for (Input x : rel.X) {
    std::uint64_t deg = 0;
    std::vector<std::uint64_t> deg_xi(static_cast<std::size_t>(n), 0);
    for (std::size_t k = 0; k < rel.Y.size(); ++k) {
      const Input y = rel.Y[k];
      if (!rel.related(x, y)) continue;
      ++deg;
      ++deg_y[k];
      for (int i = 0; i < n; ++i)
        if (bit(x ^ y, i)) {
          ++deg_xi[static_cast<std::size_t>(i)];
          ++deg_yi[k * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)];
        }
    }
    pairs += deg;
    m = std::min(m, deg);
    l = std::max(l, *std::max_element(deg_xi.begin(), deg_xi.end()));
  }
  if (pairs == 0) throw std::invalid_argument("relation is empty");
  const std::uint64_t mprime = *std::min_element(deg_y.begin(), deg_y.end());
  const std::uint64_t lprime = *std::max_element(deg_yi.begin(), deg_yi.end());
  if (l == 0 || lprime == 0) throw std::invalid_argument("related pairs must differ in some position");

  RelationalBound b;
  b.m = m;
  b.mprime = mprime;
  b.l = l;
  b.lprime = lprime;
  b.bound = std::sqrt(b.bound_squared().convert_to<double>());
  return b;
}

RelationalBound relational_bound(const SubsetLevelRelation& rel) {
  const int n = rel.n, a = rel.low, b = rel.high;
  if (n < 1 || a < 0 || b > n || a >= b) throw std::invalid_argument("subset relation needs 0 <= low < high <= n");
  RelationalBound r;
  r.m = binomial(n - a, b - a);
  r.mprime = binomial(b, a);
  r.l = binomial(n - a - 1, b - a - 1);
  r.lprime = binomial(b - 1, a);
  r.bound = std::sqrt(r.bound_squared().convert_to<double>());
  return r;
}

// -- weight schemes ----------------------------------------------------------------

std::string_view to_string(SchemeMode mode) {
  switch (mode) {
    case SchemeMode::MM: return "MM";
    case SchemeMode::MMPrime: return "MMprime";
    case SchemeMode::EC: return "EC";
  }
  return "?";
}

SchemeMode scheme_mode_from_string(std::string_view s) {
  if (s == "MM" || s == "mm") return SchemeMode::MM;
  if (s == "MMprime" || s == "mmprime" || s == "MM'") return SchemeMode::MMPrime;
  if (s == "EC" || s == "ec") return SchemeMode::EC;
  throw std::invalid_argument("unknown scheme mode '" + std::string(s) + "'");
}

WeightScheme::WeightScheme(int n) : n_(n) {
  if (n < 0 || n > kMaxTableArity) throw std::invalid_argument("weight scheme arity out of range");
  w_.assign((std::size_t{1} << n) * static_cast<std::size_t>(n), kNaN);
}

std::size_t WeightScheme::slot(Input x, int i) const {
  if (i < 0 || i >= n_ || x >= (Input{1} << n_)) throw std::out_of_range("weight scheme entry out of range");
  return static_cast<std::size_t>(x) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
}

bool WeightScheme::has(Input x, int i) const { return !std::isnan(w_[slot(x, i)]); }

double WeightScheme::get(Input x, int i) const {
  const double v = w_[slot(x, i)];
  if (std::isnan(v)) throw std::invalid_argument("missing weight for input " + input_string(n_, x) + " index " + std::to_string(i));
  return v;
}

void WeightScheme::set(Input x, int i, double weight) {
  if (!std::isfinite(weight) || weight < 0) throw std::invalid_argument("weights must be finite and nonnegative");
  w_[slot(x, i)] = weight;
}

double WeightScheme::row_sum(Input x) const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i) {
    const double v = w_[slot(x, i)];
    if (!std::isnan(v)) s += v;
  }
  return s;
}

nlohmann::json WeightScheme::to_json() const {
  auto entries = nlohmann::json::array();
  for (Input x = 0; x < (Input{1} << n_); ++x)
    for (int i = 0; i < n_; ++i)
      if (has(x, i)) entries.push_back({{"input", input_string(n_, x)}, {"index", i}, {"weight", get(x, i)}});
  return {{"entries", entries}};
}

WeightScheme WeightScheme::from_json(int n, const nlohmann::json& j) {
  WeightScheme w(n);
  try {
    for (const auto& e : j.at("entries"))
      w.set(parse_input(n, e.at("input").get<std::string>()), e.at("index").get<int>(), e.at("weight").get<double>());
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument(std::string("malformed weight scheme: ") + ex.what());
  }
  return w;
}

SchemeCheck check_scheme(const BooleanFunction& f, const WeightScheme& w, SchemeMode mode) {
  const int n = f.arity();
  if (w.arity() != n) throw std::invalid_argument("weight scheme arity differs from the function");
  SchemeCheck r;
  std::vector<Input> zeros, ones;
  for (Input x = 0; x < f.size(); ++x) {
    if (!f.defined(x)) continue;
    (f(x) == Value::Zero ? zeros : ones).push_back(x);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double v = w.get(x, i);
      sum += v;
      if (mode == SchemeMode::EC) note_violation(r, v - 1.0, x, x);
    }
    r.objective = std::max(r.objective, sum);
  }
  for (Input x : zeros)
    for (Input y : ones) {
      double sum = 0.0;
      for (Input d = x ^ y; d != 0; d &= d - 1) {
        const int i = std::countr_zero(d);
        sum += combine(w.get(x, i), w.get(y, i), mode);
      }
      ++r.pairs_checked;
      note_violation(r, 1.0 - sum, x, y);
    }
  finish(r);
  return r;
}

WeightScheme explicit_scheme(const SymmetricProfile& f) {
  const ExplicitWeights ew = explicit_weights(f);
  const int n = f.arity();
  WeightScheme w(n);
  for (Input x = 0; x < (Input{1} << n); ++x)
    for (int i = 0; i < n; ++i) w.set(x, i, explicit_weight(n, ew, x, i));
  return w;
}

ExplicitSchemeCertifier::ExplicitSchemeCertifier(int n) : n_(n) {
  if (n < 1 || n > 14) throw std::invalid_argument("explicit scheme certification is limited to 1 <= n <= 14");
  tables_.resize(static_cast<std::size_t>(n) + 2);
}

const ExplicitSchemeCertifier::LevelTable& ExplicitSchemeCertifier::table_for(int t) {
  auto& slot = tables_.at(static_cast<std::size_t>(t));
  if (slot) return *slot;

  const int n = n_;
  const std::size_t size = std::size_t{1} << n;
  const std::size_t levels = static_cast<std::size_t>(n) + 1;
  ExplicitWeights ew;
  ew.t = t;
  ew.heavy = std::sqrt(static_cast<double>(n) / t);
  ew.light = 2 * t > n ? 1.0 : std::sqrt(static_cast<double>(t) / n);

  std::vector<double> w(size * static_cast<std::size_t>(n)), root(w.size());
  LevelTable table;
  table.level_objective.assign(levels, 0.0);
  for (Input x = 0; x < size; ++x) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double v = explicit_weight(n, ew, x, i);
      w[x * n + i] = v;
      root[x * n + i] = std::sqrt(v);
      sum += v;
      table.max_weight = std::max(table.max_weight, v);
    }
    auto& obj = table.level_objective[static_cast<std::size_t>(hamming_weight(x))];
    obj = std::max(obj, sum);
  }
  for (int k = 0; k < 2; ++k) {
    table.min_sum[k].assign(levels * levels, std::numeric_limits<double>::infinity());
    table.argmin[k].assign(levels * levels, {0, 0});
  }
  for (Input x = 0; x < size; ++x) {
    const int zx = hamming_weight(x);
    for (Input y = x + 1; y < size; ++y) {
      const int zy = hamming_weight(y);
      if (zx == zy) continue;
      double s_root = 0.0, s_prod = 0.0;
      for (Input d = x ^ y; d != 0; d &= d - 1) {
        const int i = std::countr_zero(d);
        s_root += root[x * n + i] * root[y * n + i];
        s_prod += w[x * n + i] * w[y * n + i];
      }
      const std::size_t cell = static_cast<std::size_t>(std::min(zx, zy)) * levels + static_cast<std::size_t>(std::max(zx, zy));
      if (s_root < table.min_sum[0][cell]) {
        table.min_sum[0][cell] = s_root;
        table.argmin[0][cell] = {x, y};
      }
      if (s_prod < table.min_sum[1][cell]) {
        table.min_sum[1][cell] = s_prod;
        table.argmin[1][cell] = {x, y};
      }
    }
  }
  slot = std::move(table);
  return *slot;
}

SchemeCheck ExplicitSchemeCertifier::check(const SymmetricProfile& f, SchemeMode mode) {
  if (f.arity() != n_) throw std::invalid_argument("profile arity differs from the certifier");
  const ExplicitWeights ew = explicit_weights(f);
  const LevelTable& table = table_for(ew.t);
  const int k = mode == SchemeMode::MM ? 0 : 1;
  const std::size_t levels = static_cast<std::size_t>(n_) + 1;
  SchemeCheck r;
  for (int z = 0; z <= n_; ++z) r.objective = std::max(r.objective, table.level_objective[static_cast<std::size_t>(z)]);
  if (mode == SchemeMode::EC && table.max_weight - 1.0 > r.worst_violation) r.worst_violation = table.max_weight - 1.0;
  for (int p = 0; p <= n_; ++p)
    for (int q = p + 1; q <= n_; ++q) {
      if (f[p] == f[q]) continue;
      const std::size_t cell = static_cast<std::size_t>(p) * levels + static_cast<std::size_t>(q);
      r.pairs_checked += static_cast<std::size_t>(binomial(n_, p) * binomial(n_, q));
      const auto [x, y] = table.argmin[k][cell];
      note_violation(r, 1.0 - table.min_sum[k][cell], x, y);
    }
  finish(r);
  return r;
}

SchemeCheck check_explicit_scheme(const SymmetricProfile& f, SchemeMode mode) {
  ExplicitSchemeCertifier certifier(f.arity());
  return certifier.check(f, mode);
}

LevelWeightScheme uniform_level_scheme(int n, double weight) {
  if (n < 0) throw std::invalid_argument("negative arity");
  if (!std::isfinite(weight) || weight < 0) throw std::invalid_argument("weights must be finite and nonnegative");
  const std::size_t levels = static_cast<std::size_t>(n) + 1;
  return {n, std::vector<double>(levels, weight), std::vector<double>(levels, weight)};
}

WeightScheme expand(const LevelWeightScheme& lw) {
  WeightScheme w(lw.n);
  for (Input x = 0; x < (Input{1} << lw.n); ++x) {
    const auto z = static_cast<std::size_t>(hamming_weight(x));
    for (int i = 0; i < lw.n; ++i) w.set(x, i, bit(x, i) ? lw.on_ones.at(z) : lw.on_zeros.at(z));
  }
  return w;
}

SchemeCheck check_level_scheme(const SymmetricProfile& f, const LevelWeightScheme& w, SchemeMode mode) {
  const int n = f.arity();
  const auto levels = static_cast<std::size_t>(n) + 1;
  if (w.n != n || w.on_ones.size() != levels || w.on_zeros.size() != levels)
    throw std::invalid_argument("level scheme shape differs from the profile");
  for (std::size_t z = 0; z < levels; ++z)
    if (!std::isfinite(w.on_ones[z]) || !std::isfinite(w.on_zeros[z]) || w.on_ones[z] < 0 || w.on_zeros[z] < 0)
      throw std::invalid_argument("weights must be finite and nonnegative");

  SchemeCheck r;
  for (int p = 0; p <= n; ++p) {
    if (!f.defined(p)) continue;
    const auto zp = static_cast<std::size_t>(p);
    r.objective = std::max(r.objective, p * w.on_ones[zp] + (n - p) * w.on_zeros[zp]);
    if (mode == SchemeMode::EC) {
      const Input rep = n < 32 ? representative(n, p) : 0;
      if (p > 0) note_violation(r, w.on_ones[zp] - 1.0, rep, rep);
      if (p < n) note_violation(r, w.on_zeros[zp] - 1.0, rep, rep);
    }
  }
  // x at level p with f = 0 flips k of its ones and j of its zeros to reach y.
  for (int p = 0; p <= n; ++p) {
    if (f[p] != Value::Zero) continue;
    for (int k = 0; k <= p; ++k)
      for (int j = 0; j <= n - p; ++j) {
        const int q = p - k + j;
        if (f[q] != Value::One) continue;
        const double sum = k * combine(w.on_ones[static_cast<std::size_t>(p)], w.on_zeros[static_cast<std::size_t>(q)], mode) +
                           j * combine(w.on_zeros[static_cast<std::size_t>(p)], w.on_ones[static_cast<std::size_t>(q)], mode);
        ++r.pairs_checked;
        if (1.0 - sum <= r.worst_violation) continue;
        // Witness: clear the k lowest ones of x, set the j lowest zeros. Only
        // representable while inputs fit the encoding.
        r.worst_violation = 1.0 - sum;
        if (n < 32) {
          const Input x = representative(n, p);
          const Input y = ((x >> k) << k) | (((Input{1} << j) - 1) << p);
          r.worst_pair = std::make_pair(x, y);
        } else {
          r.worst_pair.reset();
        }
      }
  }
  finish(r);
  return r;
}

}  // namespace symq
