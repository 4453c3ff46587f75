#include "symq/boolean_function.hpp"

#include <algorithm>
#include <stdexcept>

namespace symq {

char to_char(Value v) {
  switch (v) {
    case Value::Zero:
      return '0';
    case Value::One:
      return '1';
    case Value::Undefined:
      return '*';
  }
  return '?';
}

Value value_from_char(char c) {
  switch (c) {
    case '0':
      return Value::Zero;
    case '1':
      return Value::One;
    case '*':
      return Value::Undefined;
    default:
      throw std::invalid_argument(std::string("invalid function value character '") + c + "'");
  }
}

Value opposite(Value v) {
  if (v == Value::Undefined) return v;
  return v == Value::Zero ? Value::One : Value::Zero;
}

namespace {

std::vector<Value> parse_values(std::string_view s) {
  std::vector<Value> out;
  out.reserve(s.size());
  for (char c : s) out.push_back(value_from_char(c));
  return out;
}

bool all_same_defined(std::span<const Value> values) {
  Value seen = Value::Undefined;
  for (Value v : values) {
    if (v == Value::Undefined) continue;
    if (seen == Value::Undefined) {
      seen = v;
    } else if (v != seen) {
      return false;
    }
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// SymmetricProfile

SymmetricProfile::SymmetricProfile(int n, std::vector<Value> values) : n_(n), values_(std::move(values)) {
  if (n < 0) throw std::invalid_argument("arity must be non-negative");
  if (values_.size() != static_cast<std::size_t>(n) + 1)
    throw std::invalid_argument("symmetric profile must have n+1 entries");
}

SymmetricProfile SymmetricProfile::parse(std::string_view values) {
  if (values.empty()) throw std::invalid_argument("empty symmetric profile");
  return SymmetricProfile(static_cast<int>(values.size()) - 1, parse_values(values));
}

bool SymmetricProfile::is_total() const {
  return std::none_of(values_.begin(), values_.end(), [](Value v) { return v == Value::Undefined; });
}

bool SymmetricProfile::is_constant() const { return all_same_defined(values_); }

std::string SymmetricProfile::to_string() const {
  std::string s;
  s.reserve(values_.size());
  for (Value v : values_) s.push_back(to_char(v));
  return s;
}

// ---------------------------------------------------------------------------
// BooleanFunction

BooleanFunction::BooleanFunction(int n, std::vector<Value> table) : n_(n), table_(std::move(table)) {
  if (n < 0 || n > kMaxTableArity)
    throw std::invalid_argument("truth-table arity must be in [0, " + std::to_string(kMaxTableArity) + "]");
  if (table_.size() != (std::size_t{1} << n)) throw std::invalid_argument("truth table must have 2^n entries");
}

BooleanFunction BooleanFunction::parse(int n, std::string_view values) {
  return BooleanFunction(n, parse_values(values));
}

BooleanFunction BooleanFunction::from_profile(const SymmetricProfile& profile) {
  const int n = profile.arity();
  if (n > kMaxTableArity) throw std::invalid_argument("profile arity too large for a truth table");
  std::vector<Value> table(std::size_t{1} << n);
  for (std::size_t x = 0; x < table.size(); ++x) table[x] = profile[hamming_weight(static_cast<Input>(x))];
  return BooleanFunction(n, std::move(table));
}

bool BooleanFunction::is_total() const {
  return std::none_of(table_.begin(), table_.end(), [](Value v) { return v == Value::Undefined; });
}

bool BooleanFunction::is_constant() const { return all_same_defined(table_); }

bool BooleanFunction::is_symmetric() const {
  std::vector<Value> level(static_cast<std::size_t>(n_) + 1, Value::Undefined);
  std::vector<bool> seen(level.size(), false);
  for (std::size_t x = 0; x < table_.size(); ++x) {
    const auto w = static_cast<std::size_t>(hamming_weight(static_cast<Input>(x)));
    if (!seen[w]) {
      seen[w] = true;
      level[w] = table_[x];
    } else if (level[w] != table_[x]) {
      return false;
    }
  }
  return true;
}

SymmetricProfile BooleanFunction::to_profile() const {
  if (!is_symmetric()) throw std::invalid_argument("function is not symmetric");
  std::vector<Value> values(static_cast<std::size_t>(n_) + 1);
  for (int w = 0; w <= n_; ++w) values[static_cast<std::size_t>(w)] = table_[representative(n_, w)];
  return SymmetricProfile(n_, std::move(values));
}

std::string BooleanFunction::to_string() const {
  std::string s;
  s.reserve(table_.size());
  for (Value v : table_) s.push_back(to_char(v));
  return s;
}

// ---------------------------------------------------------------------------

SensitivityGraph sensitivity_graph(const BooleanFunction& f) {
  SensitivityGraph g;
  g.n = f.arity();
  const auto size = static_cast<Input>(f.size());
  for (Input x = 0; x < size; ++x) {
    const Value v = f(x);
    if (v == Value::Undefined) continue;
    for (int i = 0; i < g.n; ++i) {
      if (bit(x, i)) continue;
      const Input y = flip(x, i);
      const Value u = f(y);
      if (u != Value::Undefined && u != v) g.edges.emplace_back(x, y);
    }
  }
  return g;
}

SymmetricProfile make_threshold(int n, int k) {
  if (n < 1 || k < 1 || k > n) throw std::invalid_argument("threshold requires 1 <= k <= n");
  std::vector<Value> values(static_cast<std::size_t>(n) + 1);
  for (int w = 0; w <= n; ++w) values[static_cast<std::size_t>(w)] = w >= k ? Value::One : Value::Zero;
  return SymmetricProfile(n, std::move(values));
}

int exact_sqrt(int n) {
  if (n < 0) return -1;
  int r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n ? r : -1;
}

bool is_gapmaj_arity(int n) {
  const int r = exact_sqrt(n);
  return n >= 4 && r > 0 && n % 2 == 0 && n / 2 - r >= 0;
}

SymmetricProfile make_gapmaj(int n) {
  if (!is_gapmaj_arity(n)) throw std::invalid_argument("gap majority needs an even perfect square n >= 4");
  const int r = exact_sqrt(n);
  std::vector<Value> values(static_cast<std::size_t>(n) + 1, Value::Undefined);
  values[static_cast<std::size_t>(n / 2 - r)] = Value::Zero;
  values[static_cast<std::size_t>(n / 2 + r)] = Value::One;
  return SymmetricProfile(n, std::move(values));
}

SymmetricProfile make_parity(int n) {
  if (n < 1) throw std::invalid_argument("parity requires n >= 1");
  std::vector<Value> values(static_cast<std::size_t>(n) + 1);
  for (int w = 0; w <= n; ++w) values[static_cast<std::size_t>(w)] = (w % 2) != 0 ? Value::One : Value::Zero;
  return SymmetricProfile(n, std::move(values));
}

SymmetricProfile make_constant(int n, Value v) {
  if (n < 0) throw std::invalid_argument("arity must be non-negative");
  return SymmetricProfile(n, std::vector<Value>(static_cast<std::size_t>(n) + 1, v));
}

int t_of(const SymmetricProfile& f) {
  if (!f.is_total()) throw std::invalid_argument("t_of requires a total profile");
  const int n = f.arity();
  for (int t = 0;; ++t) {
    bool constant = true;
    for (int w = t + 1; w <= n - t; ++w) {
      if (f[w] != f[t]) {
        constant = false;
        break;
      }
    }
    if (constant) return t;
  }
}

std::vector<int> change_points(const SymmetricProfile& f) {
  if (!f.is_total()) throw std::invalid_argument("change_points requires a total profile");
  std::vector<int> out;
  for (int k = 1; k <= f.arity(); ++k)
    if (f[k] != f[k - 1]) out.push_back(k);
  return out;
}

SymmetricProfile profile_from_code(int n, std::uint64_t code) {
  if (n < 0 || n > 62) throw std::invalid_argument("profile code arity out of range");
  std::vector<Value> values(static_cast<std::size_t>(n) + 1);
  for (int w = 0; w <= n; ++w) values[static_cast<std::size_t>(w)] = ((code >> w) & 1u) != 0 ? Value::One : Value::Zero;
  return SymmetricProfile(n, std::move(values));
}

Input representative(int n, int weight) {
  if (weight < 0 || weight > n) throw std::invalid_argument("weight out of range");
  return weight == 0 ? Input{0} : static_cast<Input>((std::uint64_t{1} << weight) - 1);
}

}  // namespace symq
