#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace symq {

/// Output value of a (possibly partial) Boolean function.
enum class Value : std::uint8_t { Zero = 0, One = 1, Undefined = 2 };

/// An input x in {0,1}^n encoded as an integer; bit i holds x_{i+1}.
using Input = std::uint32_t;

/// Largest arity accepted for truth-table storage.
inline constexpr int kMaxTableArity = 24;

inline int hamming_weight(Input x) { return std::popcount(x); }
inline Input flip(Input x, int i) { return x ^ (Input{1} << i); }
inline bool bit(Input x, int i) { return ((x >> i) & 1u) != 0; }

char to_char(Value v);
Value value_from_char(char c);
Value opposite(Value v);

/// Value per Hamming weight 0..n. Entries may be undefined for partial functions.
class SymmetricProfile {
 public:
  SymmetricProfile(int n, std::vector<Value> values);

  /// Parses a string over {0,1,*} of length n+1, weight order 0..n.
  static SymmetricProfile parse(std::string_view values);

  int arity() const { return n_; }
  Value operator[](int weight) const { return values_.at(static_cast<std::size_t>(weight)); }
  bool defined(int weight) const { return (*this)[weight] != Value::Undefined; }
  std::span<const Value> values() const { return values_; }

  bool is_total() const;
  /// True when all defined weights carry the same value (vacuously for an empty domain).
  bool is_constant() const;
  std::string to_string() const;

  friend bool operator==(const SymmetricProfile&, const SymmetricProfile&) = default;

 private:
  int n_;
  std::vector<Value> values_;
};

/// Truth table of a Boolean function on n <= kMaxTableArity bits.
class BooleanFunction {
 public:
  BooleanFunction(int n, std::vector<Value> table);

  /// Parses a string over {0,1,*} of length 2^n in input-index order.
  static BooleanFunction parse(int n, std::string_view values);
  static BooleanFunction from_profile(const SymmetricProfile& profile);

  int arity() const { return n_; }
  std::size_t size() const { return table_.size(); }
  Value operator()(Input x) const { return table_[x]; }
  bool defined(Input x) const { return table_[x] != Value::Undefined; }
  std::span<const Value> table() const { return table_; }

  bool is_total() const;
  bool is_constant() const;
  /// True when the value depends only on the Hamming weight.
  bool is_symmetric() const;
  /// Collapses to a profile; throws std::invalid_argument if not symmetric.
  SymmetricProfile to_profile() const;
  std::string to_string() const;

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

 private:
  int n_;
  std::vector<Value> table_;
};

/// Unordered edges (x, y), x < y, between distance-1 inputs with both values
/// defined and different.
struct SensitivityGraph {
  int n = 0;
  std::vector<std::pair<Input, Input>> edges;
};

SensitivityGraph sensitivity_graph(const BooleanFunction& f);

// Generators.
SymmetricProfile make_threshold(int n, int k);
SymmetricProfile make_gapmaj(int n);
SymmetricProfile make_parity(int n);
SymmetricProfile make_constant(int n, Value v);

/// Integer square root of n if n is a perfect square, else -1.
int exact_sqrt(int n);
bool is_gapmaj_arity(int n);

/// Smallest t >= 0 such that the profile is constant on weights [t, n-t];
/// an empty window counts as constant.
int t_of(const SymmetricProfile& f);

/// Weights k in 1..n with f(k) != f(k-1).
std::vector<int> change_points(const SymmetricProfile& f);

/// All total profiles on n bits, indexed by the integer whose bit w is f(w).
SymmetricProfile profile_from_code(int n, std::uint64_t code);

/// Lowest-index input of the given Hamming weight.
Input representative(int n, int weight);

}  // namespace symq
