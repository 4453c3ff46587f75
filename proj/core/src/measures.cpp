#include "symq/measures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace symq {

namespace {

void require_defined(const BooleanFunction& f, Input x) {
  if (x >= f.size()) throw std::invalid_argument("input outside {0,1}^n");
  if (!f.defined(x)) throw std::invalid_argument("input is outside the domain of f");
}

void require_brute_force_arity(const BooleanFunction& f) {
  if (f.arity() > kMaxBruteForceArity)
    throw std::invalid_argument("arity " + std::to_string(f.arity()) + " exceeds the exhaustive-search cap of " +
                                std::to_string(kMaxBruteForceArity));
}

void require_weight(const SymmetricProfile& f, int z) {
  if (z < 0 || z > f.arity()) throw std::invalid_argument("weight out of range");
}

bool opposite_at(const SymmetricProfile& f, int w, Value v) {
  return w >= 0 && w <= f.arity() && f.defined(w) && f[w] != v;
}

// Masks d = x ^ y over defined y with f(y) != f(x), as an indicator table.
std::vector<std::uint8_t> difference_sets(const BooleanFunction& f, Input x) {
  std::vector<std::uint8_t> marks(f.size(), 0);
  const Value v = f(x);
  for (Input y = 0; y < f.size(); ++y) {
    const Value u = f(y);
    if (u != Value::Undefined && u != v) marks[x ^ y] = 1;
  }
  return marks;
}

// in-place: marks[m] |= marks[sub] for every sub subset of m.
void close_upward(std::vector<std::uint8_t>& marks, int n) {
  for (int i = 0; i < n; ++i) {
    const std::size_t b = std::size_t{1} << i;
    for (std::size_t m = 0; m < marks.size(); ++m)
      if ((m & b) != 0) marks[m] |= marks[m ^ b];
  }
}

}  // namespace

WeightInterval weight_interval(const SymmetricProfile& f, int z) {
  if (!f.is_total()) throw std::invalid_argument("weight_interval requires a total profile");
  require_weight(f, z);
  WeightInterval iv{z, z};
  while (iv.a > 0 && f[iv.a - 1] == f[z]) --iv.a;
  while (iv.b < f.arity() && f[iv.b + 1] == f[z]) ++iv.b;
  return iv;
}

// -- sensitivity -------------------------------------------------------------

int local_sensitivity(const BooleanFunction& f, Input x) {
  require_defined(f, x);
  const Value v = f(x);
  int count = 0;
  for (int i = 0; i < f.arity(); ++i) {
    const Value u = f(flip(x, i));
    if (u != Value::Undefined && u != v) ++count;
  }
  return count;
}

OutputSensitivity output_sensitivity(const BooleanFunction& f) {
  OutputSensitivity out;
  for (Input x = 0; x < f.size(); ++x) {
    if (!f.defined(x)) continue;
    const int s = local_sensitivity(f, x);
    if (f(x) == Value::Zero)
      out.s0 = std::max(out.s0, s);
    else
      out.s1 = std::max(out.s1, s);
  }
  return out;
}

int symmetric_sensitivity(const SymmetricProfile& f, int z) {
  require_weight(f, z);
  if (!f.defined(z)) throw std::invalid_argument("weight is outside the domain of f");
  const Value v = f[z];
  int s = 0;
  if (opposite_at(f, z - 1, v)) s += z;
  if (opposite_at(f, z + 1, v)) s += f.arity() - z;
  return s;
}

// -- block sensitivity --------------------------------------------------------

int local_block_sensitivity_bruteforce(const BooleanFunction& f, Input x, BlockSearchOptions options) {
  require_defined(f, x);
  require_brute_force_arity(f);
  const int n = f.arity();
  const std::size_t size = f.size();
  const Input full = static_cast<Input>(size - 1);
  const Value v = f(x);

  std::vector<std::uint8_t> sensitive(size, 0);
  for (Input b = 1; b < size; ++b) {
    if (options.one_type_only && (b & x) != b && (b & ~x & full) != b) continue;
    const Value u = f(x ^ b);
    sensitive[b] = (u != Value::Undefined && u != v) ? 1 : 0;
  }

  // contains[b]: some sensitive block is a subset of b.
  std::vector<std::uint8_t> contains = sensitive;
  close_upward(contains, n);

  std::vector<std::vector<Input>> by_lowest(static_cast<std::size_t>(n));
  for (Input b = 1; b < size; ++b) {
    if (sensitive[b] == 0) continue;
    bool minimal = true;
    for (int i = 0; i < n && minimal; ++i)
      if (bit(b, i) && contains[flip(b, i)] != 0) minimal = false;
    if (minimal) by_lowest[static_cast<std::size_t>(std::countr_zero(b))].push_back(b);
  }

  std::vector<std::int8_t> memo(size, -1);
  std::function<int(Input)> pack = [&](Input avail) -> int {
    if (avail == 0) return 0;
    if (memo[avail] >= 0) return memo[avail];
    const int low = std::countr_zero(avail);
    int best = pack(avail & (avail - 1));
    for (Input block : by_lowest[static_cast<std::size_t>(low)])
      if ((block & avail) == block) best = std::max(best, 1 + pack(avail & ~block));
    memo[avail] = static_cast<std::int8_t>(best);
    return best;
  };
  return pack(full);
}

int symmetric_bs_closed_form(const SymmetricProfile& f, int z) {
  const WeightInterval iv = weight_interval(f, z);
  const int n = f.arity();
  int bs = 0;
  if (iv.a != 0) bs += z / (z - iv.a + 1);
  if (iv.b != n) bs += (n - z) / (iv.b - z + 1);
  return bs;
}

int symmetric_block_sensitivity(const SymmetricProfile& f, int z) {
  require_weight(f, z);
  if (!f.defined(z)) throw std::invalid_argument("weight is outside the domain of f");
  const int n = f.arity();
  const Value v = f[z];
  int bs = 0;
  for (int size = 1; size <= z; ++size) {
    if (opposite_at(f, z - size, v)) {
      bs += z / size;
      break;
    }
  }
  for (int size = 1; size <= n - z; ++size) {
    if (opposite_at(f, z + size, v)) {
      bs += (n - z) / size;
      break;
    }
  }
  return bs;
}

// -- certificates -------------------------------------------------------------

Certificate local_certificate(const BooleanFunction& f, Input x) {
  require_defined(f, x);
  require_brute_force_arity(f);
  const int n = f.arity();
  const Input full = static_cast<Input>(f.size() - 1);

  // blocked[m]: some opposite-valued y differs from x only inside m, so fixing
  // the complement of m does not certify x.
  std::vector<std::uint8_t> blocked = difference_sets(f, x);
  close_upward(blocked, n);

  std::vector<int> idx;
  for (int k = 0; k <= n; ++k) {
    idx.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
      Input s = 0;
      for (int i : idx) s |= Input{1} << i;
      if (blocked[~s & full] == 0) return {k, s};
      // next combination in lexicographic order
      int pos = k - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (int i = pos + 1; i < k; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  throw std::logic_error("no certificate found");  // fixing every bit always certifies
}

int symmetric_C_closed_form(const SymmetricProfile& f, int z) {
  const WeightInterval iv = weight_interval(f, z);
  return iv.a + (f.arity() - iv.b);
}

int symmetric_certificate(const SymmetricProfile& f, int z) {
  require_weight(f, z);
  if (!f.defined(z)) throw std::invalid_argument("weight is outside the domain of f");
  const int n = f.arity();
  const Value v = f[z];
  // Fixing `ones` of the 1-positions and `zeros` of the 0-positions admits
  // exactly the weights in [ones, n - zeros].
  int best = n;
  for (int ones = 0; ones <= z; ++ones) {
    for (int zeros = 0; zeros <= n - z; ++zeros) {
      bool ok = true;
      for (int w = ones; w <= n - zeros && ok; ++w)
        if (opposite_at(f, w, v)) ok = false;
      if (ok) {
        best = std::min(best, ones + zeros);
        break;
      }
    }
  }
  return best;
}

// -- fractional certificates --------------------------------------------------

LinearProgram fc_linear_program(const BooleanFunction& f, Input x) {
  require_defined(f, x);
  require_brute_force_arity(f);
  const int n = f.arity();
  const std::vector<std::uint8_t> sets = difference_sets(f, x);
  std::vector<std::uint8_t> contains = sets;
  close_upward(contains, n);

  LinearProgram lp(static_cast<std::size_t>(n));
  std::fill(lp.objective.begin(), lp.objective.end(), 1.0);
  std::fill(lp.upper.begin(), lp.upper.end(), 1.0);
  for (Input d = 1; d < f.size(); ++d) {
    if (sets[d] == 0) continue;
    bool minimal = true;
    for (int i = 0; i < n && minimal; ++i)
      if (bit(d, i) && contains[flip(d, i)] != 0) minimal = false;
    if (!minimal) continue;
    std::vector<double> row(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
      if (bit(d, i)) row[static_cast<std::size_t>(i)] = 1.0;
    lp.add_constraint(std::move(row), Relation::GreaterEqual, 1.0);
  }
  return lp;
}

namespace {

double solve_fc(const LinearProgram& lp) {
  const LpResult r = solve_lp(lp);
  if (r.status != LpStatus::Optimal)
    throw std::logic_error("fractional certificate program is " + std::string(to_string(r.status)));
  return r.value;
}

}  // namespace

double fractional_certificate(const BooleanFunction& f, Input x) { return solve_fc(fc_linear_program(f, x)); }

LinearProgram fc_symmetric_linear_program(const SymmetricProfile& f, int z) {
  require_weight(f, z);
  if (!f.defined(z)) throw std::invalid_argument("weight is outside the domain of f");
  const int n = f.arity();
  const Value v = f[z];
  // Variable 0 weighs each 1-position of x, variable 1 each 0-position.
  LinearProgram lp(2);
  lp.objective = {static_cast<double>(z), static_cast<double>(n - z)};
  lp.upper = {1.0, 1.0};
  // An opposite y flips k ones and j zeros of x: k*a + j*b >= 1. Keep only the
  // pairs (k, j) not dominated componentwise by another.
  int best_j = std::numeric_limits<int>::max();
  for (int k = 0; k <= z; ++k) {
    for (int j = 0; j <= n - z && j < best_j; ++j) {
      if (opposite_at(f, z - k + j, v)) {
        lp.add_constraint({static_cast<double>(k), static_cast<double>(j)}, Relation::GreaterEqual, 1.0);
        best_j = j;
        break;
      }
    }
  }
  return lp;
}

double fractional_certificate_symmetric(const SymmetricProfile& f, int z) {
  return solve_fc(fc_symmetric_linear_program(f, z));
}

// -- approximate degree --------------------------------------------------------

double min_approximation_error(const SymmetricProfile& f, int degree) {
  if (!f.is_total()) throw std::invalid_argument("approximate degree requires a total profile");
  const int n = f.arity();
  if (n < 1) throw std::invalid_argument("approximate degree requires n >= 1");
  if (degree < 0) throw std::invalid_argument("degree must be non-negative");
  const auto terms = static_cast<std::size_t>(degree) + 1;
  // Variables: polynomial coefficients (free), then the error bound e >= 0.
  LinearProgram lp(terms + 1);
  for (std::size_t j = 0; j < terms; ++j) lp.set_bounds(j, -kInfinity, kInfinity);
  lp.objective[terms] = 1.0;
  for (int w = 0; w <= n; ++w) {
    const double u = static_cast<double>(w) / n;
    std::vector<double> row(terms + 1, 0.0);
    double power = 1.0;
    for (std::size_t j = 0; j < terms; ++j) {
      row[j] = power;
      power *= u;
    }
    const double target = f[w] == Value::One ? 1.0 : 0.0;
    row[terms] = -1.0;
    lp.add_constraint(row, Relation::LessEqual, target);
    row[terms] = 1.0;
    lp.add_constraint(std::move(row), Relation::GreaterEqual, target);
  }
  const LpResult r = solve_lp(lp);
  if (r.status != LpStatus::Optimal) throw std::logic_error("approximation program is " + std::string(to_string(r.status)));
  return std::max(0.0, r.value);
}

int approx_degree_symmetric(const SymmetricProfile& f, double eps) {
  if (!(eps >= 0.0 && eps < 0.5)) throw std::invalid_argument("eps must lie in [0, 1/2)");
  if (!f.is_total()) throw std::invalid_argument("approximate degree requires a total profile");
  if (f.is_constant()) return 0;
  constexpr double kSlack = 1e-9;
  int lo = 0;           // invariant: every degree < lo fails
  int hi = f.arity();   // degree n interpolates exactly
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (min_approximation_error(f, mid) <= eps + kSlack)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

// -- aggregation ---------------------------------------------------------------

namespace {

struct InputMeasures {
  int s = 0;
  int bs = 0;
  int C = 0;
  double FC = 0.0;
};

void accumulate(MeasureReport& r, Value v, const InputMeasures& m) {
  if (v == Value::Zero) {
    r.s0 = std::max(r.s0, m.s);
    r.bs0 = std::max(r.bs0, m.bs);
    r.C0 = std::max(r.C0, m.C);
    r.FC0 = std::max(r.FC0, m.FC);
  } else {
    r.s1 = std::max(r.s1, m.s);
    r.bs1 = std::max(r.bs1, m.bs);
    r.C1 = std::max(r.C1, m.C);
    r.FC1 = std::max(r.FC1, m.FC);
  }
}

void finish(MeasureReport& r) {
  r.s = std::max(r.s0, r.s1);
  r.bs = std::max(r.bs0, r.bs1);
  r.C = std::max(r.C0, r.C1);
  r.FC = std::max(r.FC0, r.FC1);
}

constexpr int kFullLpCrossCheckArity = 10;
constexpr double kFcCrossCheckTol = 1e-7;

}  // namespace

MeasureReport aggregate(const BooleanFunction& f, AggregateOptions options) {
  MeasureReport report;
  const bool symmetric = f.is_symmetric();
  std::vector<Input> inputs;
  if (symmetric) {
    for (int w = 0; w <= f.arity(); ++w) inputs.push_back(representative(f.arity(), w));
  } else {
    for (Input x = 0; x < f.size(); ++x) inputs.push_back(x);
  }
  const std::optional<SymmetricProfile> profile =
      symmetric ? std::optional<SymmetricProfile>(f.to_profile()) : std::nullopt;

  for (Input x : inputs) {
    if (!f.defined(x)) continue;
    InputMeasures m;
    m.s = local_sensitivity(f, x);
    if (options.block_sensitivity) m.bs = local_block_sensitivity_bruteforce(f, x);
    if (options.certificate) m.C = local_certificate(f, x).size;
    if (options.fractional) {
      if (profile) {
        m.FC = fractional_certificate_symmetric(*profile, hamming_weight(x));
        if (f.arity() <= kFullLpCrossCheckArity) {
          const double full = fractional_certificate(f, x);
          if (std::abs(full - m.FC) > kFcCrossCheckTol)
            throw std::logic_error("full and symmetry-reduced fractional certificates disagree");
        }
      } else {
        m.FC = fractional_certificate(f, x);
      }
    }
    accumulate(report, f(x), m);
  }
  finish(report);
  return report;
}

MeasureReport aggregate_symmetric(const SymmetricProfile& f) {
  MeasureReport report;
  for (int z = 0; z <= f.arity(); ++z) {
    if (!f.defined(z)) continue;
    InputMeasures m;
    m.s = symmetric_sensitivity(f, z);
    m.bs = symmetric_block_sensitivity(f, z);
    m.C = symmetric_certificate(f, z);
    m.FC = fractional_certificate_symmetric(f, z);
    accumulate(report, f[z], m);
  }
  finish(report);
  return report;
}

}  // namespace symq
