#include "symq/spectral_norm.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace symq {

void SparseSymmetricMatrix::add(std::uint32_t row, std::uint32_t col, double value) {
  if (row >= dim_ || col >= dim_) throw std::invalid_argument("matrix index out of range");
  if (!(value >= 0.0) || !std::isfinite(value)) throw std::invalid_argument("entries must be finite and nonnegative");
  if (value == 0.0) return;
  if (row > col) std::swap(row, col);
  entries_.push_back({row, col, value});
}

void SparseSymmetricMatrix::multiply(std::span<const double> in, std::span<double> out) const {
  if (in.size() != dim_ || out.size() != dim_) throw std::invalid_argument("vector dimension mismatch");
  std::fill(out.begin(), out.end(), 0.0);
  for (const Entry& e : entries_) {
    out[e.row] += e.value * in[e.col];
    if (e.row != e.col) out[e.col] += e.value * in[e.row];
  }
}

namespace {

double norm2(std::span<const double> v) { return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0)); }

}  // namespace

double spectral_norm(const SparseSymmetricMatrix& m, PowerIterationOptions options) {
  const std::size_t dim = m.dimension();
  if (dim == 0) throw std::invalid_argument("spectral_norm needs dimension >= 1");
  if (m.entries().empty()) return 0.0;
  const std::size_t max_iter = options.max_iter != 0 ? options.max_iter : 100 * dim;

  std::vector<double> v(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  std::vector<double> mv(dim);
  std::vector<double> mmv(dim);

  double previous = -1.0;
  int settled = 0;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    m.multiply(v, mv);
    // v is unit length, so v^T M^2 v = |Mv|^2.
    const double mv_norm = norm2(mv);
    const double rayleigh = mv_norm * mv_norm;
    if (rayleigh == 0.0) return 0.0;
    m.multiply(mv, mmv);
    const double mmv_norm = norm2(mmv);
    for (std::size_t i = 0; i < dim; ++i) v[i] = mmv[i] / mmv_norm;

    if (previous >= 0.0 && std::abs(rayleigh - previous) <= options.tol * rayleigh) {
      if (++settled >= 3) return std::sqrt(rayleigh);
    } else {
      settled = 0;
    }
    previous = rayleigh;
  }
  throw ConvergenceError("power iteration did not converge within " + std::to_string(max_iter) + " iterations");
}

}  // namespace symq
