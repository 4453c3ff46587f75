#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace symq {

/// Nonnegative symmetric matrix stored once per unordered pair (row <= col).
class SparseSymmetricMatrix {
 public:
  struct Entry {
    std::uint32_t row;
    std::uint32_t col;
    double value;
  };

  explicit SparseSymmetricMatrix(std::size_t dimension) : dim_(dimension) {}

  /// Adds value at (row, col) and its mirror. Throws on negative or non-finite values.
  void add(std::uint32_t row, std::uint32_t col, double value);

  std::size_t dimension() const { return dim_; }
  std::span<const Entry> entries() const { return entries_; }

  /// out = M * in
  void multiply(std::span<const double> in, std::span<double> out) const;

 private:
  std::size_t dim_;
  std::vector<Entry> entries_;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PowerIterationOptions {
  double tol = 1e-9;
  /// 0 selects 100 * dimension.
  std::size_t max_iter = 0;
};

/// Largest eigenvalue of a nonnegative symmetric matrix by power iteration on M^2
/// from the normalized all-ones vector. Throws ConvergenceError when the Rayleigh
/// quotient does not settle within max_iter.
double spectral_norm(const SparseSymmetricMatrix& m, PowerIterationOptions options = {});

}  // namespace symq
