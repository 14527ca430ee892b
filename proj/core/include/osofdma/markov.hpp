#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace osofdma {

// Dense row-stochastic matrix over an enumerated state space; entry (i, j) is
// P(next = j | current = i).
class TransitionKernel {
 public:
  TransitionKernel() = default;
  explicit TransitionKernel(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<double> row(std::size_t i) { return {data_.data() + i * n_, n_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

struct Distribution {
  std::vector<double> p;
  bool reducible = false;  // more than one closed class reachable from the start vector
  double residual = 0.0;   // max |pi P - pi|

  std::size_t size() const { return p.size(); }
  double operator[](std::size_t i) const { return p[i]; }
};

class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class KernelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Per-row deviation of the row sum from 1 (sum - 1).
struct RowReport {
  std::vector<double> deviation;

  double max_abs() const;
  std::vector<std::size_t> flagged(double tol = 1e-9) const;
};

RowReport row_normalize_check(const TransitionKernel& kernel);

// Clamps entries in [-1e-15, 0) to zero and renormalises rows whose sum is
// within 1e-9 of one. Anything worse throws KernelError, naming the row with
// `describe` when given.
void finalize_kernel(TransitionKernel& kernel,
                     const std::function<std::string(std::size_t)>& describe = {});

struct StationaryOptions {
  // Start vector for reducible chains; uniform when empty.
  std::vector<double> initial;
  std::size_t dense_limit = 2000;
  double power_tol = 1e-12;
  std::size_t max_iterations = 1'000'000;
  double residual_tol = 1e-10;
};

// Long-run distribution lim (1/T) sum_t init P^t. Closed classes are solved
// one at a time (dense for classes up to dense_limit states, power iteration
// above); transient states get zero mass, and with several closed classes the
// absorption probabilities from the start vector weight them.
Distribution stationary(const TransitionKernel& kernel, const StationaryOptions& opts = {});

// Single-path solvers. Both assume one closed class covering the whole kernel.
std::vector<double> stationary_dense(const TransitionKernel& kernel);
std::vector<double> stationary_power(const TransitionKernel& kernel,
                                     std::vector<double> start, double tol = 1e-12,
                                     std::size_t max_iterations = 1'000'000);

double stationarity_residual(const TransitionKernel& kernel, std::span<const double> pi);

}  // namespace osofdma
