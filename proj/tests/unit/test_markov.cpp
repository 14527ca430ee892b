#include <doctest.h>

#include <random>

#include "osofdma/markov.hpp"

using namespace osofdma;

namespace {

TransitionKernel from_rows(const std::vector<std::vector<double>>& rows) {
  TransitionKernel k(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) k(i, j) = rows[i][j];
  return k;
}

TransitionKernel random_kernel(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  TransitionKernel k(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += k(i, j) = u(rng);
    for (std::size_t j = 0; j < n; ++j) k(i, j) /= sum;
  }
  return k;
}

}  // namespace

TEST_SUITE("markov") {
  TEST_CASE("two-state chain has the closed-form law") {
    const double a = 0.3, b = 0.05;
    const auto k = from_rows({{1 - a, a}, {b, 1 - b}});
    const auto pi = stationary(k);
    CHECK(pi[0] == doctest::Approx(b / (a + b)).epsilon(1e-12));
    CHECK(pi[1] == doctest::Approx(a / (a + b)).epsilon(1e-12));
    CHECK_FALSE(pi.reducible);
    CHECK(pi.residual < 1e-14);
  }

  TEST_CASE("dense and power solvers agree") {
    const auto k = random_kernel(30, 7);
    const auto dense = stationary_dense(k);
    const auto power = stationary_power(k, std::vector<double>(30, 1.0 / 30));
    for (std::size_t i = 0; i < 30; ++i) CHECK(dense[i] == doctest::Approx(power[i]).epsilon(1e-9));
    StationaryOptions opts;
    opts.dense_limit = 0;
    const auto via_power = stationary(k, opts);
    for (std::size_t i = 0; i < 30; ++i) CHECK(via_power[i] == doctest::Approx(dense[i]).epsilon(1e-9));
  }

  TEST_CASE("periodic chain still has its Cesaro limit") {
    const auto k = from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
    StationaryOptions opts;
    opts.dense_limit = 0;
    const auto pi = stationary(k, opts);
    for (double v : pi.p) CHECK(v == doctest::Approx(1.0 / 3).epsilon(1e-9));
  }

  TEST_CASE("transient states get no mass and closed classes are weighted by absorption") {
    // State 0 is transient and leaks into {1} with 0.2 and {2,3} with 0.6.
    const auto k = from_rows({{0.2, 0.2, 0.3, 0.3},
                              {0.0, 1.0, 0.0, 0.0},
                              {0.0, 0.0, 0.5, 0.5},
                              {0.0, 0.0, 0.25, 0.75}});
    StationaryOptions opts;
    opts.initial = {1.0, 0.0, 0.0, 0.0};
    const auto pi = stationary(k, opts);
    CHECK(pi.reducible);
    CHECK(pi[0] == 0.0);
    CHECK(pi[1] == doctest::Approx(0.25));
    CHECK(pi[2] == doctest::Approx(0.75 / 3));
    CHECK(pi[3] == doctest::Approx(0.75 * 2 / 3));

    opts.initial = {0.0, 0.0, 1.0, 0.0};
    const auto only = stationary(k, opts);
    CHECK_FALSE(only.reducible);
    CHECK(only[1] == 0.0);
    CHECK(only[2] == doctest::Approx(1.0 / 3));
  }

  TEST_CASE("row checks and finalisation") {
    auto k = from_rows({{0.5, 0.5 + 1e-12}, {-1e-16, 1.0}});
    CHECK(row_normalize_check(k).max_abs() == doctest::Approx(1e-12).epsilon(1e-3));
    finalize_kernel(k);
    CHECK(k(1, 0) == 0.0);
    CHECK(row_normalize_check(k).max_abs() < 1e-15);

    auto bad = from_rows({{0.5, 0.4}, {0.0, 1.0}});
    CHECK(row_normalize_check(bad).flagged() == std::vector<std::size_t>{0});
    CHECK_THROWS_AS(finalize_kernel(bad, [](std::size_t i) { return "row " + std::to_string(i); }),
                    KernelError);
  }

  TEST_CASE("residual measures the fixed-point error") {
    const auto k = from_rows({{0.9, 0.1}, {0.5, 0.5}});
    const std::vector<double> wrong{0.5, 0.5};
    CHECK(stationarity_residual(k, wrong) == doctest::Approx(0.2));
    CHECK(stationarity_residual(k, stationary(k).p) < 1e-14);
  }
}
