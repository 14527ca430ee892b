#include <doctest.h>

#include <cmath>
#include <vector>

#include "osofdma/stochastic.hpp"

using namespace osofdma;

namespace {

// Counts k-subsets of x*r slots that leave no bin empty by walking every mask.
std::uint64_t covering_subsets(int k, int x, int r) {
  const int n = x * r;
  std::uint64_t hits = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    bool all = true;
    for (int b = 0; b < x && all; ++b) all = ((mask >> (b * r)) & ((1u << r) - 1)) != 0;
    hits += all ? 1 : 0;
  }
  return hits;
}

}  // namespace

TEST_SUITE("stochastic") {
  TEST_CASE("poisson pmf and tail agree with the series") {
    const double mean = 2.5;
    double cdf = 0.0;
    for (int k = 0; k < 6; ++k) {
      CHECK(poisson_pmf(k, mean) == doctest::Approx(std::exp(-mean) * std::pow(mean, k) / std::tgamma(k + 1)));
      CHECK(poisson_tail(k, mean) == doctest::Approx(1.0 - cdf).epsilon(1e-12));
      cdf += poisson_pmf(k, mean);
    }
    CHECK(poisson_tail(0, mean) == 1.0);
    CHECK(poisson_tail(-3, mean) == 1.0);
    CHECK(poisson_pmf(0, 0.0) == 1.0);
    CHECK(poisson_pmf(1, 0.0) == 0.0);
  }

  TEST_CASE("arrival law sums to one over the admissible range") {
    // g is indexed by the post-arrival count: the cap state absorbs the tail.
    const ArrivalLaw law{3.0, 0.5, 6};
    for (int start = 0; start <= law.u_max; ++start) {
      double sum = 0.0;
      for (int k = 0; start + k <= law.u_max; ++k) sum += g(k, start + k, law);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(g(-1, 2, law) == 0.0);
  }

  TEST_CASE("departure law is the binomial closed form") {
    const DepartureLaw law{0.7, 0.3};
    const double x = law.mu * law.t_f;
    for (int u = 0; u <= 6; ++u) {
      double sum = 0.0;
      for (int j = 0; j <= u; ++j) {
        const double literal = static_cast<double>(binomial(u, j)) * std::exp(-u * x) *
                               std::pow(std::exp(x) - 1.0, j);
        CHECK(t(j, u, law) == doctest::Approx(literal).epsilon(1e-12));
        sum += t(j, u, law);
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(t(-1, 3, law) == 0.0);
    CHECK(t(4, 3, law) == 0.0);
  }

  TEST_CASE("binomial coefficients") {
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(10, 3) == 120);
    CHECK(binomial(62, 31) == 465428353255261088ULL);
    CHECK(binomial(5, 6) == 0);
    CHECK(binomial(5, -1) == 0);
    CHECK_THROWS_AS(binomial(200, 100), CountOverflow);
    CHECK(binomial_real(40, 20) == doctest::Approx(137846528820.0));
  }

  TEST_CASE("covering slot subsets match enumeration") {
    for (int r = 1; r <= 4; ++r)
      for (int x = 0; x * r <= 12; ++x)
        for (int k = 0; k <= x * r + 1; ++k) CHECK(f_s(k, x, r) == covering_subsets(k, x, r));
    CHECK(f_s(0, 0, 3) == 1);
    CHECK(f_s(2, 3, 2) == 0);
  }

  TEST_CASE("capped count transition matches a departures-then-arrivals walk") {
    const double lambda = 4.0, mu = 1.5, t_f = 0.25;
    const DepartureLaw dep{mu, t_f};
    for (int cap = 0; cap <= 4; ++cap)
      for (int prev = 0; prev <= 5; ++prev) {
        std::vector<double> oracle(static_cast<std::size_t>(cap) + 1, 0.0);
        for (int j = 0; j <= prev; ++j)
          for (int a = 0; a < 60; ++a) {
            const int next = std::min(cap, prev - j + a);
            oracle[static_cast<std::size_t>(next)] += t(j, prev, dep) * poisson_pmf(a, lambda * t_f);
          }
        double sum = 0.0;
        for (int next = 0; next <= cap; ++next) {
          const double p = capped_count_transition(next, prev, cap, lambda, mu, t_f);
          CHECK(p == doctest::Approx(oracle[static_cast<std::size_t>(next)]).epsilon(1e-12));
          sum += p;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(capped_count_transition(cap + 1, prev, cap, lambda, mu, t_f) == 0.0);
      }
  }
}
