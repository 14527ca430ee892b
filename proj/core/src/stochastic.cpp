#include "osofdma/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace osofdma {

double poisson_pmf(int k, double mean) {
  if (k < 0) return 0.0;
  if (mean <= 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(k * std::log(mean) - mean - std::lgamma(k + 1.0));
}

double poisson_tail(int k, double mean) {
  if (k <= 0) return 1.0;
  if (mean <= 0.0) return 0.0;
  if (k <= mean + 1.0) {
    // Result is at least ~1/2 here, so the complement loses nothing.
    double cdf = 0.0;
    for (int i = 0; i < k; ++i) cdf += poisson_pmf(i, mean);
    return std::max(0.0, 1.0 - cdf);
  }
  // Terms decrease monotonically beyond the mode; sum upward until negligible.
  double term = poisson_pmf(k, mean);
  double sum = term;
  for (int i = k + 1; term > 1e-16 * sum && i < k + 100000; ++i) {
    term *= mean / i;
    sum += term;
  }
  return std::min(1.0, sum);
}

double g(int k, int u_x, const ArrivalLaw& law) {
  if (k < 0) return 0.0;
  if (u_x >= law.u_max) return poisson_tail(k, law.mean());
  return poisson_pmf(k, law.mean());
}

double t(int j, int u_x, const DepartureLaw& law) {
  if (j < 0 || u_x < 0 || j > u_x) return 0.0;
  const double x = law.mu * law.t_f;
  // e^{-u x}(e^{x}-1)^j == p^j (1-p)^{u-j} with p = 1 - e^{-x}.
  const double p = -std::expm1(-x);
  const double q = std::exp(-x);
  return binomial_real(u_x, j) * std::pow(p, j) * std::pow(q, u_x - j);
}

__extension__ typedef unsigned __int128 wide_count;

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  wide_count acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (acc > UINT64_MAX) throw CountOverflow("binomial coefficient exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

double binomial_real(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double acc = 1.0;
  for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
  return acc;
}

std::uint64_t f_s(int k, int x, int r) {
  if (k < 0 || x < 0 || r < 0) return 0;
  if (x == 0) return k == 0 ? 1 : 0;
  if (k < x || static_cast<long>(k) > static_cast<long>(x) * r) return 0;

  // ways[n]: placements of n slots over the bins seen so far, none of them empty.
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(k) + 1, 0);
  ways[0] = 1;
  for (int bin = 0; bin < x; ++bin) {
    std::vector<std::uint64_t> next(ways.size(), 0);
    for (int n = 0; n <= k; ++n) {
      if (ways[static_cast<std::size_t>(n)] == 0) continue;
      for (int i = 1; i <= std::min(r, k - n); ++i) {
        std::uint64_t term = 0;
        std::uint64_t acc = next[static_cast<std::size_t>(n + i)];
        if (__builtin_mul_overflow(ways[static_cast<std::size_t>(n)], binomial(r, i), &term) ||
            __builtin_add_overflow(acc, term, &acc))
          throw CountOverflow("f_s count exceeds 64 bits");
        next[static_cast<std::size_t>(n + i)] = acc;
      }
    }
    ways = std::move(next);
  }
  return ways[static_cast<std::size_t>(k)];
}

double capped_count_transition(int u_next, int u_prev, int cap, double lambda, double mu,
                               double t_f) {
  if (u_next < 0 || u_next > cap || u_prev < 0) return 0.0;
  const ArrivalLaw arrivals{lambda, t_f, cap};
  const DepartureLaw departures{mu, t_f};
  double total = 0.0;
  for (int j = 0; j <= u_prev; ++j) {
    const double tj = t(j, u_prev, departures);
    if (tj == 0.0) continue;
    const int needed = u_next - u_prev + j;
    // At the cap every arrival count that reaches it is absorbed there.
    const double gi = u_next < cap ? g(needed, u_next, arrivals) : g(std::max(0, needed), cap, arrivals);
    total += tj * gi;
  }
  return total;
}

}  // namespace osofdma
