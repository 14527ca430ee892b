#pragma once

#include <cstdint>
#include <stdexcept>

namespace osofdma {

// Poisson arrivals over one frame, saturating at u_max active connections.
struct ArrivalLaw {
  double lambda = 0.0;  // 1/s
  double t_f = 0.0;     // s
  int u_max = 0;

  double mean() const { return lambda * t_f; }
};

// Independent exponential holding times, one per active connection.
struct DepartureLaw {
  double mu = 0.0;  // 1/s
  double t_f = 0.0;
};

class CountOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

double poisson_pmf(int k, double mean);
// P(N >= k) for N ~ Poisson(mean); 1 for k <= 0.
double poisson_tail(int k, double mean);

// Probability of k new connections in a frame given u_x active: the Poisson pmf
// below the cap, the Poisson tail at the cap (u_x == u_max), 0 for k < 0.
double g(int k, int u_x, const ArrivalLaw& law);

// Probability that j of u_x active connections are released within one frame:
// C(u_x, j) e^{-u_x mu t_f} (e^{mu t_f} - 1)^j.
double t(int j, int u_x, const DepartureLaw& law);

// Exact binomial coefficient; throws CountOverflow beyond 64 bits. 0 when k<0 or k>n.
std::uint64_t binomial(int n, int k);
// Binomial coefficient as a double (no overflow for the ranges used here).
double binomial_real(int n, int k);

// Number of ways to choose k slots out of x bins holding r slots each such that
// every bin holds at least one chosen slot. f_s(0, 0, r) = 1. Throws CountOverflow.
std::uint64_t f_s(int k, int x, int r);

// One-frame transition of a connection count: departures are drawn from u_prev
// and arrivals are admitted until the count reaches cap; connections above cap
// are dropped. Returns P(u_next | u_prev).
double capped_count_transition(int u_next, int u_prev, int cap, double lambda, double mu,
                               double t_f);

}  // namespace osofdma
