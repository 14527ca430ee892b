#include "osofdma/markov.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace osofdma {

double RowReport::max_abs() const {
  double m = 0.0;
  for (double d : deviation) m = std::max(m, std::abs(d));
  return m;
}

std::vector<std::size_t> RowReport::flagged(double tol) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < deviation.size(); ++i)
    if (std::abs(deviation[i]) > tol) out.push_back(i);
  return out;
}

RowReport row_normalize_check(const TransitionKernel& kernel) {
  RowReport report;
  report.deviation.resize(kernel.size());
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    auto r = kernel.row(i);
    report.deviation[i] = std::accumulate(r.begin(), r.end(), 0.0) - 1.0;
  }
  return report;
}

void finalize_kernel(TransitionKernel& kernel,
                     const std::function<std::string(std::size_t)>& describe) {
  auto name = [&](std::size_t i) {
    return describe ? describe(i) : "row " + std::to_string(i);
  };
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    auto r = kernel.row(i);
    double sum = 0.0;
    for (double& v : r) {
      if (v < 0.0) {
        if (v < -1e-15)
          throw KernelError("negative transition probability " + std::to_string(v) + " at " +
                            name(i));
        v = 0.0;
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw KernelError("row sum " + std::to_string(sum) + " deviates from 1 at " + name(i));
    for (double& v : r) v /= sum;
  }
}

double stationarity_residual(const TransitionKernel& kernel, std::span<const double> pi) {
  const std::size_t n = kernel.size();
  std::vector<double> next(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (pi[i] == 0.0) continue;
    auto r = kernel.row(i);
    for (std::size_t j = 0; j < n; ++j) next[j] += pi[i] * r[j];
  }
  double res = 0.0;
  for (std::size_t j = 0; j < n; ++j) res = std::max(res, std::abs(next[j] - pi[j]));
  return res;
}

namespace {

void normalise(std::vector<double>& v) {
  for (double& x : v)
    if (x < 0.0) x = 0.0;
  const double s = std::accumulate(v.begin(), v.end(), 0.0);
  if (s > 0.0)
    for (double& x : v) x /= s;
}

TransitionKernel restrict_to(const TransitionKernel& kernel, const std::vector<std::size_t>& idx) {
  TransitionKernel sub(idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) sub(a, b) = kernel(idx[a], idx[b]);
  return sub;
}

// Strongly connected components (iterative Tarjan). Returns component id per state.
std::vector<std::size_t> strongly_connected(const std::vector<std::vector<std::size_t>>& adj,
                                            std::size_t& count) {
  const std::size_t n = adj.size();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> call;  // (node, next edge)
  std::size_t counter = 0;
  count = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unset) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [v, e] = call.back();
      if (e == 0 && index[v] == unset) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      if (e < adj[v].size()) {
        const std::size_t w = adj[v][e++];
        if (index[w] == unset) {
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
        } while (w != v);
        ++count;
      }
      const std::size_t finished = v;
      call.pop_back();
      if (!call.empty()) {
        const std::size_t parent = call.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  return comp;
}

}  // namespace

std::vector<double> stationary_dense(const TransitionKernel& kernel) {
  const auto n = static_cast<Eigen::Index>(kernel.size());
  if (n == 0) return {};
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      a(j, i) = kernel(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  a.diagonal().array() -= 1.0;
  a.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(n - 1) = 1.0;
  Eigen::VectorXd x = a.partialPivLu().solve(rhs);
  std::vector<double> pi(x.data(), x.data() + n);
  normalise(pi);
  return pi;
}

std::vector<double> stationary_power(const TransitionKernel& kernel, std::vector<double> start,
                                     double tol, std::size_t max_iterations) {
  const std::size_t n = kernel.size();
  if (n == 0) return {};
  if (start.size() != n) start.assign(n, 1.0 / static_cast<double>(n));
  normalise(start);
  std::vector<double> next(n);
  for (std::size_t it = 0; it < max_iterations; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (start[i] == 0.0) continue;
      auto r = kernel.row(i);
      for (std::size_t j = 0; j < n; ++j) next[j] += start[i] * r[j];
    }
    double diff = 0.0;
    for (std::size_t j = 0; j < n; ++j) diff = std::max(diff, std::abs(next[j] - start[j]));
    // Lazy step (P + I)/2 has the same fixed points and removes periodicity.
    for (std::size_t j = 0; j < n; ++j) start[j] = 0.5 * (start[j] + next[j]);
    if (diff < tol) {
      normalise(start);
      return start;
    }
  }
  throw NonConvergence("power iteration did not converge within " +
                       std::to_string(max_iterations) + " iterations");
}

Distribution stationary(const TransitionKernel& kernel, const StationaryOptions& opts) {
  const std::size_t n = kernel.size();
  Distribution out;
  if (n == 0) return out;

  std::vector<double> init = opts.initial;
  if (init.size() != n) init.assign(n, 1.0 / static_cast<double>(n));
  normalise(init);

  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto r = kernel.row(i);
    for (std::size_t j = 0; j < n; ++j)
      if (r[j] > 0.0) adj[i].push_back(j);
  }

  std::vector<bool> reachable(n, false);
  std::vector<std::size_t> frontier;
  for (std::size_t i = 0; i < n; ++i)
    if (init[i] > 0.0) {
      reachable[i] = true;
      frontier.push_back(i);
    }
  while (!frontier.empty()) {
    const std::size_t v = frontier.back();
    frontier.pop_back();
    for (std::size_t w : adj[v])
      if (!reachable[w]) {
        reachable[w] = true;
        frontier.push_back(w);
      }
  }

  std::size_t ncomp = 0;
  const auto comp = strongly_connected(adj, ncomp);
  std::vector<bool> closed(ncomp, true);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w : adj[v])
      if (comp[w] != comp[v]) closed[comp[v]] = false;

  std::vector<std::vector<std::size_t>> classes(ncomp);
  for (std::size_t v = 0; v < n; ++v)
    if (reachable[v] && closed[comp[v]]) classes[comp[v]].push_back(v);
  std::vector<std::vector<std::size_t>> closed_classes;
  for (auto& c : classes)
    if (!c.empty()) closed_classes.push_back(std::move(c));

  std::vector<std::size_t> transient;
  for (std::size_t v = 0; v < n; ++v)
    if (reachable[v] && !closed[comp[v]]) transient.push_back(v);

  // Absorption weight of each closed class from the start vector.
  std::vector<double> weight(closed_classes.size(), 0.0);
  if (closed_classes.size() == 1) {
    weight[0] = 1.0;
  } else {
    std::vector<std::size_t> class_of(n, static_cast<std::size_t>(-1));
    for (std::size_t k = 0; k < closed_classes.size(); ++k)
      for (std::size_t v : closed_classes[k]) {
        class_of[v] = k;
        weight[k] += init[v];
      }
    if (!transient.empty()) {
      const auto nt = static_cast<Eigen::Index>(transient.size());
      Eigen::MatrixXd a = Eigen::MatrixXd::Identity(nt, nt);
      Eigen::VectorXd b(nt);
      for (Eigen::Index r = 0; r < nt; ++r) {
        b(r) = init[transient[static_cast<std::size_t>(r)]];
        for (Eigen::Index c = 0; c < nt; ++c)
          a(r, c) -= kernel(transient[static_cast<std::size_t>(c)],
                            transient[static_cast<std::size_t>(r)]);
      }
      Eigen::VectorXd visits = a.partialPivLu().solve(b);
      for (Eigen::Index r = 0; r < nt; ++r) {
        auto row = kernel.row(transient[static_cast<std::size_t>(r)]);
        for (std::size_t j = 0; j < n; ++j)
          if (row[j] > 0.0 && class_of[j] != static_cast<std::size_t>(-1))
            weight[class_of[j]] += visits(r) * row[j];
      }
    }
  }

  out.p.assign(n, 0.0);
  out.reducible = closed_classes.size() > 1;
  for (std::size_t k = 0; k < closed_classes.size(); ++k) {
    const auto& idx = closed_classes[k];
    if (weight[k] <= 0.0) continue;
    std::vector<double> local;
    if (idx.size() == 1) {
      local = {1.0};
    } else {
      const auto sub = restrict_to(kernel, idx);
      if (idx.size() <= opts.dense_limit) {
        local = stationary_dense(sub);
        if (stationarity_residual(sub, local) > opts.residual_tol)
          local = stationary_power(sub, local, opts.power_tol, opts.max_iterations);
      } else {
        local = stationary_power(sub, {}, opts.power_tol, opts.max_iterations);
      }
    }
    for (std::size_t a = 0; a < idx.size(); ++a) out.p[idx[a]] = weight[k] * local[a];
  }
  normalise(out.p);
  out.residual = stationarity_residual(kernel, out.p);
  if (out.residual > opts.residual_tol)
    throw NonConvergence("stationary distribution residual " + std::to_string(out.residual) +
                         " exceeds tolerance");
  return out;
}

}  // namespace osofdma
