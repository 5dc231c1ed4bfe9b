#include "graphlim/growth.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "graphlim/errors.hpp"

namespace graphlim {

LabeledSample uniform_sample(int n, int dim, Seed seed) {
  if (n < 0) throw param_error("uniform_sample: negative size");
  if (dim != 1 && dim != 2) throw param_error("uniform_sample: dim must be 1 or 2");
  Rng rng(seed);
  LabeledSample s;
  s.dim = dim;
  s.points.reserve(n);
  for (int i = 0; i < n; ++i) {
    Point p{rng.next_unit(), 0.0};
    if (dim == 2) p[1] = rng.next_unit();
    s.points.push_back(p);
  }
  return s;
}

namespace {

// Connects every currently nonadjacent pair independently with probability p.
void densify(Graph& g, int upto, double p, Rng& rng) {
  for (int i = 0; i < upto; ++i)
    for (int j = i + 1; j < upto; ++j)
      if (!g.edge(i, j) && rng.bernoulli(p)) g.set_edge(i, j);
}

}  // namespace

Graph grow_uniform(int n, Seed seed) {
  if (n < 1) throw param_error("grow_uniform: n must be >= 1");
  Graph g(n);
  Rng rng(seed);
  for (int t = 2; t <= n; ++t) densify(g, t, 1.0 / t, rng);
  return g;
}

Graph grow_ranked(int n, Seed seed) {
  if (n < 1) throw param_error("grow_ranked: n must be >= 1");
  Graph g(n);
  Rng rng(seed);
  for (int t = 2; t <= n; ++t) {
    // newborn has 0-based id t-1 and 1-based label t
    for (int i = 0; i < t - 1; ++i)
      if (rng.bernoulli(1.0 - static_cast<double>(i + 1) / t)) g.set_edge(i, t - 1);
    densify(g, t, 2.0 / t, rng);
  }
  return g;
}

PrefixResult grow_prefix(int n, Seed seed) {
  if (n < 1) throw param_error("grow_prefix: n must be >= 1");
  Rng rng(seed);
  PrefixResult out{Graph(n), LabeledSample{2, {}}};
  out.sample.points.reserve(n);
  for (int k = 1; k <= n; ++k) {
    const auto z = static_cast<long long>(rng.below(static_cast<std::uint64_t>(k))) + 1;
    for (long long label = 1; label < z; ++label)
      out.graph.set_edge(static_cast<int>(label) - 1, k - 1);
    out.sample.points.push_back(
        {static_cast<double>(k) / n, static_cast<double>(z) / k});
  }
  return out;
}

Multigraph grow_pag(int n, long long m, Seed seed) {
  if (n < 1) throw param_error("grow_pag: n must be >= 1");
  if (m < 0) throw param_error("grow_pag: m must be >= 0");
  Rng rng(seed);
  std::vector<int> seq;
  seq.reserve(static_cast<std::size_t>(n) + 2 * m);
  for (int i = 0; i < n; ++i) seq.push_back(i);
  for (long long j = 0; j < 2 * m; ++j)
    seq.push_back(seq[rng.below(seq.size())]);
  Multigraph g(n);
  for (long long k = 0; k < m; ++k)
    g.add_edge(seq[n + 2 * k], seq[n + 2 * k + 1]);
  return g;
}

Graph simplify_pag(const Multigraph& g) {
  Graph out(g.n());
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j)
      if (g.mult(i, j) > 0) out.set_edge(i, j);
  return out;
}

long long spag_edge_count(int n, double c) {
  if (!(c > 0.0)) throw param_error("spag_edge_count: c must be > 0");
  return std::llround(c * static_cast<double>(n) * n / 2.0);
}

Graph sample_w_random(const LabeledSample& s, const Kernel& w, Seed seed) {
  if (!w.bounded01) throw param_error("sample_w_random: kernel must be [0,1]-valued");
  if (w.dim != s.dim) throw param_error("sample_w_random: dimension mismatch");
  const int n = s.size();
  Graph g(n);
  Rng rng(seed);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double p = w.eval(s.points[i], s.points[j]);
      if (!(p >= 0.0 && p <= 1.0))
        throw param_error("sample_w_random: kernel value outside [0,1]");
      if (rng.bernoulli(p)) g.set_edge(i, j);
    }
  return g;
}

StepGraphon weighted_h(const LabeledSample& s, const Kernel& w) {
  if (w.dim != s.dim) throw param_error("weighted_h: dimension mismatch");
  const int n = s.size();
  if (n < 1) throw param_error("weighted_h: empty sample");
  std::vector<double> values(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = w.eval(s.points[i], s.points[j]);
      values[static_cast<std::size_t>(i) * n + j] = v;
      values[static_cast<std::size_t>(j) * n + i] = v;
    }
  return make_step(n, std::move(values), std::vector<double>(n, 1.0 / n));
}

namespace {

void check_monotone_nonincreasing(const Kernel& w) {
  if (w.dim != 1) throw param_error("grow_prescribed: kernel must have dim 1");
  if (!w.bounded01) throw param_error("grow_prescribed: kernel must be [0,1]-valued");
  constexpr int kProbe = 64;
  constexpr double kTol = 1e-12;
  for (int a = 0; a < kProbe; ++a) {
    const double x = (a + 0.5) / kProbe;
    double prev = w(x, 0.5 / kProbe);
    for (int b = 1; b < kProbe; ++b) {
      const double cur = w(x, (b + 0.5) / kProbe);
      if (cur > prev + kTol)
        throw param_error("grow_prescribed: kernel is not monotone nonincreasing");
      prev = cur;
    }
  }
}

}  // namespace

Graph grow_prescribed(const Kernel& w, int n, Seed seed) {
  if (n < 1) throw param_error("grow_prescribed: n must be >= 1");
  check_monotone_nonincreasing(w);
  Graph g(n);
  Rng rng(seed);
  // 1-based step index t; stored ids are label-1
  for (int t = 2; t <= n; ++t) {
    const double tt = t;
    for (int j = 1; j < t; ++j)
      if (rng.bernoulli(w(j / tt, 1.0))) g.set_edge(j - 1, t - 1);
    for (int i = 1; i < t; ++i)
      for (int j = i + 1; j < t; ++j) {
        if (g.edge(i - 1, j - 1)) continue;
        const double prev = w(i / (tt - 1), j / (tt - 1));
        const double denom = 1.0 - prev;
        const double p = denom > 0.0 ? (w(i / tt, j / tt) - prev) / denom : 0.0;
        if (rng.bernoulli(p)) g.set_edge(i - 1, j - 1);
      }
  }
  return g;
}

Graph grow_homogeneous(double c, const std::function<double(double)>& boundary,
                       int n, Seed seed) {
  if (c < 0.0) throw param_error("grow_homogeneous: c must be >= 0");
  if (n < 1) throw param_error("grow_homogeneous: n must be >= 1");
  Graph g(n);
  Rng rng(seed);
  for (int t = 2; t <= n; ++t) {
    const double tt = t;
    for (int j = 1; j < t; ++j) {
      const double p = boundary(j / tt);
      if (!(p >= 0.0 && p <= 1.0))
        throw param_error("grow_homogeneous: boundary profile outside [0,1]");
      if (rng.bernoulli(p)) g.set_edge(j - 1, t - 1);
    }
    const double p = c > 0.0 ? 1.0 - std::pow((tt - 1.0) / tt, c) : 0.0;
    densify(g, t - 1, p, rng);
  }
  return g;
}

double edge_prob_oracle(GrowthModel model, int i, int j, int n) {
  switch (model) {
    case GrowthModel::uniform: {
      // 0-based labels
      if (i < 0 || j < 0 || i == j || i >= n || j >= n)
        throw param_error("edge_prob_oracle: uniform expects distinct 0-based labels");
      return 1.0 - static_cast<double>(std::max(i, j)) / n;
    }
    case GrowthModel::ranked: {
      // 1-based labels i < j
      if (i < 1 || j <= i || j > n) throw param_error("edge_prob_oracle: ranked expects 1-based i < j <= n");
      if (n < 2) throw param_error("edge_prob_oracle: ranked needs n >= 2");
      const double pij = static_cast<double>(i) * (j - 2.0) * (j - 1.0) /
                         (static_cast<double>(j) * (n - 1.0) * n);
      return 1.0 - pij;
    }
    case GrowthModel::prefix: {
      // 1-based labels i < j
      if (i < 1 || j <= i || j > n) throw param_error("edge_prob_oracle: prefix expects 1-based i < j <= n");
      return static_cast<double>(j - i) / j;
    }
  }
  throw param_error("edge_prob_oracle: unknown model");
}

double pag_multigraph_probability(const Multigraph& g, int n, long long m) {
  if (g.n() != n) throw param_error("pag_multigraph_probability: node count mismatch");
  if (g.total_edges() != m) throw param_error("pag_multigraph_probability: edge count mismatch");
  long long nonloop = 0;
  double log_p = std::lgamma(static_cast<double>(m) + 1.0);
  for (int i = 0; i < n; ++i) {
    log_p += std::lgamma(static_cast<double>(g.degree(i)) + 1.0);
    log_p -= std::lgamma(static_cast<double>(g.loops(i)) + 1.0);
    for (int j = i + 1; j < n; ++j) {
      nonloop += g.mult(i, j);
      log_p -= std::lgamma(static_cast<double>(g.mult(i, j)) + 1.0);
    }
  }
  log_p += static_cast<double>(nonloop) * std::log(2.0);
  for (long long t = 0; t < 2 * m; ++t) log_p -= std::log(static_cast<double>(n) + t);
  return std::exp(log_p);
}

}  // namespace graphlim
