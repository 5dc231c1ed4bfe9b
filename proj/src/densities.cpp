#include "graphlim/densities.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numeric>

#include "graphlim/errors.hpp"

namespace graphlim {

namespace {

// Pattern-vertex visit order: most back-connections first, then higher
// degree, so candidate sets shrink early.
std::vector<int> connectivity_order(const PatternGraph& f) {
  const int k = f.k();
  std::vector<std::vector<int>> adj(k);
  for (const auto& e : f.edges())
    if (e.a != e.b) {
      adj[e.a].push_back(e.b);
      adj[e.b].push_back(e.a);
    }
  std::vector<int> order;
  order.reserve(k);
  std::vector<bool> used(k, false);
  for (int step = 0; step < k; ++step) {
    int best = -1, best_back = -1, best_deg = -1;
    for (int v = 0; v < k; ++v) {
      if (used[v]) continue;
      int back = 0;
      for (int u : adj[v])
        if (used[u]) ++back;
      const int deg = f.degrees()[v];
      if (back > best_back || (back == best_back && deg > best_deg)) {
        best = v;
        best_back = back;
        best_deg = deg;
      }
    }
    used[best] = true;
    order.push_back(best);
  }
  return order;
}

long long falling(long long n, int r) {
  long long v = 1;
  for (int t = 0; t < r; ++t) v *= n - t;
  return n >= r ? v : 0;
}

constexpr double kEnumBudget = 1e8;

}  // namespace

long long hom_count(const PatternGraph& f, const Graph& g) {
  if (!f.simple()) throw param_error("hom_count: pattern must be simple");
  const int k = f.k();
  const int n = g.n();
  if (n == 0) return 0;

  const std::vector<int> order = connectivity_order(f);
  std::vector<int> pos(k);
  for (int d = 0; d < k; ++d) pos[order[d]] = d;
  std::vector<std::vector<int>> back(k);  // depths of earlier neighbors
  for (const auto& e : f.edges()) {
    const int da = pos[e.a], db = pos[e.b];
    back[std::max(da, db)].push_back(std::min(da, db));
  }

  const int words = g.words();
  std::vector<std::uint64_t> full(words, 0);
  for (int i = 0; i < n; ++i) full[i >> 6] |= std::uint64_t{1} << (i & 63);
  std::vector<std::vector<std::uint64_t>> cand(k, std::vector<std::uint64_t>(words));
  std::vector<int> image(k);
  long long count = 0;

  std::function<void(int)> descend = [&](int d) {
    std::uint64_t* c = cand[d].data();
    if (back[d].empty()) {
      std::copy(full.begin(), full.end(), c);
    } else {
      const std::uint64_t* first = g.row(image[back[d][0]]);
      std::copy(first, first + words, c);
      for (std::size_t t = 1; t < back[d].size(); ++t) {
        const std::uint64_t* r = g.row(image[back[d][t]]);
        for (int w = 0; w < words; ++w) c[w] &= r[w];
      }
    }
    if (d == k - 1) {
      for (int w = 0; w < words; ++w) count += std::popcount(c[w]);
      return;
    }
    for (int w = 0; w < words; ++w) {
      std::uint64_t bits = c[w];
      while (bits) {
        image[d] = (w << 6) | std::countr_zero(bits);
        bits &= bits - 1;
        descend(d + 1);
      }
    }
  };
  descend(0);
  return count;
}

double t_density(const PatternGraph& f, const Graph& g) {
  if (g.n() == 0) throw param_error("t_density: empty target graph");
  return static_cast<double>(hom_count(f, g)) /
         std::pow(static_cast<double>(g.n()), f.k());
}

long long inj_count(const PatternGraph& f, const Multigraph& g) {
  const int k = f.k();
  const int n = g.n();
  if (k > n) return 0;

  const std::vector<int> order = connectivity_order(f);
  std::vector<int> pos(k);
  for (int d = 0; d < k; ++d) pos[order[d]] = d;
  std::vector<int> loop_mult(k, 0);
  std::vector<std::vector<std::pair<int, int>>> back(k);  // (earlier depth, mult)
  for (const auto& e : f.edges()) {
    if (e.a == e.b) {
      loop_mult[pos[e.a]] += e.mult;
    } else {
      const int da = pos[e.a], db = pos[e.b];
      back[std::max(da, db)].push_back({std::min(da, db), e.mult});
    }
  }

  std::vector<bool> used(n, false);
  std::vector<int> image(k);
  long long count = 0;
  std::function<void(int, long long)> descend = [&](int d, long long acc) {
    if (d == k) {
      count += acc;
      return;
    }
    for (int u = 0; u < n; ++u) {
      if (used[u]) continue;
      long long a = acc;
      if (loop_mult[d] > 0) a *= falling(g.loops(u), loop_mult[d]);
      for (const auto& [e, r] : back[d]) {
        if (a == 0) break;
        a *= falling(g.mult(u, image[e]), r);
      }
      if (a == 0) continue;
      used[u] = true;
      image[d] = u;
      descend(d + 1, a);
      used[u] = false;
    }
  };
  descend(0, 1);
  return count;
}

double t_inj(const PatternGraph& f, const Multigraph& g) {
  if (g.n() < f.k()) throw size_error("t_inj: target smaller than pattern");
  return static_cast<double>(inj_count(f, g)) /
         static_cast<double>(falling(g.n(), f.k()));
}

Multigraph to_multigraph(const Graph& g) {
  Multigraph m(g.n());
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j)
      if (g.edge(i, j)) m.add_edge(i, j);
  return m;
}

double expected_tinj_pag(const PatternGraph& f, long long n, long long m) {
  if (n < 1 || m < 0) throw param_error("expected_tinj_pag: need n >= 1, m >= 0");
  const int l = f.total_mult();
  if (m < l) return 0.0;
  double log_v = f.nonloop_mult() * std::log(2.0) +
                 std::lgamma(static_cast<double>(m) + 1.0) -
                 std::lgamma(static_cast<double>(m - l) + 1.0);
  for (int r : f.degrees()) log_v += std::lgamma(r + 1.0);
  for (int t = 0; t < 2 * l; ++t) log_v -= std::log(static_cast<double>(n + t));
  return std::exp(log_v);
}

double t_log_closed(const PatternGraph& f, double c) {
  if (!(c > 0.0)) throw param_error("t_log_closed: c must be > 0");
  for (const auto& e : f.edges())
    if (e.a == e.b) throw param_error("t_log_closed: pattern must be loopless");
  double v = std::pow(c, f.total_mult());
  for (int r : f.degrees()) v *= std::tgamma(r + 1.0);
  return v;
}

double t_step_exact(const PatternGraph& f, const StepGraphon& s) {
  if (!f.simple()) throw param_error("t_step_exact: pattern must be simple");
  const int k = f.k();
  const int blocks = s.k();
  if (k > 8) throw size_error("t_step_exact: pattern capped at 8 nodes");
  if (blocks > 64) throw size_error("t_step_exact: step function capped at 64 blocks");
  if (std::pow(static_cast<double>(blocks), k) > kEnumBudget)
    throw size_error("t_step_exact: enumeration budget exceeded");

  std::vector<std::vector<int>> back(k);
  for (const auto& e : f.edges()) back[std::max(e.a, e.b)].push_back(std::min(e.a, e.b));
  std::vector<int> block(k);
  double total = 0.0;
  std::function<void(int, double)> descend = [&](int d, double acc) {
    if (d == k) {
      total += acc;
      return;
    }
    for (int b = 0; b < blocks; ++b) {
      double a = acc * s.measure(b);
      for (int e : back[d]) {
        a *= s.value(b, block[e]);
        if (a == 0.0) break;
      }
      if (a == 0.0) continue;
      block[d] = b;
      descend(d + 1, a);
    }
  };
  descend(0, 1.0);
  return total;
}

McEstimate t_kernel_mc(const PatternGraph& f, const Kernel& w, long long samples,
                       Seed seed) {
  if (!f.simple()) throw param_error("t_kernel_mc: pattern must be simple");
  if (samples < 1000) throw param_error("t_kernel_mc: need at least 1000 samples");
  const int k = f.k();
  const long long block_size = 1 << 16;

  // Fixed blocks with per-block substreams: the merged estimate is the same
  // no matter how blocks are assigned to workers.
  double mean = 0.0, m2 = 0.0;
  long long count = 0;
  std::vector<Point> pts(k);
  for (long long start = 0, block = 0; start < samples; start += block_size, ++block) {
    Rng rng(seed.sub(block));
    const long long end = std::min(samples, start + block_size);
    double b_mean = 0.0, b_m2 = 0.0;
    long long b_count = 0;
    for (long long i = start; i < end; ++i) {
      for (int v = 0; v < k; ++v) {
        pts[v][0] = rng.next_unit();
        pts[v][1] = w.dim == 2 ? rng.next_unit() : 0.0;
      }
      double prod = 1.0;
      for (const auto& e : f.edges()) {
        prod *= w.eval(pts[e.a], pts[e.b]);
        if (prod == 0.0) break;
      }
      ++b_count;
      const double delta = prod - b_mean;
      b_mean += delta / b_count;
      b_m2 += delta * (prod - b_mean);
    }
    const double delta = b_mean - mean;
    const long long total = count + b_count;
    mean += delta * b_count / total;
    m2 += b_m2 + delta * delta * (static_cast<double>(count) * b_count / total);
    count = total;
  }
  const double se = count > 1 ? std::sqrt(m2 / (count - 1) / count) : 0.0;
  return {mean, se, count};
}

namespace {

double quad_sum(const PatternGraph& f, int cells, const std::function<double(int, int)>& pair_value) {
  const int k = f.k();
  std::vector<std::vector<int>> back(k);
  for (const auto& e : f.edges()) back[std::max(e.a, e.b)].push_back(std::min(e.a, e.b));
  std::vector<int> cell(k);
  double total = 0.0;
  std::function<void(int, double)> descend = [&](int d, double acc) {
    if (d == k) {
      total += acc;
      return;
    }
    for (int c = 0; c < cells; ++c) {
      double a = acc;
      for (int e : back[d]) {
        a *= pair_value(c, cell[e]);
        if (a == 0.0) break;
      }
      if (a == 0.0) continue;
      cell[d] = c;
      descend(d + 1, a);
    }
  };
  descend(0, 1.0);
  return total;
}

}  // namespace

double t_kernel_quad(const PatternGraph& f, const Kernel& w, int grid) {
  if (!f.simple()) throw param_error("t_kernel_quad: pattern must be simple");
  if (grid < 1) throw param_error("t_kernel_quad: grid must be >= 1");
  const int k = f.k();
  if (std::pow(static_cast<double>(grid), static_cast<double>(k) * w.dim) > 1e9)
    throw size_error("t_kernel_quad: grid budget exceeded (grid^(k*dim) <= 1e9)");

  if (w.dim == 1) {
    const auto g = static_cast<std::size_t>(grid);
    if (g * g <= 8'000'000) {
      std::vector<double> table(g * g);
      for (int i = 0; i < grid; ++i)
        for (int j = i; j < grid; ++j) {
          const double v = w((i + 0.5) / grid, (j + 0.5) / grid);
          table[g * i + j] = v;
          table[g * j + i] = v;
        }
      const double total = quad_sum(
          f, grid, [&](int a, int b) { return table[g * a + b]; });
      return total / std::pow(static_cast<double>(grid), k);
    }
    const double total = quad_sum(f, grid, [&](int a, int b) {
      return w((a + 0.5) / grid, (b + 0.5) / grid);
    });
    return total / std::pow(static_cast<double>(grid), k);
  }

  // dim 2: one quadrature cell per pair of axis cells
  const int cells = grid * grid;
  std::vector<Point> mids(cells);
  for (int a = 0; a < grid; ++a)
    for (int b = 0; b < grid; ++b)
      mids[static_cast<std::size_t>(a) * grid + b] = {(a + 0.5) / grid, (b + 0.5) / grid};
  const double total = quad_sum(
      f, cells, [&](int a, int b) { return w.eval(mids[a], mids[b]); });
  return total / std::pow(static_cast<double>(cells), k);
}

double t_hom_multiplicity(const PatternGraph& f, const Multigraph& g) {
  const int k = f.k();
  const int n = g.n();
  if (n == 0) throw param_error("t_hom_multiplicity: empty target");
  if (std::pow(static_cast<double>(n), k) > kEnumBudget)
    throw size_error("t_hom_multiplicity: enumeration budget exceeded");

  // Multiplicity matrix with loop sites counted twice on the diagonal.
  auto entry = [&](int u, int v) -> double {
    return u == v ? 2.0 * g.loops(u) : static_cast<double>(g.mult(u, v));
  };
  std::vector<int> loop_mult(k, 0);
  std::vector<std::vector<std::pair<int, int>>> back(k);
  for (const auto& e : f.edges()) {
    if (e.a == e.b)
      loop_mult[e.a] += e.mult;
    else
      back[std::max(e.a, e.b)].push_back({std::min(e.a, e.b), e.mult});
  }
  std::vector<int> image(k);
  double total = 0.0;
  std::function<void(int, double)> descend = [&](int d, double acc) {
    if (d == k) {
      total += acc;
      return;
    }
    for (int u = 0; u < n; ++u) {
      double a = acc;
      for (int t = 0; t < loop_mult[d]; ++t) a *= entry(u, u);
      for (const auto& [e, r] : back[d])
        for (int t = 0; t < r && a != 0.0; ++t) a *= entry(u, image[e]);
      if (a == 0.0) continue;
      image[d] = u;
      descend(d + 1, a);
    }
  };
  descend(0, 1.0);
  return total / std::pow(static_cast<double>(n), k);
}

// --- well-distribution -------------------------------------------------------

std::vector<BoxCell> grid_cells(int m, int dim) {
  if (m < 1) throw param_error("grid_cells: m must be >= 1");
  if (dim != 1 && dim != 2) throw param_error("grid_cells: dim must be 1 or 2");
  std::vector<BoxCell> cells;
  if (dim == 1) {
    for (int a = 0; a < m; ++a)
      cells.push_back({{static_cast<double>(a) / m, 0.0},
                       {static_cast<double>(a + 1) / m, 1.0}});
  } else {
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        cells.push_back({{static_cast<double>(a) / m, static_cast<double>(b) / m},
                         {static_cast<double>(a + 1) / m, static_cast<double>(b + 1) / m}});
  }
  return cells;
}

namespace {

bool axis_contains(double lo, double hi, double x) {
  return x >= lo && (x < hi || (hi == 1.0 && x <= 1.0));
}

double cell_volume(const BoxCell& c, int dim) {
  double v = c.hi[0] - c.lo[0];
  if (dim == 2) v *= c.hi[1] - c.lo[1];
  return v;
}

}  // namespace

std::vector<WellDistRow> well_distribution_report(
    const std::vector<LabeledSample>& samples, const std::vector<BoxCell>& cells) {
  if (samples.empty()) throw param_error("well_distribution_report: no samples");
  const int dim = samples[0].dim;
  for (const auto& s : samples)
    if (s.dim != dim || s.size() == 0)
      throw param_error("well_distribution_report: samples must be nonempty with equal dim");
  if (cells.empty()) throw param_error("well_distribution_report: no cells");

  double total = 0.0;
  for (const auto& c : cells) {
    if (c.lo[0] < 0.0 || c.hi[0] > 1.0 || c.lo[0] >= c.hi[0])
      throw param_error("well_distribution_report: malformed cell");
    if (dim == 2 && (c.lo[1] < 0.0 || c.hi[1] > 1.0 || c.lo[1] >= c.hi[1]))
      throw param_error("well_distribution_report: malformed cell");
    total += cell_volume(c, dim);
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw param_error("well_distribution_report: cells do not partition the cube");
  for (std::size_t a = 0; a < cells.size(); ++a)
    for (std::size_t b = a + 1; b < cells.size(); ++b) {
      const bool overlap_x = cells[a].lo[0] < cells[b].hi[0] && cells[b].lo[0] < cells[a].hi[0];
      const bool overlap_y = dim == 1 || (cells[a].lo[1] < cells[b].hi[1] && cells[b].lo[1] < cells[a].hi[1]);
      if (overlap_x && overlap_y)
        throw param_error("well_distribution_report: overlapping cells");
    }

  std::vector<WellDistRow> rows;
  rows.reserve(samples.size() * cells.size());
  for (std::size_t si = 0; si < samples.size(); ++si) {
    const auto& s = samples[si];
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
      const auto& c = cells[ci];
      int hits = 0;
      for (const Point& p : s.points) {
        bool in = axis_contains(c.lo[0], c.hi[0], p[0]);
        if (dim == 2) in = in && axis_contains(c.lo[1], c.hi[1], p[1]);
        if (in) ++hits;
      }
      const double frac = static_cast<double>(hits) / s.size();
      const double vol = cell_volume(c, dim);
      rows.push_back({static_cast<int>(si), s.size(), static_cast<int>(ci), frac,
                      vol, frac - vol});
    }
  }
  return rows;
}

}  // namespace graphlim
