#include "graphlim/distances.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "graphlim/errors.hpp"

namespace graphlim {

namespace {

// objective matrix a_ij = v_ij * mu_i * mu_j
std::vector<double> weighted_matrix(const StepGraphon& s) {
  const int k = s.k();
  std::vector<double> a(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      a[static_cast<std::size_t>(i) * k + j] = s.value(i, j) * s.measure(i) * s.measure(j);
  return a;
}

std::vector<int> mask_to_set(std::uint32_t mask, int k) {
  std::vector<int> set;
  for (int i = 0; i < k; ++i)
    if (mask >> i & 1) set.push_back(i);
  return set;
}

}  // namespace

double eval_rectangle(const StepGraphon& s, const std::vector<int>& sset,
                      const std::vector<int>& tset) {
  double v = 0.0;
  for (int i : sset)
    for (int j : tset) v += s.value(i, j) * s.measure(i) * s.measure(j);
  return std::abs(v);
}

CutNormResult cut_norm_exact(const StepGraphon& s) {
  const int k = s.k();
  if (k > 24) throw size_error("cut_norm_exact: capped at 24 blocks");
  const std::vector<double> a = weighted_matrix(s);

  // Walk all S in Gray-code order, maintaining column sums; the optimal T
  // for a fixed S takes exactly the columns whose sum has the right sign.
  std::vector<double> col(k, 0.0);
  std::uint32_t mask = 0;
  double best = 0.0;
  std::uint32_t best_mask = 0;
  int best_sign = 1;
  for (std::uint64_t g = 1; g < (std::uint64_t{1} << k); ++g) {
    const int flip = std::countr_zero(g);
    mask ^= std::uint32_t{1} << flip;
    const double sign = (mask >> flip & 1) ? 1.0 : -1.0;
    const double* row = a.data() + static_cast<std::size_t>(flip) * k;
    for (int j = 0; j < k; ++j) col[j] += sign * row[j];
    double plus = 0.0, minus = 0.0;
    for (int j = 0; j < k; ++j) {
      if (col[j] > 0.0)
        plus += col[j];
      else
        minus -= col[j];
    }
    if (plus > best) {
      best = plus;
      best_mask = mask;
      best_sign = 1;
    }
    if (minus > best) {
      best = minus;
      best_mask = mask;
      best_sign = -1;
    }
  }

  // Recompute the winner from scratch; the incremental column sums drift by
  // O(2^k eps) which matters for witness certification.
  CutNormResult out;
  out.exact = true;
  out.witness_s = mask_to_set(best_mask, k);
  std::vector<double> wcol(k, 0.0);
  for (int i : out.witness_s)
    for (int j = 0; j < k; ++j) wcol[j] += a[static_cast<std::size_t>(i) * k + j];
  double value = 0.0;
  for (int j = 0; j < k; ++j)
    if (best_sign * wcol[j] > 0.0) {
      out.witness_t.push_back(j);
      value += best_sign * wcol[j];
    }
  out.value = value;
  out.lower_bound = value;
  return out;
}

CutNormResult cut_norm_heuristic(const StepGraphon& s, int restarts, Seed seed) {
  if (restarts < 1) throw param_error("cut_norm_heuristic: restarts must be >= 1");
  const int k = s.k();
  const std::vector<double> a = weighted_matrix(s);

  CutNormResult out;  // empty witness evaluates to 0, always feasible
  out.exact = false;
  std::vector<char> start(k), sset(k), tset(k);
  std::vector<double> col(k), row(k);
  // deterministic starts first (full set, then singletons on small instances),
  // then `restarts` random starts on substreams 0..restarts-1
  const int fixed_starts = k <= 32 ? k + 1 : 1;
  for (int r = -fixed_starts; r < restarts; ++r) {
    if (r < 0) {
      const int pick = r + fixed_starts;  // 0 = full set, then singleton pick-1
      for (int i = 0; i < k; ++i) start[i] = pick == 0 ? 1 : (i == pick - 1);
    } else {
      Rng rng(seed.sub(r));
      for (int i = 0; i < k; ++i) start[i] = rng.bernoulli(0.5);
    }
    for (const double sign : {1.0, -1.0}) {
      std::copy(start.begin(), start.end(), sset.begin());
      double value = -1.0;
      for (int iter = 0; iter < 200; ++iter) {
        for (int j = 0; j < k; ++j) col[j] = 0.0;
        for (int i = 0; i < k; ++i)
          if (sset[i]) {
            const double* ar = a.data() + static_cast<std::size_t>(i) * k;
            for (int j = 0; j < k; ++j) col[j] += sign * ar[j];
          }
        for (int j = 0; j < k; ++j) tset[j] = col[j] > 0.0;
        for (int i = 0; i < k; ++i) row[i] = 0.0;
        for (int j = 0; j < k; ++j)
          if (tset[j])
            for (int i = 0; i < k; ++i) row[i] += sign * a[static_cast<std::size_t>(i) * k + j];
        double improved = 0.0;
        for (int i = 0; i < k; ++i) {
          sset[i] = row[i] > 0.0;
          if (sset[i]) improved += row[i];
        }
        if (improved <= value + 1e-15) {
          value = std::max(value, improved);
          break;
        }
        value = improved;
      }
      if (value > out.value) {
        out.value = value;
        out.witness_s.clear();
        out.witness_t.clear();
        for (int i = 0; i < k; ++i)
          if (sset[i]) out.witness_s.push_back(i);
        for (int j = 0; j < k; ++j)
          if (tset[j]) out.witness_t.push_back(j);
      }
    }
  }
  out.lower_bound = out.value;
  return out;
}

StepGraphon step_difference(const StepGraphon& a, const StepGraphon& b) {
  if (a.k() != b.k()) throw param_error("step_difference: block counts differ");
  for (int i = 0; i < a.k(); ++i)
    if (std::abs(a.measure(i) - b.measure(i)) > 1e-15)
      throw param_error("step_difference: block measures differ");
  std::vector<double> values(static_cast<std::size_t>(a.k()) * a.k());
  for (int i = 0; i < a.k(); ++i)
    for (int j = 0; j < a.k(); ++j)
      values[static_cast<std::size_t>(i) * a.k() + j] = a.value(i, j) - b.value(i, j);
  return make_step(a.k(), std::move(values), a.measures());
}

StepGraphon discretize_kernel(const Kernel& w, int blocks, int grid) {
  if (blocks < 1) throw param_error("discretize_kernel: need at least one block");
  const Kernel& k1 = w;
  if (k1.dim != 1) throw param_error("discretize_kernel: kernel must have dim 1 (flatten first)");
  std::vector<double> values(static_cast<std::size_t>(blocks) * blocks);
  const double h = 1.0 / blocks;
  if (k1.step) {
    const StepGraphon& st = *k1.step;
    for (int i = 0; i < blocks; ++i)
      for (int j = i; j < blocks; ++j) {
        const double v =
            box_integral(st, i * h, (i + 1) * h, j * h, (j + 1) * h) * blocks * blocks;
        values[static_cast<std::size_t>(i) * blocks + j] = v;
        values[static_cast<std::size_t>(j) * blocks + i] = v;
      }
  } else {
    const int q = std::max(1, (grid + blocks - 1) / blocks);
    for (int i = 0; i < blocks; ++i)
      for (int j = i; j < blocks; ++j) {
        double sum = 0.0;
        for (int ax = 0; ax < q; ++ax)
          for (int bx = 0; bx < q; ++bx)
            sum += k1((i + (ax + 0.5) / q) * h, (j + (bx + 0.5) / q) * h);
        const double v = sum / (static_cast<double>(q) * q);
        values[static_cast<std::size_t>(i) * blocks + j] = v;
        values[static_cast<std::size_t>(j) * blocks + i] = v;
      }
  }
  return make_step(blocks, std::move(values), std::vector<double>(blocks, h));
}

namespace {

// Prefix integral F(x,y) = integral of the step function over [0,x] x [0,y];
// bilinear within each block rectangle.
class StepPrefix {
 public:
  explicit StepPrefix(const StepGraphon& s) : s_(&s), k_(s.k()), p_((k_ + 1) * (k_ + 1), 0.0) {
    cum_.assign(k_ + 1, 0.0);
    for (int i = 0; i < k_; ++i) cum_[i + 1] = cum_[i] + s.measure(i);
    cum_[k_] = 1.0;
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j)
        at(i + 1, j + 1) = s.value(i, j) * s.measure(i) * s.measure(j) + at(i, j + 1) +
                           at(i + 1, j) - at(i, j);
  }

  double operator()(double x, double y) const {
    const auto [bi, fx] = locate(x);
    const auto [bj, fy] = locate(y);
    const double p00 = get(bi, bj), p10 = get(bi + 1, bj), p01 = get(bi, bj + 1),
                 p11 = get(bi + 1, bj + 1);
    return (1 - fx) * (1 - fy) * p00 + fx * (1 - fy) * p10 + (1 - fx) * fy * p01 +
           fx * fy * p11;
  }

  double box(double a, double b, double c, double d) const {
    return (*this)(b, d) - (*this)(a, d) - (*this)(b, c) + (*this)(a, c);
  }

 private:
  double& at(int i, int j) { return p_[static_cast<std::size_t>(i) * (k_ + 1) + j]; }
  double get(int i, int j) const { return p_[static_cast<std::size_t>(i) * (k_ + 1) + j]; }

  std::pair<int, double> locate(double x) const {
    if (x <= 0.0) return {0, 0.0};
    if (x >= 1.0) return {k_ - 1, 1.0};
    int lo = 0, hi = k_ - 1;
    while (lo < hi) {
      const int mid = (lo + hi) / 2;
      if (x < cum_[mid + 1])
        hi = mid;
      else
        lo = mid + 1;
    }
    return {lo, (x - cum_[lo]) / (cum_[lo + 1] - cum_[lo])};
  }

  const StepGraphon* s_;
  int k_;
  std::vector<double> p_;
  std::vector<double> cum_;
};

}  // namespace

double box_integral(const StepGraphon& s, double a, double b, double c, double d) {
  if (a < 0.0 || b > 1.0 || c < 0.0 || d > 1.0 || a > b || c > d)
    throw param_error("box_integral: rectangle must lie in [0,1]^2");
  const int k = s.k();
  double total = 0.0;
  std::vector<double> cum(k + 1, 0.0);
  for (int i = 0; i < k; ++i) cum[i + 1] = cum[i] + s.measure(i);
  cum[k] = 1.0;
  auto overlap = [&](int block, double lo, double hi) {
    return std::max(0.0, std::min(hi, cum[block + 1]) - std::max(lo, cum[block]));
  };
  for (int i = 0; i < k; ++i) {
    const double oi = overlap(i, a, b);
    if (oi == 0.0) continue;
    for (int j = 0; j < k; ++j) {
      const double oj = overlap(j, c, d);
      if (oj != 0.0) total += s.value(i, j) * oi * oj;
    }
  }
  return total;
}

double rect_integral(const Graph& g, const Kernel& w, double s_lo, double s_hi,
                     double t_lo, double t_hi, int grid) {
  if (s_lo < 0.0 || s_hi > 1.0 || t_lo < 0.0 || t_hi > 1.0 || s_lo > s_hi || t_lo > t_hi)
    throw param_error("rect_integral: intervals must satisfy 0 <= lo <= hi <= 1");
  if (grid < 1) throw param_error("rect_integral: grid must be >= 1");
  if (s_lo == s_hi || t_lo == t_hi) return 0.0;

  const Kernel flat = w.dim == 2 ? flatten_2d(w, 16) : w;
  const StepGraphon gs = step_from_graph(g);
  const double graph_part = box_integral(gs, s_lo, s_hi, t_lo, t_hi);

  double kernel_part;
  if (flat.step) {
    kernel_part = box_integral(*flat.step, s_lo, s_hi, t_lo, t_hi);
  } else {
    const double hx = (s_hi - s_lo) / grid, hy = (t_hi - t_lo) / grid;
    double sum = 0.0;
    for (int i = 0; i < grid; ++i)
      for (int j = 0; j < grid; ++j)
        sum += flat(s_lo + (i + 0.5) * hx, t_lo + (j + 0.5) * hy);
    kernel_part = sum * hx * hy;
  }
  return graph_part - kernel_part;
}

namespace {

// max over dyadic rectangles S x T (interval depths 0..6) of
// |integral of (W_G - w)|; a certified lower bound on the cut norm of the
// labeled difference.
double dyadic_rectangle_bound(const Graph& g, const Kernel& w) {
  constexpr int kMaxDepth = 6;
  constexpr int kDiv = 1 << kMaxDepth;
  const StepPrefix gp(step_from_graph(g));

  // corner values of the kernel prefix integral at multiples of 1/64
  std::vector<double> kp((kDiv + 1) * (kDiv + 1), 0.0);
  if (w.step) {
    const StepPrefix sp(*w.step);
    for (int i = 0; i <= kDiv; ++i)
      for (int j = 0; j <= kDiv; ++j)
        kp[static_cast<std::size_t>(i) * (kDiv + 1) + j] =
            sp(static_cast<double>(i) / kDiv, static_cast<double>(j) / kDiv);
  } else {
    constexpr int kLattice = 512;  // multiple of kDiv, so corners align
    std::vector<double> lattice((kLattice + 1) * (kLattice + 1), 0.0);
    for (int i = 0; i < kLattice; ++i)
      for (int j = 0; j < kLattice; ++j) {
        const double v = w((i + 0.5) / kLattice, (j + 0.5) / kLattice) /
                         (static_cast<double>(kLattice) * kLattice);
        lattice[static_cast<std::size_t>(i + 1) * (kLattice + 1) + j + 1] = v;
      }
    for (int i = 1; i <= kLattice; ++i)
      for (int j = 1; j <= kLattice; ++j)
        lattice[static_cast<std::size_t>(i) * (kLattice + 1) + j] +=
            lattice[static_cast<std::size_t>(i - 1) * (kLattice + 1) + j] +
            lattice[static_cast<std::size_t>(i) * (kLattice + 1) + j - 1] -
            lattice[static_cast<std::size_t>(i - 1) * (kLattice + 1) + j - 1];
    const int stride = kLattice / kDiv;
    for (int i = 0; i <= kDiv; ++i)
      for (int j = 0; j <= kDiv; ++j)
        kp[static_cast<std::size_t>(i) * (kDiv + 1) + j] =
            lattice[static_cast<std::size_t>(i * stride) * (kLattice + 1) + j * stride];
  }

  std::vector<double> corner((kDiv + 1) * (kDiv + 1));
  for (int i = 0; i <= kDiv; ++i)
    for (int j = 0; j <= kDiv; ++j)
      corner[static_cast<std::size_t>(i) * (kDiv + 1) + j] =
          gp(static_cast<double>(i) / kDiv, static_cast<double>(j) / kDiv) -
          kp[static_cast<std::size_t>(i) * (kDiv + 1) + j];

  // dyadic intervals as (lo, hi) in units of 1/64
  std::vector<std::pair<int, int>> intervals;
  for (int d = 0; d <= kMaxDepth; ++d) {
    const int len = kDiv >> d;
    for (int a = 0; a + len <= kDiv; a += len) intervals.push_back({a, a + len});
  }
  auto at = [&](int i, int j) { return corner[static_cast<std::size_t>(i) * (kDiv + 1) + j]; };
  double best = 0.0;
  for (const auto& [s1, s2] : intervals)
    for (const auto& [t1, t2] : intervals) {
      const double v = at(s2, t2) - at(s1, t2) - at(s2, t1) + at(s1, t1);
      best = std::max(best, std::abs(v));
    }
  return best;
}

std::vector<int> degree_sorted_alignment(const Graph& g, const Graph& h) {
  const int n = g.n();
  auto ranks = [&](const Graph& x) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> deg(n);
    for (int i = 0; i < n; ++i) deg[i] = x.degree(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return deg[a] > deg[b]; });
    return order;
  };
  const std::vector<int> og = ranks(g), oh = ranks(h);
  std::vector<int> perm(n);
  for (int r = 0; r < n; ++r) perm[og[r]] = oh[r];
  return perm;
}

StepGraphon overlay_difference(const Graph& g, const Graph& h, const std::vector<int>& perm) {
  const int n = g.n();
  std::vector<double> values(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double d = (g.edge(i, j) ? 1.0 : 0.0) - (h.edge(perm[i], perm[j]) ? 1.0 : 0.0);
      values[static_cast<std::size_t>(i) * n + j] = d;
    }
  return make_step(n, std::move(values), std::vector<double>(n, 1.0 / n));
}

long long l1_mismatch(const Graph& g, const Graph& h, const std::vector<int>& perm) {
  long long m = 0;
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j)
      if (g.edge(i, j) != h.edge(perm[i], perm[j])) ++m;
  return m;
}

constexpr int kExactOverlayCap = 8;

}  // namespace

OverlayResult cut_distance_graphs(const Graph& g, const Graph& h, DistanceMode mode,
                                  Seed seed) {
  if (g.n() != h.n()) throw param_error("cut_distance_graphs: node counts differ");
  if (g.n() < 1) throw param_error("cut_distance_graphs: empty graphs");
  const int n = g.n();

  OverlayResult out;
  if (mode == DistanceMode::exact) {
    if (n > kExactOverlayCap) throw size_error("cut_distance_graphs: exact mode capped at n <= 8");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    out.distance_estimate = 1e300;
    do {
      const double v = cut_norm_exact(overlay_difference(g, h, perm)).value;
      if (v < out.distance_estimate) {
        out.distance_estimate = v;
        out.permutation = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.exact = true;
    return out;
  }

  std::vector<int> perm = degree_sorted_alignment(g, h);
  std::uint64_t eval_tag = 0;
  auto evaluate = [&](const std::vector<int>& p) {
    return cut_norm_heuristic(overlay_difference(g, h, p), 12, seed.sub(0xC0DE + eval_tag++))
        .value;
  };
  double current = evaluate(perm);
  if (n >= 2) {
    Rng rng(seed.sub(0x5A));
    const int budget = std::max(32, std::min(8 * n, 160));
    for (int p = 0; p < budget; ++p) {
      const int i = static_cast<int>(rng.below(n));
      int j = static_cast<int>(rng.below(n - 1));
      if (j >= i) ++j;
      std::swap(perm[i], perm[j]);
      const double v = evaluate(perm);
      if (v < current - 1e-15)
        current = v;
      else
        std::swap(perm[i], perm[j]);
    }
  }
  out.distance_estimate = current;
  out.permutation = perm;
  out.exact = false;
  return out;
}

OverlayResult cut_distance_graph_kernel(const Graph& g, const Kernel& w, int grid,
                                        Seed seed) {
  if (g.n() < 1) throw param_error("cut_distance_graph_kernel: empty graph");
  const Kernel flat = w.dim == 2 ? flatten_2d(w, 16) : w;
  const StepGraphon disc = discretize_kernel(flat, g.n(), std::max(grid, g.n()));
  const StepGraphon diff = step_difference(step_from_graph(g), disc);
  OverlayResult out;
  out.permutation.resize(g.n());
  std::iota(out.permutation.begin(), out.permutation.end(), 0);
  out.exact = false;
  out.dyadic_lower_bound = dyadic_rectangle_bound(g, flat);
  // both searches certify lower bounds of the norm; report the better one
  out.distance_estimate =
      std::max(cut_norm_heuristic(diff, 8, seed).value, out.dyadic_lower_bound);
  return out;
}

OverlayResult edit_distance(const Graph& g, const Graph& h, DistanceMode mode, Seed seed) {
  if (g.n() != h.n()) throw param_error("edit_distance: node counts differ");
  if (g.n() < 1) throw param_error("edit_distance: empty graphs");
  const int n = g.n();
  const double scale = 2.0 / (static_cast<double>(n) * n);

  OverlayResult out;
  if (mode == DistanceMode::exact) {
    if (n > kExactOverlayCap) throw size_error("edit_distance: exact mode capped at n <= 8");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    long long best = -1;
    do {
      const long long v = l1_mismatch(g, h, perm);
      if (best < 0 || v < best) {
        best = v;
        out.permutation = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.distance_estimate = scale * best;
    out.exact = true;
    return out;
  }

  std::vector<int> perm = degree_sorted_alignment(g, h);
  long long current = l1_mismatch(g, h, perm);
  if (n >= 2) {
    Rng rng(seed.sub(0xED17));
    const int budget = 20 * n;
    auto pair_mismatch = [&](int a, int b) {
      return g.edge(a, b) != h.edge(perm[a], perm[b]) ? 1 : 0;
    };
    for (int p = 0; p < budget; ++p) {
      const int i = static_cast<int>(rng.below(n));
      int j = static_cast<int>(rng.below(n - 1));
      if (j >= i) ++j;
      // the pair {i,j} itself is unaffected by swapping perm[i], perm[j]
      long long before = 0;
      for (int t = 0; t < n; ++t) {
        if (t == i || t == j) continue;
        before += pair_mismatch(i, t) + pair_mismatch(j, t);
      }
      std::swap(perm[i], perm[j]);
      long long after = 0;
      for (int t = 0; t < n; ++t) {
        if (t == i || t == j) continue;
        after += pair_mismatch(i, t) + pair_mismatch(j, t);
      }
      if (after < before)
        current += after - before;
      else
        std::swap(perm[i], perm[j]);
    }
  }
  out.distance_estimate = scale * current;
  out.permutation = perm;
  out.exact = false;
  return out;
}

}  // namespace graphlim
