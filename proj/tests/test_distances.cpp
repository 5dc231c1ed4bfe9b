#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "graphlim/densities.hpp"
#include "graphlim/distances.hpp"
#include "graphlim/errors.hpp"
#include "graphlim/growth.hpp"
#include "graphlim/kernel.hpp"
#include "graphlim/pattern.hpp"
#include "support.hpp"

using namespace graphlim;
using namespace graphlim::testsupport;

namespace {

// independent 4^k oracle: enumerate S and T masks outright
double cut_norm_brute(const StepGraphon& s) {
  const int k = s.k();
  double best = 0.0;
  for (std::uint32_t sm = 0; sm < (1u << k); ++sm)
    for (std::uint32_t tm = 0; tm < (1u << k); ++tm) {
      double v = 0.0;
      for (int i = 0; i < k; ++i) {
        if (!(sm >> i & 1)) continue;
        for (int j = 0; j < k; ++j)
          if (tm >> j & 1) v += s.value(i, j) * s.measure(i) * s.measure(j);
      }
      best = std::max(best, std::abs(v));
    }
  return best;
}

StepGraphon random_step(int k, Seed seed, bool random_measures = true) {
  Rng rng(seed);
  std::vector<double> values(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      const double v = 2.0 * rng.next_unit() - 1.0;
      values[static_cast<std::size_t>(i) * k + j] = v;
      values[static_cast<std::size_t>(j) * k + i] = v;
    }
  std::vector<double> measures(k, 1.0 / k);
  if (random_measures) {
    double total = 0.0;
    for (double& m : measures) {
      m = 0.1 + rng.next_unit();
      total += m;
    }
    for (double& m : measures) m /= total;
    // rescale so the sum is exactly 1 after rounding
    double acc = 0.0;
    for (int i = 0; i + 1 < k; ++i) acc += measures[i];
    measures[k - 1] = 1.0 - acc;
  }
  return make_step(k, std::move(values), std::move(measures));
}

}  // namespace

TEST_CASE("cut_norm_exact closed cases") {
  CHECK(cut_norm_exact(zero_step(5)).value == 0.0);

  const StepGraphon c = make_step(3, std::vector<double>(9, 0.42), {0.2, 0.3, 0.5});
  CHECK(cut_norm_exact(c).value == doctest::Approx(0.42).epsilon(1e-12));

  const StepGraphon pm = make_step(2, {1.0, -1.0, -1.0, 1.0}, {0.5, 0.5});
  const CutNormResult r = cut_norm_exact(pm);
  CHECK(r.value == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r.witness_s.size() == 1);
  CHECK(r.witness_s == r.witness_t);

  CHECK_THROWS_AS(cut_norm_exact(zero_step(25)), size_error);
}

TEST_CASE("cut_norm_exact equals the 4^k brute force") {
  for (int trial = 0; trial < 40; ++trial) {
    const int k = 2 + trial % 7;
    const StepGraphon s = random_step(k, Seed{1111, static_cast<std::uint64_t>(trial)});
    const CutNormResult r = cut_norm_exact(s);
    CHECK(r.value == doctest::Approx(cut_norm_brute(s)).epsilon(1e-12));
    CHECK(eval_rectangle(s, r.witness_s, r.witness_t) == doctest::Approx(r.value).epsilon(1e-12));
  }
}

TEST_CASE("cut_norm_heuristic finds the optimum on small instances") {
  CHECK(cut_norm_heuristic(zero_step(4), 3, Seed{}).value == 0.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int k = 2 + trial % 7;
    const StepGraphon s = random_step(k, Seed{2222, static_cast<std::uint64_t>(trial)});
    const CutNormResult exact = cut_norm_exact(s);
    const CutNormResult heur = cut_norm_heuristic(s, 50, Seed{3333, 0});
    CHECK(heur.value <= exact.value + 1e-12);  // admissible: feasible pairs only
    CHECK(heur.value == doctest::Approx(exact.value).epsilon(1e-12));
    CHECK(eval_rectangle(s, heur.witness_s, heur.witness_t) ==
          doctest::Approx(heur.value).epsilon(1e-12));
  }
}

TEST_CASE("cut_norm_heuristic is monotone in restarts for a fixed seed") {
  const StepGraphon s = random_step(10, Seed{4444, 1});
  double prev = -1.0;
  for (int restarts = 1; restarts <= 10; ++restarts) {
    const double v = cut_norm_heuristic(s, restarts, Seed{5555, 0}).value;
    CHECK(v >= prev);
    prev = v;
  }
  CHECK_THROWS_AS(cut_norm_heuristic(s, 0, Seed{}), param_error);
}

TEST_CASE("cut norm axioms on step functions") {
  for (int trial = 0; trial < 25; ++trial) {
    const StepGraphon a = random_step(6, Seed{6666, static_cast<std::uint64_t>(trial)}, false);
    const StepGraphon b = random_step(6, Seed{7777, static_cast<std::uint64_t>(trial)}, false);
    const double na = cut_norm_exact(a).value;
    const double nb = cut_norm_exact(b).value;

    // homogeneity
    const double lambda = -2.5;
    std::vector<double> scaled = a.values();
    for (double& v : scaled) v *= lambda;
    CHECK(cut_norm_exact(make_step(6, scaled, a.measures())).value ==
          doctest::Approx(std::abs(lambda) * na).epsilon(1e-12));

    // subadditivity
    std::vector<double> sum = a.values();
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += b.values()[i];
    CHECK(cut_norm_exact(make_step(6, sum, a.measures())).value <= na + nb + 1e-12);
  }
}

TEST_CASE("cut distance between graphs") {
  const Graph g = random_graph(7, 0.5, Seed{42, 0});
  CHECK(cut_distance_graphs(g, g, DistanceMode::exact, Seed{}).distance_estimate == 0.0);
  CHECK(cut_distance_graphs(g, g, DistanceMode::heuristic, Seed{1, 1}).distance_estimate ==
        doctest::Approx(0.0).epsilon(1e-12));

  // twin blow-up: K_{1,1} blown up twice is K_{2,2}, distance 0 at matched sizes
  Graph k22(4);
  k22.set_edge(0, 2);
  k22.set_edge(0, 3);
  k22.set_edge(1, 2);
  k22.set_edge(1, 3);
  Graph k2(2);
  k2.set_edge(0, 1);
  const Graph blown = blow_up(k2, 2);
  CHECK(cut_distance_graphs(k22, blown, DistanceMode::exact, Seed{}).distance_estimate ==
        doctest::Approx(0.0).epsilon(1e-12));

  // symmetry of the exact overlay distance
  const Graph h = random_graph(6, 0.4, Seed{43, 5});
  const Graph g6 = random_graph(6, 0.6, Seed{44, 5});
  const double ab = cut_distance_graphs(g6, h, DistanceMode::exact, Seed{}).distance_estimate;
  const double ba = cut_distance_graphs(h, g6, DistanceMode::exact, Seed{}).distance_estimate;
  CHECK(ab == doctest::Approx(ba).epsilon(1e-12));

  CHECK_THROWS_AS(cut_distance_graphs(g, h, DistanceMode::exact, Seed{}), param_error);
  CHECK_THROWS_AS(
      cut_distance_graphs(random_graph(9, 0.5, Seed{1, 1}), random_graph(9, 0.5, Seed{1, 2}),
                          DistanceMode::exact, Seed{}),
      size_error);

  // single-node graphs: all distances are 0 (no off-diagonal mass)
  CHECK(cut_distance_graphs(Graph(1), Graph(1), DistanceMode::exact, Seed{}).distance_estimate ==
        0.0);
  CHECK(edit_distance(Graph(1), Graph(1), DistanceMode::heuristic, Seed{1, 1})
            .distance_estimate == 0.0);

  // heuristic never beats the exact optimum
  for (int trial = 0; trial < 6; ++trial) {
    const Graph a = random_graph(6, 0.5, Seed{900, static_cast<std::uint64_t>(trial)});
    const Graph b = random_graph(6, 0.5, Seed{901, static_cast<std::uint64_t>(trial)});
    const double exact = cut_distance_graphs(a, b, DistanceMode::exact, Seed{}).distance_estimate;
    const double heur =
        cut_distance_graphs(a, b, DistanceMode::heuristic, Seed{7, 7}).distance_estimate;
    CHECK(heur >= exact - 1e-12);
  }
}

TEST_CASE("graph vs kernel distance") {
  // same sample, 0-1 kernel: the two step functions differ only on blocks
  // crossing the kernel's jump, so the estimate is at most ~1/n
  const int n = 64;
  LabeledSample s;
  s.dim = 1;
  for (int i = 0; i < n; ++i) s.points.push_back({(i + 0.5) / n, 0.0});
  const Kernel half = builtin_kernel(BuiltinGraphon::half_graph);
  const Graph g = sample_w_random(s, half, Seed{0, 0});
  const OverlayResult r = cut_distance_graph_kernel(g, half, 512, Seed{10, 1});
  CHECK(r.distance_estimate <= 2.0 / n);
  CHECK_FALSE(r.exact);
  CHECK(r.dyadic_lower_bound <= r.distance_estimate + 1e-9);

  // uniform attachment drifts toward its limit kernel
  const Kernel ul = builtin_kernel(BuiltinGraphon::uniform_limit);
  auto median_estimate = [&](int size) {
    std::vector<double> vals;
    for (int r2 = 0; r2 < 7; ++r2)
      vals.push_back(cut_distance_graph_kernel(
                         grow_uniform(size, Seed{808, static_cast<std::uint64_t>(r2)}), ul, 512,
                         Seed{809, static_cast<std::uint64_t>(r2)})
                         .distance_estimate);
    std::nth_element(vals.begin(), vals.begin() + 3, vals.end());
    return vals[3];
  };
  CHECK(median_estimate(160) < median_estimate(40));
}

TEST_CASE("prefix attachment: rectangle integrals vanish, densities do not") {
  // the rectangle discrepancy decays like log(n)/n while the triangle
  // density gap stays near 1/6 - 5/36
  const Kernel u = builtin_kernel(BuiltinGraphon::prefix_ratio);
  auto dyadic_at = [&](int n) {
    const Graph g = grow_prefix(n, Seed{123, 9}).graph;
    return cut_distance_graph_kernel(g, u, 512, Seed{5, 5}).dyadic_lower_bound;
  };
  const double d400 = dyadic_at(400), d1600 = dyadic_at(1600);
  CHECK(d400 < 0.04);
  CHECK(d1600 < d400);

  const Graph g = grow_prefix(400, Seed{123, 9}).graph;
  const double tgap = std::abs(t_density(pattern_complete(3), g) - 5.0 / 36.0);
  CHECK(tgap > 0.015);
}

TEST_CASE("edit distance") {
  const Graph g = random_graph(7, 0.5, Seed{21, 0});
  CHECK(edit_distance(g, g, DistanceMode::exact, Seed{}).distance_estimate == 0.0);

  const int n = 8;
  const Graph empty(n);
  const Graph full = Graph::complete(n);
  const double expected = (n - 1.0) / n;
  CHECK(edit_distance(empty, full, DistanceMode::exact, Seed{}).distance_estimate ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(edit_distance(empty, full, DistanceMode::heuristic, Seed{3, 3}).distance_estimate ==
        doctest::Approx(expected).epsilon(1e-12));

  CHECK_THROWS_AS(edit_distance(empty, Graph(5), DistanceMode::exact, Seed{}), param_error);

  // edit dominates cut on the same overlay class
  for (int trial = 0; trial < 8; ++trial) {
    const Graph a = random_graph(6, 0.5, Seed{950, static_cast<std::uint64_t>(trial)});
    const Graph b = random_graph(6, 0.3, Seed{951, static_cast<std::uint64_t>(trial)});
    const double d1 = edit_distance(a, b, DistanceMode::exact, Seed{}).distance_estimate;
    const double dc = cut_distance_graphs(a, b, DistanceMode::exact, Seed{}).distance_estimate;
    CHECK(d1 >= dc - 1e-12);
  }
}

TEST_CASE("edit distance triangle inequality (exact mode)") {
  for (int trial = 0; trial < 6; ++trial) {
    const auto t = static_cast<std::uint64_t>(trial);
    const Graph a = random_graph(6, 0.5, Seed{970, t});
    const Graph b = random_graph(6, 0.5, Seed{971, t});
    const Graph c = random_graph(6, 0.5, Seed{972, t});
    const double ab = edit_distance(a, b, DistanceMode::exact, Seed{}).distance_estimate;
    const double bc = edit_distance(b, c, DistanceMode::exact, Seed{}).distance_estimate;
    const double ac = edit_distance(a, c, DistanceMode::exact, Seed{}).distance_estimate;
    CHECK(ac <= ab + bc + 1e-12);
  }
}

TEST_CASE("rectangle integrals") {
  const Graph g = random_graph(10, 0.5, Seed{60, 1});
  const Kernel own = kernel_from_step(step_from_graph(g));
  Rng rng(Seed{61, 0});
  for (int trial = 0; trial < 20; ++trial) {
    double a = rng.next_unit(), b = rng.next_unit();
    if (a > b) std::swap(a, b);
    double c = rng.next_unit(), d = rng.next_unit();
    if (c > d) std::swap(c, d);
    CHECK(std::abs(rect_integral(g, own, a, b, c, d)) <= 1e-12);
  }
  CHECK(rect_integral(g, own, 0.3, 0.3, 0.0, 1.0) == 0.0);  // empty S

  // box integral of a constant step function is c * area
  const StepGraphon cs = make_step(2, std::vector<double>(4, 0.5), {0.25, 0.75});
  CHECK(box_integral(cs, 0.1, 0.6, 0.2, 1.0) == doctest::Approx(0.5 * 0.5 * 0.8).epsilon(1e-12));

  // prefix attachment vs U on S = T = [0, 1/2]
  const Graph pfx = grow_prefix(500, Seed{62, 2}).graph;
  const Kernel u = builtin_kernel(BuiltinGraphon::prefix_ratio);
  CHECK(std::abs(rect_integral(pfx, u, 0.0, 0.5, 0.0, 0.5)) < 0.02);
}

TEST_CASE("step_difference validates shapes") {
  const StepGraphon a = zero_step(4);
  const StepGraphon b = zero_step(5);
  CHECK_THROWS_AS(step_difference(a, b), param_error);
  const StepGraphon c = make_step(4, std::vector<double>(16, 0.25),
                                  {0.1, 0.2, 0.3, 0.4});
  CHECK_THROWS_AS(step_difference(a, c), param_error);
  const StepGraphon d = step_difference(a, zero_step(4));
  CHECK(cut_norm_exact(d).value == 0.0);
}
