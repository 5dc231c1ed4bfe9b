#ifndef GRAPHLIM_DISTANCES_HPP
#define GRAPHLIM_DISTANCES_HPP

#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/kernel.hpp"
#include "graphlim/rng.hpp"

namespace graphlim {

struct CutNormResult {
  double value = 0.0;        // best objective found (== cut norm when exact)
  double lower_bound = 0.0;  // certified: attained by the witness
  bool exact = false;
  std::vector<int> witness_s;  // block indices of the optimal S
  std::vector<int> witness_t;
};

// |integral over S x T| for block index sets (re-evaluates a witness).
double eval_rectangle(const StepGraphon& s, const std::vector<int>& sset,
                      const std::vector<int>& tset);

// Exact cut norm of a step function, k <= 24. For step functions the
// supremum over measurable S,T is attained at unions of blocks: the
// objective sum_{i in S, j in T} v_ij mu_i mu_j is multilinear in the
// fractional block memberships, so some maximizer lies at a 0/1 vertex.
// Enumerates S (Gray code), picks T per sign of column sums.
CutNormResult cut_norm_exact(const StepGraphon& s);

// Alternating maximization (fix S, choose T by sign rule; swap) from
// `restarts` random starts. Only evaluates feasible pairs, so the value is
// a certified lower bound. Restart r draws from substream r, making the
// result monotone in `restarts` for a fixed seed.
CutNormResult cut_norm_heuristic(const StepGraphon& s, int restarts, Seed seed);

enum class DistanceMode { exact, heuristic };

struct OverlayResult {
  double distance_estimate = 0.0;
  std::vector<int> permutation;  // relabeling applied to the second operand
  bool exact = false;
  // Graph-vs-kernel mode only: max over dyadic rectangles (depths 0..6) of
  // |integral of (W_G - w)|, a certified lower bound on ||W_G - w||_cut.
  double dyadic_lower_bound = 0.0;
};

// Cut distance between equal-size graphs. Exact mode (n <= 8) minimizes the
// exact cut norm of W_G - W_H^pi over all n! permutations; heuristic mode
// hill-climbs pairwise swaps from a degree-sorted alignment and evaluates
// with cut_norm_heuristic. The reported value is an upper bound of the
// graphon-level infimum.
OverlayResult cut_distance_graphs(const Graph& g, const Graph& h,
                                  DistanceMode mode, Seed seed);

// Cut-norm estimate between a graph in birth order and a kernel: the kernel
// is discretized to n blocks by averaging ceil(grid/n)^2 midpoints per block
// (exactly, when the kernel wraps a step function), then the heuristic cut
// norm of the difference is taken. No overlay search. Also reports the
// dyadic-rectangle lower bound of the labeled difference; the estimate is
// the larger of the two certified values.
OverlayResult cut_distance_graph_kernel(const Graph& g, const Kernel& w,
                                        int grid, Seed seed);

// Edit distance: same overlay search with the L1 objective, i.e. the
// fraction of mismatched ordered pairs under the relabeling.
OverlayResult edit_distance(const Graph& g, const Graph& h, DistanceMode mode,
                            Seed seed);

// Exact integral of a step function over [a,b] x [c,d].
double box_integral(const StepGraphon& s, double a, double b, double c, double d);

// Integral of (W_G - w) over S x T: the graph part is exact (piecewise
// constant), the kernel part uses grid x grid midpoint quadrature scaled to
// the rectangle (exact when the kernel wraps a step function).
double rect_integral(const Graph& g, const Kernel& w, double s_lo, double s_hi,
                     double t_lo, double t_hi, int grid = 512);

// Entrywise difference of two step functions on identical block measures.
StepGraphon step_difference(const StepGraphon& a, const StepGraphon& b);

// n-block step function with block (i,j) holding the average of w over the
// block, sampled on ceil(grid/n)^2 midpoints (exact for step-backed kernels).
StepGraphon discretize_kernel(const Kernel& w, int blocks, int grid);

}  // namespace graphlim

#endif
