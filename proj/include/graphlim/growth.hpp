#ifndef GRAPHLIM_GROWTH_HPP
#define GRAPHLIM_GROWTH_HPP

#include <functional>
#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/kernel.hpp"
#include "graphlim/rng.hpp"

namespace graphlim {

// Latent coordinates attached to the nodes of a companion graph, in birth
// order.
struct LabeledSample {
  int dim = 1;
  std::vector<Point> points;

  int size() const { return static_cast<int>(points.size()); }
};

// n i.i.d. uniform points on [0,1]^dim.
LabeledSample uniform_sample(int n, int dim, Seed seed);

// Growing uniform attachment graph. Start with one node; when the graph has
// t nodes (t = 2..n, right after a birth) every nonadjacent pair is connected
// independently with probability 1/t. Marginal: P(i~j) = 1 - max(i,j)/n for
// 0-based labels, independent over pairs.
Graph grow_uniform(int n, Seed seed);

// Growing ranked attachment graph. In 1-based labels: when node t is born
// (t = 2..n) it is connected to node i < t with probability 1 - i/t, then
// every nonadjacent pair is connected with probability 2/t. Marginal
// non-connection for 1-based i < j: i(j-2)(j-1) / (j(n-1)n), independent over
// pairs. Stored labels are 0-based birth order.
Graph grow_ranked(int n, Seed seed);

struct PrefixResult {
  Graph graph;
  LabeledSample sample;  // node born k-th (1-based) gets (k/n, z_k/k)
};

// Growing prefix attachment graph. At the birth of node k (1-based), draw z
// uniform on {1..k} and connect k to nodes 1..z-1. No later edges are added.
// Marginal: P(i~j) = (j-i)/j for 1-based i < j (not independent).
PrefixResult grow_prefix(int n, Seed seed);

// Preferential attachment multigraph PAG(n, m): extend the id sequence
// (0..n-1) by 2m uniform draws with duplication (each new entry copies a
// uniformly chosen existing entry), then connect consecutive appended
// entries pairwise. Loops and parallel edges are kept.
Multigraph grow_pag(int n, long long m, Seed seed);

// Deletes loops and collapses parallel edges to single edges.
Graph simplify_pag(const Multigraph& g);

// Number of edges used for SPAG(n, c): m = round(c n^2 / 2), the scaling
// under which t_inj(F, PAG(n,m)) tends to c^l * prod r_i! for loopless F.
long long spag_edge_count(int n, double c);

// W-random graph on the given sample: every pair {i,j} is connected
// independently with probability w(s_i, s_j). Requires w.bounded01; throws
// param_error if an evaluated probability leaves [0,1].
Graph sample_w_random(const LabeledSample& s, const Kernel& w, Seed seed);

// Weighted analogue: step function with k = |s| equal-measure blocks and
// values w(s_i, s_j), diagonal 0.
StepGraphon weighted_h(const LabeledSample& s, const Kernel& w);

// Growing graph sequence with prescribed limit W (bounded01, monotone
// nonincreasing in each variable; validated on a 64x64 grid probe). In
// 1-based labels: node n is connected to j < n with probability W(j/n, 1);
// every nonadjacent pair i,j < n is connected with probability
//   p_{n,ij} = (W(i/n, j/n) - W(i/(n-1), j/(n-1))) / (1 - W(i/(n-1), j/(n-1))),
// 0 when the denominator vanishes (the pair is then connected a.s.).
// Marginal after step n: P(i~j) = W(i/n, j/n).
Graph grow_prescribed(const Kernel& w, int n, Seed seed);

// Homogeneous-degree variant: W = 1 - U with U(lambda x, lambda y) =
// lambda^c U(x,y). Node n is connected to j < n with probability
// boundary(j/n) = W(j/n, 1); every nonadjacent old pair with probability
// 1 - ((n-1)/n)^c. Marginal non-connection for 1-based i < j:
// (1 - boundary(i/j)) * (j/n)^c.
Graph grow_homogeneous(double c, const std::function<double(double)>& boundary,
                       int n, Seed seed);

enum class GrowthModel { uniform, ranked, prefix };

// Exact marginal edge probability, in each model's native label convention:
// uniform takes 0-based labels, ranked and prefix take 1-based labels i < j.
double edge_prob_oracle(GrowthModel model, int i, int j, int n);

// Exact probability that the PAG(n, m) process produces the multigraph g:
//   m! 2^{m'} prod_i d_i! / (prod_{pairs} mult! * n(n+1)...(n+2m-1)),
// where m' counts non-loop edges and the pair factor (over unordered pairs
// including loop sites) removes orderings that permute parallel copies of
// one edge, which describe the same run of the process. Computed with
// log-gamma for stability. Throws param_error when g does not have n nodes
// and m edges.
double pag_multigraph_probability(const Multigraph& g, int n, long long m);

}  // namespace graphlim

#endif
