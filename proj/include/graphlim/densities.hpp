#ifndef GRAPHLIM_DENSITIES_HPP
#define GRAPHLIM_DENSITIES_HPP

#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/growth.hpp"
#include "graphlim/kernel.hpp"
#include "graphlim/pattern.hpp"
#include "graphlim/rng.hpp"

namespace graphlim {

// Number of homomorphisms (adjacency-preserving maps) V(F) -> V(G).
// F must be simple; backtracking over partial maps with bitset pruning.
long long hom_count(const PatternGraph& f, const Graph& g);

// t(F,G) = hom(F,G) / n^k.
double t_density(const PatternGraph& f, const Graph& g);

// Number of embeddings of the multigraph F into the multigraph G: pairs of
// injective node and edge maps preserving incidence. A pattern pair of
// multiplicity r mapped onto a target pair of multiplicity mu contributes
// the falling factorial (mu)_r; same for loop sites.
long long inj_count(const PatternGraph& f, const Multigraph& g);

// t_inj(F,G) = inj(F,G) / (n)_k. Requires n >= k.
double t_inj(const PatternGraph& f, const Multigraph& g);

Multigraph to_multigraph(const Graph& g);

// Expected t_inj(F, PAG(n,m)) = 2^{l'} r_1! ... r_k! (m)_l / (n(n+1)...(n+2l-1)),
// with (m)_l the falling factorial (0 when m < l). Log-space arithmetic.
double expected_tinj_pag(const PatternGraph& f, long long n, long long m);

// t(F, L_c) for loopless F and L_c(x,y) = c ln(x) ln(y): c^l r_1! ... r_k!.
double t_log_closed(const PatternGraph& f, double c);

// Exact density of a simple pattern in a step function: weighted sum over
// all block assignments. Cost s.k^k; capped at k <= 8, s.k <= 64 and
// s.k^k <= 1e8.
double t_step_exact(const PatternGraph& f, const StepGraphon& s);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long long samples = 0;
};

// Plain Monte Carlo over i.i.d. uniform latent tuples; samples >= 1000.
// Samples are processed in fixed blocks with per-block substreams, so the
// result does not depend on how blocks would be distributed over workers.
McEstimate t_kernel_mc(const PatternGraph& f, const Kernel& w,
                       long long samples, Seed seed);

// Midpoint-rule tensor quadrature with `grid` cells per latent axis.
// Budget grid^(k*dim) <= 1e9.
double t_kernel_quad(const PatternGraph& f, const Kernel& w, int grid);

// Homomorphism-style density of a pattern in a multigraph target: sum over
// all (not necessarily injective) node maps of the product, over pattern
// edge copies, of the target multiplicity matrix (diagonal = 2 * loops),
// normalized by n^k. Used for the multiplicity-reduction check.
double t_hom_multiplicity(const PatternGraph& f, const Multigraph& g);

// --- well-distribution diagnostics ------------------------------------------

// Axis-aligned box; membership is half-open [lo, hi) except that hi = 1 is
// closed, so boxes with hi = 1 own the boundary.
struct BoxCell {
  Point lo{0.0, 0.0};
  Point hi{1.0, 1.0};
};

// Regular m^dim grid partition of [0,1]^dim.
std::vector<BoxCell> grid_cells(int m, int dim);

struct WellDistRow {
  int sample_index;
  int n;        // size of the sample
  int cell;
  double fraction;   // |S_n cap X| / |S_n|
  double volume;     // pi(X)
  double deviation;  // fraction - volume
};

// Per-cell occupancy fractions and their deviations from cell volume for a
// sequence of samples. The cells must partition the latent cube.
std::vector<WellDistRow> well_distribution_report(
    const std::vector<LabeledSample>& samples, const std::vector<BoxCell>& cells);

}  // namespace graphlim

#endif
