#ifndef GRAPHLIM_KERNEL_HPP
#define GRAPHLIM_KERNEL_HPP

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "graphlim/graph.hpp"

namespace graphlim {

// Latent coordinate of a node. Second component is ignored for dim-1 kernels.
using Point = std::array<double, 2>;

// Block-constant symmetric function on [0,1]^2: k x k value matrix plus a
// block-measure vector (positive, summing to 1). Values are arbitrary reals,
// so differences of step functions are representable too.
class StepGraphon {
 public:
  StepGraphon() = default;

  int k() const { return k_; }
  double value(int i, int j) const { return values_[static_cast<std::size_t>(i) * k_ + j]; }
  double measure(int i) const { return measures_[i]; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& measures() const { return measures_; }
  bool equal_measures() const { return equal_measures_; }

  // Index of the block containing x in [0,1). For equal measures this is
  // floor(k*x).
  int block_of(double x) const;

  // Value at (x,y), both in [0,1). Throws param_error out of range.
  double eval(double x, double y) const;

  friend StepGraphon make_step(int k, std::vector<double> values,
                               std::vector<double> measures);

 private:
  int k_ = 0;
  bool equal_measures_ = true;
  std::vector<double> values_;    // k*k row-major, symmetric
  std::vector<double> measures_;  // size k
  std::vector<double> cum_;       // size k+1, cum_[0]=0, cum_[k]=1
};

// Validates symmetry, positivity and unit total measure (1e-12 slack).
StepGraphon make_step(int k, std::vector<double> values, std::vector<double> measures);

// Zero values, equal measures.
StepGraphon zero_step(int k);

// Symmetric evaluatable function on ([0,1]^dim)^2.
struct Kernel {
  int dim = 1;          // latent coordinates per node (1 or 2)
  bool bounded01 = true;  // true iff the range is contained in [0,1]
  std::string name;
  std::function<double(const Point&, const Point&)> eval;

  // Set when the kernel wraps a step function; enables exact integration.
  std::shared_ptr<const StepGraphon> step;

  // Convenience for dim-1 kernels.
  double operator()(double x, double y) const { return eval({x, 0.0}, {y, 0.0}); }
};

// Built-in limit graphons.
enum class BuiltinGraphon {
  uniform_limit,  // 1 - max(x,y)
  ranked_limit,   // 1 - xy
  prefix_ratio,   // |x-y| / max(x,y)
  prefix_limit,   // dim 2: indicator(x1 < x2*y2 or x2 < x1*y1)
  pref_log,       // c (ln x)(ln y); unbounded near 0
  spag_limit,     // 1 - exp(-c ln x ln y)
  half_graph,     // indicator(|x-y| >= 1/2)
};

// `c` is required (> 0) for pref_log and spag_limit, ignored otherwise.
Kernel builtin_kernel(BuiltinGraphon id, double c = 0.0);

// Step function W_G of a graph: k = n blocks of measure 1/n, values are the
// adjacency indicator (diagonal 0).
StepGraphon step_from_graph(const Graph& g);

// Wraps a step function as a Kernel, keeping the exact representation.
Kernel kernel_from_step(StepGraphon s);

// Splits the first 2*bits binary digits of x into two coordinates:
// odd-indexed digits (1st, 3rd, ...) form the first coordinate.
Point deinterleave_bits(double x, int bits);

// Measure-preserving (up to resolution 2^-bits) view of a dim-2 kernel as a
// dim-1 kernel via bit de-interleaving. bits in [8, 26].
Kernel flatten_2d(const Kernel& kernel, int bits);

}  // namespace graphlim

#endif
