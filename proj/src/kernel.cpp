#include "graphlim/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "graphlim/errors.hpp"

namespace graphlim {

namespace {
constexpr double kMeasureSlack = 1e-12;
// Keeps log() finite; the log singularity at 0 is integrable, so sampling
// rules never care about the clamp.
constexpr double kLogFloor = 1e-300;
}  // namespace

int StepGraphon::block_of(double x) const {
  if (!(x >= 0.0 && x < 1.0)) throw param_error("StepGraphon: coordinate outside [0,1)");
  if (equal_measures_) return static_cast<int>(static_cast<double>(k_) * x);
  // first block whose right boundary exceeds x
  int lo = 0, hi = k_ - 1;
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (x < cum_[mid + 1])
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

double StepGraphon::eval(double x, double y) const {
  return value(block_of(x), block_of(y));
}

StepGraphon make_step(int k, std::vector<double> values, std::vector<double> measures) {
  if (k <= 0) throw param_error("make_step: need at least one block");
  if (values.size() != static_cast<std::size_t>(k) * k || measures.size() != static_cast<std::size_t>(k))
    throw param_error("make_step: size mismatch");
  double total = 0.0;
  for (double m : measures) {
    if (!(m > 0.0)) throw param_error("make_step: block measures must be positive");
    total += m;
  }
  if (std::abs(total - 1.0) > kMeasureSlack)
    throw param_error("make_step: block measures must sum to 1");
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (values[static_cast<std::size_t>(i) * k + j] != values[static_cast<std::size_t>(j) * k + i])
        throw param_error("make_step: value matrix not symmetric");

  StepGraphon s;
  s.k_ = k;
  s.values_ = std::move(values);
  s.measures_ = std::move(measures);
  s.equal_measures_ =
      std::all_of(s.measures_.begin(), s.measures_.end(),
                  [&](double m) { return m == s.measures_[0]; });
  s.cum_.assign(k + 1, 0.0);
  for (int i = 0; i < k; ++i) s.cum_[i + 1] = s.cum_[i] + s.measures_[i];
  s.cum_[k] = 1.0;
  return s;
}

StepGraphon zero_step(int k) {
  return make_step(k, std::vector<double>(static_cast<std::size_t>(k) * k, 0.0),
                   std::vector<double>(k, 1.0 / k));
}

Kernel builtin_kernel(BuiltinGraphon id, double c) {
  Kernel k;
  k.dim = 1;
  k.bounded01 = true;
  switch (id) {
    case BuiltinGraphon::uniform_limit:
      k.name = "uniform-limit";
      k.eval = [](const Point& u, const Point& v) { return 1.0 - std::max(u[0], v[0]); };
      break;
    case BuiltinGraphon::ranked_limit:
      k.name = "ranked-limit";
      k.eval = [](const Point& u, const Point& v) { return 1.0 - u[0] * v[0]; };
      break;
    case BuiltinGraphon::prefix_ratio:
      k.name = "prefix-ratio";
      k.eval = [](const Point& u, const Point& v) {
        const double m = std::max(u[0], v[0]);
        return m > 0.0 ? std::abs(u[0] - v[0]) / m : 0.0;
      };
      break;
    case BuiltinGraphon::prefix_limit:
      k.name = "prefix-limit";
      k.dim = 2;
      k.eval = [](const Point& u, const Point& v) {
        return (u[0] < v[0] * v[1] || v[0] < u[0] * u[1]) ? 1.0 : 0.0;
      };
      break;
    case BuiltinGraphon::pref_log:
      if (!(c > 0.0)) throw param_error("builtin_kernel: pref-log requires c > 0");
      k.name = "pref-log";
      k.bounded01 = false;
      k.eval = [c](const Point& u, const Point& v) {
        return c * std::log(std::max(u[0], kLogFloor)) * std::log(std::max(v[0], kLogFloor));
      };
      break;
    case BuiltinGraphon::spag_limit:
      if (!(c > 0.0)) throw param_error("builtin_kernel: spag-limit requires c > 0");
      k.name = "spag-limit";
      k.eval = [c](const Point& u, const Point& v) {
        return 1.0 - std::exp(-c * std::log(std::max(u[0], kLogFloor)) *
                              std::log(std::max(v[0], kLogFloor)));
      };
      break;
    case BuiltinGraphon::half_graph:
      k.name = "half-graph";
      k.eval = [](const Point& u, const Point& v) {
        return std::abs(u[0] - v[0]) >= 0.5 ? 1.0 : 0.0;
      };
      break;
    default:
      throw param_error("builtin_kernel: unknown id");
  }
  return k;
}

StepGraphon step_from_graph(const Graph& g) {
  const int n = g.n();
  if (n < 1) throw param_error("step_from_graph: graph must have at least one node");
  std::vector<double> values(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && g.edge(i, j)) values[static_cast<std::size_t>(i) * n + j] = 1.0;
  return make_step(n, std::move(values), std::vector<double>(n, 1.0 / n));
}

Kernel kernel_from_step(StepGraphon s) {
  auto shared = std::make_shared<const StepGraphon>(std::move(s));
  Kernel k;
  k.dim = 1;
  k.bounded01 = std::all_of(shared->values().begin(), shared->values().end(),
                            [](double v) { return v >= 0.0 && v <= 1.0; });
  k.name = "step";
  k.step = shared;
  k.eval = [shared](const Point& u, const Point& v) {
    const double x = std::clamp(u[0], 0.0, std::nextafter(1.0, 0.0));
    const double y = std::clamp(v[0], 0.0, std::nextafter(1.0, 0.0));
    return shared->eval(x, y);
  };
  return k;
}

Point deinterleave_bits(double x, int bits) {
  const int tb = 2 * bits;
  double clamped = std::clamp(x, 0.0, std::nextafter(1.0, 0.0));
  auto scaled = static_cast<std::uint64_t>(std::ldexp(clamped, tb));
  const std::uint64_t cap = (std::uint64_t{1} << tb) - 1;
  if (scaled > cap) scaled = cap;
  std::uint64_t a = 0, b = 0;
  for (int j = 0; j < bits; ++j) {
    a = (a << 1) | ((scaled >> (tb - 1 - 2 * j)) & 1);
    b = (b << 1) | ((scaled >> (tb - 2 - 2 * j)) & 1);
  }
  return {std::ldexp(static_cast<double>(a), -bits), std::ldexp(static_cast<double>(b), -bits)};
}

Kernel flatten_2d(const Kernel& kernel, int bits) {
  if (kernel.dim != 2) throw param_error("flatten_2d: kernel must have dim 2");
  if (bits < 8 || bits > 26) throw param_error("flatten_2d: bits must be in [8,26]");
  Kernel flat;
  flat.dim = 1;
  flat.bounded01 = kernel.bounded01;
  flat.name = kernel.name + "-flat";
  auto inner = kernel.eval;
  flat.eval = [inner, bits](const Point& u, const Point& v) {
    return inner(deinterleave_bits(u[0], bits), deinterleave_bits(v[0], bits));
  };
  return flat;
}

}  // namespace graphlim
