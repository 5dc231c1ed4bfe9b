#ifndef GRAPHLIM_TESTS_SUPPORT_HPP
#define GRAPHLIM_TESTS_SUPPORT_HPP

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/growth.hpp"
#include "graphlim/rng.hpp"

namespace graphlim::testsupport {

// Exhaustive walk of the PAG(n, m) duplication process. Every leaf (one
// choice per uniform draw) has probability 1 / (n(n+1)...(n+2m-1)), so leaf
// counts are exact rational probabilities.
struct PagEnumeration {
  long long total_leaves = 0;
  // keyed by the serialized multigraph
  std::map<std::string, long long> graph_leaves;
  std::map<std::string, Multigraph> graphs;
  // per multigraph: leaf count of every oriented insertion history
  std::map<std::string, std::map<std::vector<std::pair<int, int>>, long long>> histories;
};

inline std::string multigraph_key(const Multigraph& g) {
  std::ostringstream os;
  write_multigraph(g, os);
  return os.str();
}

inline PagEnumeration enumerate_pag(int n, int m) {
  PagEnumeration out;
  std::vector<int> seq;
  seq.reserve(n + 2 * m);
  for (int i = 0; i < n; ++i) seq.push_back(i);

  std::function<void()> walk = [&] {
    if (static_cast<int>(seq.size()) == n + 2 * m) {
      Multigraph g(n);
      std::vector<std::pair<int, int>> history;
      for (int k = 0; k < m; ++k) {
        const int u = seq[n + 2 * k], v = seq[n + 2 * k + 1];
        g.add_edge(u, v);
        history.push_back({u, v});
      }
      const std::string key = multigraph_key(g);
      ++out.total_leaves;
      ++out.graph_leaves[key];
      out.graphs.emplace(key, g);
      ++out.histories[key][history];
      return;
    }
    const std::size_t len = seq.size();
    for (std::size_t pos = 0; pos < len; ++pos) {
      seq.push_back(seq[pos]);
      walk();
      seq.pop_back();
    }
  };
  walk();
  return out;
}

// Erdos-Renyi style random graph for property tests.
inline Graph random_graph(int n, double p, Seed seed) {
  Rng rng(seed);
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.bernoulli(p)) g.set_edge(i, j);
  return g;
}

// Sample mean and standard error of a per-seed statistic.
struct MeanStderr {
  double mean = 0.0;
  double std_error = 0.0;
};

inline MeanStderr replicate(int reps, Seed base,
                            const std::function<double(Seed)>& stat) {
  double sum = 0.0, sumsq = 0.0;
  for (int r = 0; r < reps; ++r) {
    const double v = stat(Seed{base.seed, static_cast<std::uint64_t>(r)});
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / reps;
  const double var = reps > 1 ? (sumsq - reps * mean * mean) / (reps - 1) : 0.0;
  return {mean, std::sqrt(std::max(0.0, var) / reps)};
}

}  // namespace graphlim::testsupport

#endif
