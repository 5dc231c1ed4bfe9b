#ifndef GRAPHLIM_GRAPH_HPP
#define GRAPHLIM_GRAPH_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <variant>
#include <vector>

namespace graphlim {

// Simple undirected graph with birth-order labels 0..n-1.
// Adjacency is kept as packed bit rows so neighborhood intersections
// (triangle and homomorphism counting) are word-parallel.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int n() const { return n_; }
  int words() const { return words_; }

  bool edge(int i, int j) const {
    return (row(i)[j >> 6] >> (j & 63)) & 1u;
  }
  void set_edge(int i, int j);
  void clear_edge(int i, int j);

  const std::uint64_t* row(int i) const { return bits_.data() + static_cast<std::size_t>(i) * words_; }

  int degree(int i) const;
  long long edge_count() const;

  static Graph complete(int n);

  bool operator==(const Graph&) const = default;

 private:
  std::uint64_t* mutable_row(int i) { return bits_.data() + static_cast<std::size_t>(i) * words_; }

  int n_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Multigraph: per-pair edge multiplicities plus per-node loop counts.
// Node degrees count a loop twice.
class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(int n);

  int n() const { return n_; }

  // Multiplicity of the unordered pair {i,j}, i != j.
  int mult(int i, int j) const { return m_[static_cast<std::size_t>(i) * n_ + j]; }
  int loops(int i) const { return m_[static_cast<std::size_t>(i) * n_ + i]; }

  // Adds one edge; i == j adds a loop.
  void add_edge(int i, int j);

  int degree(int i) const;
  long long total_edges() const;  // sum of pair multiplicities plus loops

  bool operator==(const Multigraph&) const = default;

 private:
  int n_ = 0;
  std::vector<int> m_;  // n*n symmetric; diagonal holds loop counts
};

// Relabels nodes in nonincreasing degree order, ties broken by ascending
// original label. Idempotent.
Graph reorder_by_degree(const Graph& g);

// Replaces each node by `factor` pairwise nonadjacent twins.
Graph blow_up(const Graph& g, int factor);

// --- serialization ---------------------------------------------------------
// Text edge list. First line "n m" (simple) or "n m multi"; then one
// "i j mult" line per pair in lexicographic order, loops as "i i count".

void write_graph(const Graph& g, std::ostream& out);
void write_graph(const Graph& g, const std::filesystem::path& file);
void write_multigraph(const Multigraph& g, std::ostream& out);
void write_multigraph(const Multigraph& g, const std::filesystem::path& file);

Graph read_graph(std::istream& in);
Graph read_graph(const std::filesystem::path& file);
Multigraph read_multigraph(std::istream& in);
Multigraph read_multigraph(const std::filesystem::path& file);

using AnyGraph = std::variant<Graph, Multigraph>;
AnyGraph read_any_graph(const std::filesystem::path& file);

}  // namespace graphlim

#endif
