#include "graphlim/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include "graphlim/errors.hpp"

namespace graphlim {

Graph::Graph(int n) : n_(n), words_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * ((n + 63) / 64), 0) {
  if (n < 0) throw param_error("Graph: negative node count");
}

void Graph::set_edge(int i, int j) {
  if (i == j) throw param_error("Graph: loops not allowed");
  mutable_row(i)[j >> 6] |= std::uint64_t{1} << (j & 63);
  mutable_row(j)[i >> 6] |= std::uint64_t{1} << (i & 63);
}

void Graph::clear_edge(int i, int j) {
  mutable_row(i)[j >> 6] &= ~(std::uint64_t{1} << (j & 63));
  mutable_row(j)[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
}

int Graph::degree(int i) const {
  int d = 0;
  const std::uint64_t* r = row(i);
  for (int w = 0; w < words_; ++w) d += std::popcount(r[w]);
  return d;
}

long long Graph::edge_count() const {
  long long total = 0;
  for (int i = 0; i < n_; ++i) total += degree(i);
  return total / 2;
}

Graph Graph::complete(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.set_edge(i, j);
  return g;
}

Multigraph::Multigraph(int n) : n_(n), m_(static_cast<std::size_t>(n) * n, 0) {
  if (n < 0) throw param_error("Multigraph: negative node count");
}

void Multigraph::add_edge(int i, int j) {
  if (i == j) {
    ++m_[static_cast<std::size_t>(i) * n_ + i];
    return;
  }
  ++m_[static_cast<std::size_t>(i) * n_ + j];
  ++m_[static_cast<std::size_t>(j) * n_ + i];
}

int Multigraph::degree(int i) const {
  int d = 2 * loops(i);
  for (int j = 0; j < n_; ++j)
    if (j != i) d += mult(i, j);
  return d;
}

long long Multigraph::total_edges() const {
  long long t = 0;
  for (int i = 0; i < n_; ++i) {
    t += loops(i);
    for (int j = i + 1; j < n_; ++j) t += mult(i, j);
  }
  return t;
}

Graph reorder_by_degree(const Graph& g) {
  const int n = g.n();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> deg(n);
  for (int i = 0; i < n; ++i) deg[i] = g.degree(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return deg[a] > deg[b]; });
  Graph out(n);
  for (int r = 0; r < n; ++r)
    for (int s = r + 1; s < n; ++s)
      if (g.edge(order[r], order[s])) out.set_edge(r, s);
  return out;
}

Graph blow_up(const Graph& g, int factor) {
  if (factor < 1) throw param_error("blow_up: factor must be >= 1");
  const int n = g.n();
  Graph out(n * factor);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (g.edge(i, j))
        for (int a = 0; a < factor; ++a)
          for (int b = 0; b < factor; ++b) out.set_edge(i * factor + a, j * factor + b);
  return out;
}

// --- serialization ----------------------------------------------------------

void write_graph(const Graph& g, std::ostream& out) {
  out << g.n() << ' ' << g.edge_count() << '\n';
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j)
      if (g.edge(i, j)) out << i << ' ' << j << " 1\n";
}

void write_multigraph(const Multigraph& g, std::ostream& out) {
  out << g.n() << ' ' << g.total_edges() << " multi\n";
  for (int i = 0; i < g.n(); ++i) {
    if (g.loops(i) > 0) out << i << ' ' << i << ' ' << g.loops(i) << '\n';
    for (int j = i + 1; j < g.n(); ++j)
      if (g.mult(i, j) > 0) out << i << ' ' << j << ' ' << g.mult(i, j) << '\n';
  }
}

namespace {

std::ofstream open_out(const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw io_error("cannot open for writing: " + file.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw io_error("cannot open for reading: " + file.string());
  return in;
}

struct Header {
  long long n = 0;
  long long m = 0;
  bool multi = false;
};

Header read_header(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw io_error("edge list: missing header line");
  std::istringstream hs(line);
  Header h;
  if (!(hs >> h.n >> h.m)) throw io_error("edge list: malformed header: " + line);
  std::string tag;
  if (hs >> tag) {
    if (tag != "multi") throw io_error("edge list: unknown header tag: " + tag);
    h.multi = true;
  }
  if (h.n < 0 || h.m < 0) throw io_error("edge list: negative header counts");
  return h;
}

}  // namespace

void write_graph(const Graph& g, const std::filesystem::path& file) {
  auto out = open_out(file);
  write_graph(g, out);
  if (!out) throw io_error("write failed: " + file.string());
}

void write_multigraph(const Multigraph& g, const std::filesystem::path& file) {
  auto out = open_out(file);
  write_multigraph(g, out);
  if (!out) throw io_error("write failed: " + file.string());
}

Graph read_graph(std::istream& in) {
  const Header h = read_header(in);
  if (h.multi) throw io_error("edge list: expected a simple graph, found 'multi'");
  Graph g(static_cast<int>(h.n));
  std::string line;
  long long edges = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    long long i, j;
    long long mult = 1;
    if (!(ls >> i >> j)) throw io_error("edge list: malformed line: " + line);
    ls >> mult;
    if (i < 0 || j < 0 || i >= h.n || j >= h.n) throw io_error("edge list: node out of range: " + line);
    if (i == j) throw io_error("edge list: loop in simple graph: " + line);
    if (mult != 1) throw io_error("edge list: multiplicity in simple graph: " + line);
    g.set_edge(static_cast<int>(i), static_cast<int>(j));
    ++edges;
  }
  if (edges != h.m) throw io_error("edge list: header edge count mismatch");
  return g;
}

Multigraph read_multigraph(std::istream& in) {
  const Header h = read_header(in);
  Multigraph g(static_cast<int>(h.n));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    long long i, j;
    long long mult = 1;
    if (!(ls >> i >> j)) throw io_error("edge list: malformed line: " + line);
    ls >> mult;
    if (i < 0 || j < 0 || i >= h.n || j >= h.n) throw io_error("edge list: node out of range: " + line);
    if (mult < 0) throw io_error("edge list: negative multiplicity: " + line);
    for (long long t = 0; t < mult; ++t) g.add_edge(static_cast<int>(i), static_cast<int>(j));
  }
  if (g.total_edges() != h.m) throw io_error("edge list: header edge count mismatch");
  return g;
}

Graph read_graph(const std::filesystem::path& file) {
  auto in = open_in(file);
  return read_graph(in);
}

Multigraph read_multigraph(const std::filesystem::path& file) {
  auto in = open_in(file);
  return read_multigraph(in);
}

AnyGraph read_any_graph(const std::filesystem::path& file) {
  auto in = open_in(file);
  std::string first;
  if (!std::getline(in, first)) throw io_error("edge list: missing header line");
  in.seekg(0);
  if (first.find("multi") != std::string::npos) return read_multigraph(in);
  return read_graph(in);
}

}  // namespace graphlim
