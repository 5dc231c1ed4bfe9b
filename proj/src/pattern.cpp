#include "graphlim/pattern.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "graphlim/errors.hpp"

namespace graphlim {

namespace {
constexpr int kMaxPatternNodes = 10;
}

bool PatternGraph::simple() const {
  for (const Edge& e : edges_)
    if (e.a == e.b || e.mult != 1) return false;
  return true;
}

PatternGraph make_pattern(int k, const std::vector<PatternGraph::Edge>& edges,
                          std::string name) {
  if (k < 1) throw param_error("make_pattern: need at least one node");
  if (k > kMaxPatternNodes) throw size_error("make_pattern: pattern capped at 10 nodes");
  std::map<std::pair<int, int>, int> merged;
  for (const auto& e : edges) {
    int a = std::min(e.a, e.b), b = std::max(e.a, e.b);
    if (a < 0 || b >= k) throw param_error("make_pattern: edge endpoint out of range");
    if (e.mult < 1) throw param_error("make_pattern: multiplicity must be >= 1");
    merged[{a, b}] += e.mult;
  }
  PatternGraph f;
  f.k_ = k;
  f.name_ = std::move(name);
  f.degrees_.assign(k, 0);
  for (const auto& [pair, mult] : merged) {
    f.edges_.push_back({pair.first, pair.second, mult});
    f.total_mult_ += mult;
    if (pair.first == pair.second) {
      f.degrees_[pair.first] += 2 * mult;
    } else {
      f.nonloop_mult_ += mult;
      f.degrees_[pair.first] += mult;
      f.degrees_[pair.second] += mult;
    }
  }
  return f;
}

PatternGraph parse_pattern(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ';') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  if (parts.empty()) throw param_error("parse_pattern: empty input");
  int k = 0;
  {
    std::istringstream hs(parts[0]);
    if (!(hs >> k)) throw param_error("parse_pattern: missing node count: " + text);
    std::string rest;
    if (hs >> rest) throw param_error("parse_pattern: malformed node count: " + text);
  }
  std::vector<PatternGraph::Edge> edges;
  for (std::size_t p = 1; p < parts.size(); ++p) {
    std::istringstream es(parts[p]);
    int a, b;
    int mult = 1;
    if (!(es >> a)) continue;  // allow trailing ';'
    if (!(es >> b)) throw param_error("parse_pattern: malformed edge: " + parts[p]);
    es >> mult;
    edges.push_back({a, b, mult});
  }
  return make_pattern(k, edges, text);
}

PatternGraph pattern_complete(int k) {
  std::vector<PatternGraph::Edge> edges;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) edges.push_back({i, j, 1});
  return make_pattern(k, edges, "K" + std::to_string(k));
}

PatternGraph pattern_path(int k) {
  std::vector<PatternGraph::Edge> edges;
  for (int i = 0; i + 1 < k; ++i) edges.push_back({i, i + 1, 1});
  return make_pattern(k, edges, "P" + std::to_string(k));
}

PatternGraph pattern_cycle(int k) {
  if (k < 3) throw param_error("pattern_cycle: need k >= 3");
  std::vector<PatternGraph::Edge> edges;
  for (int i = 0; i < k; ++i) edges.push_back({i, (i + 1) % k, 1});
  return make_pattern(k, edges, "C" + std::to_string(k));
}

PatternGraph pattern_by_name(const std::string& name) {
  if (name.size() == 2 && name[1] >= '1' && name[1] <= '9') {
    const int k = name[1] - '0';
    if (name[0] == 'K') return pattern_complete(k);
    if (name[0] == 'P') return pattern_path(k);
    if (name[0] == 'C') return pattern_cycle(k);
    if (name[0] == 'S') {
      std::vector<PatternGraph::Edge> edges;
      for (int i = 1; i <= k; ++i) edges.push_back({0, i, 1});
      return make_pattern(k + 1, edges, name);
    }
  }
  if (name.find(';') != std::string::npos) return parse_pattern(name);
  throw param_error("pattern_by_name: unknown pattern: " + name);
}

}  // namespace graphlim
