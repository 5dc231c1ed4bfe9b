#ifndef GRAPHLIM_PATTERN_HPP
#define GRAPHLIM_PATTERN_HPP

#include <string>
#include <vector>

namespace graphlim {

// Small multigraph used as the counted pattern F. Hard cap k <= 10 since
// counting is exponential in k.
class PatternGraph {
 public:
  struct Edge {
    int a, b;  // a <= b; a == b is a loop
    int mult;
  };

  PatternGraph() = default;

  int k() const { return k_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& degrees() const { return degrees_; }  // loop adds 2
  int total_mult() const { return total_mult_; }      // l: every copy counts
  int nonloop_mult() const { return nonloop_mult_; }  // l'
  bool simple() const;  // no loops, all multiplicities 1
  const std::string& name() const { return name_; }

  friend PatternGraph make_pattern(int k, const std::vector<Edge>& edges,
                                   std::string name);

 private:
  int k_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> degrees_;
  int total_mult_ = 0;
  int nonloop_mult_ = 0;
  std::string name_;
};

PatternGraph make_pattern(int k, const std::vector<PatternGraph::Edge>& edges,
                          std::string name = "");

// Text format "k; i j [mult]; ..." with loops written as "i i".
PatternGraph parse_pattern(const std::string& text);

// Named shorthands: K2..K5, P2..P5 (paths by node count), C3..C6, S3 (star),
// plus the raw text format as fallback.
PatternGraph pattern_by_name(const std::string& name);

PatternGraph pattern_complete(int k);
PatternGraph pattern_path(int k);
PatternGraph pattern_cycle(int k);

}  // namespace graphlim

#endif
