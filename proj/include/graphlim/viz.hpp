#ifndef GRAPHLIM_VIZ_HPP
#define GRAPHLIM_VIZ_HPP

#include <cstdint>
#include <filesystem>
#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/kernel.hpp"

namespace graphlim {

enum class NodeOrdering { birth, degree };

// Pixel picture parameters. Values map linearly to darkness: 1 is black,
// 0 is white, origin in the upper left corner.
struct RasterSpec {
  int resolution = 256;  // pixels per side, in [16, 4096]
  NodeOrdering ordering = NodeOrdering::birth;
};

struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, 0 = black

  std::uint8_t at(int r, int c) const {
    return pixels[static_cast<std::size_t>(r) * width + c];
  }
};

Image render_graph(const Graph& g, const RasterSpec& spec);
Image render_step(const StepGraphon& s, const RasterSpec& spec);
// dim-2 kernels are flattened with the given bit budget first; values are
// clamped to [0,1] (pref-log is unbounded).
Image render_kernel(const Kernel& w, const RasterSpec& spec, int flatten_bits = 16);
// Darkness proportional to multiplicity (loops on the diagonal), scaled by
// the maximum entry.
Image render_multigraph(const Multigraph& g, const RasterSpec& spec);

// Binary portable graymap (P5, maxval 255).
void write_pgm(const Image& img, const std::filesystem::path& file);
Image read_pgm(const std::filesystem::path& file);

// One image per graph, "<stem>_NNN.pgm" under dir. Throws param_error on an
// empty list. Returns the written paths.
std::vector<std::filesystem::path> render_series(const std::vector<Graph>& graphs,
                                                 const RasterSpec& spec,
                                                 const std::filesystem::path& dir,
                                                 const std::string& stem = "frame");

}  // namespace graphlim

#endif
