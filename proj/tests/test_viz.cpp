#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "graphlim/errors.hpp"
#include "graphlim/growth.hpp"
#include "graphlim/kernel.hpp"
#include "graphlim/viz.hpp"
#include "support.hpp"

using namespace graphlim;
using namespace graphlim::testsupport;

namespace {

std::filesystem::path temp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "graphlim_viz_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

Graph petersen() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.set_edge(i, (i + 1) % 5);
    g.set_edge(5 + i, 5 + (i + 2) % 5);
    g.set_edge(i, 5 + i);
  }
  return g;
}

std::string file_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("raster spec validation") {
  RasterSpec bad;
  bad.resolution = 8;
  CHECK_THROWS_AS(render_graph(Graph(3), bad), param_error);
  bad.resolution = 8192;
  CHECK_THROWS_AS(render_graph(Graph(3), bad), param_error);
}

TEST_CASE("graph render reproduces the adjacency matrix when res is a multiple of n") {
  const Graph p = petersen();
  RasterSpec spec;
  spec.resolution = 20;  // 2x2 pixel blocks
  const Image img = render_graph(p, spec);
  for (int r = 0; r < 20; ++r)
    for (int c = 0; c < 20; ++c) {
      const int i = r / 2, j = c / 2;
      CHECK(img.at(r, c) == (i != j && p.edge(i, j) ? 0 : 255));
    }

  spec.resolution = 40;  // 4x4 pixel blocks
  const Image big = render_graph(p, spec);
  for (int r = 0; r < 40; ++r)
    for (int c = 0; c < 40; ++c) {
      const int i = r / 4, j = c / 4;
      CHECK(big.at(r, c) == (i != j && p.edge(i, j) ? 0 : 255));
    }
}

TEST_CASE("constant half kernel renders uniform mid-gray") {
  Kernel k;
  k.dim = 1;
  k.bounded01 = true;
  k.name = "const";
  k.eval = [](const Point&, const Point&) { return 0.5; };
  RasterSpec spec;
  spec.resolution = 16;
  const Image img = render_kernel(k, spec);
  for (const auto px : img.pixels) CHECK(px == 128);
}

TEST_CASE("half graph pictures approach the half-graph kernel picture") {
  RasterSpec spec;
  spec.resolution = 64;
  const Image limit = render_kernel(builtin_kernel(BuiltinGraphon::half_graph), spec);
  auto mismatch_fraction = [&](int n) {
    Graph h(2 * n);
    for (int i = 1; i <= n; ++i)
      for (int j = i; j <= n; ++j) h.set_edge(i - 1, n + j - 1);
    const Image img = render_graph(h, spec);
    int bad = 0;
    for (std::size_t p = 0; p < img.pixels.size(); ++p)
      if (img.pixels[p] != limit.pixels[p]) ++bad;
    return static_cast<double>(bad) / img.pixels.size();
  };
  CHECK(mismatch_fraction(32) <= 0.06);
  CHECK(mismatch_fraction(256) <= mismatch_fraction(32));
}

TEST_CASE("chessboard orderings give the two classic pictures") {
  // complete bipartite graph with interleaved birth labels: a fine chessboard
  const int n = 16;
  Graph inter(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (i % 2 != j % 2) inter.set_edge(i, j);
  RasterSpec spec;
  spec.resolution = 16;
  const Image chess = render_graph(inter, spec);
  CHECK(chess.at(0, 1) == 0);
  CHECK(chess.at(0, 2) == 255);
  CHECK(chess.at(1, 2) == 0);

  // relabeled so one side comes first: two off-diagonal blocks
  Graph sorted(n);
  for (int i = 0; i < n / 2; ++i)
    for (int j = n / 2; j < n; ++j) sorted.set_edge(i, j);
  const Image blocks = render_graph(sorted, spec);
  CHECK(blocks.at(0, 1) == 255);
  CHECK(blocks.at(0, n - 1) == 0);
  CHECK(blocks.at(n - 1, 0) == 0);
  CHECK(blocks.at(n - 1, n - 2) == 255);
}

TEST_CASE("degree ordering pushes the dense rows first") {
  Graph star(5);
  star.set_edge(4, 0);
  star.set_edge(4, 1);
  star.set_edge(4, 2);
  RasterSpec spec;
  spec.resolution = 20;
  spec.ordering = NodeOrdering::degree;
  const Image img = render_graph(star, spec);
  // center (degree 3) occupies the first block row: pixels (0, 4..15) black
  CHECK(img.at(0, 5) == 0);
  CHECK(img.at(0, 19) == 255);  // isolated node 3 is relabeled last
}

TEST_CASE("multigraph render scales by multiplicity") {
  Multigraph m(2);
  m.add_edge(0, 1);
  m.add_edge(0, 1);
  m.add_edge(0, 0);  // loop, half the peak multiplicity
  RasterSpec spec;
  spec.resolution = 16;
  const Image img = render_multigraph(m, spec);
  CHECK(img.at(0, 15) == 0);    // double edge at full darkness
  CHECK(img.at(0, 0) == 128);   // loop at half darkness
  CHECK(img.at(15, 15) == 255); // no loop at node 1
}

TEST_CASE("pgm write/read round trip and determinism") {
  const auto dir = temp_dir();
  const Graph g = random_graph(12, 0.5, Seed{404, 1});
  RasterSpec spec;
  spec.resolution = 48;
  const Image img = render_graph(g, spec);
  const auto p1 = dir / "a.pgm";
  const auto p2 = dir / "b.pgm";
  write_pgm(img, p1);
  write_pgm(img, p2);
  CHECK(file_bytes(p1) == file_bytes(p2));
  CHECK(file_bytes(p1).substr(0, 3) == "P5\n");

  const Image back = read_pgm(p1);
  CHECK(back.width == img.width);
  CHECK(back.height == img.height);
  CHECK(back.pixels == img.pixels);

  CHECK_THROWS_AS(write_pgm(img, dir / "no_such_subdir" / "x.pgm"), io_error);
  CHECK_THROWS_AS(read_pgm(dir / "missing.pgm"), io_error);
}

TEST_CASE("render_series stamps indexed filenames") {
  const auto dir = temp_dir() / "series";
  std::filesystem::remove_all(dir);
  std::vector<Graph> frames = {random_graph(6, 0.3, Seed{1, 1}),
                               random_graph(6, 0.5, Seed{1, 2}),
                               random_graph(6, 0.7, Seed{1, 3})};
  RasterSpec spec;
  spec.resolution = 24;
  const auto paths = render_series(frames, spec, dir, "growth");
  CHECK(paths.size() == 3);
  CHECK(paths[0].filename() == "growth_0000.pgm");
  CHECK(paths[2].filename() == "growth_0002.pgm");
  for (const auto& p : paths) CHECK(std::filesystem::exists(p));

  CHECK_THROWS_AS(render_series({}, spec, dir), param_error);
}

TEST_CASE("prefix limit kernel renders through flattening") {
  RasterSpec spec;
  spec.resolution = 64;
  const Image img = render_kernel(builtin_kernel(BuiltinGraphon::prefix_limit), spec, 12);
  // 0-1 valued kernel: all pixels pure black or white, both present
  int black = 0, white = 0;
  for (const auto px : img.pixels) {
    CHECK((px == 0 || px == 255));
    if (px == 0) ++black;
    if (px == 255) ++white;
  }
  CHECK(black > 0);
  CHECK(white > 0);
}
