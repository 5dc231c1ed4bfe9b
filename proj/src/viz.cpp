#include "graphlim/viz.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

#include "graphlim/errors.hpp"

namespace graphlim {

namespace {

void check_spec(const RasterSpec& spec) {
  if (spec.resolution < 16 || spec.resolution > 4096)
    throw param_error("render: resolution must be in [16, 4096]");
}

std::uint8_t shade(double v) {
  const double clamped = std::clamp(v, 0.0, 1.0);
  return static_cast<std::uint8_t>(std::lround(255.0 * (1.0 - clamped)));
}

// pixel (r, c) samples the function at row/column midpoints; the origin is
// the upper left corner, as for a matrix
Image render_fn(int res, const std::function<double(double, double)>& f) {
  Image img;
  img.width = res;
  img.height = res;
  img.pixels.resize(static_cast<std::size_t>(res) * res);
  for (int r = 0; r < res; ++r)
    for (int c = 0; c < res; ++c)
      img.pixels[static_cast<std::size_t>(r) * res + c] =
          shade(f((r + 0.5) / res, (c + 0.5) / res));
  return img;
}

}  // namespace

Image render_step(const StepGraphon& s, const RasterSpec& spec) {
  check_spec(spec);
  return render_fn(spec.resolution, [&](double x, double y) { return s.eval(x, y); });
}

Image render_graph(const Graph& g, const RasterSpec& spec) {
  check_spec(spec);
  const Graph* src = &g;
  Graph reordered;
  if (spec.ordering == NodeOrdering::degree) {
    reordered = reorder_by_degree(g);
    src = &reordered;
  }
  return render_step(step_from_graph(*src), spec);
}

Image render_kernel(const Kernel& w, const RasterSpec& spec, int flatten_bits) {
  check_spec(spec);
  const Kernel flat = w.dim == 2 ? flatten_2d(w, flatten_bits) : w;
  return render_fn(spec.resolution, [&](double x, double y) { return flat(x, y); });
}

Image render_multigraph(const Multigraph& g, const RasterSpec& spec) {
  check_spec(spec);
  const int n = g.n();
  if (n < 1) throw param_error("render_multigraph: empty multigraph");
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (spec.ordering == NodeOrdering::degree) {
    std::vector<int> deg(n);
    for (int i = 0; i < n; ++i) deg[i] = g.degree(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return deg[a] > deg[b]; });
  }
  int peak = 0;
  for (int i = 0; i < n; ++i) {
    peak = std::max(peak, g.loops(i));
    for (int j = i + 1; j < n; ++j) peak = std::max(peak, g.mult(i, j));
  }
  const double scale = peak > 0 ? 1.0 / peak : 0.0;
  std::vector<double> values(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const int i = order[r], j = order[c];
      values[static_cast<std::size_t>(r) * n + c] =
          scale * (i == j ? g.loops(i) : g.mult(i, j));
    }
  return render_step(make_step(n, std::move(values), std::vector<double>(n, 1.0 / n)), spec);
}

void write_pgm(const Image& img, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + file.string());
  out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
  if (!out) throw io_error("write failed: " + file.string());
}

Image read_pgm(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw io_error("cannot open for reading: " + file.string());
  std::string magic;
  in >> magic;
  if (magic != "P5" && magic != "P2") throw io_error("read_pgm: not a P2/P5 graymap");
  int w, h, maxval;
  if (!(in >> w >> h >> maxval) || w <= 0 || h <= 0 || maxval != 255)
    throw io_error("read_pgm: malformed header");
  Image img;
  img.width = w;
  img.height = h;
  img.pixels.resize(static_cast<std::size_t>(w) * h);
  if (magic == "P5") {
    in.get();  // single whitespace after maxval
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (!in) throw io_error("read_pgm: truncated pixel data");
  } else {
    for (auto& px : img.pixels) {
      int v;
      if (!(in >> v)) throw io_error("read_pgm: truncated pixel data");
      px = static_cast<std::uint8_t>(v);
    }
  }
  return img;
}

std::vector<std::filesystem::path> render_series(const std::vector<Graph>& graphs,
                                                 const RasterSpec& spec,
                                                 const std::filesystem::path& dir,
                                                 const std::string& stem) {
  if (graphs.empty()) throw param_error("render_series: empty graph list");
  check_spec(spec);
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    std::ostringstream name;
    name << stem << '_';
    name.width(4);
    name.fill('0');
    name << i;
    name << ".pgm";
    const auto path = dir / name.str();
    write_pgm(render_graph(graphs[i], spec), path);
    written.push_back(path);
  }
  return written;
}

}  // namespace graphlim
