#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <variant>

#include "graphlim/densities.hpp"
#include "graphlim/distances.hpp"
#include "graphlim/errors.hpp"
#include "graphlim/graph.hpp"
#include "graphlim/growth.hpp"
#include "graphlim/kernel.hpp"
#include "graphlim/pattern.hpp"
#include "graphlim/rng.hpp"
#include "graphlim/viz.hpp"

namespace graphlim::cli {

namespace {

using nlohmann::json;

std::string fmt12(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::filesystem::path default_dir() {
  if (const char* env = std::getenv("GRAPHLIM_OUT_DIR")) return env;
  return ".";
}

std::string sanitize(std::string s) {
  for (char& ch : s)
    if (ch == ':' || ch == '/') ch = '-';
  return s;
}

// kernel names: uniform-limit, ranked-limit, prefix-ratio, prefix-limit,
// half-graph, pref-log:<c>, spag-limit:<c>
Kernel parse_kernel_name(const std::string& name) {
  if (name == "uniform-limit") return builtin_kernel(BuiltinGraphon::uniform_limit);
  if (name == "ranked-limit") return builtin_kernel(BuiltinGraphon::ranked_limit);
  if (name == "prefix-ratio") return builtin_kernel(BuiltinGraphon::prefix_ratio);
  if (name == "prefix-limit") return builtin_kernel(BuiltinGraphon::prefix_limit);
  if (name == "half-graph") return builtin_kernel(BuiltinGraphon::half_graph);
  const auto colon = name.find(':');
  if (colon != std::string::npos) {
    const std::string base = name.substr(0, colon);
    double c;
    try {
      c = std::stod(name.substr(colon + 1));
    } catch (const std::exception&) {
      throw param_error("kernel: bad parameter in '" + name + "'");
    }
    if (base == "pref-log") return builtin_kernel(BuiltinGraphon::pref_log, c);
    if (base == "spag-limit") return builtin_kernel(BuiltinGraphon::spag_limit, c);
  }
  throw param_error("kernel: unknown name '" + name + "'");
}

struct ModelSpec {
  std::string tag;
  std::string base;
  std::string arg;  // kernel name or parameter after ':'
};

ModelSpec parse_model(const std::string& tag) {
  ModelSpec ms;
  ms.tag = tag;
  const auto colon = tag.find(':');
  ms.base = colon == std::string::npos ? tag : tag.substr(0, colon);
  ms.arg = colon == std::string::npos ? "" : tag.substr(colon + 1);
  static const std::vector<std::string> known = {
      "uniform", "ranked", "prefix", "pag", "spag", "wrandom", "prescribed", "homogeneous"};
  if (std::find(known.begin(), known.end(), ms.base) == known.end())
    throw param_error("model: unknown model '" + tag + "'");
  return ms;
}

double model_c(const ModelSpec& ms) {
  if (ms.arg.empty()) throw param_error("model '" + ms.base + "' needs a :<c> parameter");
  try {
    return std::stod(ms.arg);
  } catch (const std::exception&) {
    throw param_error("model: bad parameter in '" + ms.tag + "'");
  }
}

// boundary profile of the homogeneous rule, from U(x,y) = (xy)^(c/2)
std::function<double(double)> homogeneous_boundary(double c) {
  return [c](double x) { return 1.0 - std::pow(x, c / 2.0); };
}

AnyGraph generate_model(const ModelSpec& ms, int n, std::optional<double> param, Seed seed) {
  if (ms.base == "uniform") return grow_uniform(n, seed);
  if (ms.base == "ranked") return grow_ranked(n, seed);
  if (ms.base == "prefix") return grow_prefix(n, seed).graph;
  if (ms.base == "pag") {
    long long m = -1;
    if (param)
      m = std::llround(*param);
    else if (!ms.arg.empty())
      m = spag_edge_count(n, model_c(ms));
    if (m < 0) throw param_error("pag: edge count m required");
    return grow_pag(n, m, seed);
  }
  if (ms.base == "spag") {
    double c = param ? *param : (ms.arg.empty() ? -1.0 : model_c(ms));
    if (!(c > 0.0)) throw param_error("spag: parameter c > 0 required");
    return simplify_pag(grow_pag(n, spag_edge_count(n, c), seed));
  }
  if (ms.base == "wrandom") {
    const Kernel k = parse_kernel_name(ms.arg);
    const LabeledSample s = uniform_sample(n, k.dim, seed.sub(1));
    return sample_w_random(s, k, seed.sub(2));
  }
  if (ms.base == "prescribed") return grow_prescribed(parse_kernel_name(ms.arg), n, seed);
  if (ms.base == "homogeneous") {
    const double c = model_c(ms);
    return grow_homogeneous(c, homogeneous_boundary(c), n, seed);
  }
  throw param_error("model: unknown model '" + ms.tag + "'");
}

const Graph& as_simple(const AnyGraph& g, Graph& scratch) {
  if (std::holds_alternative<Graph>(g)) return std::get<Graph>(g);
  scratch = simplify_pag(std::get<Multigraph>(g));
  return scratch;
}

// --- subcommand option bags --------------------------------------------------

struct CommonOpts {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  bool as_json = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--seed", o.seed, "random seed (default 0)");
  cmd->add_option("--stream", o.stream, "seed stream (default 0)");
  cmd->add_flag("--json", o.as_json, "print a machine-readable JSON report");
}

int cmd_generate(const std::string& model, int n, std::optional<double> param,
                 std::string out_file, const CommonOpts& o, std::ostream& out) {
  const ModelSpec ms = parse_model(model);
  const Seed seed{o.seed, o.stream};
  const AnyGraph g = generate_model(ms, n, param, seed);
  if (out_file.empty()) {
    std::ostringstream name;
    name << sanitize(model) << "_n" << n << "_s" << o.seed << ".el";
    out_file = (default_dir() / name.str()).string();
  }
  long long edges;
  if (std::holds_alternative<Graph>(g)) {
    write_graph(std::get<Graph>(g), std::filesystem::path(out_file));
    edges = std::get<Graph>(g).edge_count();
  } else {
    write_multigraph(std::get<Multigraph>(g), std::filesystem::path(out_file));
    edges = std::get<Multigraph>(g).total_edges();
  }
  if (o.as_json) {
    json j{{"command", "generate"}, {"model", model}, {"n", n},
           {"seed", o.seed},        {"stream", o.stream}, {"out", out_file},
           {"edges", edges},
           {"multigraph", std::holds_alternative<Multigraph>(g)}};
    if (param) j["param"] = *param;
    out << j.dump() << '\n';
  } else {
    out << "wrote " << out_file << " (n=" << n << ", edges=" << edges << ")\n";
  }
  return 0;
}

int cmd_density(const std::string& pattern_text, const std::string& target,
                std::string method, double samples, int grid, const CommonOpts& o,
                std::ostream& out) {
  const PatternGraph f = pattern_by_name(pattern_text);
  const Seed seed{o.seed, o.stream};
  json j{{"command", "density"}, {"pattern", pattern_text}, {"target", target}};
  std::ostringstream text;
  if (target.rfind("graph:", 0) == 0) {
    const AnyGraph g = read_any_graph(target.substr(6));
    if (std::holds_alternative<Graph>(g)) {
      const double v = t_density(f, std::get<Graph>(g));
      j["method"] = "exact";
      j["value"] = v;
      text << "t(" << pattern_text << ", " << target << ") = " << fmt12(v) << " (exact)";
    } else {
      const double v = t_inj(f, std::get<Multigraph>(g));
      j["method"] = "inj";
      j["value"] = v;
      text << "t_inj(" << pattern_text << ", " << target << ") = " << fmt12(v) << " (exact)";
    }
  } else if (target.rfind("kernel:", 0) == 0) {
    const Kernel w = parse_kernel_name(target.substr(7));
    if (method.empty()) method = "mc";
    if (method == "mc") {
      const auto r = t_kernel_mc(f, w, std::llround(samples), seed);
      j["method"] = "mc";
      j["value"] = r.value;
      j["stderr"] = r.std_error;
      j["samples"] = r.samples;
      text << "t(" << pattern_text << ", " << target << ") = " << fmt12(r.value) << " +- "
           << fmt12(r.std_error) << " (mc, " << r.samples << " samples)";
    } else if (method == "quad") {
      const double v = t_kernel_quad(f, w, grid);
      j["method"] = "quad";
      j["value"] = v;
      j["grid"] = grid;
      text << "t(" << pattern_text << ", " << target << ") = " << fmt12(v) << " (quad, grid "
           << grid << ")";
    } else {
      throw param_error("density: method must be mc or quad for kernel targets");
    }
  } else {
    throw param_error("density: target must be graph:<file> or kernel:<name>");
  }
  if (o.as_json)
    out << j.dump() << '\n';
  else
    out << text.str() << '\n';
  return 0;
}

int cmd_distance(const std::string& kind, const std::string& a, const std::string& b,
                 const std::string& mode_name, int grid, const CommonOpts& o,
                 std::ostream& out) {
  if (kind != "cut" && kind != "edit") throw param_error("distance: kind must be cut or edit");
  DistanceMode mode;
  if (mode_name == "exact")
    mode = DistanceMode::exact;
  else if (mode_name == "heuristic")
    mode = DistanceMode::heuristic;
  else
    throw param_error("distance: mode must be exact or heuristic");
  const Seed seed{o.seed, o.stream};

  auto strip = [](const std::string& s) {
    return s.rfind("graph:", 0) == 0 ? s.substr(6) : s;
  };
  const bool a_kernel = a.rfind("kernel:", 0) == 0;
  const bool b_kernel = b.rfind("kernel:", 0) == 0;
  json j{{"command", "distance"}, {"kind", kind}, {"a", a}, {"b", b}};
  std::ostringstream text;
  if (a_kernel && b_kernel) throw param_error("distance: at most one kernel operand");
  if (a_kernel || b_kernel) {
    if (kind != "cut") throw param_error("distance: edit distance requires two graphs");
    const Kernel w = parse_kernel_name((a_kernel ? a : b).substr(7));
    const Graph g = read_graph(strip(a_kernel ? b : a));
    const OverlayResult r = cut_distance_graph_kernel(g, w, grid, seed);
    j["estimate"] = r.distance_estimate;
    j["exact"] = false;
    j["dyadic_lower_bound"] = r.dyadic_lower_bound;
    text << "cut distance estimate = " << fmt12(r.distance_estimate)
         << " (heuristic upper bound, birth-aligned); dyadic lower bound = "
         << fmt12(r.dyadic_lower_bound);
  } else {
    const Graph g = read_graph(strip(a));
    const Graph h = read_graph(strip(b));
    const OverlayResult r = kind == "cut" ? cut_distance_graphs(g, h, mode, seed)
                                          : edit_distance(g, h, mode, seed);
    j["estimate"] = r.distance_estimate;
    j["exact"] = r.exact;
    j["permutation"] = r.permutation;
    text << kind << " distance " << (r.exact ? "" : "estimate ") << "= "
         << fmt12(r.distance_estimate) << " (" << (r.exact ? "exact" : "heuristic upper bound")
         << ", overlay of " << r.permutation.size() << " nodes)";
  }
  if (o.as_json)
    out << j.dump() << '\n';
  else
    out << text.str() << '\n';
  return 0;
}

double eval_statistic(const std::string& stat, const AnyGraph& g, int grid, Seed seed) {
  Graph scratch;
  if (stat == "edges") {
    if (std::holds_alternative<Graph>(g)) return static_cast<double>(std::get<Graph>(g).edge_count());
    return static_cast<double>(std::get<Multigraph>(g).total_edges());
  }
  if (stat == "triangles")
    return static_cast<double>(hom_count(pattern_complete(3), as_simple(g, scratch))) / 6.0;
  const auto colon = stat.find(':');
  if (colon == std::string::npos) throw param_error("converge: unknown statistic '" + stat + "'");
  const std::string head = stat.substr(0, colon);
  const std::string rest = stat.substr(colon + 1);
  if (head == "t") return t_density(pattern_by_name(rest), as_simple(g, scratch));
  if (head == "tinj") {
    if (std::holds_alternative<Multigraph>(g))
      return t_inj(pattern_by_name(rest), std::get<Multigraph>(g));
    return t_inj(pattern_by_name(rest), to_multigraph(std::get<Graph>(g)));
  }
  if (head == "dcut")
    return cut_distance_graph_kernel(as_simple(g, scratch), parse_kernel_name(rest), grid, seed)
        .distance_estimate;
  if (head == "dyadic")
    return cut_distance_graph_kernel(as_simple(g, scratch), parse_kernel_name(rest), grid, seed)
        .dyadic_lower_bound;
  throw param_error("converge: unknown statistic '" + stat + "'");
}

int cmd_converge(const std::string& model, const std::string& sizes_text, int reps,
                 const std::string& stats_text, int grid, std::string out_file,
                 const CommonOpts& o, std::ostream& out) {
  const ModelSpec ms = parse_model(model);
  std::vector<int> sizes;
  {
    std::istringstream ss(sizes_text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      sizes.push_back(std::stoi(tok));
    }
  }
  if (sizes.empty()) throw param_error("converge: --sizes must list at least one n");
  if (!std::is_sorted(sizes.begin(), sizes.end()))
    throw param_error("converge: --sizes must be ascending");
  if (reps < 0) throw param_error("converge: --reps must be >= 0");
  std::vector<std::string> stats;
  {
    std::istringstream ss(stats_text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      stats.push_back(tok);
    }
  }
  if (stats.empty()) throw param_error("converge: --stats must list at least one statistic");

  struct Row {
    std::string stat;
    int n;
    int rep;  // -1 mean, -2 stderr
    double value;
  };
  std::vector<Row> rows;
  for (int n : sizes) {
    for (const std::string& stat : stats) {
      double sum = 0.0, sumsq = 0.0;
      for (int r = 0; r < reps; ++r) {
        // replication r uses stream r so runs are order-insensitive
        const Seed rep_seed{o.seed, static_cast<std::uint64_t>(r)};
        const AnyGraph g = generate_model(ms, n, std::nullopt, rep_seed);
        const double v = eval_statistic(stat, g, grid, rep_seed.sub(0xD157));
        rows.push_back({stat, n, r, v});
        sum += v;
        sumsq += v * v;
      }
      if (reps > 0) {
        const double mean = sum / reps;
        const double var = reps > 1 ? std::max(0.0, (sumsq - reps * mean * mean) / (reps - 1)) : 0.0;
        rows.push_back({stat, n, -1, mean});
        rows.push_back({stat, n, -2, std::sqrt(var / reps)});
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.stat != b.stat) return a.stat < b.stat;
    if (a.n != b.n) return a.n < b.n;
    const int ra = a.rep < 0 ? std::numeric_limits<int>::max() + a.rep : a.rep;
    const int rb = b.rep < 0 ? std::numeric_limits<int>::max() + b.rep : b.rep;
    return ra < rb;
  });

  if (out_file.empty()) out_file = (default_dir() / (sanitize(model) + "_converge.csv")).string();
  std::ofstream csv(out_file);
  if (!csv) throw io_error("cannot open for writing: " + out_file);
  csv << "model,n,rep,statistic,value\n";
  for (const Row& r : rows) {
    csv << model << ',' << r.n << ',';
    if (r.rep == -1)
      csv << "mean";
    else if (r.rep == -2)
      csv << "stderr";
    else
      csv << r.rep;
    csv << ',' << r.stat << ',' << fmt12(r.value) << '\n';
  }
  if (!csv) throw io_error("write failed: " + out_file);
  csv.close();

  if (o.as_json) {
    json j{{"command", "converge"}, {"model", model}, {"out", out_file},
           {"rows", rows.size()},   {"reps", reps},   {"sizes", sizes},
           {"stats", stats}};
    out << j.dump() << '\n';
  } else {
    out << "wrote " << out_file << " (" << rows.size() << " rows)\n";
  }
  return 0;
}

int cmd_render(const std::string& input, int res, const std::string& ordering_name,
               int bits, std::string out_file, const CommonOpts& o, std::ostream& out) {
  RasterSpec spec;
  spec.resolution = res;
  if (ordering_name == "birth")
    spec.ordering = NodeOrdering::birth;
  else if (ordering_name == "degree")
    spec.ordering = NodeOrdering::degree;
  else
    throw param_error("render: ordering must be birth or degree");

  Image img;
  std::string stem = "render";
  if (input.rfind("kernel:", 0) == 0) {
    img = render_kernel(parse_kernel_name(input.substr(7)), spec, bits);
    stem = sanitize(input.substr(7));
  } else {
    const std::string file = input.rfind("graph:", 0) == 0 ? input.substr(6) : input;
    const AnyGraph g = read_any_graph(file);
    if (std::holds_alternative<Graph>(g))
      img = render_graph(std::get<Graph>(g), spec);
    else
      img = render_multigraph(std::get<Multigraph>(g), spec);
    stem = std::filesystem::path(file).stem().string();
  }
  if (out_file.empty()) out_file = (default_dir() / (stem + ".pgm")).string();
  write_pgm(img, out_file);
  if (o.as_json) {
    json j{{"command", "render"}, {"input", input},          {"out", out_file},
           {"resolution", res},   {"ordering", ordering_name}};
    out << j.dump() << '\n';
  } else {
    out << "wrote " << out_file << " (" << res << "x" << res << ")\n";
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"graphlim: randomly grown dense graphs, their limit graphons, "
               "homomorphism densities, and cut/edit distances"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "grow a random graph and write its edge list");
  std::string gen_model;
  int gen_n = 0;
  std::optional<double> gen_param;
  std::string gen_out;
  CommonOpts gen_common;
  gen->add_option("model", gen_model,
                  "uniform|ranked|prefix|pag|spag|wrandom:<kernel>|prescribed:<kernel>|"
                  "homogeneous:<c>")
      ->required();
  gen->add_option("n", gen_n, "number of nodes")->required();
  gen->add_option("param", gen_param, "m for pag, c for spag");
  gen->add_option("--out", gen_out, "output edge-list path");
  add_common(gen, gen_common);

  // density
  auto* den = app.add_subcommand("density", "homomorphism density of a pattern");
  std::string den_pattern, den_target, den_method;
  double den_samples = 1e6;
  int den_grid = 128;
  CommonOpts den_common;
  den->add_option("pattern", den_pattern, "named pattern (K3, P3, C4, ...) or 'k; i j; ...'")
      ->required();
  den->add_option("target", den_target, "graph:<file> or kernel:<name>")->required();
  den->add_option("--method", den_method, "mc|quad (kernel targets; default mc)");
  den->add_option("--samples", den_samples, "Monte Carlo sample count (default 1e6)");
  den->add_option("--grid", den_grid, "quadrature cells per axis (default 128)");
  add_common(den, den_common);

  // distance
  auto* dis = app.add_subcommand("distance", "cut or edit distance between graphs/kernels");
  std::string dis_kind, dis_a, dis_b, dis_mode = "heuristic";
  int dis_grid = 512;
  CommonOpts dis_common;
  dis->add_option("kind", dis_kind, "cut|edit")->required();
  dis->add_option("a", dis_a, "graph:<file> (or bare path)")->required();
  dis->add_option("b", dis_b, "graph:<file> or kernel:<name>")->required();
  dis->add_option("--mode", dis_mode, "exact|heuristic (default heuristic)");
  dis->add_option("--grid", dis_grid, "kernel discretization resolution (default 512)");
  add_common(dis, dis_common);

  // converge
  auto* con = app.add_subcommand("converge", "statistics across sizes and replications, to CSV");
  std::string con_model, con_sizes, con_stats, con_out;
  int con_reps = 10, con_grid = 512;
  CommonOpts con_common;
  con->add_option("model", con_model, "model tag; pag:<c>/spag:<c> derive m = c n^2/2")
      ->required();
  con->add_option("--sizes", con_sizes, "ascending comma list of n")->required();
  con->add_option("--reps", con_reps, "replications per size (default 10)");
  con->add_option("--stats", con_stats,
                  "comma list: edges|triangles|t:<pattern>|tinj:<pattern>|dcut:<kernel>|"
                  "dyadic:<kernel>")
      ->required();
  con->add_option("--grid", con_grid, "discretization grid for dcut/dyadic (default 512)");
  con->add_option("--out", con_out, "output CSV path");
  add_common(con, con_common);

  // render
  auto* ren = app.add_subcommand("render", "pixel picture of a graph or kernel");
  std::string ren_input, ren_ordering = "birth", ren_out;
  int ren_res = 256, ren_bits = 16;
  CommonOpts ren_common;
  ren->add_option("input", ren_input, "graph:<file> or kernel:<name>")->required();
  ren->add_option("--res", ren_res, "pixels per side (default 256)");
  ren->add_option("--ordering", ren_ordering, "birth|degree (default birth)");
  ren->add_option("--bits", ren_bits, "bit budget for flattening dim-2 kernels (default 16)");
  ren->add_option("--out", ren_out, "output PGM path");
  add_common(ren, ren_common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_generate(gen_model, gen_n, gen_param, gen_out, gen_common, out);
    if (den->parsed())
      return cmd_density(den_pattern, den_target, den_method, den_samples, den_grid,
                         den_common, out);
    if (dis->parsed())
      return cmd_distance(dis_kind, dis_a, dis_b, dis_mode, dis_grid, dis_common, out);
    if (con->parsed())
      return cmd_converge(con_model, con_sizes, con_reps, con_stats, con_grid, con_out,
                          con_common, out);
    if (ren->parsed())
      return cmd_render(ren_input, ren_res, ren_ordering, ren_bits, ren_out, ren_common, out);
    err << "error: no command given\n";
    return 2;
  } catch (const size_error& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const io_error& e) {
    err << "error: " << e.what() << '\n';
    return 4;
  } catch (const param_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace graphlim::cli
