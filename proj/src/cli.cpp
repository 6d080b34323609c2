#include "tetroc/cli.hpp"

#include "tetroc/errors.hpp"
#include "tetroc/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <map>
#include <ostream>

namespace tetroc {

namespace {

using nlohmann::json;

const std::map<std::string, AssemblyKind> kKinds{
    {"kitten_strip", AssemblyKind::kitten_strip},   {"kitten_plane", AssemblyKind::kitten_plane},
    {"cushion_grid", AssemblyKind::cushion_grid},   {"shuriken_grid", AssemblyKind::shuriken_grid},
    {"tetra_interlocking", AssemblyKind::tetra_interlocking}, {"octa_interlocking", AssemblyKind::octa_interlocking},
};

const std::vector<std::string> kFamilies{"kitten", "ufo", "cushion", "shuriken", "tetra", "octa"};

std::vector<std::string> keys(const std::map<std::string, AssemblyKind>& m) {
  std::vector<std::string> out;
  for (const auto& [k, v] : m) out.push_back(k);
  return out;
}

std::pair<Rational, Rational> parse_slab(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw CLI::ValidationError("--slab", "expected a,c");
  try {
    return {parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
  } catch (const Error& e) {
    throw CLI::ValidationError("--slab", e.what());
  }
}

Vector3i parse_vector(const std::string& s, const std::string& flag) {
  std::vector<std::int64_t> v;
  std::size_t start = 0;
  try {
    while (start <= s.size()) {
      const auto end = std::min(s.find(',', start), s.size());
      v.push_back(std::stoll(s.substr(start, end - start)));
      start = end + 1;
    }
  } catch (const std::exception&) {
    throw CLI::ValidationError(flag, "expected x,y,z");
  }
  if (v.size() != 3) throw CLI::ValidationError(flag, "expected x,y,z");
  return {v[0], v[1], v[2]};
}

json matrix_json(const Matrix3i& m) {
  json j = json::array();
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) j.push_back(m(r, c));
  return j;
}

json vector_json(const Vector3i& v) { return {v[0], v[1], v[2]}; }

struct Context {
  std::ostream& out;
  std::ostream& err;
};

int cmd_block(Context& io, const std::string& family, const std::vector<int>& params, const std::string& out_path,
              bool stats) {
  const Block b = build_block({family, family, params, {}});
  if (!out_path.empty()) write_mesh(out_path, {{"block", float_triangles(boundary_surface(b))}});
  if (stats)
    io.out << stats_json(b);
  else
    io.out << b.name << ": " << b.num_tetrahedra() << " tetrahedra, " << b.num_octahedra() << " octahedra, volume "
           << to_string(volume(b)) << "\n";
  return exit_ok;
}

int cmd_assembly(Context& io, const std::string& kind, const std::vector<int>& params, const std::string& frame,
                 const std::string& out_path, const std::string& mesh_path) {
  const auto model = generate_assembly(kKinds.at(kind), params, frame == "none" ? FrameMode::none : FrameMode::perimeter);
  write_assembly(out_path, to_document(model));
  if (!mesh_path.empty()) write_mesh(mesh_path, assembly_groups(model));
  io.out << kind << ": " << model.size() << " placements, " << model.frame().size() << " in the frame\n";
  return exit_ok;
}

int cmd_graph(Context& io, const std::string& in_path, const std::string& dot_path) {
  const auto model = to_model(read_assembly(in_path));
  const auto dot = graph_dot(model);
  if (dot_path.empty()) {
    io.out << dot;
  } else {
    write_file(dot_path, dot);
    const auto g = assembly_graph(model);
    io.out << g.num_nodes << " nodes, " << g.edges.size() << " edges" << (g.is_tree() ? " (tree)" : "") << "\n";
  }
  return exit_ok;
}

int cmd_check(Context& io, const std::string& in_path, const std::string& report_path, const std::string& strategy,
              bool faces_only, std::size_t max_nodes) {
  const auto doc = read_assembly(in_path);
  const auto model = to_model(doc);
  ReportContext ctx{in_path, {}, doc.slab};
  ctx.options.strategy = strategy == "per-variable" ? Strategy::per_variable : Strategy::aggregate;
  ctx.options.point_contacts = !faces_only;
  ctx.options.max_nodes = max_nodes;
  InterlockVerdict v;
  if (doc.slab) {
    const auto t = truncate_assembly(model, doc.slab->first, doc.slab->second);
    v = check_interlocking(t.model, ctx.options);
  } else {
    v = check_interlocking(model, ctx.options);
  }
  if (!report_path.empty()) write_file(report_path, report_json(model, v, ctx));
  if (v.interlocked) {
    io.out << "interlocked (" << v.rows << " constraints, " << v.nodes << " search nodes)\n";
    return exit_ok;
  }
  io.out << "not interlocked; escape motion:\n";
  for (const auto& m : v.witness)
    io.out << "  placement " << m.placement << " linear (" << to_string(m.linear[0]) << ", " << to_string(m.linear[1])
           << ", " << to_string(m.linear[2]) << ") angular (" << to_string(m.angular[0]) << ", "
           << to_string(m.angular[1]) << ", " << to_string(m.angular[2]) << ")\n";
  return exit_not_interlocked;
}

int cmd_approx(Context& io, const std::string& in_path, const std::string& scale, int samples, const std::string& mode,
               std::uint64_t seed, const std::string& out_path) {
  ApproxParams p;
  try {
    p.scale = parse_rational(scale);
  } catch (const Error& e) {
    throw CLI::ValidationError("--scale", e.what());
  }
  if (p.scale <= 0) throw CLI::ValidationError("--scale", "must be positive");
  p.samples = samples;
  p.mode = mode == "solid" ? ApproxMode::solid : ApproxMode::shell;
  p.seed = seed;
  const auto mesh = read_stl(in_path);
  if (mesh.dropped_degenerate) io.err << "warning: dropped " << mesh.dropped_degenerate << " degenerate triangles\n";
  const auto cells = approximate(mesh, p);
  const std::filesystem::path out(out_path);
  if (out.extension() == ".json")
    write_file(out, cells_json(cells));
  else
    write_mesh(out, {{"cells", float_triangles(boundary_surface(cells))}});
  io.out << cells.size() << " cells, volume " << to_string(volume(cells)) << "\n";
  if (p.mode == ApproxMode::solid)
    io.out << "note: a cell counts as inside when its vertices and centroid are; thin features between them can be missed\n";
  return exit_ok;
}

int cmd_truncate(Context& io, const std::string& in_path, const std::string& slab_text, const std::string& out_path,
                 const std::string& mesh_path) {
  const auto slab = parse_slab(slab_text);
  auto doc = read_assembly(in_path);
  if (doc.slab) throw Error("assembly is already truncated");
  const auto model = to_model(doc);
  const auto t = truncate_assembly(model, slab.first, slab.second);
  doc.slab = slab;
  write_assembly(out_path, doc);
  if (!mesh_path.empty()) write_mesh(mesh_path, assembly_groups(t, model));
  const auto before = contact_pairs(model), after = contact_pairs(t);
  json summary{{"slab", {to_string(slab.first), to_string(slab.second)}},
               {"contact_pairs_before", before.size()},
               {"contact_pairs_after", after.size()},
               {"contact_pairs_preserved", before == after}};
  json volumes = json::array();
  for (const auto& b : t.blocks) volumes.push_back(to_string(volume(b)));
  summary["volumes"] = volumes;
  io.out << summary.dump(2) << "\n";
  return exit_ok;
}

int cmd_search(Context& io, const std::string& family, const std::vector<int>& params, int bound,
               const std::string& normal, bool translations_only, std::size_t limit) {
  const Block b = build_block({family, family, params, {}});
  SearchOptions opt;
  opt.normal = parse_vector(normal, "--normal");
  opt.alternating = !translations_only;
  const auto rules = search_grid_translations(b, bound, opt);
  json list = json::array();
  for (std::size_t k = 0; k < rules.size() && k < limit; ++k) {
    const auto& r = rules[k];
    json alt = nullptr;
    if (r.alternate) alt = {{"rotation", matrix_json(r.alternate->rotation)}, {"translation", vector_json(r.alternate->translation)}};
    list.push_back({{"u", vector_json(r.u)},
                    {"w", vector_json(r.w)},
                    {"alternate", alt},
                    {"area", r.area},
                    {"grid_graph", r.grid_graph}});
  }
  io.out << json{{"block", b.name}, {"params", params}, {"bound", bound}, {"found", rules.size()}, {"rules", list}}.dump(2)
         << "\n";
  return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Blocks, assemblies and interlocking checks in the tetrahedral-octahedral honeycomb", "tetroc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string family, kind, in_path, out_path, mesh_path, dot_path, report_path, slab, frame = "perimeter";
  std::string strategy = "aggregate", scale = "1", mode = "shell", normal = "1,0,0";
  std::vector<int> params;
  bool stats = false, faces_only = false, translations_only = false;
  int samples = 2, bound = 3;
  std::uint64_t seed = 1;
  std::size_t max_nodes = 100000, limit = 10;

  auto* block = app.add_subcommand("block", "Build a block and write its surface");
  block->add_option("family", family, "Block family")->required()->check(CLI::IsMember(kFamilies));
  block->add_option("params", params, "Family parameters");
  block->add_option("--out", out_path, "Surface mesh (.obj or .stl)");
  block->add_flag("--stats", stats, "Print surface statistics as JSON");

  auto* assembly = app.add_subcommand("assembly", "Generate a grid assembly");
  assembly->add_option("kind", kind, "Assembly kind")->required()->check(CLI::IsMember(keys(kKinds)));
  assembly->add_option("params", params, "Kind parameters");
  assembly->add_option("--out", out_path, "Assembly JSON")->required();
  assembly->add_option("--mesh", mesh_path, "Mesh of all blocks (.obj or .stl)");
  assembly->add_option("--frame", frame, "Frame blocks")->check(CLI::IsMember({"perimeter", "none"}));

  auto* graph = app.add_subcommand("graph", "Write the assembly graph");
  graph->add_option("assembly", in_path, "Assembly JSON")->required();
  graph->add_option("--dot", dot_path, "DOT output (stdout when omitted)");

  auto* check = app.add_subcommand("check", "Certify interlocking or find an escape motion");
  check->add_option("assembly", in_path, "Assembly JSON")->required();
  check->add_option("--report", report_path, "Report JSON");
  check->add_option("--strategy", strategy, "LP strategy")->check(CLI::IsMember({"aggregate", "per-variable"}));
  check->add_flag("--faces-only", faces_only, "Ignore vertex and edge contacts");
  check->add_option("--max-nodes", max_nodes, "Branch-and-bound node limit")->check(CLI::PositiveNumber);

  auto* approx = app.add_subcommand("approx", "Approximate a triangle mesh by honeycomb cells");
  approx->add_option("mesh", in_path, "STL input")->required();
  approx->add_option("--scale", scale, "Positive rational scale factor");
  approx->add_option("--samples", samples, "Barycentric sampling level")->check(CLI::PositiveNumber);
  approx->add_option("--mode", mode, "shell or solid")->check(CLI::IsMember({"shell", "solid"}));
  approx->add_option("--seed", seed, "Seed for the containment rays");
  approx->add_option("--out", out_path, "Cells (.json) or their surface (.obj, .stl)")->required();

  auto* truncate = app.add_subcommand("truncate", "Cut an assembly to a slab a <= x <= c");
  truncate->add_option("assembly", in_path, "Assembly JSON")->required();
  truncate->add_option("--slab", slab, "a,c")->required();
  truncate->add_option("--out", out_path, "Truncated assembly JSON")->required();
  truncate->add_option("--mesh", mesh_path, "Mesh of the truncated blocks");

  auto* search = app.add_subcommand("search-translations", "Search grid rules for a block");
  search->add_option("family", family, "Block family")->required()->check(CLI::IsMember(kFamilies));
  search->add_option("params", params, "Family parameters");
  search->add_option("--bound", bound, "Largest translation component")->check(CLI::PositiveNumber);
  search->add_option("--normal", normal, "Slab normal x,y,z");
  search->add_flag("--translations-only", translations_only, "Skip checkerboard rules");
  search->add_option("--limit", limit, "Rules to print");

  Context io{out, err};
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (*block) return cmd_block(io, family, params, out_path, stats);
    if (*assembly) return cmd_assembly(io, kind, params, frame, out_path, mesh_path);
    if (*graph) return cmd_graph(io, in_path, dot_path);
    if (*check) return cmd_check(io, in_path, report_path, strategy, faces_only, max_nodes);
    if (*approx) return cmd_approx(io, in_path, scale, samples, mode, seed, out_path);
    if (*truncate) return cmd_truncate(io, in_path, slab, out_path, mesh_path);
    if (*search) return cmd_search(io, family, params, bound, normal, translations_only, limit);
    return exit_usage;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return exit_ok;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return exit_usage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_error;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_error;
  }
}

}  // namespace tetroc
