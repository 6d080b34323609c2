#include "tetroc/io.hpp"

#include "tetroc/errors.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace tetroc {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(IoError::Kind::open_failed, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(IoError::Kind::open_failed, "cannot write " + path.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError(IoError::Kind::open_failed, "write failed for " + path.string());
}

// STL

namespace {

std::uint32_t get_u32(const char* p) {
  std::uint32_t v;
  std::memcpy(&v, p, 4);
  return v;
}

float get_f32(const char* p) {
  float v;
  std::memcpy(&v, p, 4);
  return v;
}

void put_u32(std::string& s, std::uint32_t v) { s.append(reinterpret_cast<const char*>(&v), 4); }
void put_f32(std::string& s, float v) { s.append(reinterpret_cast<const char*>(&v), 4); }

bool looks_ascii(std::string_view bytes) {
  std::size_t k = 0;
  while (k < bytes.size() && std::isspace(static_cast<unsigned char>(bytes[k]))) ++k;
  return bytes.substr(k, 5) == "solid";
}

InputMesh parse_binary(std::string_view bytes) {
  const std::uint32_t count = get_u32(bytes.data() + 80);
  std::vector<FloatTriangle> tris;
  tris.reserve(count);
  for (std::uint32_t t = 0; t < count; ++t) {
    const char* rec = bytes.data() + 84 + 50 * static_cast<std::size_t>(t);
    FloatTriangle f;
    for (int v = 0; v < 3; ++v)
      for (int k = 0; k < 3; ++k) f[v][k] = get_f32(rec + 12 + 12 * v + 4 * k);
    tris.push_back(f);
  }
  return make_input_mesh(tris);
}

class AsciiReader {
 public:
  explicit AsciiReader(std::string_view text) : text_(text) {}

  InputMesh parse() {
    expect("solid");
    skip_line();  // the solid name may contain spaces
    std::vector<FloatTriangle> tris;
    for (;;) {
      const auto tok = next();
      if (tok == "endsolid") break;
      if (tok != "facet") fail("expected 'facet' or 'endsolid', found '" + std::string(tok) + "'");
      expect("normal");
      for (int k = 0; k < 3; ++k) number();
      expect("outer");
      expect("loop");
      FloatTriangle f;
      for (int v = 0; v < 3; ++v) {
        expect("vertex");
        for (int k = 0; k < 3; ++k) f[v][k] = number();
      }
      expect("endloop");
      expect("endfacet");
      tris.push_back(f);
    }
    if (tris.empty()) throw MeshError("STL has no triangles");
    return make_input_mesh(tris);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;

  [[noreturn]] void fail(const std::string& what) const {
    throw IoError(IoError::Kind::malformed_ascii, "ASCII STL line " + std::to_string(line_) + ": " + what);
  }

  std::string_view next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
    if (pos_ == text_.size())
      throw IoError(IoError::Kind::truncated, "ASCII STL ends before 'endsolid' (line " + std::to_string(line_) + ")");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  void skip_line() {
    while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
  }

  void expect(std::string_view word) {
    const auto tok = next();
    if (tok != word) fail("expected '" + std::string(word) + "', found '" + std::string(tok) + "'");
  }

  double number() {
    const auto tok = next();
    double v = 0;
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || end != tok.data() + tok.size()) fail("not a number: '" + std::string(tok) + "'");
    return v;
  }
};

}  // namespace

InputMesh parse_stl(std::string_view bytes) {
  if (bytes.size() >= 84) {
    const std::uint64_t count = get_u32(bytes.data() + 80);
    if (84 + 50 * count == bytes.size()) return parse_binary(bytes);
  }
  if (looks_ascii(bytes)) return AsciiReader(bytes).parse();
  if (bytes.size() < 84)
    throw IoError(IoError::Kind::malformed_header,
                  "binary STL needs an 84-byte header, file has " + std::to_string(bytes.size()) + " bytes");
  const std::uint64_t count = get_u32(bytes.data() + 80);
  throw IoError(IoError::Kind::count_mismatch, "binary STL declares " + std::to_string(count) + " triangles (" +
                                                   std::to_string(84 + 50 * count) + " bytes) but has " +
                                                   std::to_string(bytes.size()) + " bytes");
}

InputMesh read_stl(const std::filesystem::path& path) { return parse_stl(read_file(path)); }

std::string stl_binary(const std::vector<FloatTriangle>& triangles) {
  std::string s(80, '\0');
  const char header[] = "tetroc binary STL";
  std::memcpy(s.data(), header, sizeof header - 1);
  put_u32(s, static_cast<std::uint32_t>(triangles.size()));
  for (const auto& t : triangles) {
    const Vector3d n = (t[1] - t[0]).cross(t[2] - t[0]).normalized();
    for (int k = 0; k < 3; ++k) put_f32(s, static_cast<float>(n[k]));
    for (const auto& v : t)
      for (int k = 0; k < 3; ++k) put_f32(s, static_cast<float>(v[k]));
    s.append(2, '\0');
  }
  return s;
}

std::string stl_ascii(const std::vector<FloatTriangle>& triangles, const std::string& name) {
  std::string s = "solid " + name + "\n";
  char buf[160];
  for (const auto& t : triangles) {
    const Vector3d n = (t[1] - t[0]).cross(t[2] - t[0]).normalized();
    std::snprintf(buf, sizeof buf, "  facet normal %.9g %.9g %.9g\n    outer loop\n", n[0], n[1], n[2]);
    s += buf;
    for (const auto& v : t) {
      std::snprintf(buf, sizeof buf, "      vertex %.17g %.17g %.17g\n", v[0], v[1], v[2]);
      s += buf;
    }
    s += "    endloop\n  endfacet\n";
  }
  return s + "endsolid " + name + "\n";
}

void write_stl(const std::filesystem::path& path, const std::vector<FloatTriangle>& triangles, bool binary) {
  write_file(path, binary ? stl_binary(triangles) : stl_ascii(triangles));
}

template <>
std::vector<FloatTriangle> float_triangles(const TriangleMesh<Rational>& mesh) {
  std::vector<FloatTriangle> out;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    FloatTriangle f;
    for (int v = 0; v < 3; ++v)
      for (int k = 0; k < 3; ++k) f[v][k] = to_double(mesh.vertices[mesh.triangles[t][v]][k]);
    out.push_back(f);
  }
  return out;
}

// OBJ

std::string obj_text(const std::vector<ObjGroup>& groups) {
  std::map<std::array<double, 3>, int> index;
  std::string verts, faces;
  char buf[128];
  for (const auto& g : groups) {
    if (g.triangles.empty()) continue;
    faces += "g " + g.name + "\n";
    for (const auto& t : g.triangles) {
      int id[3];
      for (int v = 0; v < 3; ++v) {
        const std::array<double, 3> key{t[v][0], t[v][1], t[v][2]};
        auto [it, fresh] = index.emplace(key, static_cast<int>(index.size()) + 1);
        if (fresh) {
          std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", key[0], key[1], key[2]);
          verts += buf;
        }
        id[v] = it->second;
      }
      std::snprintf(buf, sizeof buf, "f %d %d %d\n", id[0], id[1], id[2]);
      faces += buf;
    }
  }
  return "# tetroc\n" + verts + faces;
}

void write_obj(const std::filesystem::path& path, const std::vector<ObjGroup>& groups) {
  write_file(path, obj_text(groups));
}

std::vector<ObjGroup> assembly_groups(const AssemblyModel& a) {
  std::vector<ObjGroup> groups{{"frame", {}}, {"free", {}}};
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto tris = float_triangles(boundary_surface(a.cells(i)));
    auto& g = groups[a.is_frame(i) ? 0 : 1].triangles;
    g.insert(g.end(), tris.begin(), tris.end());
  }
  return groups;
}

std::vector<ObjGroup> assembly_groups(const TruncatedAssembly& t, const AssemblyModel& a) {
  std::vector<ObjGroup> groups{{"frame", {}}, {"free", {}}};
  for (std::size_t i = 0; i < t.blocks.size(); ++i) {
    auto tris = float_triangles(boundary_surface(t.blocks[i]));
    auto& g = groups[a.is_frame(i) ? 0 : 1].triangles;
    g.insert(g.end(), tris.begin(), tris.end());
  }
  return groups;
}

void write_mesh(const std::filesystem::path& path, const std::vector<ObjGroup>& groups) {
  const auto ext = path.extension().string();
  if (ext == ".obj") return write_obj(path, groups);
  if (ext == ".stl") {
    std::vector<FloatTriangle> all;
    for (const auto& g : groups) all.insert(all.end(), g.triangles.begin(), g.triangles.end());
    return write_stl(path, all);
  }
  throw IoError(IoError::Kind::schema, "mesh output must end in .obj or .stl: " + path.string());
}

// Assembly documents

namespace {

[[noreturn]] void schema(const std::string& what) { throw IoError(IoError::Kind::schema, what); }

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) schema(where + " must be an object");
  auto it = j.find(key);
  if (it == j.end()) schema(where + " is missing \"" + key + "\"");
  return *it;
}

std::int64_t integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) schema(where + " must be an integer");
  return j.get<std::int64_t>();
}

std::vector<std::int64_t> integers(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || (n && j.size() != n)) schema(where + " must be an array of " + std::to_string(n) + " integers");
  std::vector<std::int64_t> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(integer(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) schema(where + " must be a string");
  return j.get<std::string>();
}

Rational rational(const json& j, const std::string& where) {
  try {
    return parse_rational(text(j, where));
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    schema(where + ": " + e.what());
  }
}

json cell_json(const CellKey& c) { return json::array({c.is_tet() ? "tet" : "oct", c.key[0], c.key[1], c.key[2]}); }

CellKey parse_cell(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4) schema(where + " must be [kind, x, y, z]");
  const auto kind = text(j[0], where + "[0]");
  const Vector3i key(integer(j[1], where), integer(j[2], where), integer(j[3], where));
  try {
    if (kind == "tet") return CellKey::tet(key);
    if (kind == "oct") return CellKey::oct(key);
  } catch (const LatticeError& e) {
    schema(where + ": " + e.what());
  }
  schema(where + ": cell kind must be \"tet\" or \"oct\"");
}

const std::map<std::string, Family>& families() {
  static const std::map<std::string, Family> m{
      {"kitten", Family::kitten}, {"ufo", Family::ufo}, {"cushion", Family::cushion}, {"shuriken", Family::shuriken}};
  return m;
}

json rationals(const Vector3q& v) { return json::array({to_string(v[0]), to_string(v[1]), to_string(v[2])}); }

}  // namespace

Block build_block(const BlockSpec& spec) {
  Block b;
  if (auto it = families().find(spec.family); it != families().end()) {
    b = make_block(it->second, spec.params);
  } else if (spec.family == "tetra" || spec.family == "octa") {
    if (spec.params.size() != 1) schema("block \"" + spec.name + "\": " + spec.family + " takes one parameter k");
    b = make_scaled(spec.family == "tetra" ? Platonic::tetra : Platonic::octa, spec.params[0]);
  } else if (spec.family == "custom") {
    b = make_custom_block(spec.name, spec.cells);
  } else {
    schema("block \"" + spec.name + "\": unknown family \"" + spec.family + "\"");
  }
  if (spec.family != "custom" && !spec.cells.empty())
    schema("block \"" + spec.name + "\": only custom blocks list cells");
  b.name = spec.name;
  return b;
}

AssemblyDocument to_document(const AssemblyModel& a) {
  AssemblyDocument doc;
  std::map<std::string, int> used;
  for (const auto& b : a.blocks()) {
    BlockSpec spec;
    std::string base = b.name.empty() ? "block" : b.name;
    for (int p : b.params) base += "-" + std::to_string(p);
    spec.name = used[base]++ ? base + "#" + std::to_string(used[base]) : base;
    spec.family = "custom";
    bool regenerates = false;
    try {
      if (auto it = families().find(b.name); it != families().end())
        regenerates = make_block(it->second, b.params).cells == b.cells;
      else if ((b.name == "tetra" || b.name == "octa") && b.params.size() == 1)
        regenerates = make_scaled(b.name == "tetra" ? Platonic::tetra : Platonic::octa, b.params[0]).cells == b.cells;
    } catch (const Error&) {
      regenerates = false;
    }
    if (regenerates) {
      spec.family = b.name;
      spec.params = b.params;
    } else {
      spec.cells.assign(b.cells.begin(), b.cells.end());
    }
    doc.blocks.push_back(std::move(spec));
  }
  for (const auto& p : a.placements())
    doc.placements.push_back({doc.blocks.at(p.block).name, p.isometry.rotation, p.isometry.translation, p.is_frame});
  doc.layout = a.layout();
  return doc;
}

AssemblyModel to_model(const AssemblyDocument& doc) {
  if (doc.format_version != kFormatVersion)
    schema("unsupported format_version " + std::to_string(doc.format_version));
  if (doc.blocks.empty()) schema("document has no blocks");
  if (doc.placements.empty()) schema("document has no placements");
  std::vector<Block> blocks;
  std::map<std::string, std::size_t> by_name;
  for (const auto& spec : doc.blocks) {
    if (!by_name.emplace(spec.name, blocks.size()).second) schema("duplicate block name \"" + spec.name + "\"");
    blocks.push_back(build_block(spec));
  }
  std::vector<Placement> placements;
  for (std::size_t k = 0; k < doc.placements.size(); ++k) {
    const auto& p = doc.placements[k];
    const std::string where = "placement " + std::to_string(k);
    auto it = by_name.find(p.block);
    if (it == by_name.end()) schema(where + ": unknown block \"" + p.block + "\"");
    if (!is_signed_permutation(p.rotation))
      throw IoError(IoError::Kind::rotation, where + ": rotation is not a signed permutation matrix");
    if (!is_lattice_point(p.translation))
      throw IoError(IoError::Kind::parity, where + ": translation has an odd coordinate sum");
    placements.push_back({it->second, HoneycombIsometry(p.rotation, p.translation), p.frame});
  }
  if (doc.layout && doc.layout->coords.size() != placements.size())
    schema("grid layout lists " + std::to_string(doc.layout->coords.size()) + " coordinates for " +
           std::to_string(placements.size()) + " placements");
  return AssemblyModel(std::move(blocks), std::move(placements), doc.layout);
}

std::string assembly_json(const AssemblyDocument& doc) {
  json j;
  j["format_version"] = doc.format_version;
  j["blocks"] = json::array();
  for (const auto& b : doc.blocks) {
    json jb{{"name", b.name}, {"family", b.family}, {"params", b.params}};
    if (b.family == "custom") {
      jb["cells"] = json::array();
      for (const auto& c : b.cells) jb["cells"].push_back(cell_json(c));
    }
    j["blocks"].push_back(jb);
  }
  j["placements"] = json::array();
  for (const auto& p : doc.placements) {
    json rot = json::array();
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) rot.push_back(p.rotation(r, c));
    j["placements"].push_back({{"block", p.block},
                               {"rotation", rot},
                               {"translation", {p.translation[0], p.translation[1], p.translation[2]}},
                               {"frame", p.frame}});
  }
  if (doc.layout) {
    json coords = json::array();
    for (const auto& [r, c] : doc.layout->coords) coords.push_back({r, c});
    j["grid"] = {{"rows", doc.layout->rows}, {"cols", doc.layout->cols}, {"coords", coords}};
  }
  if (doc.slab) j["slab"] = {to_string(doc.slab->first), to_string(doc.slab->second)};
  return j.dump(2) + "\n";
}

AssemblyDocument parse_assembly(std::string_view text_in) {
  json j;
  try {
    j = json::parse(text_in);
  } catch (const json::parse_error& e) {
    schema(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) schema("assembly document must be a JSON object");
  static const std::set<std::string> known{"format_version", "blocks", "placements", "grid", "slab"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) schema("unknown field \"" + key + "\"");

  AssemblyDocument doc;
  doc.format_version = static_cast<int>(integer(field(j, "format_version", "document"), "format_version"));
  if (doc.format_version != kFormatVersion) schema("unsupported format_version " + std::to_string(doc.format_version));
  const auto& blocks = field(j, "blocks", "document");
  if (!blocks.is_array()) schema("\"blocks\" must be an array");
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const std::string where = "blocks[" + std::to_string(k) + "]";
    const auto& jb = blocks[k];
    BlockSpec b;
    b.name = text(field(jb, "name", where), where + ".name");
    b.family = text(field(jb, "family", where), where + ".family");
    for (auto p : integers(field(jb, "params", where), 0, where + ".params")) b.params.push_back(static_cast<int>(p));
    if (auto it = jb.find("cells"); it != jb.end()) {
      if (!it->is_array()) schema(where + ".cells must be an array");
      for (std::size_t c = 0; c < it->size(); ++c)
        b.cells.push_back(parse_cell((*it)[c], where + ".cells[" + std::to_string(c) + "]"));
    }
    doc.blocks.push_back(std::move(b));
  }
  const auto& placements = field(j, "placements", "document");
  if (!placements.is_array()) schema("\"placements\" must be an array");
  for (std::size_t k = 0; k < placements.size(); ++k) {
    const std::string where = "placements[" + std::to_string(k) + "]";
    const auto& jp = placements[k];
    PlacementSpec p;
    p.block = text(field(jp, "block", where), where + ".block");
    const auto rot = integers(field(jp, "rotation", where), 9, where + ".rotation");
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) p.rotation(r, c) = rot[3 * r + c];
    const auto t = integers(field(jp, "translation", where), 3, where + ".translation");
    p.translation = Vector3i(t[0], t[1], t[2]);
    const auto& frame = field(jp, "frame", where);
    if (!frame.is_boolean()) schema(where + ".frame must be true or false");
    p.frame = frame.get<bool>();
    doc.placements.push_back(p);
  }
  if (auto it = j.find("grid"); it != j.end()) {
    GridLayout g;
    g.rows = static_cast<int>(integer(field(*it, "rows", "grid"), "grid.rows"));
    g.cols = static_cast<int>(integer(field(*it, "cols", "grid"), "grid.cols"));
    const auto& coords = field(*it, "coords", "grid");
    if (!coords.is_array()) schema("grid.coords must be an array");
    for (std::size_t k = 0; k < coords.size(); ++k) {
      const auto rc = integers(coords[k], 2, "grid.coords[" + std::to_string(k) + "]");
      g.coords.push_back({static_cast<int>(rc[0]), static_cast<int>(rc[1])});
    }
    doc.layout = std::move(g);
  }
  if (auto it = j.find("slab"); it != j.end()) {
    if (!it->is_array() || it->size() != 2) schema("slab must be [\"a\", \"c\"]");
    doc.slab = std::pair{rational((*it)[0], "slab[0]"), rational((*it)[1], "slab[1]")};
  }
  return doc;
}

AssemblyDocument read_assembly(const std::filesystem::path& path) { return parse_assembly(read_file(path)); }

void write_assembly(const std::filesystem::path& path, const AssemblyDocument& doc) {
  write_file(path, assembly_json(doc));
}

// Reports

std::string report_json(const AssemblyModel& a, const InterlockVerdict& v, const ReportContext& ctx) {
  json r;
  r["tool"] = {{"name", "tetroc"}, {"version", kToolVersion}};
  json params{{"input", ctx.input},
              {"strategy", ctx.options.strategy == Strategy::aggregate ? "aggregate" : "per_variable"},
              {"point_contacts", ctx.options.point_contacts},
              {"max_nodes", ctx.options.max_nodes}};
  if (ctx.slab) params["slab"] = {to_string(ctx.slab->first), to_string(ctx.slab->second)};
  r["parameters"] = params;

  r["interlocked"] = v.interlocked;
  json witness = json::array();
  for (const auto& m : v.witness)
    witness.push_back({{"placement", m.placement}, {"linear", rationals(m.linear)}, {"angular", rationals(m.angular)}});
  r["witness"] = witness;
  json lps = json::array();
  for (const auto& lp : v.lps) lps.push_back({{"label", lp.label}, {"optimum", to_string(lp.optimum)}, {"pivots", lp.pivots}});
  r["linear_programs"] = lps;
  r["search"] = {{"nodes", v.nodes}, {"rows", v.rows}, {"disjunctions", v.disjunctions}};

  const auto graph = assembly_graph(a);
  Rational total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) total += volume(a.cells(i));
  r["statistics"] = {{"placements", a.size()},
                     {"frame_blocks", a.frame().size()},
                     {"free_blocks", a.free_blocks().size()},
                     {"distinct_blocks", a.blocks().size()},
                     {"contact_faces", contact_faces(a).size()},
                     {"graph_edges", graph.edges.size()},
                     {"graph_connected", graph.is_connected()},
                     {"cell_volume", to_string(total)}};
  return r.dump(2) + "\n";
}

std::string stats_json(const Block& b) {
  const auto mesh = boundary_surface(b);
  const auto s = surface_stats(mesh);
  json j{{"name", b.name},
         {"params", b.params},
         {"tetrahedra", b.num_tetrahedra()},
         {"octahedra", b.num_octahedra()},
         {"volume", to_string(volume(b))},
         {"mesh_volume", to_string(enclosed_volume(mesh))},
         {"num_vertices", s.num_vertices},
         {"num_edges", s.num_edges},
         {"num_faces", s.num_faces},
         {"euler_characteristic", s.euler_characteristic},
         {"components", s.num_components},
         {"closed", s.is_closed},
         {"manifold", s.is_manifold},
         {"orientable", s.is_orientable},
         {"symmetry_order", symmetry_group(b).size()}};
  j["genus"] = s.genus ? json(*s.genus) : json(nullptr);
  try {
    j["automorphism_order"] = automorphism_group(mesh).order;
  } catch (const MeshError&) {
    j["automorphism_order"] = nullptr;  // too many vertices for the backtracking search
  }
  return j.dump(2) + "\n";
}

std::string cells_json(const CellSet& cells) {
  json list = json::array();
  std::size_t tets = 0;
  for (const auto& c : cells) {
    list.push_back(cell_json(c));
    tets += c.is_tet();
  }
  json j{{"format_version", kFormatVersion},
         {"cells", list},
         {"tetrahedra", tets},
         {"octahedra", cells.size() - tets},
         {"volume", to_string(volume(cells))}};
  return j.dump(2) + "\n";
}

std::string graph_dot(const AssemblyModel& a) {
  std::string s = "graph assembly {\n  node [shape=ellipse];\n";
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += "  " + std::to_string(i) + " [label=\"" + std::to_string(i);
    if (a.layout()) {
      const auto [r, c] = a.layout()->coords[i];
      s += " (" + std::to_string(r) + "," + std::to_string(c) + ")";
    }
    s += a.is_frame(i) ? "\", shape=box];\n" : "\"];\n";
  }
  for (const auto& [i, j] : assembly_graph(a).edges) s += "  " + std::to_string(i) + " -- " + std::to_string(j) + ";\n";
  return s + "}\n";
}

}  // namespace tetroc
