#pragma once

#include "tetroc/approx.hpp"
#include "tetroc/assembly.hpp"
#include "tetroc/interlock.hpp"
#include "tetroc/modify.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tetroc {

using FloatTriangle = std::array<Vector3d, 3>;

// STL

/// Binary when the size equals 84 + 50·count; ASCII when the text starts with
/// "solid". Throws IoError (malformed_header, count_mismatch, truncated,
/// malformed_ascii) on bad input and MeshError via make_input_mesh.
InputMesh parse_stl(std::string_view bytes);
InputMesh read_stl(const std::filesystem::path& path);

std::string stl_binary(const std::vector<FloatTriangle>& triangles);
std::string stl_ascii(const std::vector<FloatTriangle>& triangles, const std::string& name = "tetroc");
void write_stl(const std::filesystem::path& path, const std::vector<FloatTriangle>& triangles, bool binary = true);

template <typename Scalar>
std::vector<FloatTriangle> float_triangles(const TriangleMesh<Scalar>& mesh) {
  std::vector<FloatTriangle> out;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    FloatTriangle f;
    for (int v = 0; v < 3; ++v)
      for (int k = 0; k < 3; ++k) f[v][k] = static_cast<double>(mesh.vertices[mesh.triangles[t][v]][k]);
    out.push_back(f);
  }
  return out;
}

template <>
std::vector<FloatTriangle> float_triangles(const TriangleMesh<Rational>& mesh);

// OBJ

struct ObjGroup {
  std::string name;
  std::vector<FloatTriangle> triangles;
};

/// Indexed OBJ: equal vertices are written once and shared across groups.
std::string obj_text(const std::vector<ObjGroup>& groups);
void write_obj(const std::filesystem::path& path, const std::vector<ObjGroup>& groups);

/// Placed block surfaces in the groups "frame" and "free".
std::vector<ObjGroup> assembly_groups(const AssemblyModel& a);
std::vector<ObjGroup> assembly_groups(const TruncatedAssembly& t, const AssemblyModel& a);

/// Writes `.stl` (binary) or `.obj` by extension; throws IoError otherwise.
void write_mesh(const std::filesystem::path& path, const std::vector<ObjGroup>& groups);

// Assembly documents

struct BlockSpec {
  std::string name;
  /// kitten, ufo, cushion, shuriken, tetra, octa, or custom (explicit cells).
  std::string family;
  std::vector<int> params;
  std::vector<CellKey> cells;  ///< custom blocks only
};

struct PlacementSpec {
  std::string block;
  Matrix3i rotation = Matrix3i::Identity();
  Vector3i translation = Vector3i::Zero();
  bool frame = false;
};

struct AssemblyDocument {
  int format_version = 1;
  std::vector<BlockSpec> blocks;
  std::vector<PlacementSpec> placements;
  std::optional<GridLayout> layout;
  std::optional<std::pair<Rational, Rational>> slab;  ///< set for truncated assemblies
};

inline constexpr int kFormatVersion = 1;

/// Family blocks are written by parameters when they regenerate exactly,
/// otherwise as explicit cell lists.
AssemblyDocument to_document(const AssemblyModel& a);
Block build_block(const BlockSpec& spec);
/// Full validation; throws IoError for schema, parity and rotation problems
/// and OverlapError for placements sharing a cell.
AssemblyModel to_model(const AssemblyDocument& doc);

/// Canonical JSON text (sorted keys, two-space indent, trailing newline).
std::string assembly_json(const AssemblyDocument& doc);
AssemblyDocument parse_assembly(std::string_view json);
AssemblyDocument read_assembly(const std::filesystem::path& path);
void write_assembly(const std::filesystem::path& path, const AssemblyDocument& doc);

// Reports

struct ReportContext {
  std::string input;
  InterlockOptions options;
  std::optional<std::pair<Rational, Rational>> slab;
};

/// Verdict, statistics and provenance as canonical JSON; rationals as "p/q".
std::string report_json(const AssemblyModel& a, const InterlockVerdict& v, const ReportContext& ctx);

std::string stats_json(const Block& b);
std::string cells_json(const CellSet& cells);

/// Assembly graph in DOT; frame blocks are drawn as boxes.
std::string graph_dot(const AssemblyModel& a);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view data);

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace tetroc
