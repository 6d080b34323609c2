#pragma once

#include "tetroc/lattice.hpp"
#include "tetroc/mesh.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tetroc {

using CellSet = std::set<CellKey>;

struct Block {
  std::string name;
  std::vector<int> params;
  CellSet cells;

  std::size_t num_tetrahedra() const;
  std::size_t num_octahedra() const;
};

enum class Family { kitten, ufo, cushion, shuriken };
enum class Platonic { tetra, octa };

/// Named families. `params` is empty for kitten and ufo, {n} for cushion, {m, n} for shuriken.
Block make_block(Family family, const std::vector<int>& params = {});
Block make_kitten();
Block make_ufo();
Block make_cushion(int n);
Block make_shuriken(int m, int n);

/// Cells inside the k-fold scaled tetrahedron conv{0, k v1, k v2, k v3} or octahedron k·O.
Block make_scaled(Platonic solid, int k);

/// Block from an explicit cell list; throws BlockError if validation fails.
Block make_custom_block(const std::string& name, const std::vector<CellKey>& cells);

/// Cell set translated/rotated by g.
CellSet transform(const CellSet& cells, const HoneycombIsometry& g);

/// Faces that belong to exactly one cell, oriented outward.
std::vector<Triangle> boundary_triangles(const CellSet& cells);
TriangleMesh<std::int64_t> boundary_surface(const CellSet& cells);
inline TriangleMesh<std::int64_t> boundary_surface(const Block& b) { return boundary_surface(b.cells); }

Rational volume(const CellSet& cells);
inline Rational volume(const Block& b) { return volume(b.cells); }
/// Volume-weighted centroid of the cells.
Vector3q centroid(const CellSet& cells);

/// All (R, t) with R·cells + t = cells.
std::vector<HoneycombIsometry> symmetry_group(const CellSet& cells);
inline std::vector<HoneycombIsometry> symmetry_group(const Block& b) { return symmetry_group(b.cells); }

/// Some isometry mapping `from` onto `to`, if one exists.
std::optional<HoneycombIsometry> find_isometry(const CellSet& from, const CellSet& to);

struct BlockValidation {
  enum class Status { ok, empty, duplicate_cell, disconnected };
  Status status = Status::ok;
  std::string message;
  bool ok() const { return status == Status::ok; }
};

/// Distinct cells and a connected face-adjacency graph. Honeycomb cells meet
/// face-to-face by construction, so no further intersection rule is checked.
BlockValidation validate_block(const std::vector<CellKey>& cells);

/// Number of face-connected components.
std::size_t face_components(const CellSet& cells);

/// Integer box [lo, hi]^3 of cell keys.
struct CellBox {
  Vector3i lo;
  Vector3i hi;
};

/// True iff translates of b by integer combinations of `basis` cover every cell
/// keyed inside `region` exactly once.
bool tiles(const Block& b, const std::array<LatticeVector, 3>& basis, const CellBox& region);

}  // namespace tetroc
