#pragma once

#include "tetroc/interlock.hpp"

#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace tetroc {

/// Closed half-space normal·x <= offset; `normal` points outward.
struct Plane {
  Vector3q normal;
  Rational offset;
};

/// Bounded convex polyhedron with exact vertices. faces[k] lists vertex
/// indices counter-clockwise seen from outside and lies on planes[k].
struct ConvexPiece {
  std::vector<Vector3q> vertices;
  std::vector<std::vector<std::size_t>> faces;
  std::vector<Plane> planes;

  std::size_t num_edges() const;
};

/// Intersection of the half-spaces; nullopt when it has no interior.
std::optional<ConvexPiece> make_convex_piece(const std::vector<Plane>& planes);
ConvexPiece cell_piece(const CellKey& c);
/// p ∩ {x : h.normal·x <= h.offset}; nullopt when no interior is left.
std::optional<ConvexPiece> clip(const ConvexPiece& p, const Plane& h);

Rational volume(const ConvexPiece& p);
Vector3q centroid(const ConvexPiece& p);
bool contains(const ConvexPiece& p, const Vector3q& q);

/// Block truncated by the slab a <= x <= c, kept as its clipped cells.
struct PolyBlock {
  Block source;
  Rational a, c;
  std::vector<ConvexPiece> pieces;
};

/// Clips every cell of b to a <= x <= c. Requires 0 <= a < c <= 2; throws
/// TruncationError when no cell keeps a positive volume.
PolyBlock truncate_slab(const Block& b, const Rational& a = Rational(1, 2), const Rational& c = Rational(3, 2));

Rational volume(const PolyBlock& b);
Vector3q centroid(const PolyBlock& b);
/// Outer boundary: piece faces shared by two pieces cancel; the rest are fanned into triangles.
TriangleMesh<Rational> boundary_surface(const PolyBlock& b);

struct ClippedContact {
  std::size_t i = 0, j = 0;
  std::vector<Vector3q> polygon;
  Vector3q normal;  ///< from i into j
};

struct TruncatedAssembly {
  Rational a, c;
  std::vector<PolyBlock> blocks;  ///< one per placement, source = placed cells
  std::vector<ClippedContact> contacts;
  ContactModel model;  ///< interlock data on the clipped geometry
};

/// Convex polygon clipped to a <= x <= c; empty if nothing of positive area remains.
std::vector<Vector3q> clip_polygon(const std::vector<Vector3q>& poly, const Rational& a, const Rational& c);

/// Truncates every placement. Point contacts survive only strictly inside the
/// slab, where the local geometry is untouched. Throws TruncationError if a block vanishes.
TruncatedAssembly truncate_assembly(const AssemblyModel& asm_model, const Rational& a = Rational(1, 2),
                                    const Rational& c = Rational(3, 2));

using ContactPairs = std::set<std::pair<std::size_t, std::size_t>>;
ContactPairs contact_pairs(const AssemblyModel& a);
ContactPairs contact_pairs(const TruncatedAssembly& t);

/// Exact test for two triangles crossing: each is strictly split by the
/// other's plane and the two cuts overlap in their relative interiors.
/// Touching along shared faces, edges or vertices is not a crossing.
bool triangles_cross(const std::array<Vector3q, 3>& s, const std::array<Vector3q, 3>& t);

struct DeformationReport {
  bool assembly_valid = true;
  std::vector<std::pair<std::size_t, std::size_t>> intersecting_pairs;
  std::vector<std::size_t> self_intersecting;
};

/// Image of `point` on mesh `block`.
using VertexMap = std::function<Vector3q(std::size_t block, const Vector3q& point)>;

/// Maps every vertex, then looks for crossing triangles between and within
/// meshes. Throws MeshError if an input mesh is not closed.
DeformationReport deform_and_validate(const std::vector<TriangleMesh<Rational>>& meshes, const VertexMap& map);

/// Per-placement boundary meshes of a lattice assembly.
std::vector<TriangleMesh<Rational>> placement_meshes(const AssemblyModel& a);

}  // namespace tetroc
