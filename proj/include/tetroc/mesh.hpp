#pragma once

#include "tetroc/types.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace tetroc {

/// Indexed triangle mesh; triangles are counter-clockwise seen from outside.
template <typename Scalar>
struct TriangleMesh {
  std::vector<Vector3<Scalar>> vertices;
  std::vector<std::array<int, 3>> triangles;

  std::size_t num_triangles() const { return triangles.size(); }
  std::array<Vector3<Scalar>, 3> corners(std::size_t t) const {
    const auto& f = triangles[t];
    return {vertices[f[0]], vertices[f[1]], vertices[f[2]]};
  }
};

struct SurfaceStats {
  std::int64_t num_vertices = 0;
  std::int64_t num_edges = 0;
  std::int64_t num_faces = 0;
  std::int64_t euler_characteristic = 0;
  std::int64_t num_components = 0;
  bool is_closed = false;      ///< no boundary edges: every edge lies in an even number of triangles
  bool is_manifold = false;    ///< closed and every vertex link is one cycle
  bool is_orientable = false;  ///< every edge is traversed once in each direction
  std::optional<std::int64_t> genus;  ///< total genus; manifold orientable surfaces only
};

/// Connectivity statistics; only the triangle index structure is inspected.
template <typename Scalar>
SurfaceStats surface_stats(const TriangleMesh<Scalar>& mesh);

/// Divergence-theorem volume Σ det(a, b, c) / 6 of a closed, outward-oriented mesh.
template <typename Scalar>
Rational enclosed_volume(const TriangleMesh<Scalar>& mesh) {
  Rational six_v = 0;
  for (const auto& f : mesh.triangles) {
    const Vector3q a = to_rational(mesh.vertices[f[0]]);
    const Vector3q b = to_rational(mesh.vertices[f[1]]);
    const Vector3q c = to_rational(mesh.vertices[f[2]]);
    six_v += a.dot(b.cross(c));
  }
  return six_v / 6;
}

struct AutomorphismGroup {
  std::uint64_t order = 0;
  /// Vertex permutations (image of vertex i at position i) generating the group.
  std::vector<std::vector<int>> generators;
};

/// Vertex bijections preserving the edge and face sets, by backtracking.
/// Throws MeshError for meshes with more than `max_vertices` vertices.
template <typename Scalar>
AutomorphismGroup automorphism_group(const TriangleMesh<Scalar>& mesh, std::size_t max_vertices = 64);

/// Combined incidence structure form, shared by both scalar instantiations.
AutomorphismGroup automorphism_group(std::size_t num_vertices, const std::vector<std::array<int, 3>>& triangles,
                                     std::size_t max_vertices = 64);

SurfaceStats surface_stats(std::size_t num_vertices, const std::vector<std::array<int, 3>>& triangles);

template <typename Scalar>
SurfaceStats surface_stats(const TriangleMesh<Scalar>& mesh) {
  return surface_stats(mesh.vertices.size(), mesh.triangles);
}

template <typename Scalar>
AutomorphismGroup automorphism_group(const TriangleMesh<Scalar>& mesh, std::size_t max_vertices) {
  return automorphism_group(mesh.vertices.size(), mesh.triangles, max_vertices);
}

}  // namespace tetroc
