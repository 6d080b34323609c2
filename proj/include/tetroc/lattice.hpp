#pragma once

#include "tetroc/types.hpp"

#include <array>
#include <compare>
#include <vector>

namespace tetroc {

using LatticePoint = Vector3i;
using LatticeVector = Vector3i;

inline bool is_lattice_point(const Vector3i& p) { return (p.sum() % 2) == 0; }

/// Throws LatticeError when `p` has an odd coordinate sum.
void require_lattice(const Vector3i& p, const char* what = "point");

const LatticeVector& v1();
const LatticeVector& v2();
const LatticeVector& v3();

struct BasisCoords {
  std::int64_t a = 0, b = 0, c = 0;
  friend bool operator==(const BasisCoords&, const BasisCoords&) = default;
};

BasisCoords to_basis(const LatticePoint& p);
LatticePoint from_basis(const BasisCoords& k);

enum class CellKind : std::uint8_t { tetrahedron = 0, octahedron = 1 };

/// One cell of the honeycomb. Tetrahedra are keyed by the min corner of their
/// unit cube, octahedra by their (odd-sum) center.
struct CellKey {
  CellKind kind = CellKind::tetrahedron;
  Vector3i key = Vector3i::Zero();

  static CellKey tet(const Vector3i& anchor);
  static CellKey oct(const Vector3i& center);
  static CellKey tet(std::int64_t x, std::int64_t y, std::int64_t z) { return tet(Vector3i(x, y, z)); }
  static CellKey oct(std::int64_t x, std::int64_t y, std::int64_t z) { return oct(Vector3i(x, y, z)); }

  bool is_tet() const { return kind == CellKind::tetrahedron; }
  bool is_oct() const { return kind == CellKind::octahedron; }

  friend bool operator==(const CellKey& a, const CellKey& b) { return a.kind == b.kind && a.key == b.key; }
  friend bool operator<(const CellKey& a, const CellKey& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return lex_less(a.key, b.key);
  }
};

/// "tet(0,0,0)" / "oct(1,1,1)".
std::string to_string(const CellKey& c);

/// Oriented triangle with integer vertices (counter-clockwise seen from outside).
using Triangle = std::array<LatticePoint, 3>;

std::vector<LatticePoint> cell_vertices(const CellKey& c);
std::vector<Triangle> cell_faces(const CellKey& c);

/// Cross product of the triangle's edges; (±1,±1,±1) for honeycomb faces.
Vector3i triangle_normal(const Triangle& t);
/// Primitive outward direction, each component ±1.
Vector3i face_direction(const Triangle& t);

/// Sorted copy of the vertices; equal for the same face seen from either side.
Triangle canonical(const Triangle& t);
bool triangle_less(const Triangle& a, const Triangle& b);

/// The other cell sharing `face`. Throws LatticeError if `face` is not a face of `c`.
CellKey cell_neighbor(const CellKey& c, const Triangle& face);

/// Volume in ambient units: 1/3 for tetrahedra, 4/3 for octahedra.
Rational cell_volume(const CellKey& c);
Vector3q cell_centroid(const CellKey& c);

/// Closed-region membership.
bool cell_contains(const CellKey& c, const Vector3q& q);

/// Every cell whose closed region contains q, sorted.
std::vector<CellKey> locate(const Vector3q& q);

enum class NamedTet { T1, T2, T3, T4 };
CellKey named_tet(NamedTet name);
CellKey named_octahedron();

/// x ↦ R x + t with R a signed permutation and t an even-sum translation.
struct HoneycombIsometry {
  Matrix3i rotation = Matrix3i::Identity();
  LatticeVector translation = LatticeVector::Zero();

  HoneycombIsometry() = default;
  HoneycombIsometry(const Matrix3i& r, const LatticeVector& t);

  static HoneycombIsometry identity() { return {}; }
  static HoneycombIsometry translate(const LatticeVector& t) { return {Matrix3i::Identity(), t}; }

  template <typename Scalar>
  Vector3<Scalar> apply(const Vector3<Scalar>& p) const {
    return rotation.cast<Scalar>() * p + translation.cast<Scalar>();
  }
  Vector3i apply_vector(const Vector3i& v) const { return rotation * v; }

  /// (this ∘ other)(x) = this(other(x)).
  HoneycombIsometry operator*(const HoneycombIsometry& other) const;
  HoneycombIsometry inverse() const;

  friend bool operator==(const HoneycombIsometry& a, const HoneycombIsometry& b) {
    return a.rotation == b.rotation && a.translation == b.translation;
  }
};

bool is_signed_permutation(const Matrix3i& m);

/// The 48 signed permutation matrices as zero-translation isometries.
const std::vector<HoneycombIsometry>& point_group();

CellKey apply_isometry(const HoneycombIsometry& g, const CellKey& c);
Triangle apply_isometry(const HoneycombIsometry& g, const Triangle& t);

}  // namespace tetroc
