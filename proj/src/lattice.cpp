#include "tetroc/lattice.hpp"

#include "tetroc/errors.hpp"

#include <algorithm>
#include <numeric>

namespace tetroc {

namespace {

std::int64_t floor_int(const Rational& r) {
  Integer q = numerator(r) / denominator(r);  // truncates toward zero
  if (r < 0 && Rational(q) != r) q -= 1;
  return q.convert_to<std::int64_t>();
}

Rational l1(const Vector3q& a, const Vector3i& b) {
  Rational s = 0;
  for (int k = 0; k < 3; ++k) s += abs(a[k] - Rational(b[k]));
  return s;
}

bool is_odd(const Vector3i& p) { return (p.sum() % 2) != 0; }

}  // namespace

void require_lattice(const Vector3i& p, const char* what) {
  if (!is_lattice_point(p)) {
    throw LatticeError(std::string(what) + " (" + std::to_string(p[0]) + "," + std::to_string(p[1]) + "," +
                       std::to_string(p[2]) + ") has an odd coordinate sum");
  }
}

const LatticeVector& v1() {
  static const LatticeVector v(0, 1, 1);
  return v;
}
const LatticeVector& v2() {
  static const LatticeVector v(1, 0, 1);
  return v;
}
const LatticeVector& v3() {
  static const LatticeVector v(1, 1, 0);
  return v;
}

BasisCoords to_basis(const LatticePoint& p) {
  require_lattice(p);
  const std::int64_t s = p.sum() / 2;
  return {s - p[0], s - p[1], s - p[2]};
}

LatticePoint from_basis(const BasisCoords& k) { return {k.b + k.c, k.a + k.c, k.a + k.b}; }

CellKey CellKey::tet(const Vector3i& anchor) { return {CellKind::tetrahedron, anchor}; }

CellKey CellKey::oct(const Vector3i& center) {
  if (!is_odd(center)) {
    throw LatticeError("octahedron center (" + std::to_string(center[0]) + "," + std::to_string(center[1]) + "," +
                       std::to_string(center[2]) + ") must have an odd coordinate sum");
  }
  return {CellKind::octahedron, center};
}

std::string to_string(const CellKey& c) {
  return std::string(c.is_tet() ? "tet(" : "oct(") + std::to_string(c.key[0]) + "," + std::to_string(c.key[1]) + "," +
         std::to_string(c.key[2]) + ")";
}

std::vector<LatticePoint> cell_vertices(const CellKey& c) {
  std::vector<LatticePoint> out;
  if (c.is_tet()) {
    out.reserve(4);
    for (int m = 0; m < 8; ++m) {
      Vector3i p = c.key + Vector3i(m & 1, (m >> 1) & 1, (m >> 2) & 1);
      if (is_lattice_point(p)) out.push_back(p);
    }
  } else {
    out.reserve(6);
    for (int k = 0; k < 3; ++k) {
      for (int s : {-1, 1}) {
        Vector3i p = c.key;
        p[k] += s;
        out.push_back(p);
      }
    }
  }
  std::sort(out.begin(), out.end(), LexLess{});
  return out;
}

Vector3i triangle_normal(const Triangle& t) { return (t[1] - t[0]).cross(t[2] - t[0]); }

Vector3i face_direction(const Triangle& t) {
  Vector3i n = triangle_normal(t);
  std::int64_t g = std::gcd(std::gcd(std::abs(n[0]), std::abs(n[1])), std::abs(n[2]));
  return g == 0 ? n : Vector3i(n / g);
}

Triangle canonical(const Triangle& t) {
  Triangle s = t;
  std::sort(s.begin(), s.end(), LexLess{});
  return s;
}

bool triangle_less(const Triangle& a, const Triangle& b) {
  for (int k = 0; k < 3; ++k) {
    if (lex_less(a[k], b[k])) return true;
    if (lex_less(b[k], a[k])) return false;
  }
  return false;
}

std::vector<Triangle> cell_faces(const CellKey& c) {
  std::vector<Triangle> out;
  if (c.is_tet()) {
    const auto v = cell_vertices(c);
    for (int omit = 0; omit < 4; ++omit) {
      Triangle t;
      int n = 0;
      for (int k = 0; k < 4; ++k)
        if (k != omit) t[n++] = v[k];
      if (triangle_normal(t).dot(v[omit] - t[0]) > 0) std::swap(t[1], t[2]);
      out.push_back(t);
    }
  } else {
    for (int m = 0; m < 8; ++m) {
      Vector3i s((m & 1) ? 1 : -1, (m & 2) ? 1 : -1, (m & 4) ? 1 : -1);
      Triangle t{c.key + Vector3i(s[0], 0, 0), c.key + Vector3i(0, s[1], 0), c.key + Vector3i(0, 0, s[2])};
      if (triangle_normal(t).dot(s) < 0) std::swap(t[1], t[2]);
      out.push_back(t);
    }
  }
  return out;
}

CellKey cell_neighbor(const CellKey& c, const Triangle& face) {
  const Triangle f = canonical(face);
  for (const Triangle& t : cell_faces(c)) {
    if (canonical(t) != f) continue;
    if (c.is_tet()) {
      for (const auto& w : cell_vertices(c)) {
        if (std::find(f.begin(), f.end(), w) == f.end()) {
          return CellKey::oct(Vector3i(2 * c.key + Vector3i::Ones() - w));
        }
      }
    } else {
      Vector3i s = (f[0] + f[1] + f[2]) - 3 * c.key;  // sign pattern
      return CellKey::tet(Vector3i(c.key + (s - Vector3i::Ones()) / 2));
    }
  }
  throw LatticeError("triangle is not a face of " + to_string(c));
}

Rational cell_volume(const CellKey& c) { return c.is_tet() ? Rational(1, 3) : Rational(4, 3); }

Vector3q cell_centroid(const CellKey& c) {
  if (c.is_oct()) return to_rational(c.key);
  Vector3i s = Vector3i::Zero();
  for (const auto& v : cell_vertices(c)) s += v;
  return to_rational(s) / Rational(4);
}

bool cell_contains(const CellKey& c, const Vector3q& q) {
  if (c.is_oct()) return l1(q, c.key) <= 1;
  for (int k = 0; k < 3; ++k) {
    if (q[k] < c.key[k] || q[k] > c.key[k] + 1) return false;
  }
  for (int m = 0; m < 8; ++m) {
    Vector3i p = c.key + Vector3i(m & 1, (m >> 1) & 1, (m >> 2) & 1);
    if (is_odd(p) && l1(q, p) < 1) return false;
  }
  return true;
}

std::vector<CellKey> locate(const Vector3q& q) {
  std::array<std::vector<std::int64_t>, 3> lows;
  for (int k = 0; k < 3; ++k) {
    std::int64_t f = floor_int(q[k]);
    lows[k].push_back(f);
    if (Rational(f) == q[k]) lows[k].push_back(f - 1);
  }
  std::vector<CellKey> out;
  for (auto x : lows[0]) {
    for (auto y : lows[1]) {
      for (auto z : lows[2]) {
        const Vector3i a(x, y, z);
        CellKey t = CellKey::tet(a);
        if (cell_contains(t, q)) out.push_back(t);
        for (int m = 0; m < 8; ++m) {
          Vector3i p = a + Vector3i(m & 1, (m >> 1) & 1, (m >> 2) & 1);
          if (is_odd(p) && l1(q, p) <= 1) out.push_back(CellKey::oct(p));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CellKey named_tet(NamedTet name) {
  switch (name) {
    case NamedTet::T1: return CellKey::tet(0, 0, 0);
    case NamedTet::T2: return CellKey::tet(1, 0, 0);
    case NamedTet::T3: return CellKey::tet(0, 0, 1);
    case NamedTet::T4: return CellKey::tet(1, 0, 1);
  }
  throw Error("unknown tetrahedron name");
}

CellKey named_octahedron() { return CellKey::oct(1, 1, 1); }

bool is_signed_permutation(const Matrix3i& m) {
  for (int i = 0; i < 3; ++i) {
    int row_nz = 0, col_nz = 0;
    for (int j = 0; j < 3; ++j) {
      if (m(i, j) != 0) {
        if (std::abs(m(i, j)) != 1) return false;
        ++row_nz;
      }
      if (m(j, i) != 0) ++col_nz;
    }
    if (row_nz != 1 || col_nz != 1) return false;
  }
  return true;
}

HoneycombIsometry::HoneycombIsometry(const Matrix3i& r, const LatticeVector& t) : rotation(r), translation(t) {
  if (!is_signed_permutation(r)) throw LatticeError("rotation is not a signed permutation matrix");
  require_lattice(t, "translation");
}

HoneycombIsometry HoneycombIsometry::operator*(const HoneycombIsometry& other) const {
  HoneycombIsometry g;
  g.rotation = rotation * other.rotation;
  g.translation = rotation * other.translation + translation;
  return g;
}

HoneycombIsometry HoneycombIsometry::inverse() const {
  HoneycombIsometry g;
  g.rotation = rotation.transpose();
  g.translation = -(g.rotation * translation);
  return g;
}

const std::vector<HoneycombIsometry>& point_group() {
  static const std::vector<HoneycombIsometry> group = [] {
    std::vector<HoneycombIsometry> g;
    std::array<int, 3> perm{0, 1, 2};
    do {
      for (int signs = 0; signs < 8; ++signs) {
        Matrix3i r = Matrix3i::Zero();
        for (int i = 0; i < 3; ++i) r(i, perm[i]) = (signs >> i) & 1 ? -1 : 1;
        g.emplace_back(r, LatticeVector::Zero());
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return g;
  }();
  return group;
}

CellKey apply_isometry(const HoneycombIsometry& g, const CellKey& c) {
  if (c.is_oct()) return CellKey::oct(g.apply(c.key));
  // The image of the unit cube [a, a+1]^3 is again a unit cube; take its min corner.
  Vector3i anchor = g.apply(c.key);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (g.rotation(i, j) < 0) anchor[i] -= 1;
    }
  }
  return CellKey::tet(anchor);
}

Triangle apply_isometry(const HoneycombIsometry& g, const Triangle& t) {
  // Signed permutations with det −1 reverse orientation; keep faces outward.
  Triangle out{g.apply(t[0]), g.apply(t[1]), g.apply(t[2])};
  if (g.rotation.determinant() < 0) std::swap(out[1], out[2]);
  return out;
}

}  // namespace tetroc
