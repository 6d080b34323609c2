#include "tetroc/blocks.hpp"

#include "tetroc/errors.hpp"

#include <algorithm>
#include <map>

namespace tetroc {

namespace {

const Matrix3i& rot_x() {
  static const Matrix3i r = (Matrix3i() << 1, 0, 0, 0, 0, -1, 0, 1, 0).finished();
  return r;
}

CellSet translate(const CellSet& cells, const LatticeVector& t) {
  return transform(cells, HoneycombIsometry::translate(t));
}

void require(bool cond, const std::string& what) {
  if (!cond) throw BlockError(BlockError::Kind::invalid_params, what);
}

}  // namespace

std::size_t Block::num_tetrahedra() const {
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const CellKey& c) { return c.is_tet(); }));
}

std::size_t Block::num_octahedra() const { return cells.size() - num_tetrahedra(); }

CellSet transform(const CellSet& cells, const HoneycombIsometry& g) {
  CellSet out;
  for (const auto& c : cells) out.insert(apply_isometry(g, c));
  return out;
}

Block make_kitten() {
  return {"kitten", {}, {named_tet(NamedTet::T1), named_tet(NamedTet::T2), named_octahedron()}};
}

Block make_ufo() {
  return {"ufo",
          {},
          {named_octahedron(), named_tet(NamedTet::T1), named_tet(NamedTet::T2), named_tet(NamedTet::T3),
           named_tet(NamedTet::T4)}};
}

Block make_cushion(int n) {
  require(n >= 1, "cushion requires n >= 1");
  Block b{"cushion", {n}, {}};
  for (int k = 0; k <= n; ++k) {
    const LatticeVector t = k * v1();
    b.cells.insert(CellKey::tet(named_tet(NamedTet::T1).key + t));
    b.cells.insert(CellKey::tet(named_tet(NamedTet::T2).key + t));
    if (k < n) b.cells.insert(CellKey::oct(named_octahedron().key + t));
  }
  return b;
}

// Pinwheel of four cushion arms: two of length n along v1, two of length m
// along v2 − v3 (a cushion turned a quarter about the x-axis).
Block make_shuriken(int m, int n) {
  require(m >= 1 && n >= 1, "shuriken requires m, n >= 1");
  const LatticeVector d = v2() - v3();
  const CellSet along_v1 = make_cushion(n).cells;
  const CellSet along_d = transform(make_cushion(m).cells, HoneycombIsometry(rot_x(), v1()));
  Block b{"shuriken", {m, n}, {}};
  auto add = [&](const CellSet& arm) {
    for (const auto& c : arm) {
      if (!b.cells.insert(c).second) throw Error("shuriken arms overlap in " + to_string(c));
    }
  };
  add(along_v1);
  add(translate(along_v1, m * d + v1()));
  add(along_d);
  add(translate(along_d, n * v1() - d));
  return b;
}

Block make_block(Family family, const std::vector<int>& params) {
  switch (family) {
    case Family::kitten:
      require(params.empty(), "kitten takes no parameters");
      return make_kitten();
    case Family::ufo:
      require(params.empty(), "ufo takes no parameters");
      return make_ufo();
    case Family::cushion:
      require(params.size() == 1, "cushion takes one parameter n");
      return make_cushion(params[0]);
    case Family::shuriken:
      require(params.size() == 2, "shuriken takes two parameters m n");
      return make_shuriken(params[0], params[1]);
  }
  throw Error("unknown block family");
}

Block make_scaled(Platonic solid, int k) {
  require(k >= 1, "scaled solids require k >= 1");
  // Closed solid as inward half-spaces n·x >= offset.
  std::vector<std::pair<Vector3i, std::int64_t>> halfspaces;
  Vector3i lo, hi;
  if (solid == Platonic::tetra) {
    const std::array<Vector3i, 4> p{Vector3i::Zero(), Vector3i(k * v1()), Vector3i(k * v2()), Vector3i(k * v3())};
    for (int omit = 0; omit < 4; ++omit) {
      std::array<Vector3i, 3> f;
      int c = 0;
      for (int i = 0; i < 4; ++i)
        if (i != omit) f[c++] = p[i];
      Vector3i n = (f[1] - f[0]).cross(f[2] - f[0]);
      if (n.dot(p[omit] - f[0]) < 0) n = -n;
      halfspaces.emplace_back(n, n.dot(f[0]));
    }
    lo = Vector3i::Zero();
    hi = Vector3i::Constant(k);
  } else {
    const Vector3i c = Vector3i::Constant(k);
    for (int m = 0; m < 8; ++m) {
      Vector3i s((m & 1) ? 1 : -1, (m & 2) ? 1 : -1, (m & 4) ? 1 : -1);
      halfspaces.emplace_back(-s, -s.dot(c) - k);  // s·(x − c) <= k
    }
    lo = Vector3i::Zero();
    hi = Vector3i::Constant(2 * k);
  }
  auto inside = [&](const CellKey& cell) {
    for (const auto& v : cell_vertices(cell))
      for (const auto& [n, off] : halfspaces)
        if (n.dot(v) < off) return false;
    return true;
  };
  Block b{solid == Platonic::tetra ? "tetra" : "octa", {k}, {}};
  for (auto x = lo[0] - 1; x <= hi[0]; ++x)
    for (auto y = lo[1] - 1; y <= hi[1]; ++y)
      for (auto z = lo[2] - 1; z <= hi[2]; ++z) {
        const Vector3i a(x, y, z);
        if (auto t = CellKey::tet(a); inside(t)) b.cells.insert(t);
        if ((a.sum() % 2) != 0)
          if (auto o = CellKey::oct(a); inside(o)) b.cells.insert(o);
      }
  return b;
}

Block make_custom_block(const std::string& name, const std::vector<CellKey>& cells) {
  const auto report = validate_block(cells);
  if (!report.ok()) {
    const auto kind = report.status == BlockValidation::Status::duplicate_cell ? BlockError::Kind::duplicate_cell
                      : report.status == BlockValidation::Status::empty      ? BlockError::Kind::empty
                                                                             : BlockError::Kind::disconnected;
    throw BlockError(kind, report.message);
  }
  return {name, {}, CellSet(cells.begin(), cells.end())};
}

std::vector<Triangle> boundary_triangles(const CellSet& cells) {
  std::map<Triangle, std::pair<int, Triangle>, decltype(&triangle_less)> faces(&triangle_less);
  for (const auto& c : cells) {
    for (const auto& t : cell_faces(c)) {
      auto [it, fresh] = faces.try_emplace(canonical(t), 0, t);
      ++it->second.first;
    }
  }
  std::vector<Triangle> out;
  for (const auto& [key, entry] : faces)
    if (entry.first == 1) out.push_back(entry.second);
  return out;
}

TriangleMesh<std::int64_t> boundary_surface(const CellSet& cells) {
  const auto tris = boundary_triangles(cells);
  std::map<Vector3i, int, LexLess> index;
  for (const auto& t : tris)
    for (const auto& p : t) index.emplace(p, 0);
  TriangleMesh<std::int64_t> mesh;
  for (auto& [p, i] : index) {
    i = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(p);
  }
  for (const auto& t : tris) mesh.triangles.push_back({index.at(t[0]), index.at(t[1]), index.at(t[2])});
  return mesh;
}

Rational volume(const CellSet& cells) {
  Rational v = 0;
  for (const auto& c : cells) v += cell_volume(c);
  return v;
}

Vector3q centroid(const CellSet& cells) {
  Vector3q s = Vector3q::Zero();
  Rational total = 0;
  for (const auto& c : cells) {
    const Rational w = cell_volume(c);
    s += cell_centroid(c) * w;
    total += w;
  }
  if (total == 0) throw Error("centroid of an empty cell set");
  return s / total;
}

std::optional<HoneycombIsometry> find_isometry(const CellSet& from, const CellSet& to) {
  if (from.size() != to.size() || from.empty()) return std::nullopt;
  for (const auto& r : point_group()) {
    const CellSet image = transform(from, r);
    if (image.begin()->kind != to.begin()->kind) continue;
    const Vector3i t = to.begin()->key - image.begin()->key;
    if (!is_lattice_point(t)) continue;
    if (translate(image, t) == to) return HoneycombIsometry(r.rotation, t);
  }
  return std::nullopt;
}

std::vector<HoneycombIsometry> symmetry_group(const CellSet& cells) {
  std::vector<HoneycombIsometry> out;
  if (cells.empty()) return out;
  for (const auto& r : point_group()) {
    const CellSet image = transform(cells, r);
    const Vector3i t = cells.begin()->key - image.begin()->key;
    if (!is_lattice_point(t)) continue;
    if (translate(image, t) == cells) out.emplace_back(r.rotation, t);
  }
  return out;
}

std::size_t face_components(const CellSet& cells) {
  std::set<CellKey> seen;
  std::size_t components = 0;
  for (const auto& start : cells) {
    if (seen.count(start)) continue;
    ++components;
    std::vector<CellKey> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      const CellKey c = stack.back();
      stack.pop_back();
      for (const auto& f : cell_faces(c)) {
        const CellKey nb = cell_neighbor(c, f);
        if (cells.count(nb) && seen.insert(nb).second) stack.push_back(nb);
      }
    }
  }
  return components;
}

BlockValidation validate_block(const std::vector<CellKey>& cells) {
  if (cells.empty()) return {BlockValidation::Status::empty, "block has no cells"};
  CellSet set;
  for (const auto& c : cells) {
    if (!set.insert(c).second) return {BlockValidation::Status::duplicate_cell, "duplicate cell " + to_string(c)};
  }
  if (auto n = face_components(set); n != 1) {
    return {BlockValidation::Status::disconnected,
            "cells form " + std::to_string(n) + " face-connected components"};
  }
  return {BlockValidation::Status::ok,
          "ok: cells distinct and face-connected; honeycomb cells meet only in shared faces, edges or vertices"};
}

bool tiles(const Block& b, const std::array<LatticeVector, 3>& basis, const CellBox& region) {
  Matrix3i m;
  for (int i = 0; i < 3; ++i) {
    require_lattice(basis[i], "basis vector");
    m.col(i) = basis[i];
  }
  const std::int64_t det = m.determinant();
  if (det == 0) throw Error("tiling basis is linearly dependent");
  auto in_span = [&](const Vector3i& t) {
    for (int i = 0; i < 3; ++i) {
      Matrix3i mi = m;
      mi.col(i) = t;
      if (mi.determinant() % det != 0) return false;
    }
    return true;
  };
  for (auto x = region.lo[0]; x <= region.hi[0]; ++x)
    for (auto y = region.lo[1]; y <= region.hi[1]; ++y)
      for (auto z = region.lo[2]; z <= region.hi[2]; ++z) {
        const Vector3i a(x, y, z);
        std::vector<CellKey> targets{CellKey::tet(a)};
        if ((a.sum() % 2) != 0) targets.push_back(CellKey::oct(a));
        for (const auto& target : targets) {
          int covers = 0;
          for (const auto& c : b.cells) {
            if (c.kind != target.kind) continue;
            const Vector3i t = target.key - c.key;
            if (is_lattice_point(t) && in_span(t)) ++covers;
          }
          if (covers != 1) return false;
        }
      }
  return true;
}

}  // namespace tetroc
