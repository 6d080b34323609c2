#include "tetroc/modify.hpp"

#include "tetroc/errors.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>

namespace tetroc {

namespace {

std::optional<Vector3q> intersect3(const Plane& p, const Plane& q, const Plane& r) {
  Matrix3<Rational> m;
  m.row(0) = p.normal.transpose();
  m.row(1) = q.normal.transpose();
  m.row(2) = r.normal.transpose();
  const Rational det = m.determinant();
  if (det == 0) return std::nullopt;
  // Cramer's rule keeps the arithmetic exact.
  Vector3q x;
  const Vector3q b(p.offset, q.offset, r.offset);
  for (int k = 0; k < 3; ++k) {
    Matrix3<Rational> mk = m;
    mk.col(k) = b;
    x[k] = mk.determinant() / det;
  }
  return x;
}

// Orders the points of a convex planar polygon counter-clockwise about `normal`.
void sort_ccw(std::vector<std::size_t>& idx, const std::vector<Vector3q>& pts, const Vector3q& normal) {
  Vector3q centre = Vector3q::Zero();
  for (auto i : idx) centre += pts[i];
  centre /= Rational(static_cast<long>(idx.size()));
  const Vector3q ref = pts[idx[0]] - centre;
  auto half = [&](const Vector3q& v) {
    const Rational s = ref.cross(v).dot(normal);
    return (s > 0 || (s == 0 && ref.dot(v) > 0)) ? 0 : 1;
  };
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const Vector3q va = pts[a] - centre, vb = pts[b] - centre;
    const int ha = half(va), hb = half(vb);
    if (ha != hb) return ha < hb;
    return va.cross(vb).dot(normal) > 0;
  });
}

Rational signed_volume6(const Vector3q& o, const Vector3q& a, const Vector3q& b, const Vector3q& c) {
  return (a - o).dot((b - o).cross(c - o));
}

std::vector<Plane> slab_planes(const Rational& a, const Rational& c) {
  return {Plane{Vector3q(-1, 0, 0), -a}, Plane{Vector3q(1, 0, 0), c}};
}

Vector3q vertex_mean(const std::vector<Vector3q>& pts) {
  Vector3q s = Vector3q::Zero();
  for (const auto& p : pts) s += p;
  return s / Rational(static_cast<long>(pts.size()));
}

}  // namespace

std::size_t ConvexPiece::num_edges() const {
  std::size_t twice = 0;
  for (const auto& f : faces) twice += f.size();
  return twice / 2;
}

namespace {

// Faces of the hull of `pts` (the exact vertex set) on the given supporting planes.
std::optional<ConvexPiece> assemble(std::vector<Vector3q> pts, const std::vector<Plane>& planes) {
  std::sort(pts.begin(), pts.end(), LexLess{});
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 4) return std::nullopt;
  ConvexPiece piece;
  piece.vertices = std::move(pts);
  std::vector<std::vector<std::size_t>> seen;
  for (const auto& h : planes) {
    std::vector<std::size_t> on;
    for (std::size_t v = 0; v < piece.vertices.size(); ++v)
      if (h.normal.dot(piece.vertices[v]) == h.offset) on.push_back(v);
    if (on.size() < 3 || std::find(seen.begin(), seen.end(), on) != seen.end()) continue;
    seen.push_back(on);
    sort_ccw(on, piece.vertices, h.normal);
    piece.faces.push_back(on);
    piece.planes.push_back(h);
  }
  if (volume(piece) == 0) return std::nullopt;
  return piece;
}

}  // namespace

std::optional<ConvexPiece> make_convex_piece(const std::vector<Plane>& planes) {
  std::vector<Vector3q> pts;
  const std::size_t n = planes.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        auto x = intersect3(planes[i], planes[j], planes[k]);
        if (!x) continue;
        bool inside = true;
        for (const auto& h : planes)
          if (h.normal.dot(*x) > h.offset) {
            inside = false;
            break;
          }
        if (inside && std::find(pts.begin(), pts.end(), *x) == pts.end()) pts.push_back(*x);
      }
  return assemble(std::move(pts), planes);
}

namespace {

ConvexPiece build_cell_piece(const CellKey& c) {
  std::vector<Plane> planes;
  for (const auto& t : cell_faces(c)) {
    const Vector3q n = to_rational(face_direction(t));
    planes.push_back({n, n.dot(to_rational(t[0]))});
  }
  std::vector<Vector3q> pts;
  for (const auto& v : cell_vertices(c)) pts.push_back(to_rational(v));
  return *assemble(std::move(pts), planes);
}

}  // namespace

ConvexPiece cell_piece(const CellKey& c) {
  // Every cell is a translate of one of three templates: tetrahedra of either
  // anchor parity and the octahedron.
  static const std::array<std::pair<CellKey, ConvexPiece>, 3> templates{{
      {CellKey::tet(0, 0, 0), build_cell_piece(CellKey::tet(0, 0, 0))},
      {CellKey::tet(1, 0, 0), build_cell_piece(CellKey::tet(1, 0, 0))},
      {CellKey::oct(1, 0, 0), build_cell_piece(CellKey::oct(1, 0, 0))},
  }};
  const auto& [base, shape] = templates[c.is_oct() ? 2 : (is_lattice_point(c.key) ? 0 : 1)];
  const Vector3q t = to_rational(Vector3i(c.key - base.key));
  ConvexPiece p = shape;
  for (auto& v : p.vertices) v += t;
  for (auto& h : p.planes) h.offset += h.normal.dot(t);
  return p;
}

// Keeps the vertices on the inner side and adds the crossing points of the edges.
std::optional<ConvexPiece> clip(const ConvexPiece& p, const Plane& h) {
  std::vector<Rational> side;
  bool any_out = false, any_in = false;
  for (const auto& v : p.vertices) {
    side.push_back(h.normal.dot(v) - h.offset);
    any_out = any_out || side.back() > 0;
    any_in = any_in || side.back() < 0;
  }
  if (!any_out) return p;
  if (!any_in) return std::nullopt;
  std::vector<Vector3q> pts;
  for (std::size_t v = 0; v < p.vertices.size(); ++v)
    if (side[v] <= 0) pts.push_back(p.vertices[v]);
  for (const auto& f : p.faces)
    for (std::size_t k = 0; k < f.size(); ++k) {
      const std::size_t u = f[k], w = f[(k + 1) % f.size()];
      if ((side[u] < 0) == (side[w] < 0) || side[u] == 0 || side[w] == 0) continue;
      const Rational t = side[u] / (side[u] - side[w]);
      pts.push_back(p.vertices[u] + (p.vertices[w] - p.vertices[u]) * t);
    }
  auto planes = p.planes;
  planes.push_back(h);
  return assemble(std::move(pts), planes);
}

Rational volume(const ConvexPiece& p) {
  const Vector3q o = vertex_mean(p.vertices);
  Rational six = 0;
  for (const auto& f : p.faces)
    for (std::size_t k = 1; k + 1 < f.size(); ++k)
      six += signed_volume6(o, p.vertices[f[0]], p.vertices[f[k]], p.vertices[f[k + 1]]);
  return six / 6;
}

Vector3q centroid(const ConvexPiece& p) {
  const Vector3q o = vertex_mean(p.vertices);
  Rational total = 0;
  Vector3q acc = Vector3q::Zero();
  for (const auto& f : p.faces)
    for (std::size_t k = 1; k + 1 < f.size(); ++k) {
      const Vector3q &a = p.vertices[f[0]], &b = p.vertices[f[k]], &c = p.vertices[f[k + 1]];
      const Rational w = signed_volume6(o, a, b, c);
      acc += (o + a + b + c) * (w / 4);
      total += w;
    }
  return acc / total;
}

bool contains(const ConvexPiece& p, const Vector3q& q) {
  for (const auto& h : p.planes)
    if (h.normal.dot(q) > h.offset) return false;
  return true;
}

PolyBlock truncate_slab(const Block& b, const Rational& a, const Rational& c) {
  if (!(0 <= a && a < c && c <= 2)) throw TruncationError("slab must satisfy 0 <= a < c <= 2");
  PolyBlock out{b, a, c, {}};
  const auto slab = slab_planes(a, c);
  for (const auto& cell : b.cells) {
    std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min();
    for (const auto& v : cell_vertices(cell)) {
      lo = std::min(lo, v[0]);
      hi = std::max(hi, v[0]);
    }
    if (hi <= a || lo >= c) continue;
    std::optional<ConvexPiece> piece = cell_piece(cell);
    for (const auto& h : slab)
      if (piece) piece = clip(*piece, h);
    if (piece) out.pieces.push_back(std::move(*piece));
  }
  if (out.pieces.empty()) throw TruncationError("slab misses block '" + b.name + "'");
  return out;
}

Rational volume(const PolyBlock& b) {
  Rational v = 0;
  for (const auto& p : b.pieces) v += volume(p);
  return v;
}

Vector3q centroid(const PolyBlock& b) {
  Rational total = 0;
  Vector3q acc = Vector3q::Zero();
  for (const auto& p : b.pieces) {
    const Rational w = volume(p);
    acc += centroid(p) * w;
    total += w;
  }
  return acc / total;
}

TriangleMesh<Rational> boundary_surface(const PolyBlock& b) {
  // Key each face polygon by its sorted vertex list; a face shared by two pieces appears twice.
  std::map<std::vector<Vector3q>, int, std::function<bool(const std::vector<Vector3q>&, const std::vector<Vector3q>&)>>
      count([](const std::vector<Vector3q>& x, const std::vector<Vector3q>& y) {
        return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), LexLess{});
      });
  auto key = [](const ConvexPiece& p, const std::vector<std::size_t>& f) {
    std::vector<Vector3q> k;
    for (auto i : f) k.push_back(p.vertices[i]);
    std::sort(k.begin(), k.end(), LexLess{});
    return k;
  };
  for (const auto& p : b.pieces)
    for (const auto& f : p.faces) ++count[key(p, f)];

  TriangleMesh<Rational> mesh;
  std::map<Vector3q, int, LexLess> index;
  auto id = [&](const Vector3q& v) {
    auto [it, fresh] = index.emplace(v, static_cast<int>(mesh.vertices.size()));
    if (fresh) mesh.vertices.push_back(v);
    return it->second;
  };
  for (const auto& p : b.pieces)
    for (const auto& f : p.faces) {
      if (count[key(p, f)] != 1) continue;
      for (std::size_t k = 1; k + 1 < f.size(); ++k)
        mesh.triangles.push_back({id(p.vertices[f[0]]), id(p.vertices[f[k]]), id(p.vertices[f[k + 1]])});
    }
  return mesh;
}

std::vector<Vector3q> clip_polygon(const std::vector<Vector3q>& poly, const Rational& a, const Rational& c) {
  std::vector<Vector3q> cur = poly;
  for (const auto& h : slab_planes(a, c)) {
    std::vector<Vector3q> next;
    for (std::size_t k = 0; k < cur.size(); ++k) {
      const Vector3q& p = cur[k];
      const Vector3q& q = cur[(k + 1) % cur.size()];
      const Rational sp = h.normal.dot(p) - h.offset, sq = h.normal.dot(q) - h.offset;
      if (sp <= 0) next.push_back(p);
      if ((sp < 0 && sq > 0) || (sp > 0 && sq < 0)) next.push_back(p + (q - p) * (sp / (sp - sq)));
    }
    cur = std::move(next);
    if (cur.size() < 3) return {};
  }
  // Drop repeated points, then require positive area.
  std::vector<Vector3q> out;
  for (const auto& p : cur)
    if (out.empty() || out.back() != p) out.push_back(p);
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  if (out.size() < 3) return {};
  Vector3q area = Vector3q::Zero();
  for (std::size_t k = 1; k + 1 < out.size(); ++k) area += (out[k] - out[0]).cross(out[k + 1] - out[0]);
  if (area.isZero()) return {};
  return out;
}

TruncatedAssembly truncate_assembly(const AssemblyModel& asm_model, const Rational& a, const Rational& c) {
  TruncatedAssembly out;
  out.a = a;
  out.c = c;
  for (std::size_t i = 0; i < asm_model.size(); ++i) {
    Block placed = asm_model.block_of(i);
    placed.cells = asm_model.cells(i);
    out.blocks.push_back(truncate_slab(placed, a, c));
  }
  for (const auto& f : contact_faces(asm_model)) {
    std::vector<Vector3q> tri;
    for (const auto& p : f.triangle) tri.push_back(to_rational(p));
    auto poly = clip_polygon(tri, a, c);
    if (poly.empty()) continue;
    out.contacts.push_back({f.i, f.j, std::move(poly), to_rational(f.normal)});
  }

  const ContactModel lattice = contact_model(asm_model);
  ContactModel& m = out.model;
  m.num_blocks = asm_model.size();
  m.frame = lattice.frame;
  for (const auto& b : out.blocks) m.reference.push_back(centroid(b));
  for (const auto& f : out.contacts)
    if (!(m.frame[f.i] && m.frame[f.j])) m.faces.push_back({f.i, f.j, f.polygon, f.normal});
  auto inside = [&](const Vector3q& p) { return a < p[0] && p[0] < c; };
  for (const auto& p : lattice.points)
    if (inside(p.point)) m.points.push_back(p);
  for (const auto& e : lattice.edges)
    if (inside(e.point)) m.edges.push_back(e);
  return out;
}

ContactPairs contact_pairs(const AssemblyModel& a) {
  ContactPairs out;
  for (const auto& f : contact_faces(a)) out.insert({f.i, f.j});
  return out;
}

ContactPairs contact_pairs(const TruncatedAssembly& t) {
  ContactPairs out;
  for (const auto& f : t.contacts) out.insert({f.i, f.j});
  return out;
}

namespace {

int sign(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

// Interval of t·dir over the cut of triangle s by the plane (n, d), which must strictly split it.
std::pair<Rational, Rational> cut_interval(const std::array<Vector3q, 3>& s, const Vector3q& n, const Rational& d,
                                           const Vector3q& dir) {
  std::vector<Rational> ts;
  for (int k = 0; k < 3; ++k) {
    const Vector3q& p = s[k];
    const Vector3q& q = s[(k + 1) % 3];
    const Rational sp = n.dot(p) - d, sq = n.dot(q) - d;
    if (sp == 0) ts.push_back(dir.dot(p));
    if (sign(sp) * sign(sq) < 0) ts.push_back(dir.dot(p + (q - p) * (sp / (sp - sq))));
  }
  return {*std::min_element(ts.begin(), ts.end()), *std::max_element(ts.begin(), ts.end())};
}

bool strictly_split(const std::array<Vector3q, 3>& s, const Vector3q& n, const Rational& d) {
  bool pos = false, neg = false;
  for (const auto& p : s) {
    const Rational v = n.dot(p) - d;
    pos = pos || v > 0;
    neg = neg || v < 0;
  }
  return pos && neg;
}

struct Box {
  Vector3d lo, hi;
};

Box box_of(const std::vector<Vector3d>& pts) {
  Box b{pts[0], pts[0]};
  for (const auto& p : pts) {
    b.lo = b.lo.cwiseMin(p);
    b.hi = b.hi.cwiseMax(p);
  }
  return b;
}

bool overlap(const Box& a, const Box& b) {
  constexpr double slack = 1e-9;
  for (int k = 0; k < 3; ++k)
    if (a.hi[k] + slack < b.lo[k] || b.hi[k] + slack < a.lo[k]) return false;
  return true;
}

struct Prepared {
  std::vector<std::array<Vector3q, 3>> tris;
  std::vector<Box> boxes;
  Box box;
};

Prepared prepare(const TriangleMesh<Rational>& mesh) {
  Prepared p;
  std::vector<Vector3d> all;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    auto c = mesh.corners(t);
    std::vector<Vector3d> d;
    for (const auto& v : c) d.emplace_back(to_double(v[0]), to_double(v[1]), to_double(v[2]));
    p.boxes.push_back(box_of(d));
    all.insert(all.end(), d.begin(), d.end());
    p.tris.push_back(c);
  }
  p.box = all.empty() ? Box{} : box_of(all);
  return p;
}

}  // namespace

bool triangles_cross(const std::array<Vector3q, 3>& s, const std::array<Vector3q, 3>& t) {
  const Vector3q ns = (s[1] - s[0]).cross(s[2] - s[0]);
  const Vector3q nt = (t[1] - t[0]).cross(t[2] - t[0]);
  if (ns.isZero() || nt.isZero()) return false;
  const Rational ds = ns.dot(s[0]), dt = nt.dot(t[0]);
  if (!strictly_split(s, nt, dt) || !strictly_split(t, ns, ds)) return false;
  const Vector3q dir = ns.cross(nt);
  const auto [s0, s1] = cut_interval(s, nt, dt, dir);
  const auto [t0, t1] = cut_interval(t, ns, ds, dir);
  return std::max(s0, t0) < std::min(s1, t1);
}

DeformationReport deform_and_validate(const std::vector<TriangleMesh<Rational>>& meshes, const VertexMap& map) {
  std::vector<Prepared> moved;
  for (std::size_t b = 0; b < meshes.size(); ++b) {
    if (!surface_stats(meshes[b]).is_closed) throw MeshError("mesh " + std::to_string(b) + " is not closed");
    TriangleMesh<Rational> m = meshes[b];
    for (auto& v : m.vertices) v = map(b, v);
    moved.push_back(prepare(m));
  }
  auto crossing = [](const Prepared& x, const Prepared& y, bool same) {
    for (std::size_t s = 0; s < x.tris.size(); ++s)
      for (std::size_t t = same ? s + 1 : 0; t < y.tris.size(); ++t)
        if (overlap(x.boxes[s], y.boxes[t]) && triangles_cross(x.tris[s], y.tris[t])) return true;
    return false;
  };
  DeformationReport r;
  for (std::size_t i = 0; i < moved.size(); ++i) {
    if (crossing(moved[i], moved[i], true)) r.self_intersecting.push_back(i);
    for (std::size_t j = i + 1; j < moved.size(); ++j)
      if (overlap(moved[i].box, moved[j].box) && crossing(moved[i], moved[j], false))
        r.intersecting_pairs.push_back({i, j});
  }
  r.assembly_valid = r.intersecting_pairs.empty() && r.self_intersecting.empty();
  return r;
}

std::vector<TriangleMesh<Rational>> placement_meshes(const AssemblyModel& a) {
  std::vector<TriangleMesh<Rational>> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto m = boundary_surface(a.cells(i));
    TriangleMesh<Rational> q;
    for (const auto& v : m.vertices) q.vertices.push_back(to_rational(v));
    q.triangles = m.triangles;
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace tetroc
