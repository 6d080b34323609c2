#include "tetroc/approx.hpp"

#include "tetroc/errors.hpp"

#include <cmath>
#include <map>
#include <random>
#include <set>

namespace tetroc {

InputMesh make_input_mesh(const std::vector<std::array<Vector3d, 3>>& triangles) {
  InputMesh m;
  for (const auto& t : triangles) {
    for (const auto& v : t)
      if (!v.allFinite()) throw MeshError("mesh has a non-finite coordinate");
    if ((t[1] - t[0]).cross(t[2] - t[0]).squaredNorm() == 0) {
      ++m.dropped_degenerate;
      continue;
    }
    m.triangles.push_back(t);
  }
  if (m.triangles.empty()) throw MeshError("mesh has no non-degenerate triangle");
  return m;
}

template <typename Scalar>
std::vector<Vector3<Scalar>> sample_barycentric(const std::array<Vector3<Scalar>, 3>& tri, int s) {
  if (s < 1) throw Error("samples per triangle must be at least 1");
  std::vector<Vector3<Scalar>> out;
  out.reserve(static_cast<std::size_t>((s + 1) * (s + 2) / 2));
  for (int i = 0; i <= s; ++i)
    for (int j = 0; i + j <= s; ++j) {
      const int k = s - i - j;
      out.push_back((tri[0] * Scalar(i) + tri[1] * Scalar(j) + tri[2] * Scalar(k)) / Scalar(s));
    }
  return out;
}

template std::vector<Vector3d> sample_barycentric(const std::array<Vector3d, 3>&, int);
template std::vector<Vector3q> sample_barycentric(const std::array<Vector3q, 3>&, int);

std::vector<std::array<Vector3q, 3>> snapped_triangles(const InputMesh& m, const Rational& scale) {
  if (scale <= 0) throw Error("scale must be positive");
  std::vector<std::array<Vector3q, 3>> out;
  out.reserve(m.triangles.size());
  for (const auto& t : m.triangles) {
    std::array<Vector3q, 3> q;
    for (int v = 0; v < 3; ++v)
      for (int k = 0; k < 3; ++k) q[v][k] = snap(Rational(t[v][k]) * scale, kSnapDenominator);
    out.push_back(q);
  }
  return out;
}

namespace {

using Wide = __int128;

template <typename S>
using P3 = std::array<S, 3>;

template <typename S>
S orient(const P3<S>& a, const P3<S>& b, const P3<S>& c, const P3<S>& d) {
  const S bx = b[0] - a[0], by = b[1] - a[1], bz = b[2] - a[2];
  const S cx = c[0] - a[0], cy = c[1] - a[1], cz = c[2] - a[2];
  const S dx = d[0] - a[0], dy = d[1] - a[1], dz = d[2] - a[2];
  return bx * (cy * dz - cz * dy) - by * (cx * dz - cz * dx) + bz * (cx * dy - cy * dx);
}

template <typename S>
int sgn(const S& v) {
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

enum class Hit { none, crossing, on_surface, degenerate };

// Segment q→e against one triangle; e is far outside the mesh.
template <typename S>
Hit segment_hit(const P3<S>& q, const P3<S>& e, const std::array<P3<S>, 3>& t) {
  const int oe = sgn(orient(t[0], t[1], t[2], e));
  if (oe == 0) return Hit::degenerate;
  const int oq = sgn(orient(t[0], t[1], t[2], q));
  if (oq == oe) return Hit::none;
  const int s1 = sgn(orient(q, e, t[0], t[1]));
  const int s2 = sgn(orient(q, e, t[1], t[2]));
  const int s3 = sgn(orient(q, e, t[2], t[0]));
  const bool has_pos = s1 > 0 || s2 > 0 || s3 > 0;
  const bool has_neg = s1 < 0 || s2 < 0 || s3 < 0;
  if (has_pos && has_neg) return Hit::none;
  if (oq == 0) return Hit::on_surface;  // q lies in the closed triangle
  if (s1 == 0 || s2 == 0 || s3 == 0) return Hit::degenerate;
  return Hit::crossing;
}

template <typename S>
struct Soup {
  std::vector<std::array<P3<S>, 3>> tris;
  std::vector<std::array<P3<S>, 2>> boxes;
  P3<S> lo, hi;

  void add(const std::array<P3<S>, 3>& t) {
    std::array<P3<S>, 2> b{t[0], t[0]};
    for (const auto& v : t)
      for (int k = 0; k < 3; ++k) {
        b[0][k] = std::min(b[0][k], v[k]);
        b[1][k] = std::max(b[1][k], v[k]);
      }
    if (tris.empty()) {
      lo = b[0];
      hi = b[1];
    }
    for (int k = 0; k < 3; ++k) {
      lo[k] = std::min(lo[k], b[0][k]);
      hi[k] = std::max(hi[k], b[1][k]);
    }
    tris.push_back(t);
    boxes.push_back(b);
  }

  // Parity along q + t·d; nullopt when this direction grazes an edge or vertex.
  std::optional<Containment> cast(const P3<S>& q, const P3<S>& d) const {
    for (int k = 0; k < 3; ++k)
      if (q[k] < lo[k] || q[k] > hi[k]) return Containment::outside;
    // Enough steps along d (d[0] > 0) to leave the box in x.
    S steps = (hi[0] - q[0]) / d[0] + 2;
    P3<S> e{q[0] + steps * d[0], q[1] + steps * d[1], q[2] + steps * d[2]};
    P3<S> slo, shi;
    for (int k = 0; k < 3; ++k) {
      slo[k] = std::min(q[k], e[k]);
      shi[k] = std::max(q[k], e[k]);
    }
    int crossings = 0;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      const auto& b = boxes[t];
      bool disjoint = false;
      for (int k = 0; k < 3; ++k) disjoint = disjoint || b[1][k] < slo[k] || b[0][k] > shi[k];
      if (disjoint) continue;
      switch (segment_hit(q, e, tris[t])) {
        case Hit::none:
          break;
        case Hit::crossing:
          ++crossings;
          break;
        case Hit::on_surface:
          return Containment::boundary;
        case Hit::degenerate:
          return std::nullopt;
      }
    }
    return crossings % 2 ? Containment::inside : Containment::outside;
  }
};

// Coordinates in the integer frame must stay below this so that orient() fits in 128 bits.
const Integer kFrameLimit = Integer(1) << 38;

}  // namespace

struct PointInMesh::Impl {
  Soup<Rational> exact;
  std::optional<Soup<Wide>> frame;  // the same mesh multiplied by `scale`, when that is small enough
  Integer scale = 1;
  std::vector<P3<std::int64_t>> directions;

  std::optional<Wide> to_frame(const Rational& v) const {
    const Rational x = v * Rational(scale);
    if (denominator(x) != 1) return std::nullopt;
    const Integer n = numerator(x);
    if (abs(n) >= kFrameLimit) return std::nullopt;
    return static_cast<Wide>(n.convert_to<long long>());
  }
};

PointInMesh::PointInMesh(std::vector<std::array<Vector3q, 3>> triangles, std::uint64_t seed, int retries)
    : impl_(std::make_unique<Impl>()) {
  if (triangles.empty()) throw MeshError("empty mesh");
  Integer lcm = 1;
  for (const auto& t : triangles) {
    std::array<P3<Rational>, 3> r;
    for (int v = 0; v < 3; ++v)
      for (int k = 0; k < 3; ++k) {
        r[v][k] = t[v][k];
        lcm = boost::multiprecision::lcm(lcm, Integer(denominator(t[v][k])));
      }
    impl_->exact.add(r);
  }
  // Quarter-integer queries (tetrahedron centroids) stay integral in the frame.
  impl_->scale = lcm * 4;
  Soup<Wide> f;
  bool fits = true;
  for (const auto& t : impl_->exact.tris) {
    std::array<P3<Wide>, 3> w;
    for (int v = 0; v < 3 && fits; ++v)
      for (int k = 0; k < 3 && fits; ++k) {
        auto x = impl_->to_frame(t[v][k]);
        if (!x) fits = false;
        else w[v][k] = *x;
      }
    if (!fits) break;
    f.add(w);
  }
  if (fits) impl_->frame = std::move(f);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> tilt(1, 255);
  for (int r = 0; r < std::max(1, retries); ++r) {
    const int sy = rng() % 2 ? 1 : -1, sz = rng() % 2 ? 1 : -1;
    impl_->directions.push_back({4096, sy * tilt(rng), sz * tilt(rng)});
  }
}

PointInMesh::~PointInMesh() = default;
PointInMesh::PointInMesh(PointInMesh&&) noexcept = default;
PointInMesh& PointInMesh::operator=(PointInMesh&&) noexcept = default;

Containment PointInMesh::operator()(const Vector3q& q) const {
  if (impl_->frame) {
    P3<Wide> w;
    bool ok = true;
    for (int k = 0; k < 3 && ok; ++k) {
      auto x = impl_->to_frame(q[k]);
      if (!x) ok = false;
      else w[k] = *x;
    }
    if (ok) {
      for (const auto& d : impl_->directions)
        if (auto c = impl_->frame->cast(w, P3<Wide>{d[0], d[1], d[2]})) return *c;
      return Containment::boundary;
    }
  }
  const P3<Rational> r{q[0], q[1], q[2]};
  for (const auto& d : impl_->directions)
    if (auto c = impl_->exact.cast(r, P3<Rational>{Rational(d[0]), Rational(d[1]), Rational(d[2])})) return *c;
  return Containment::boundary;
}

Containment point_in_mesh(const Vector3q& q, const std::vector<std::array<Vector3q, 3>>& triangles, std::uint64_t seed) {
  return PointInMesh(triangles, seed)(q);
}

namespace {

void warn_size(const InputMesh& m) {
  if (m.triangles.size() > 1000000) std::fprintf(stderr, "warning: %zu triangles; simplify the mesh first\n", m.triangles.size());
}

}  // namespace

CellSet shell_approx(const InputMesh& m, const ApproxParams& p) {
  if (p.samples < 1) throw Error("samples per triangle must be at least 1");
  warn_size(m);
  std::set<Vector3q, LexLess> points;
  for (const auto& t : snapped_triangles(m, p.scale))
    for (const auto& q : sample_barycentric(t, p.samples))
      points.insert(Vector3q(snap(q[0], kSnapDenominator), snap(q[1], kSnapDenominator), snap(q[2], kSnapDenominator)));
  CellSet cells;
  for (const auto& q : points)
    for (const auto& c : locate(q)) cells.insert(c);
  return cells;
}

CellSet solid_approx(const InputMesh& m, const ApproxParams& p) {
  warn_size(m);
  auto tris = snapped_triangles(m, p.scale);
  std::map<std::pair<Vector3q, Vector3q>, int,
           decltype([](const std::pair<Vector3q, Vector3q>& a, const std::pair<Vector3q, Vector3q>& b) {
             if (a.first != b.first) return lex_less(a.first, b.first);
             return lex_less(a.second, b.second);
           })>
      edges;
  for (const auto& t : tris)
    for (int k = 0; k < 3; ++k) {
      Vector3q a = t[k], b = t[(k + 1) % 3];
      if (lex_less(b, a)) std::swap(a, b);
      ++edges[{a, b}];
    }
  for (const auto& [e, n] : edges)
    if (n % 2) throw MeshError("mesh is not watertight: an edge is used an odd number of times");

  Vector3q lo = tris[0][0], hi = tris[0][0];
  for (const auto& t : tris)
    for (const auto& v : t)
      for (int k = 0; k < 3; ++k) {
        lo[k] = std::min(lo[k], v[k]);
        hi[k] = std::max(hi[k], v[k]);
      }
  auto floor_int = [](const Rational& r) {
    Integer n = numerator(r) / denominator(r);
    if (r < 0 && Rational(n) != r) n -= 1;
    return n.convert_to<std::int64_t>();
  };
  Vector3i ilo, ihi;
  for (int k = 0; k < 3; ++k) {
    ilo[k] = floor_int(lo[k]);
    ihi[k] = -floor_int(-hi[k]);
  }

  const PointInMesh inside(std::move(tris), p.seed);
  std::map<Vector3i, bool, LexLess> vertex_ok;
  auto in_box = [&](const Vector3i& v) {
    for (int k = 0; k < 3; ++k)
      if (v[k] < ilo[k] || v[k] > ihi[k]) return false;
    return true;
  };
  auto accept = [&](const CellKey& c) {
    for (const auto& v : cell_vertices(c)) {
      if (!in_box(v)) return false;
      auto it = vertex_ok.find(v);
      if (it == vertex_ok.end()) it = vertex_ok.emplace(v, inside(to_rational(v)) != Containment::outside).first;
      if (!it->second) return false;
    }
    return inside(cell_centroid(c)) != Containment::outside;
  };

  CellSet cells;
  for (std::int64_t x = ilo[0]; x <= ihi[0]; ++x)
    for (std::int64_t y = ilo[1]; y <= ihi[1]; ++y)
      for (std::int64_t z = ilo[2]; z <= ihi[2]; ++z) {
        const Vector3i a(x, y, z);
        if (accept(CellKey::tet(a))) cells.insert(CellKey::tet(a));
        if (!is_lattice_point(a) && accept(CellKey::oct(a))) cells.insert(CellKey::oct(a));
      }
  return cells;
}

CellSet approximate(const InputMesh& m, const ApproxParams& p) {
  return p.mode == ApproxMode::shell ? shell_approx(m, p) : solid_approx(m, p);
}

}  // namespace tetroc
