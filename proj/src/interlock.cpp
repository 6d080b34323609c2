#include "tetroc/interlock.hpp"

#include "tetroc/errors.hpp"

#include <map>
#include <random>
#include <set>

namespace tetroc {

namespace {

struct Incidence {
  Triangle triangle;
  Vector3i normal;
};

using IncidenceMap = std::map<Vector3i, std::vector<Incidence>, LexLess>;

// Local shape of a block's boundary at one of its vertices.
struct LocalShape {
  enum class Kind { other, flat, wedge };
  Kind kind = Kind::other;
  Vector3i normal = Vector3i::Zero();  // flat
  Vector3i edge = Vector3i::Zero();    // wedge: n1 × n2
  std::array<Vector3i, 2> normals{};   // wedge
  std::array<Vector3i, 2> rays{};      // wedge: directions along each face, away from the edge
};

bool parallel(const Vector3i& a, const Vector3i& b) { return a.cross(b).isZero(); }

LocalShape local_shape(const std::vector<Incidence>& inc, const Vector3i& p) {
  LocalShape s;
  std::vector<Vector3i> normals;
  for (const auto& f : inc)
    if (std::find(normals.begin(), normals.end(), f.normal) == normals.end()) normals.push_back(f.normal);

  if (normals.size() == 1) {
    // Closed fan: every neighbour vertex bounds exactly two incident triangles.
    std::map<Vector3i, int, LexLess> count;
    for (const auto& f : inc)
      for (const auto& q : f.triangle)
        if (q != p) ++count[q];
    for (const auto& [q, c] : count)
      if (c != 2) return s;
    s.kind = LocalShape::Kind::flat;
    s.normal = normals[0];
    return s;
  }
  if (normals.size() != 2) return s;

  const Vector3i& na = normals[0];
  const Vector3i& nb = normals[1];
  const Vector3i e = na.cross(nb);
  if (e.isZero()) return s;
  bool pos = false, neg = false;
  for (const auto& f : inc) {
    const Vector3i& other = f.normal == na ? nb : na;
    for (const auto& q : f.triangle) {
      const Vector3i dq = q - p;
      if (other.dot(dq) > 0) return s;  // reflex
      if (q != p && parallel(dq, e)) (dq.dot(e) > 0 ? pos : neg) = true;
    }
  }
  if (!pos || !neg) return s;
  s.kind = LocalShape::Kind::wedge;
  s.edge = e;
  s.normals = {na, nb};
  Vector3i r1 = e.cross(na);
  if (nb.dot(r1) > 0) r1 = -r1;
  Vector3i r2 = e.cross(nb);
  if (na.dot(r2) > 0) r2 = -r2;
  s.rays = {r1, r2};
  return s;
}

// Sign of n·(q − p) over the incident vertices: −1 all ≤ 0, +1 all ≥ 0, 0 mixed.
int side(const std::vector<Incidence>& inc, const Vector3i& p, const Vector3i& n) {
  bool pos = false, neg = false;
  for (const auto& f : inc)
    for (const auto& q : f.triangle) {
      const auto v = n.dot(q - p);
      if (v > 0) pos = true;
      if (v < 0) neg = true;
    }
  if (pos && neg) return 0;
  return pos ? 1 : -1;
}

std::int64_t turn(const Vector3i& a, const Vector3i& b, const Vector3i& e) { return a.cross(b).dot(e); }

// Outward normals of the two bounding rays of the relative-position cone
// S_j − S_i of two wedges sharing the edge line e; nullopt when that cone is
// not pointed (no single-point separation to exploit).
std::optional<std::array<Vector3i, 2>> collinear_options(const LocalShape& wi, const LocalShape& wj) {
  const Vector3i& e = wi.edge;
  const std::array<Vector3i, 4> gens = {wj.rays[0], wj.rays[1], Vector3i(-wi.rays[0]), Vector3i(-wi.rays[1])};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if (a == b) continue;
      const Vector3i& g1 = gens[a];
      const Vector3i& g2 = gens[b];
      if (turn(g1, g2, e) <= 0) continue;
      bool inside = true;
      for (const auto& g : gens)
        if (turn(g1, g, e) < 0 || turn(g, g2, e) < 0) inside = false;
      if (!inside) continue;
      Vector3i m1 = e.cross(g1);
      if (m1.dot(g2) > 0) m1 = -m1;
      Vector3i m2 = e.cross(g2);
      if (m2.dot(g1) > 0) m2 = -m2;
      return std::array<Vector3i, 2>{m1, m2};
    }
  return std::nullopt;
}

VectorX<Rational> primitive(VectorX<Rational> r) {
  Integer den = 1;
  for (const auto& v : r)
    if (v != 0) den = boost::multiprecision::lcm(den, Integer(boost::multiprecision::denominator(v)));
  Integer g = 0;
  for (auto& v : r) {
    v *= Rational(den);
    if (v != 0) g = boost::multiprecision::gcd(g, Integer(boost::multiprecision::numerator(v)));
  }
  if (g > 1)
    for (auto& v : r) v /= Rational(g);
  return r;
}

std::vector<Rational> key_of(const VectorX<Rational>& r) { return {r.data(), r.data() + r.size()}; }

struct RowBuilder {
  const ContactModel& model;
  std::vector<Eigen::Index> column;  // per block, −1 for frame
  Eigen::Index n = 0;

  explicit RowBuilder(const ContactModel& m) : model(m), column(m.num_blocks, -1) {
    for (std::size_t b = 0; b < m.num_blocks; ++b)
      if (!m.frame[b]) {
        column[b] = n;
        n += 6;
      }
  }

  // (vel_j(p) − vel_i(p))·normal >= 0
  VectorX<Rational> row(std::size_t i, std::size_t j, const Vector3q& p, const Vector3q& normal) const {
    VectorX<Rational> r = VectorX<Rational>::Zero(n);
    for (auto [b, sign] : {std::pair{j, 1}, std::pair{i, -1}}) {
      const Eigen::Index k = column[b];
      if (k < 0) continue;
      const Vector3q arm = (p - model.reference[b]).cross(normal);
      for (int t = 0; t < 3; ++t) {
        r[k + t] += sign * normal[t];
        r[k + 3 + t] += sign * arm[t];
      }
    }
    return primitive(std::move(r));
  }
};

bool feasible(const MatrixX<Rational>& a, const VectorX<Rational>& x) {
  if (a.rows() == 0) return true;
  const VectorX<Rational> ax = a * x;
  for (Eigen::Index r = 0; r < ax.size(); ++r)
    if (ax[r] < 0) return false;
  return true;
}

VectorX<Rational> normalized(VectorX<Rational> x) {
  Rational m = 0;
  for (const auto& v : x) m = std::max(m, Rational(abs(v)));
  if (m != 0) x /= m;
  return x;
}

MatrixX<Rational> stack(const std::vector<VectorX<Rational>>& rows, Eigen::Index n) {
  MatrixX<Rational> a(static_cast<Eigen::Index>(rows.size()), n);
  for (std::size_t r = 0; r < rows.size(); ++r) a.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
  return a;
}

class Search {
 public:
  Search(const ConstraintSystem& sys, const InterlockOptions& opt, InterlockVerdict& out)
      : sys_(sys), opt_(opt), out_(out), n_(sys.num_variables()) {}

  std::optional<VectorX<Rational>> run() {
    std::vector<VectorX<Rational>> rows;
    std::set<std::vector<Rational>> seen;
    for (Eigen::Index r = 0; r < sys_.rows.rows(); ++r) {
      VectorX<Rational> v = sys_.rows.row(r).transpose();
      if (seen.insert(key_of(v)).second) rows.push_back(std::move(v));
    }
    return node(rows);
  }

 private:
  std::optional<VectorX<Rational>> node(std::vector<VectorX<Rational>>& rows) {
    if (++out_.nodes > opt_.max_nodes) throw InterlockError("branch-and-bound node limit exceeded");
    const MatrixX<Rational> a = stack(rows, n_);
    auto x = translation(a);
    if (!x) x = opt_.strategy == Strategy::aggregate ? aggregate(a) : per_variable(a);
    if (!x) return std::nullopt;
    for (const auto& options : sys_.disjunctions) {
      if (options[0].dot(*x) >= 0 || options[1].dot(*x) >= 0) continue;
      for (const auto& option : options) {
        rows.push_back(option);
        auto w = node(rows);
        rows.pop_back();
        if (w) return w;
      }
      return std::nullopt;
    }
    return x;
  }

  std::string label(const std::string& what) const { return "node " + std::to_string(out_.nodes) + ": " + what; }

  // Uniform translations of every free block are the usual escape of an
  // unframed assembly; trying them first keeps such witnesses rigid.
  std::optional<VectorX<Rational>> translation(const MatrixX<Rational>& a) const {
    for (int axis = 0; axis < 3; ++axis)
      for (int sign : {1, -1}) {
        VectorX<Rational> x = VectorX<Rational>::Zero(n_);
        for (Eigen::Index k = 0; k < n_; k += 6) x[k + axis] = sign;
        if (feasible(a, x)) return x;
      }
    return std::nullopt;
  }

  std::optional<VectorX<Rational>> aggregate(const MatrixX<Rational>& a) {
    // A positive optimum of Σ z_r·row_r (any z > 0) gives a motion opening some
    // contact; a zero optimum means the cone is the null space of A. Generic
    // weights keep the simplex clear of the heavy degeneracy of z = 1.
    std::mt19937 rng(20240601);
    std::uniform_int_distribution<int> weight(1, 64);
    VectorX<Rational> z(a.rows());
    for (auto& v : z) v = weight(rng);
    const VectorX<Rational> c = a.transpose() * z;
    const LpResult lp = lp_maximize(c, a);
    out_.lps.push_back({label("max weighted sum of rows"), lp.optimum, lp.pivots});
    if (lp.optimum > 0) return lp.x;
    auto basis = nullspace(a);
    if (basis.empty()) return std::nullopt;
    return basis.front();
  }

  std::optional<VectorX<Rational>> per_variable(const MatrixX<Rational>& a) {
    for (Eigen::Index k = 0; k < n_; ++k)
      for (int sign : {1, -1}) {
        VectorX<Rational> c = VectorX<Rational>::Zero(n_);
        c[k] = sign;
        const LpResult lp = lp_maximize(c, a);
        out_.lps.push_back({label(std::string(sign > 0 ? "max x" : "max -x") + std::to_string(k)), lp.optimum, lp.pivots});
        if (lp.optimum > 0) return lp.x;
      }
    return std::nullopt;
  }

  const ConstraintSystem& sys_;
  const InterlockOptions& opt_;
  InterlockVerdict& out_;
  Eigen::Index n_;
};

}  // namespace

std::vector<std::size_t> ContactModel::free_blocks() const {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < num_blocks; ++b)
    if (!frame[b]) out.push_back(b);
  return out;
}

ContactModel contact_model(const AssemblyModel& a, bool point_contacts) {
  ContactModel m;
  m.num_blocks = a.size();
  for (std::size_t b = 0; b < a.size(); ++b) {
    m.frame.push_back(a.is_frame(b));
    m.reference.push_back(centroid(a.cells(b)));
  }
  for (const auto& f : contact_faces(a)) {
    if (a.is_frame(f.i) && a.is_frame(f.j)) continue;
    FaceContact c{f.i, f.j, {}, to_rational(f.normal)};
    for (const auto& p : f.triangle) c.polygon.push_back(to_rational(p));
    m.faces.push_back(std::move(c));
  }
  if (!point_contacts) return m;

  std::vector<IncidenceMap> inc(a.size());
  std::map<Vector3i, std::vector<std::size_t>, LexLess> owners;
  for (std::size_t b = 0; b < a.size(); ++b) {
    for (const auto& t : boundary_triangles(a.cells(b)))
      for (const auto& p : t) inc[b][p].push_back({t, face_direction(t)});
    for (const auto& [p, _] : inc[b]) owners[p].push_back(b);
  }

  for (const auto& [p, blocks] : owners) {
    if (blocks.size() < 2) continue;
    std::map<std::size_t, LocalShape> shape;
    for (auto b : blocks) shape[b] = local_shape(inc[b].at(p), p);
    const Vector3q pq = to_rational(p);
    for (auto i : blocks)
      for (auto j : blocks) {
        if (i == j || (a.is_frame(i) && a.is_frame(j))) continue;
        const LocalShape& si = shape[i];
        const LocalShape& sj = shape[j];
        if (sj.kind == LocalShape::Kind::flat) {
          m.points.push_back({i, j, pq, to_rational(Vector3i(-sj.normal))});
          continue;
        }
        if (i > j || si.kind != LocalShape::Kind::wedge || sj.kind != LocalShape::Kind::wedge) continue;
        if (!parallel(si.edge, sj.edge)) {
          Vector3i n = si.edge.cross(sj.edge);
          const int s_i = side(inc[i].at(p), p, n);
          if (s_i == 0) continue;
          if (s_i > 0) n = -n;
          if (side(inc[j].at(p), p, n) < 0) continue;
          m.points.push_back({i, j, pq, to_rational(n)});
        } else if (auto opts = collinear_options(si, sj)) {
          m.edges.push_back({i, j, pq, {to_rational((*opts)[0]), to_rational((*opts)[1])}});
        }
      }
  }
  return m;
}

bool ConstraintSystem::admits(const VectorX<Rational>& x) const {
  if (x.size() != num_variables()) return false;
  if (!feasible(rows, x)) return false;
  for (const auto& d : disjunctions)
    if (d[0].dot(x) < 0 && d[1].dot(x) < 0) return false;
  return true;
}

ConstraintSystem motion_constraints(const ContactModel& model) {
  if (model.frame.size() != model.num_blocks || model.reference.size() != model.num_blocks)
    throw InterlockError("contact model block data is inconsistent");
  ConstraintSystem sys;
  sys.free_blocks = model.free_blocks();
  if (sys.free_blocks.empty()) throw InterlockError("assembly has no free block");
  const RowBuilder rb(model);

  std::vector<VectorX<Rational>> rows;
  std::set<std::vector<Rational>> seen;
  for (const auto& f : model.faces)
    for (const auto& p : f.polygon) {
      rows.push_back(rb.row(f.i, f.j, p, f.normal));
      seen.insert(key_of(rows.back()));
    }
  sys.face_rows = rows.size();
  for (const auto& c : model.points) {
    auto r = rb.row(c.i, c.j, c.point, c.normal);
    if (r.isZero() || !seen.insert(key_of(r)).second) continue;
    rows.push_back(std::move(r));
  }
  sys.rows = stack(rows, rb.n);

  std::set<std::vector<Rational>> seen_options;
  for (const auto& e : model.edges) {
    std::array<VectorX<Rational>, 2> d = {rb.row(e.j, e.i, e.point, e.normals[0]),
                                          rb.row(e.j, e.i, e.point, e.normals[1])};
    if (d[0].isZero() || d[1].isZero()) continue;  // trivially satisfiable
    auto k0 = key_of(d[0]), k1 = key_of(d[1]);
    if (seen.count(k0) || seen.count(k1)) continue;  // implied by a plain row
    if (k1 < k0) {
      std::swap(d[0], d[1]);
      std::swap(k0, k1);
    }
    k0.insert(k0.end(), k1.begin(), k1.end());
    if (!seen_options.insert(k0).second) continue;
    sys.disjunctions.push_back(std::move(d));
  }
  return sys;
}

ConstraintSystem motion_constraints(const AssemblyModel& a, bool point_contacts) {
  return motion_constraints(contact_model(a, point_contacts));
}

InterlockVerdict check_interlocking(const ContactModel& model, const InterlockOptions& options) {
  const ConstraintSystem sys = motion_constraints(model);
  InterlockVerdict v;
  v.rows = static_cast<std::size_t>(sys.rows.rows());
  v.disjunctions = sys.disjunctions.size();
  Search search(sys, options, v);
  auto x = search.run();
  if (!x) {
    v.interlocked = true;
    return v;
  }
  v.witness_vector = normalized(std::move(*x));
  if (v.witness_vector.isZero() || !sys.admits(v.witness_vector))
    throw InterlockError("witness failed the exact feasibility check");
  for (std::size_t k = 0; k < sys.free_blocks.size(); ++k) {
    const auto base = static_cast<Eigen::Index>(6 * k);
    v.witness.push_back({sys.free_blocks[k], v.witness_vector.segment<3>(base), v.witness_vector.segment<3>(base + 3)});
  }
  return v;
}

InterlockVerdict check_interlocking(const AssemblyModel& a, const InterlockOptions& options) {
  return check_interlocking(contact_model(a, options.point_contacts), options);
}

}  // namespace tetroc
