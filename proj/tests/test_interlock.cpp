#include "support/oracles.hpp"
#include "tetroc/errors.hpp"
#include "tetroc/interlock.hpp"

#include <doctest.h>

#include <random>

using namespace tetroc;

namespace {

AssemblyModel single(const Block& b, bool frame = false) {
  return AssemblyModel({b}, {Placement{0, HoneycombIsometry::identity(), frame}});
}

void check_witness(const ConstraintSystem& sys, const InterlockVerdict& v) {
  REQUIRE_FALSE(v.interlocked);
  REQUIRE(v.witness_vector.size() == sys.num_variables());
  CHECK(sys.admits(v.witness_vector));
  Rational m = 0;
  for (const auto& x : v.witness_vector) m = std::max(m, Rational(abs(x)));
  CHECK(m == 1);
  CHECK(v.witness.size() == sys.free_blocks.size());
}

HoneycombIsometry random_isometry(std::mt19937_64& rng) {
  const auto& g = point_group()[rng() % 48];
  std::uniform_int_distribution<int> t(-4, 4);
  Vector3i s(t(rng), t(rng), t(rng));
  if (!is_lattice_point(s)) s[0] += 1;
  return HoneycombIsometry(g.rotation, s);
}

}  // namespace

TEST_CASE("face rows: one free tetrahedron on a frame octahedron") {
  const CellKey t = CellKey::tet(0, 0, 0);
  const Triangle f = cell_faces(t).front();
  const CellKey o = cell_neighbor(t, f);
  AssemblyModel a({make_custom_block("t", {t}), make_custom_block("o", {o})},
                  {Placement{0, {}, false}, Placement{1, {}, true}});
  const auto sys = motion_constraints(a);
  CHECK(sys.num_variables() == 6);
  CHECK(sys.face_rows == 3);
  CHECK(sys.rows.rows() == 3);
  CHECK(sys.disjunctions.empty());
  // Each row is (−n, −(p − c)×n) for the shared face.
  const Vector3q n = to_rational(face_direction(f));
  const Vector3q c = centroid(CellSet{t});
  for (Eigen::Index r = 0; r < 3; ++r) {
    bool matched = false;
    for (const auto& p : f) {
      const Vector3q arm = (to_rational(p) - c).cross(n);
      VectorX<Rational> expect(6);
      expect << -n, -arm;
      // rows are scaled to primitive integers
      const Rational k = sys.rows(r, 0) / expect[0];
      matched = matched || (k > 0 && sys.rows.row(r).transpose() == expect * k);
    }
    CHECK(matched);
  }
  auto v = check_interlocking(a);
  check_witness(sys, v);
}

TEST_CASE("face rows count three per contact triangle") {
  const auto a = generate_assembly(AssemblyKind::cushion_grid, {1, 3, 3});
  std::size_t live = 0;
  for (const auto& f : contact_faces(a)) live += !(a.is_frame(f.i) && a.is_frame(f.j));
  const auto sys = motion_constraints(a);
  CHECK(sys.face_rows == 3 * live);
  CHECK(sys.free_blocks == std::vector<std::size_t>{4});
  CHECK(sys.num_variables() == 6);
}

TEST_CASE("no free block is an error") {
  const auto a = single(make_kitten(), true);
  CHECK_THROWS_AS(motion_constraints(a), InterlockError);
  CHECK_THROWS_AS(check_interlocking(a), InterlockError);
}

TEST_CASE("an isolated block escapes by a pure translation") {
  for (const Block& b : {make_kitten(), make_ufo(), make_cushion(2), make_shuriken(2, 3), make_scaled(Platonic::octa, 2)}) {
    const auto a = single(b);
    const auto sys = motion_constraints(a);
    CHECK(sys.rows.rows() == 0);
    for (auto strategy : {Strategy::aggregate, Strategy::per_variable}) {
      const auto v = check_interlocking(a, {strategy});
      check_witness(sys, v);
      CHECK(v.witness[0].angular.isZero());
      CHECK_FALSE(v.witness[0].linear.isZero());
    }
  }
}

TEST_CASE("a vertex resting on a flat face gives a point contact") {
  // The 3-scaled tetrahedron has a lattice point in the middle of each face.
  const Block big = make_scaled(Platonic::tetra, 3);
  const auto tris = boundary_triangles(big.cells);
  std::map<Vector3i, std::set<Vector3i, LexLess>, LexLess> normals_at;
  for (const auto& t : tris)
    for (const auto& p : t) normals_at[p].insert(face_direction(t));
  Vector3i p, n;
  bool found = false;
  for (const auto& [q, ns] : normals_at)
    if (ns.size() == 1 && !found) {
      p = q;
      n = *ns.begin();
      found = true;
    }
  REQUIRE(found);
  // A tetrahedron with a corner at p lying entirely on the outer side of the face.
  std::optional<CellKey> small;
  for (int dx = -1; dx <= 0; ++dx)
    for (int dy = -1; dy <= 0; ++dy)
      for (int dz = -1; dz <= 0; ++dz) {
        const CellKey c = CellKey::tet(p + Vector3i(dx, dy, dz));
        auto vs = cell_vertices(c);
        if (std::find(vs.begin(), vs.end(), p) == vs.end()) continue;
        bool outside = true;
        for (const auto& q : vs) outside = outside && (q == p || n.dot(q - p) > 0);
        if (outside && !small) small = c;
      }
  REQUIRE(small);
  AssemblyModel a({big, make_custom_block("t", {*small})}, {Placement{0, {}, true}, Placement{1, {}, false}});
  CHECK(contact_faces(a).empty());
  const auto model = contact_model(a);
  REQUIRE(model.points.size() == 1);
  CHECK(model.points[0].i == 1);
  CHECK(model.points[0].point == to_rational(p));
  CHECK(model.points[0].normal == to_rational(Vector3i(-n)));
  const auto sys = motion_constraints(model);
  CHECK(sys.face_rows == 0);
  CHECK(sys.rows.rows() == 1);
  const auto v = check_interlocking(model);
  check_witness(sys, v);
  CHECK(motion_constraints(contact_model(a, false)).rows.rows() == 0);
}

TEST_CASE("perimeter-framed grids interlock") {
  struct Case {
    AssemblyKind kind;
    std::vector<int> params;
  };
  for (const auto& c : {Case{AssemblyKind::cushion_grid, {1, 5, 5}}, Case{AssemblyKind::cushion_grid, {3, 5, 5}},
                        Case{AssemblyKind::shuriken_grid, {1, 1, 4, 4}}, Case{AssemblyKind::tetra_interlocking, {5, 5}},
                        Case{AssemblyKind::octa_interlocking, {5, 5}}}) {
    const auto framed = generate_assembly(c.kind, c.params);
    CHECK(check_interlocking(framed).interlocked);

    const auto open = generate_assembly(c.kind, c.params, FrameMode::none);
    const auto sys = motion_constraints(open);
    const auto v = check_interlocking(open);
    check_witness(sys, v);
    // Without a frame the whole assembly slides along +x.
    for (const auto& m : v.witness) {
      CHECK(m.linear == Vector3q(1, 0, 0));
      CHECK(m.angular.isZero());
    }
  }
}

TEST_CASE("face contacts alone do not pin the 3-cushion and tetrahedra grids") {
  // Their free blocks meet the frame partly along edges and at vertices.
  for (const auto& a : {generate_assembly(AssemblyKind::cushion_grid, {3, 5, 5}),
                        generate_assembly(AssemblyKind::tetra_interlocking, {5, 5})}) {
    InterlockOptions faces_only;
    faces_only.point_contacts = false;
    const auto v = check_interlocking(a, faces_only);
    CHECK_FALSE(v.interlocked);
    check_witness(motion_constraints(a, false), v);
  }
  const auto m = contact_model(generate_assembly(AssemblyKind::cushion_grid, {3, 5, 5}));
  CHECK_FALSE(m.edges.empty());
}

TEST_CASE("witnesses are homogeneous") {
  std::mt19937_64 rng(3);
  for (const auto& a : {generate_assembly(AssemblyKind::cushion_grid, {3, 3, 3}, FrameMode::none),
                        generate_assembly(AssemblyKind::tetra_interlocking, {3, 4}).with_frame(
                            std::vector<bool>(12, false))}) {
    const auto sys = motion_constraints(a);
    const auto v = check_interlocking(a);
    check_witness(sys, v);
    for (int k = 0; k < 3; ++k) {
      const Rational s(static_cast<long>(1 + rng() % 1000), static_cast<long>(1 + rng() % 1000));
      CHECK(sys.admits(VectorX<Rational>(v.witness_vector * s)));
    }
  }
}

TEST_CASE("freeing frame blocks never creates interlocking") {
  const auto base = generate_assembly(AssemblyKind::cushion_grid, {1, 5, 5});
  std::vector<bool> frame(base.size());
  for (std::size_t k = 0; k < base.size(); ++k) frame[k] = base.is_frame(k);
  bool was_free = false;
  // Release perimeter blocks one at a time; the frame sets are nested.
  for (std::size_t k = 0; k <= base.size(); ++k) {
    if (k < base.size() && !frame[k]) continue;
    const auto a = base.with_frame(frame);
    if (a.free_blocks().empty()) continue;
    const auto v = check_interlocking(a);
    if (was_free) CHECK_FALSE(v.interlocked);
    if (!v.interlocked) {
      was_free = true;
      check_witness(motion_constraints(a), v);
    }
    if (k < base.size()) frame[k] = false;
  }
  CHECK(was_free);
}

TEST_CASE("point contacts only add constraints") {
  for (const auto& a : {generate_assembly(AssemblyKind::cushion_grid, {1, 3, 3}),
                        generate_assembly(AssemblyKind::shuriken_grid, {1, 1, 3, 3}),
                        generate_assembly(AssemblyKind::octa_interlocking, {3, 3})}) {
    InterlockOptions faces_only;
    faces_only.point_contacts = false;
    if (check_interlocking(a, faces_only).interlocked) CHECK(check_interlocking(a).interlocked);
  }
}

TEST_CASE("aggregate and per-variable strategies agree") {
  std::vector<AssemblyModel> cases;
  for (auto fm : {FrameMode::perimeter, FrameMode::none}) {
    cases.push_back(generate_assembly(AssemblyKind::cushion_grid, {1, 3, 3}, fm));
    cases.push_back(generate_assembly(AssemblyKind::shuriken_grid, {1, 1, 3, 3}, fm));
    cases.push_back(generate_assembly(AssemblyKind::tetra_interlocking, {3, 3}, fm));
    cases.push_back(generate_assembly(AssemblyKind::octa_interlocking, {3, 3}, fm));
  }
  const auto base = generate_assembly(AssemblyKind::tetra_interlocking, {4, 4});
  std::vector<bool> frame(base.size(), false);
  frame[0] = frame[1] = true;
  cases.push_back(base.with_frame(frame));
  for (const auto& a : cases) {
    const auto agg = check_interlocking(a, {Strategy::aggregate});
    const auto per = check_interlocking(a, {Strategy::per_variable});
    CHECK(agg.interlocked == per.interlocked);
    if (!per.interlocked) check_witness(motion_constraints(a), per);
  }
}

TEST_CASE("verdicts are invariant under honeycomb isometries") {
  std::mt19937_64 rng(17);
  const std::vector<AssemblyModel> cases = {
      generate_assembly(AssemblyKind::cushion_grid, {1, 4, 4}),
      generate_assembly(AssemblyKind::cushion_grid, {3, 4, 4}),
      generate_assembly(AssemblyKind::tetra_interlocking, {4, 4}),
      generate_assembly(AssemblyKind::tetra_interlocking, {4, 4}, FrameMode::none),
  };
  for (const auto& a : cases) {
    const bool expected = check_interlocking(a).interlocked;
    for (int trial = 0; trial < 5; ++trial) {
      const auto moved = a.transformed(random_isometry(rng));
      CHECK(check_interlocking(moved).interlocked == expected);
    }
  }
}

TEST_CASE("tetrahedra grid with one corner freed") {
  // Regression record: the freed corner block can leave outward.
  const auto base = generate_assembly(AssemblyKind::tetra_interlocking, {5, 5});
  std::vector<bool> frame(base.size());
  for (std::size_t k = 0; k < base.size(); ++k) frame[k] = base.is_frame(k);
  frame[0] = false;
  const auto a = base.with_frame(frame);
  const auto v = check_interlocking(a);
  CHECK_FALSE(v.interlocked);
  check_witness(motion_constraints(a), v);
}

TEST_CASE("verdict bookkeeping") {
  const auto a = generate_assembly(AssemblyKind::cushion_grid, {3, 5, 5});
  const auto v = check_interlocking(a);
  CHECK(v.interlocked);
  CHECK(v.nodes >= 1);
  CHECK(v.disjunctions > 0);
  CHECK(v.lps.size() >= 1);
  for (const auto& lp : v.lps) CHECK(lp.optimum >= 0);
  InterlockOptions tight;
  tight.max_nodes = 1;
  CHECK_THROWS_AS(check_interlocking(a, tight), InterlockError);
}
