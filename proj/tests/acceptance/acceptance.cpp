// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: acceptance [AC01 ... AC12]; no arguments runs everything.

#include "support/meshes.hpp"
#include "support/oracles.hpp"
#include "support/reference_tables.hpp"
#include "tetroc/approx.hpp"
#include "tetroc/interlock.hpp"
#include "tetroc/modify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace tetroc;

namespace {

/// Collects sub-check failures; a criterion passes when there are none.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok && failures_.size() < 6) failures_.push_back(what);
    failed_ += !ok;
  }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream s;
    s << count_ - failed_ << "/" << count_ << " checks";
    for (const auto& f : failures_) s << "; failed: " << f;
    return s.str();
  }

 private:
  std::size_t count_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

struct Criterion {
  const char* id;
  const char* title;
  double budget_s;
  std::function<void(Checks&)> run;
};

std::string str(std::size_t v) { return std::to_string(v); }

// Velocity of the rigid motion of `placement` at p; frame blocks stay at rest.
Vector3q velocity(const std::vector<Motion>& w, const ContactModel& m, std::size_t placement, const Vector3q& p) {
  for (const auto& mo : w)
    if (mo.placement == placement) return mo.linear + mo.angular.cross(p - m.reference[placement]);
  return Vector3q::Zero();
}

/// Recomputes every contact condition from the geometry for a witness motion.
bool witness_admissible(const ContactModel& m, const std::vector<Motion>& w) {
  for (const auto& f : m.faces)
    for (const auto& p : f.polygon)
      if ((velocity(w, m, f.j, p) - velocity(w, m, f.i, p)).dot(f.normal) < 0) return false;
  for (const auto& c : m.points)
    if ((velocity(w, m, c.j, c.point) - velocity(w, m, c.i, c.point)).dot(c.normal) < 0) return false;
  for (const auto& e : m.edges) {
    const Vector3q rel = velocity(w, m, e.i, e.point) - velocity(w, m, e.j, e.point);
    if (rel.dot(e.normals[0]) < 0 && rel.dot(e.normals[1]) < 0) return false;
  }
  return true;
}

bool nonzero(const std::vector<Motion>& w) {
  for (const auto& mo : w)
    if (!mo.linear.isZero() || !mo.angular.isZero()) return true;
  return false;
}

HoneycombIsometry random_isometry(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> t(-6, 6);
  Vector3i shift(t(rng), t(rng), t(rng));
  if (shift.sum() % 2 != 0) shift[0] += 1;
  return HoneycombIsometry(point_group()[rng() % 48].rotation, shift);
}

std::set<std::array<int, 3>> relabel(const TriangleMesh<std::int64_t>& mesh, const std::vector<Vector3i>& coords,
                                     bool& ok) {
  std::set<std::array<int, 3>> out;
  for (const auto& t : mesh.triangles) {
    std::array<int, 3> f{};
    for (int k = 0; k < 3; ++k) {
      auto it = std::find(coords.begin(), coords.end(), mesh.vertices[t[k]]);
      if (it == coords.end()) {
        ok = false;
        return out;
      }
      f[k] = static_cast<int>(it - coords.begin()) + 1;
    }
    std::sort(f.begin(), f.end());
    out.insert(f);
  }
  return out;
}

void ac01(Checks& c) {
  const Block k = make_kitten();
  const auto mesh = boundary_surface(k);
  auto expected = reftab::kitten_coords;
  std::sort(expected.begin(), expected.end(), LexLess{});
  c.expect(mesh.vertices == expected, "vertex set equals the 8 printed coordinates");
  bool mapped = true;
  const auto faces = relabel(mesh, reftab::kitten_coords, mapped);
  c.expect(mapped && faces == std::set<std::array<int, 3>>(reftab::kitten_faces.begin(), reftab::kitten_faces.end()),
           "12 faces equal the printed face list under the printed numbering");
  c.expect(mesh.num_triangles() == 12, "12 triangles");
  const auto s = surface_stats(mesh);
  c.expect(s.euler_characteristic == 2, "chi = 2");
  c.expect(symmetry_group(k).size() == 4, "|symmetry group| = 4");
  c.expect(automorphism_group(mesh).order == 4, "|automorphism group| = 4");
}

void ac02(Checks& c) {
  for (int n = 1; n <= 8; ++n) {
    const Block b = make_cushion(n);
    c.expect(b.num_tetrahedra() == std::size_t(2 * (n + 1)) && b.num_octahedra() == std::size_t(n),
             "cushion(" + std::to_string(n) + ") counts");
  }
  for (int m = 1; m <= 5; ++m)
    for (int n = 1; n <= 5; ++n) {
      const Block b = make_shuriken(m, n);
      c.expect(b.num_tetrahedra() == std::size_t(4 * (m + n + 2)) && b.num_octahedra() == std::size_t(2 * (m + n)),
               "shuriken(" + std::to_string(m) + "," + std::to_string(n) + ") counts");
    }
  const auto listed = reftab::shuriken_cells();
  const CellSet set(listed.begin(), listed.end());
  c.expect(set.size() == 20, "printed shuriken list has 20 distinct cells");
  c.expect(find_isometry(set, make_shuriken(1, 1).cells).has_value(),
           "shuriken(1,1) equals the printed 20-cell list up to isometry (printed list has " +
               str(face_components(set)) + " face components)");
}

void ac03(Checks& c) {
  for (int m = 2; m <= 4; ++m)
    for (int n = 2; n <= 4; ++n) {
      const auto s = surface_stats(boundary_surface(make_shuriken(m, n)));
      const std::string tag = "shuriken(" + std::to_string(m) + "," + std::to_string(n) + ")";
      c.expect(s.euler_characteristic == 0, tag + " chi = 0");
      c.expect(s.is_manifold && s.is_orientable && s.num_components == 1 && s.genus == 1, tag + " is a torus");
    }
}

void ac04(Checks& c) {
  std::vector<Block> blocks{make_kitten(), make_ufo()};
  for (int n = 1; n <= 8; ++n) blocks.push_back(make_cushion(n));
  for (int m = 1; m <= 5; ++m)
    for (int n = 1; n <= 5; ++n) blocks.push_back(make_shuriken(m, n));
  for (int k = 1; k <= 4; ++k) {
    blocks.push_back(make_scaled(Platonic::tetra, k));
    blocks.push_back(make_scaled(Platonic::octa, k));
  }
  for (const auto& b : blocks) {
    const auto mesh = boundary_surface(b);
    c.expect(volume(b) == oracle::mesh_volume(mesh), b.name + " cell volume equals mesh volume");
  }
  std::vector<Block> sources(blocks.begin(), blocks.begin() + 35);
  sources.push_back(make_scaled(Platonic::tetra, 2));
  sources.push_back(make_scaled(Platonic::octa, 2));
  for (const auto& [a, cc] : {std::pair{Rational(1, 2), Rational(3, 2)}, std::pair{Rational(1, 3), Rational(2)}})
    for (const auto& b : sources) {
      const auto t = truncate_slab(b, a, cc);
      const Rational v = volume(t);
      c.expect(v == oracle::mesh_volume(boundary_surface(t)), "truncated " + b.name + " piece volume equals mesh volume");
      c.expect(v == oracle::slab_volume(b.cells, a, cc), "truncated " + b.name + " volume equals the section integral");
    }
  c.expect(volume(truncate_slab(make_scaled(Platonic::tetra, 2))) == Rational(11, 6), "Abeille block volume 11/6");
}

void ac05(Checks& c) {
  std::mt19937_64 rng(20240601);
  std::size_t interior = 0;
  for (int n = 0; n < 10000; ++n) {
    // Small denominators put many points on faces, edges and vertices.
    const Vector3q q = oracle::random_rational_point(rng, 6, n % 2 ? 4 : 60);
    bool strictly = false;
    const auto expected = oracle::locate(q, &strictly);
    const auto got = locate(q);
    c.expect(std::vector<CellKey>(got.begin(), got.end()) == expected, "locate agrees at point " + str(n));
    if (strictly) {
      ++interior;
      c.expect(got.size() == 1, "interior point yields one cell");
    }
  }
  c.expect(interior > 1000, "enough interior samples");
}

void ac06(Checks& c) {
  const Block t = make_scaled(Platonic::tetra, 2), o = make_scaled(Platonic::octa, 2);
  c.expect(t.num_tetrahedra() == 4 && t.num_octahedra() == 1, "tetra(2) = 4 tets + 1 oct");
  c.expect(o.num_tetrahedra() == 8 && o.num_octahedra() == 6, "octa(2) = 8 tets + 6 octs");
  c.expect(volume(t) == Rational(8, 3) && volume(o) == Rational(32, 3), "volumes 8/3 and 32/3");
}

void ac07(Checks& c) {
  using K = AssemblyKind;
  const std::vector<std::pair<K, std::vector<int>>> cases{{K::cushion_grid, {1, 5, 5}},
                                                           {K::cushion_grid, {3, 5, 5}},
                                                           {K::shuriken_grid, {1, 1, 4, 4}},
                                                           {K::tetra_interlocking, {5, 5}}};
  const char* names[] = {"cushion_grid(1,5,5)", "cushion_grid(3,5,5)", "shuriken_grid(1,1,4,4)", "tetra_interlocking(5,5)"};
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& [kind, params] = cases[k];
    const auto t0 = std::chrono::steady_clock::now();
    const auto v = check_interlocking(generate_assembly(kind, params, FrameMode::perimeter));
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(v.interlocked, std::string(names[k]) + " with perimeter frame is interlocked");
    c.expect(s < 60, std::string(names[k]) + " checked in under 60 s");

    const auto open = generate_assembly(kind, params, FrameMode::none);
    const auto w = check_interlocking(open);
    c.expect(!w.interlocked, std::string(names[k]) + " without frame is not interlocked");
    c.expect(nonzero(w.witness) && witness_admissible(contact_model(open), w.witness),
             std::string(names[k]) + " witness is nonzero and exactly feasible");
  }
  const AssemblyModel single({make_kitten()}, {Placement{0, HoneycombIsometry::identity(), false}});
  const auto v = check_interlocking(single);
  c.expect(!v.interlocked && nonzero(v.witness) && witness_admissible(contact_model(single), v.witness),
           "single free block is not interlocked");
}

void ac08(Checks& c) {
  const auto model = generate_assembly(AssemblyKind::tetra_interlocking, {5, 5});
  const auto t = truncate_assembly(model);
  c.expect(contact_pairs(t) == contact_pairs(model), "contact-pair set preserved");
  c.expect(check_interlocking(t.model).interlocked, "truncated assembly is interlocked");
  for (std::size_t i = 0; i < t.blocks.size(); ++i)
    for (const auto& piece : t.blocks[i].pieces) {
      // A convex piece lies in the source when one source cell holds all its vertices.
      bool inside = false;
      for (const auto& cell : model.cells(i)) {
        bool all = true;
        for (const auto& p : piece.vertices) all = all && oracle::classify(cell, p) >= 0;
        if (all) {
          inside = true;
          break;
        }
      }
      c.expect(inside, "piece of block " + str(i) + " lies inside its source");
    }
}

void ac09(Checks& c) {
  for (int k = 2; k <= 8; ++k) {
    const auto g = assembly_graph(generate_assembly(AssemblyKind::kitten_strip, {k}));
    c.expect(g.is_tree() && oracle::is_path_graph(g.num_nodes, g.edges), "kitten_strip(" + std::to_string(k) + ") is a path");
  }
  for (int n : {1, 3})
    for (const auto& [r, cc] : {std::pair{3, 3}, std::pair{4, 5}}) {
      const auto g = assembly_graph(generate_assembly(AssemblyKind::cushion_grid, {n, r, cc}));
      c.expect(isomorphic(g, grid_graph(r, cc)), "cushion_grid(" + std::to_string(n) + "," + std::to_string(r) + "," +
                                                     std::to_string(cc) + ") is a grid graph");
    }
  for (int d : {3, 4}) {
    const auto g11 = assembly_graph(generate_assembly(AssemblyKind::shuriken_grid, {1, 1, d, d}));
    const auto g22 = assembly_graph(generate_assembly(AssemblyKind::shuriken_grid, {2, 2, d, d}));
    c.expect(isomorphic(g11, g22), "shuriken grids (1,1) and (2,2) on " + std::to_string(d) + "x" + std::to_string(d) +
                                       " are isomorphic");
  }
}

void ac10(Checks& c) {
  const std::array<LatticeVector, 3> basis{v1(), Vector3i(v2() - v3()), v2()};
  Matrix3i m;
  m << basis[0], basis[1], basis[2];
  c.expect(Rational(std::abs(m.determinant())) == volume(make_kitten()), "|det basis| = volume(kitten) = 2");
  c.expect(volume(make_kitten()) == 2, "volume(kitten) = 2");
  c.expect(tiles(make_kitten(), basis, {Vector3i::Zero(), Vector3i::Constant(5)}), "kitten tiles the 6^3 region");
}

void ac11(Checks& c) {
  const auto sphere = make_input_mesh(testmesh::icosphere(3));
  double last = 0;
  for (int r : {2, 4, 6, 8}) {
    ApproxParams p;
    p.scale = r;
    p.mode = ApproxMode::solid;
    const double ratio =
        to_double(volume(solid_approx(sphere, p))) / (4.0 / 3.0 * std::numbers::pi * r * r * r);
    c.expect(ratio > last, "solid volume ratio increases at r=" + std::to_string(r));
    last = ratio;
  }
  ApproxParams p;
  p.scale = 4;
  p.samples = 3;
  const auto shell = shell_approx(sphere, p);
  c.expect(!shell.empty(), "shell is nonempty");
  for (const auto& cell : shell) {
    const double d = std::sqrt(to_double(cell_centroid(cell).squaredNorm()));
    c.expect(std::abs(d - 4.0) <= 2.0, "shell cell " + to_string(cell) + " within distance 2 of the sphere");
  }
}

void ac12(Checks& c) {
  CellSet census;
  const Rational lim(3, 2);
  for (int x = -3; x <= 3; ++x)
    for (int y = -3; y <= 3; ++y)
      for (int z = -3; z <= 3; ++z) {
        std::vector<CellKey> cands{CellKey::tet(x, y, z)};
        if ((x + y + z) % 2 != 0) cands.push_back(CellKey::oct(x, y, z));
        for (const auto& cell : cands) {
          const Vector3q g = cell_centroid(cell);
          if (g.cwiseAbs().maxCoeff() <= lim) census.insert(cell);
        }
      }
  c.expect(census.size() == 78, "census has 64 tets and 14 octs");
  for (const auto& g : point_group()) c.expect(transform(census, g) == census, "signed permutation preserves the census");

  const std::vector<AssemblyModel> models{
      generate_assembly(AssemblyKind::cushion_grid, {1, 5, 5}),
      generate_assembly(AssemblyKind::shuriken_grid, {1, 1, 4, 4}),
      generate_assembly(AssemblyKind::tetra_interlocking, {5, 5}, FrameMode::none),
  };
  std::vector<bool> verdicts;
  for (const auto& m : models) verdicts.push_back(check_interlocking(m).interlocked);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const auto g = random_isometry(rng);
    for (std::size_t k = 0; k < models.size(); ++k) {
      const auto moved = models[k].transformed(g);
      c.expect(check_interlocking(moved).interlocked == verdicts[k], "verdict unchanged in trial " + std::to_string(trial));
      c.expect(isomorphic(assembly_graph(moved), assembly_graph(models[k])), "graph class unchanged in trial " + std::to_string(trial));
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"AC01", "kitten fidelity", 1, ac01},
      {"AC02", "family counts", 1, ac02},
      {"AC03", "shuriken topology", 5, ac03},
      {"AC04", "volume oracle", 5, ac04},
      {"AC05", "point location", 30, ac05},
      {"AC06", "scaled solids", 1, ac06},
      {"AC07", "interlocking verdicts", 4 * 60 + 60, ac07},
      {"AC08", "truncation", 60, ac08},
      {"AC09", "assembly graphs", 5, ac09},
      {"AC10", "kitten space filling", 10, ac10},
      {"AC11", "approximation", 120, ac11},
      {"AC12", "honeycomb symmetry", 60, ac12},
  };
  std::set<std::string> wanted(argv + 1, argv + argc);
  int failed = 0, ran = 0;
  for (const auto& cr : criteria) {
    if (!wanted.empty() && !wanted.count(cr.id)) continue;
    ++ran;
    Checks checks;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(checks);
    } catch (const std::exception& e) {
      checks.expect(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    checks.expect(s < cr.budget_s, "time budget " + std::to_string(static_cast<int>(cr.budget_s)) + " s");
    const bool ok = checks.ok();
    failed += !ok;
    std::printf("%s %s %s: %s [%.2f s]\n", cr.id, ok ? "PASS" : "FAIL", cr.title, checks.summary().c_str(), s);
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::fprintf(stderr, "unknown criterion\n");
    return 2;
  }
  return failed ? 1 : 0;
}
