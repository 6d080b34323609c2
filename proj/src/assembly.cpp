#include "tetroc/assembly.hpp"

#include "tetroc/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace tetroc {

namespace {

const Matrix3i& rot_x() {
  static const Matrix3i r = (Matrix3i() << 1, 0, 0, 0, 0, -1, 0, 1, 0).finished();
  return r;
}

LatticeVector d_vec() { return v2() - v3(); }

using TriangleSet = std::set<Triangle, decltype(&triangle_less)>;

TriangleSet canonical_boundary(const CellSet& cells) {
  TriangleSet out(&triangle_less);
  for (const auto& t : boundary_triangles(cells)) out.insert(canonical(t));
  return out;
}

Triangle shifted(const Triangle& t, const Vector3i& s) { return {t[0] + s, t[1] + s, t[2] + s}; }

}  // namespace

bool GridLayout::on_perimeter(std::size_t k) const {
  const auto [i, j] = coords.at(k);
  return i == 0 || j == 0 || i == rows - 1 || j == cols - 1;
}

AssemblyModel::AssemblyModel(std::vector<Block> blocks, std::vector<Placement> placements,
                             std::optional<GridLayout> layout)
    : blocks_(std::move(blocks)), placements_(std::move(placements)), layout_(std::move(layout)) {
  if (layout_ && layout_->coords.size() != placements_.size()) throw Error("grid layout does not match placements");
  std::map<CellKey, std::size_t> owner;
  cells_.reserve(placements_.size());
  for (std::size_t i = 0; i < placements_.size(); ++i) {
    const auto& p = placements_[i];
    if (p.block >= blocks_.size()) throw Error("placement " + std::to_string(i) + " refers to a missing block");
    cells_.push_back(transform(blocks_[p.block].cells, p.isometry));
    for (const auto& c : cells_.back()) {
      auto [it, fresh] = owner.emplace(c, i);
      if (!fresh) {
        throw OverlapError(it->second, i,
                           "placements " + std::to_string(it->second) + " and " + std::to_string(i) +
                               " overlap in cell " + to_string(c));
      }
    }
  }
}

std::vector<std::size_t> AssemblyModel::frame() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (placements_[i].is_frame) out.push_back(i);
  return out;
}

std::vector<std::size_t> AssemblyModel::free_blocks() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (!placements_[i].is_frame) out.push_back(i);
  return out;
}

AssemblyModel AssemblyModel::with_frame(const std::vector<bool>& frame) const {
  if (frame.size() != size()) throw Error("frame flags do not match the number of placements");
  AssemblyModel copy = *this;
  for (std::size_t i = 0; i < size(); ++i) copy.placements_[i].is_frame = frame[i];
  return copy;
}

AssemblyModel AssemblyModel::with_perimeter_frame() const {
  if (!layout_) throw Error("assembly has no grid layout");
  std::vector<bool> f(size());
  for (std::size_t i = 0; i < size(); ++i) f[i] = layout_->on_perimeter(i);
  return with_frame(f);
}

AssemblyModel AssemblyModel::with_empty_frame() const { return with_frame(std::vector<bool>(size(), false)); }

AssemblyModel AssemblyModel::transformed(const HoneycombIsometry& g) const {
  std::vector<Placement> moved = placements_;
  for (auto& p : moved) p.isometry = g * p.isometry;
  return AssemblyModel(blocks_, std::move(moved), layout_);
}

std::vector<ContactFace> contact_faces(const AssemblyModel& a) {
  std::map<Triangle, std::pair<std::size_t, Triangle>, decltype(&triangle_less)> seen(&triangle_less);
  std::vector<ContactFace> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (const auto& t : boundary_triangles(a.cells(i))) {
      auto [it, fresh] = seen.try_emplace(canonical(t), i, t);
      if (fresh) continue;
      // The earlier placement owns the orientation.
      const auto& [first, tri] = it->second;
      out.push_back({first, i, tri, face_direction(tri)});
    }
  }
  std::sort(out.begin(), out.end(), [](const ContactFace& x, const ContactFace& y) {
    if (x.i != y.i) return x.i < y.i;
    if (x.j != y.j) return x.j < y.j;
    return triangle_less(canonical(x.triangle), canonical(y.triangle));
  });
  return out;
}

std::vector<std::size_t> AssemblyGraph::degrees() const {
  std::vector<std::size_t> d(num_nodes, 0);
  for (auto [a, b] : edges) {
    ++d[a];
    ++d[b];
  }
  return d;
}

bool AssemblyGraph::is_connected() const {
  if (num_nodes == 0) return true;
  std::vector<std::vector<std::size_t>> adj(num_nodes);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> seen(num_nodes, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 0;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    ++count;
    for (auto w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  return count == num_nodes;
}

AssemblyGraph assembly_graph(const AssemblyModel& a) {
  AssemblyGraph g{a.size(), {}};
  std::set<std::pair<std::size_t, std::size_t>> e;
  for (const auto& c : contact_faces(a)) e.emplace(c.i, c.j);
  g.edges.assign(e.begin(), e.end());
  return g;
}

AssemblyGraph grid_graph(int rows, int cols) {
  AssemblyGraph g{static_cast<std::size_t>(rows * cols), {}};
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const std::size_t k = static_cast<std::size_t>(i * cols + j);
      if (i + 1 < rows) g.edges.emplace_back(k, k + cols);
      if (j + 1 < cols) g.edges.emplace_back(k, k + 1);
    }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

AssemblyGraph path_graph(std::size_t n) {
  AssemblyGraph g{n, {}};
  for (std::size_t k = 0; k + 1 < n; ++k) g.edges.emplace_back(k, k + 1);
  return g;
}

bool isomorphic(const AssemblyGraph& g, const AssemblyGraph& h) {
  if (g.num_nodes != h.num_nodes || g.edges.size() != h.edges.size()) return false;
  const std::size_t n = g.num_nodes;
  auto dg = g.degrees(), dh = h.degrees();
  {
    auto a = dg, b = dh;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return false;
  }
  std::vector<std::vector<char>> ag(n, std::vector<char>(n, 0)), ah = ag;
  for (auto [a, b] : g.edges) ag[a][b] = ag[b][a] = 1;
  for (auto [a, b] : h.edges) ah[a][b] = ah[b][a] = 1;
  // Order g's nodes breadth-first so that each node has an assigned neighbour.
  std::vector<std::size_t> order;
  std::vector<char> seen(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    if (seen[r]) continue;
    seen[r] = 1;
    std::vector<std::size_t> q{r};
    for (std::size_t k = 0; k < q.size(); ++k) {
      order.push_back(q[k]);
      for (std::size_t w = 0; w < n; ++w)
        if (ag[q[k]][w] && !seen[w]) {
          seen[w] = 1;
          q.push_back(w);
        }
    }
  }
  std::vector<std::size_t> image(n, n);
  std::vector<char> used(n, 0);
  std::function<bool(std::size_t)> extend = [&](std::size_t depth) {
    if (depth == n) return true;
    const std::size_t v = order[depth];
    for (std::size_t w = 0; w < n; ++w) {
      if (used[w] || dg[v] != dh[w]) continue;
      bool ok = true;
      for (std::size_t d = 0; d < depth && ok; ++d) ok = ag[v][order[d]] == ah[w][image[order[d]]];
      if (!ok) continue;
      image[v] = w;
      used[w] = 1;
      if (extend(depth + 1)) return true;
      used[w] = 0;
    }
    return false;
  };
  return extend(0);
}

HoneycombIsometry GridRule::placement(int i, int j) const {
  HoneycombIsometry g = HoneycombIsometry::translate(Vector3i(i * u + j * w));
  if (alternate && ((i + j) % 2 + 2) % 2 == 1) g = g * *alternate;
  return g;
}

namespace {

enum class Relation { none, contact, overlap };

/// Relation between a block and translated copies of a (possibly rotated) copy.
class ShiftTable {
 public:
  ShiftTable(const CellSet& base, const CellSet& moving)
      : base_(base), base_tris_(canonical_boundary(base)), moving_(moving) {
    for (const auto& t : boundary_triangles(moving)) moving_tris_.push_back(canonical(t));
  }

  Relation operator()(const Vector3i& s) {
    auto it = memo_.find(s);
    if (it != memo_.end()) return it->second;
    Relation r = Relation::none;
    for (const auto& c : moving_) {
      if (base_.count(apply_isometry(HoneycombIsometry::translate(s), c))) {
        r = Relation::overlap;
        break;
      }
    }
    if (r == Relation::none) {
      for (const auto& t : moving_tris_)
        if (base_tris_.count(shifted(t, s))) {
          r = Relation::contact;
          break;
        }
    }
    memo_.emplace(s, r);
    return r;
  }

 private:
  const CellSet& base_;
  TriangleSet base_tris_;
  CellSet moving_;
  std::vector<Triangle> moving_tris_;
  std::map<Vector3i, Relation, LexLess> memo_;
};

std::int64_t extent(const CellSet& cells) {
  Vector3i lo = Vector3i::Constant(std::numeric_limits<std::int64_t>::max());
  Vector3i hi = Vector3i::Constant(std::numeric_limits<std::int64_t>::min());
  for (const auto& c : cells)
    for (const auto& v : cell_vertices(c)) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
  return (hi - lo).maxCoeff();
}

/// Largest |Δi| or |Δj| for which Δi u + Δj w can have all components within `reach`.
int window(const Vector3i& u, const Vector3i& w, const Vector3i& normal, std::int64_t reach) {
  const std::int64_t area = std::abs(u.cross(w).dot(normal));
  const std::int64_t spread = (u.cwiseAbs().sum() + w.cwiseAbs().sum()) * normal.cwiseAbs().sum();
  return static_cast<int>(std::min<std::int64_t>(24, (2 * reach * spread) / std::max<std::int64_t>(area, 1) + 1));
}

}  // namespace

std::vector<GridRule> search_grid_translations(const Block& b, int bound, const SearchOptions& options) {
  if (bound < 1 || bound > 6) throw Error("search bound must lie in [1, 6]");
  const Vector3i n = options.normal;
  std::vector<Vector3i> vecs;
  for (int x = -bound; x <= bound; ++x)
    for (int y = -bound; y <= bound; ++y)
      for (int z = -bound; z <= bound; ++z) {
        Vector3i v(x, y, z);
        if (!v.isZero() && v.dot(n) == 0 && is_lattice_point(v)) vecs.push_back(v);
      }
  std::sort(vecs.begin(), vecs.end(), LexLess{});

  const std::int64_t reach = extent(b.cells) + 1;
  ShiftTable same(b.cells, b.cells);

  struct Alt {
    Matrix3i r;
    std::unique_ptr<ShiftTable> table;
  };
  std::vector<Alt> alts;
  if (options.alternating) {
    for (const auto& g : point_group()) {
      if (g.rotation * n == n && g.rotation != Matrix3i::Identity() && g.rotation.determinant() == 1) {
        alts.push_back({g.rotation, std::make_unique<ShiftTable>(b.cells, transform(b.cells, g))});
      }
    }
  }

  std::vector<GridRule> out;
  for (const auto& u : vecs) {
    for (const auto& w : vecs) {
      const std::int64_t area = u.cross(w).dot(n);
      if (area <= 0) continue;
      const int win = window(u, w, n, reach + 2 * bound);

      // Pure translations.
      {
        bool valid = true, touches = false, only_axis = true;
        for (int di = -win; di <= win && valid; ++di)
          for (int dj = -win; dj <= win && valid; ++dj) {
            if (di == 0 && dj == 0) continue;
            const Relation r = same(Vector3i(di * u + dj * w));
            valid = r != Relation::overlap;
            if (r == Relation::contact) {
              touches = true;
              if (std::abs(di) + std::abs(dj) != 1) only_axis = false;
            }
          }
        if (valid && touches) {
          const bool grid = only_axis && same(u) == Relation::contact && same(w) == Relation::contact;
          out.push_back({u, w, std::nullopt, area, grid});
        }
      }

      // Checkerboards: odd placements rotated about the normal, offset by t0.
      for (auto& alt : alts) {
        const Matrix3i rinv = alt.r.transpose();
        for (const auto& t0 : vecs) {
          ShiftTable& other = *alt.table;
          // Cheap filter: the first neighbour along u must touch.
          if (other(Vector3i(t0 + u)) != Relation::contact) continue;
          bool valid = true, only_axis = true;
          bool touches_even = false, touches_odd = false;
          for (int di = -win; di <= win && valid; ++di)
            for (int dj = -win; dj <= win && valid; ++dj) {
              if (di == 0 && dj == 0) continue;
              const Vector3i s = di * u + dj * w;
              const bool odd = ((di + dj) % 2) != 0;
              const Relation from_even = odd ? other(Vector3i(t0 + s)) : same(s);
              const Relation from_odd = odd ? other(Vector3i(t0 - s)) : same(Vector3i(rinv * s));
              valid = from_even != Relation::overlap && from_odd != Relation::overlap;
              const bool axis = std::abs(di) + std::abs(dj) == 1;
              if (from_even == Relation::contact) {
                touches_even = true;
                only_axis = only_axis && axis;
              }
              if (from_odd == Relation::contact) {
                touches_odd = true;
                only_axis = only_axis && axis;
              }
            }
          if (!valid || !touches_even || !touches_odd) continue;
          bool grid = only_axis;
          for (const Vector3i& s : {u, w, Vector3i(-u), Vector3i(-w)}) {
            grid = grid && other(Vector3i(t0 + s)) == Relation::contact && other(Vector3i(t0 - s)) == Relation::contact;
          }
          out.push_back({u, w, HoneycombIsometry(alt.r, t0), area, grid});
        }
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const GridRule& x, const GridRule& y) {
    if (x.area != y.area) return x.area < y.area;
    if (x.grid_graph != y.grid_graph) return x.grid_graph;
    return !x.alternate && y.alternate;
  });
  return out;
}

GridRule kitten_plane_rule() { return {v1(), d_vec(), std::nullopt, 2, false}; }

GridRule cushion_grid_rule(int n) {
  if (n < 1 || n % 2 == 0) {
    throw BlockError(BlockError::Kind::invalid_params,
                     "cushion grids exist for odd n only (no checkerboard of even cushions is face-to-face)");
  }
  const int k = (n - 1) / 2;
  const LatticeVector u = (k + 1) * v1() + k * d_vec();
  const LatticeVector w = k * v1() + (k + 1) * d_vec();
  const LatticeVector t0 = (k + 1) * (v1() - d_vec());
  return {u, w, HoneycombIsometry(rot_x(), t0), std::abs(u.cross(w)[0]), true};
}

GridRule shuriken_grid_rule(int m, int n) {
  const LatticeVector u = (n + 1) * v1();
  const LatticeVector w = (m + 1) * d_vec();
  return {u, w, std::nullopt, std::abs(u.cross(w)[0]), false};
}

GridRule tetra_interlocking_rule() {
  return {v1(), d_vec(), HoneycombIsometry(rot_x(), Vector3i(0, 2, 0)), 2, true};
}

GridRule octa_interlocking_rule() {
  const LatticeVector u(2, -1, -1), w(-1, 2, -1);
  return {u, w, std::nullopt, u.cross(w).dot(Vector3i(1, 1, 1)), false};
}

AssemblyModel grid_assembly(const Block& b, const GridRule& rule, int rows, int cols, FrameMode frame) {
  if (rows < 1 || cols < 1) throw Error("grid dimensions must be positive");
  GridLayout layout{rows, cols, {}};
  std::vector<Placement> placements;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      layout.coords.push_back({i, j});
      placements.push_back({0, rule.placement(i, j), false});
    }
  for (std::size_t k = 0; k < placements.size(); ++k)
    placements[k].is_frame = frame == FrameMode::perimeter && layout.on_perimeter(k);
  return AssemblyModel({b}, std::move(placements), std::move(layout));
}

AssemblyModel generate_assembly(AssemblyKind kind, const std::vector<int>& params, FrameMode frame) {
  auto need = [&](std::size_t count, const char* usage) {
    if (params.size() != count) throw BlockError(BlockError::Kind::invalid_params, usage);
    for (int p : params)
      if (p < 1) throw BlockError(BlockError::Kind::invalid_params, std::string(usage) + " (all >= 1)");
  };
  switch (kind) {
    case AssemblyKind::kitten_strip:
      need(1, "kitten_strip takes k");
      return grid_assembly(make_kitten(), {v1(), d_vec(), std::nullopt, 2, false}, params[0], 1, frame);
    case AssemblyKind::kitten_plane:
      need(2, "kitten_plane takes r c");
      return grid_assembly(make_kitten(), kitten_plane_rule(), params[0], params[1], frame);
    case AssemblyKind::cushion_grid:
      need(3, "cushion_grid takes n r c");
      return grid_assembly(make_cushion(params[0]), cushion_grid_rule(params[0]), params[1], params[2], frame);
    case AssemblyKind::shuriken_grid:
      need(4, "shuriken_grid takes m n r c");
      return grid_assembly(make_shuriken(params[0], params[1]), shuriken_grid_rule(params[0], params[1]), params[2],
                           params[3], frame);
    case AssemblyKind::tetra_interlocking:
      need(2, "tetra_interlocking takes r c");
      return grid_assembly(make_scaled(Platonic::tetra, 2), tetra_interlocking_rule(), params[0], params[1], frame);
    case AssemblyKind::octa_interlocking:
      need(2, "octa_interlocking takes r c");
      return grid_assembly(make_scaled(Platonic::octa, 2), octa_interlocking_rule(), params[0], params[1], frame);
  }
  throw Error("unknown assembly kind");
}

}  // namespace tetroc
