#pragma once

#include "tetroc/blocks.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace tetroc {

struct Placement {
  std::size_t block = 0;  ///< index into AssemblyModel::blocks()
  HoneycombIsometry isometry;
  bool is_frame = false;
};

/// Grid coordinates of generated assemblies; placement k sits at coords[k].
struct GridLayout {
  int rows = 0;
  int cols = 0;
  std::vector<std::array<int, 2>> coords;
  bool on_perimeter(std::size_t k) const;
};

/// Validated, immutable set of placed blocks. Construction rejects any two
/// placements that share a honeycomb cell.
class AssemblyModel {
 public:
  AssemblyModel(std::vector<Block> blocks, std::vector<Placement> placements,
                std::optional<GridLayout> layout = std::nullopt);

  const std::vector<Block>& blocks() const { return blocks_; }
  const std::vector<Placement>& placements() const { return placements_; }
  const std::optional<GridLayout>& layout() const { return layout_; }
  std::size_t size() const { return placements_.size(); }

  const Block& block_of(std::size_t i) const { return blocks_.at(placements_.at(i).block); }
  const CellSet& cells(std::size_t i) const { return cells_.at(i); }
  bool is_frame(std::size_t i) const { return placements_.at(i).is_frame; }
  std::vector<std::size_t> frame() const;
  std::vector<std::size_t> free_blocks() const;

  AssemblyModel with_frame(const std::vector<bool>& frame) const;
  /// Perimeter of the grid layout; throws if the model has no layout.
  AssemblyModel with_perimeter_frame() const;
  AssemblyModel with_empty_frame() const;
  /// The same assembly moved by one global isometry.
  AssemblyModel transformed(const HoneycombIsometry& g) const;

 private:
  std::vector<Block> blocks_;
  std::vector<Placement> placements_;
  std::optional<GridLayout> layout_;
  std::vector<CellSet> cells_;
};

inline AssemblyModel make_assembly(std::vector<Block> blocks, std::vector<Placement> placements) {
  return AssemblyModel(std::move(blocks), std::move(placements));
}

/// Boundary triangle shared by placements i < j, oriented outward from i.
struct ContactFace {
  std::size_t i = 0;
  std::size_t j = 0;
  Triangle triangle;
  Vector3i normal;  ///< primitive, points from i into j
};

std::vector<ContactFace> contact_faces(const AssemblyModel& a);

struct AssemblyGraph {
  std::size_t num_nodes = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  ///< sorted, first < second

  std::vector<std::size_t> degrees() const;
  bool is_connected() const;
  bool is_tree() const { return edges.size() + 1 == num_nodes && is_connected(); }
};

AssemblyGraph assembly_graph(const AssemblyModel& a);
AssemblyGraph grid_graph(int rows, int cols);
AssemblyGraph path_graph(std::size_t n);
/// Backtracking isomorphism test with degree pruning.
bool isomorphic(const AssemblyGraph& g, const AssemblyGraph& h);

/// Translation lattice u, w in a slab plane, optionally with every placement of
/// odd parity i + j replaced by its image under `alternate`.
struct GridRule {
  LatticeVector u = LatticeVector::Zero();
  LatticeVector w = LatticeVector::Zero();
  std::optional<HoneycombIsometry> alternate;
  std::int64_t area = 0;    ///< |(u × w)·normal|
  bool grid_graph = false;  ///< contacts exactly between the four grid neighbours

  HoneycombIsometry placement(int i, int j) const;
};

struct SearchOptions {
  Vector3i normal = Vector3i(1, 0, 0);
  bool alternating = true;  ///< also try checkerboard rules with rotations about the normal
};

/// Every rule with |components| <= bound whose grid is pairwise cell-disjoint and
/// in which every block touches a neighbour; ordered by area, grid-graph rules
/// first, then pure translations, then lexicographically.
std::vector<GridRule> search_grid_translations(const Block& b, int bound, const SearchOptions& options = {});

enum class AssemblyKind { kitten_strip, kitten_plane, cushion_grid, shuriken_grid, tetra_interlocking, octa_interlocking };
enum class FrameMode { perimeter, none };

/// Frozen rules (derived by search_grid_translations; see tests).
GridRule kitten_plane_rule();
GridRule cushion_grid_rule(int n);  ///< odd n only
GridRule shuriken_grid_rule(int m, int n);
GridRule tetra_interlocking_rule();
GridRule octa_interlocking_rule();

/// params: kitten_strip {k}; kitten_plane {r, c}; cushion_grid {n, r, c};
/// shuriken_grid {m, n, r, c}; tetra_interlocking {r, c}; octa_interlocking {r, c}.
AssemblyModel generate_assembly(AssemblyKind kind, const std::vector<int>& params,
                                      FrameMode frame = FrameMode::perimeter);

AssemblyModel grid_assembly(const Block& b, const GridRule& rule, int rows, int cols,
                            FrameMode frame = FrameMode::perimeter);

}  // namespace tetroc
