#pragma once
// Vertex lists, face lists and cell lists as published for the named blocks.

#include "tetroc/lattice.hpp"

#include <array>
#include <vector>

namespace reftab {

using tetroc::CellKey;
using tetroc::NamedTet;
using tetroc::Vector3i;

// Kitten and 1-cushion: coordinates and 1-based face lists.
inline const std::vector<Vector3i> kitten_coords{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}, {1, 2, 1},
                                                 {1, 1, 2}, {2, 1, 1}, {0, 0, 0}, {2, 0, 0}};
inline const std::vector<std::array<int, 3>> kitten_faces{{1, 2, 5}, {1, 2, 7}, {1, 3, 4}, {1, 3, 7},
                                                          {1, 4, 5}, {2, 3, 7}, {2, 3, 8}, {2, 5, 6},
                                                          {2, 6, 8}, {3, 4, 6}, {3, 6, 8}, {4, 5, 6}};
inline const std::vector<Vector3i> cushion_coords{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}, {1, 2, 1}, {1, 1, 2},
                                                  {2, 1, 1}, {0, 0, 0}, {2, 0, 0}, {0, 2, 2}, {2, 2, 2}};
inline const std::vector<std::array<int, 3>> cushion_faces{{1, 2, 5}, {1, 2, 7}, {1, 3, 4},  {1, 3, 7},
                                                           {1, 4, 9}, {1, 5, 9}, {2, 3, 7},  {2, 3, 8},
                                                           {2, 5, 6}, {2, 6, 8}, {3, 4, 6},  {3, 6, 8},
                                                           {4, 5, 9}, {4, 5, 10}, {4, 6, 10}, {5, 6, 10}};

/// The 16 tetrahedra and 4 octahedra listed for the shuriken, read literally.
inline std::vector<CellKey> shuriken_cells() {
  const Vector3i a = tetroc::v1(), d = tetroc::v2() - tetroc::v3(), zero = Vector3i::Zero();
  auto tet = [](NamedTet t, const Vector3i& shift) { return CellKey::tet(tetroc::named_tet(t).key + shift); };
  std::vector<CellKey> out;
  for (const Vector3i& s : {zero, a, Vector3i(a + d), Vector3i(2 * a + d)}) out.push_back(tet(NamedTet::T1, s));
  for (const Vector3i& s : {zero, a, Vector3i(a + d), Vector3i(2 * a + d)}) out.push_back(tet(NamedTet::T2, s));
  for (const Vector3i& s : {d, Vector3i(2 * d), Vector3i(a + 2 * d), Vector3i(a + 3 * d)}) out.push_back(tet(NamedTet::T3, s));
  for (const Vector3i& s : {d, Vector3i(2 * d), Vector3i(a + 2 * d), Vector3i(a + 3 * d)}) out.push_back(tet(NamedTet::T4, s));
  for (const Vector3i& s : {zero, a, d, Vector3i(a + d)})
    out.push_back(CellKey::oct(tetroc::named_octahedron().key + s));
  return out;
}

}  // namespace reftab
