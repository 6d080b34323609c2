#pragma once

#include "tetroc/blocks.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

namespace tetroc {

/// Float triangle soup as read from a file.
struct InputMesh {
  std::vector<std::array<Vector3d, 3>> triangles;
  std::size_t dropped_degenerate = 0;
};

/// Drops zero-area triangles (counted); throws MeshError on non-finite
/// coordinates or when nothing is left.
InputMesh make_input_mesh(const std::vector<std::array<Vector3d, 3>>& triangles);

enum class ApproxMode { shell, solid };

struct ApproxParams {
  Rational scale = 1;
  int samples = 2;  ///< barycentric grid level s >= 1
  ApproxMode mode = ApproxMode::shell;
  std::uint64_t seed = 1;  ///< ray directions of the containment test
};

/// Denominator of the rational grid that scaled input coordinates snap to.
inline constexpr std::int64_t kSnapDenominator = std::int64_t(1) << 20;

/// All (i·A + j·B + k·C)/s with i + j + k = s; (s+1)(s+2)/2 points.
template <typename Scalar>
std::vector<Vector3<Scalar>> sample_barycentric(const std::array<Vector3<Scalar>, 3>& tri, int s);

/// Input triangles scaled and snapped to the 2^-20 grid.
std::vector<std::array<Vector3q, 3>> snapped_triangles(const InputMesh& m, const Rational& scale);

enum class Containment { inside, outside, boundary };

/// Exact ray-parity test against a closed triangle surface. Rays leave close
/// to the +x axis with a seeded random tilt; a ray through an edge or vertex
/// is retried with a new tilt, and after the retry budget the answer is
/// `boundary` (also returned for points on the surface).
class PointInMesh {
 public:
  explicit PointInMesh(std::vector<std::array<Vector3q, 3>> triangles, std::uint64_t seed = 1, int retries = 16);
  ~PointInMesh();
  PointInMesh(PointInMesh&&) noexcept;
  PointInMesh& operator=(PointInMesh&&) noexcept;

  Containment operator()(const Vector3q& q) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Containment point_in_mesh(const Vector3q& q, const std::vector<std::array<Vector3q, 3>>& triangles,
                          std::uint64_t seed = 1);

/// Union of the cells containing each snapped sample point.
CellSet shell_approx(const InputMesh& m, const ApproxParams& p);

/// Cells in the scaled mesh's bounding box whose vertices and centroid all test
/// inside or on the surface. Throws MeshError if some edge is used an odd number of times.
CellSet solid_approx(const InputMesh& m, const ApproxParams& p);

/// Dispatches on p.mode.
CellSet approximate(const InputMesh& m, const ApproxParams& p);

}  // namespace tetroc
