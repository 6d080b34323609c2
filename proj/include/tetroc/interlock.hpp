#pragma once

#include "tetroc/assembly.hpp"
#include "tetroc/lp.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tetroc {

/// Planar contact region between blocks i and j; normal points from i into j.
struct FaceContact {
  std::size_t i = 0, j = 0;
  std::vector<Vector3q> polygon;
  Vector3q normal;
};

/// Contact at a single point with a unique separating direction (a vertex of
/// one block on a flat part of the other, or two convex edges crossing).
struct PointContact {
  std::size_t i = 0, j = 0;
  Vector3q point;
  Vector3q normal;  ///< from i into j
};

/// Two convex edges lying on a common line and touching at `point`. The
/// admissible relative motions form a union of two half-spaces, so each such
/// contact is a disjunction: (vel_i − vel_j)·m ≥ 0 for m = normals[0] or normals[1].
struct EdgeContact {
  std::size_t i = 0, j = 0;
  Vector3q point;
  std::array<Vector3q, 2> normals;
};

struct ContactModel {
  std::size_t num_blocks = 0;
  std::vector<bool> frame;
  std::vector<Vector3q> reference;  ///< rotation centre per block (volume centroid)
  std::vector<FaceContact> faces;
  std::vector<PointContact> points;
  std::vector<EdgeContact> edges;

  std::vector<std::size_t> free_blocks() const;
};

/// Contacts of a lattice assembly. With `point_contacts` false only shared
/// faces are collected.
ContactModel contact_model(const AssemblyModel& a, bool point_contacts = true);

/// Homogeneous rows A x >= 0 over x = (v_0, ω_0, v_1, ω_1, …) for the free blocks.
struct ConstraintSystem {
  std::vector<std::size_t> free_blocks;
  MatrixX<Rational> rows;
  std::size_t face_rows = 0;  ///< leading rows that come from face contacts
  /// Each disjunction holds if either one-row option holds.
  std::vector<std::array<VectorX<Rational>, 2>> disjunctions;

  Eigen::Index num_variables() const { return static_cast<Eigen::Index>(6 * free_blocks.size()); }
  /// Every row and at least one option of every disjunction, exactly.
  bool admits(const VectorX<Rational>& x) const;
};

/// Rows are scaled to primitive integer vectors and deduplicated.
/// Throws InterlockError when no block is free.
ConstraintSystem motion_constraints(const ContactModel& model);
ConstraintSystem motion_constraints(const AssemblyModel& a, bool point_contacts = true);

struct Motion {
  std::size_t placement = 0;
  Vector3q linear;
  Vector3q angular;
};

struct LpRecord {
  std::string label;
  Rational optimum;
  std::size_t pivots = 0;
};

enum class Strategy {
  aggregate,     ///< one LP maximising Σ rows, then an exact null-space test
  per_variable,  ///< max ±x_k for every variable
};

struct InterlockOptions {
  Strategy strategy = Strategy::aggregate;
  bool point_contacts = true;
  std::size_t max_nodes = 100000;
};

struct InterlockVerdict {
  bool interlocked = false;
  std::vector<Motion> witness;        ///< empty when interlocked
  VectorX<Rational> witness_vector;   ///< same motion in variable order; max |component| = 1
  std::vector<LpRecord> lps;
  std::size_t nodes = 0;
  std::size_t rows = 0;
  std::size_t disjunctions = 0;
};

InterlockVerdict check_interlocking(const ContactModel& model, const InterlockOptions& options = {});
InterlockVerdict check_interlocking(const AssemblyModel& a, const InterlockOptions& options = {});

}  // namespace tetroc
