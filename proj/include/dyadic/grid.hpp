#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dyadic/errors.hpp"

namespace dyadic {

/// Dyadic decomposition of an axis-parallel cube in R^n, n in {1,2,3}.
/// The root is bisected `depth` times in every coordinate; the finest
/// level holds 2^{depth*dim} equal cells.
struct DyadicGrid {
  int dim = 1;
  int depth = 0;
  std::array<double, 3> origin{0.0, 0.0, 0.0};
  double side = 1.0;

  std::int64_t cells_per_side() const { return std::int64_t{1} << depth; }
  std::int64_t cell_count() const { return std::int64_t{1} << (std::int64_t{depth} * dim); }
  double cell_side() const;

  /// Measure of one cube at level j (side * 2^-j)^dim.
  double measure_at_level(int level) const;
  double cell_measure() const { return measure_at_level(depth); }
  double root_measure() const { return measure_at_level(0); }

  std::int64_t cubes_at_level(int level) const { return std::int64_t{1} << (std::int64_t{level} * dim); }
  /// Finest cells covered by one cube at `level`.
  std::int64_t cells_per_cube(int level) const {
    return std::int64_t{1} << (std::int64_t{depth - level} * dim);
  }

  bool operator==(const DyadicGrid&) const = default;
};

/// Node of the dyadic tree: level j and multi-index in [0, 2^j)^dim.
struct DyadicCube {
  int level = 0;
  std::array<std::int64_t, 3> index{0, 0, 0};

  bool operator==(const DyadicCube&) const = default;
};

/// Real-valued function constant on each finest cell, stored row-major by
/// cell multi-index. All values finite.
struct StepFunction {
  DyadicGrid grid;
  std::vector<double> values;
};

std::int64_t default_cell_budget();  // JN_CELL_BUDGET env var, else 2^24

DyadicGrid make_grid(int dim, int depth, const std::vector<double>& origin,
                     double side, std::int64_t cell_budget = 0);

StepFunction make_step_function(const DyadicGrid& grid, std::vector<double> values);

void validate_cube(const DyadicGrid& grid, const DyadicCube& cube);

DyadicCube root_cube();
DyadicCube parent_of(const DyadicCube& cube);
/// Child selected by corner bits e in [0, 2^dim); bit (dim-1-d) drives axis d,
/// so increasing e enumerates children lexicographically by multi-index.
DyadicCube child_of(const DyadicCube& cube, int dim, int e);
bool cube_contains(const DyadicGrid& grid, const DyadicCube& outer, const DyadicCube& inner);

/// Canonical report order: by level, then multi-index lexicographically.
bool cube_less(const DyadicCube& a, const DyadicCube& b);

std::int64_t rowmajor_index(const DyadicGrid& grid, const std::array<std::int64_t, 3>& multi);
std::array<std::int64_t, 3> multi_of_rowmajor(const DyadicGrid& grid, std::int64_t flat);
std::array<double, 3> cell_midpoint(const DyadicGrid& grid, std::int64_t flat);

/// Bit-interleaved rank of a cube among the 2^{level*dim} cubes of its level.
/// Descendant leaves of a cube occupy a contiguous rank range, which is what
/// the level sweeps exploit.
std::int64_t morton_rank(const DyadicCube& cube, int dim);
DyadicCube cube_of_morton(int level, std::int64_t rank, int dim);

/// Permutation taking Morton leaf rank -> row-major flat index.
std::vector<std::int64_t> tree_order_to_rowmajor(const DyadicGrid& grid);

/// Row-major flat indices of the finest cells of `cube`, in row-major order
/// of the offset within the cube.
void cells_of(const DyadicGrid& grid, const DyadicCube& cube, std::vector<std::int64_t>& out);

/// Cell values of `cube` in row-major cell order (the canonical gather order
/// shared by every per-cube functional).
void gather_cells(const StepFunction& f, const DyadicCube& cube, std::vector<double>& out);

/// Cell values permuted to Morton order, in which every cube's cells are
/// contiguous: the cube at level j with Morton rank r owns values
/// [r*m, (r+1)*m), m = cells_per_cube(j).
struct TreeOrderedValues {
  std::vector<std::int64_t> to_rowmajor;
  std::vector<double> values;
};
TreeOrderedValues tree_ordered(const StepFunction& f, bool absolute);

}  // namespace dyadic
