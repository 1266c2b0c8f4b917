#include "dyadic/grid.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace dyadic {

double DyadicGrid::cell_side() const { return side * std::exp2(double(-depth)); }

double DyadicGrid::measure_at_level(int level) const {
  double s = side * std::exp2(double(-level));
  double m = 1.0;
  for (int d = 0; d < dim; ++d) m *= s;
  return m;
}

std::int64_t default_cell_budget() {
  if (const char* env = std::getenv("JN_CELL_BUDGET")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && v > 0) return v;
    throw validation_error("JN_CELL_BUDGET must be a positive integer, got '" + std::string(env) + "'");
  }
  return std::int64_t{1} << 24;
}

DyadicGrid make_grid(int dim, int depth, const std::vector<double>& origin,
                     double side, std::int64_t cell_budget) {
  if (dim < 1 || dim > 3)
    throw validation_error("dim must be 1, 2 or 3, got " + std::to_string(dim));
  if (depth < 0)
    throw validation_error("depth must be >= 0, got " + std::to_string(depth));
  if (!(side > 0.0) || !std::isfinite(side))
    throw validation_error("root side must be finite and > 0");
  if (origin.size() != static_cast<std::size_t>(dim))
    throw validation_error("origin has " + std::to_string(origin.size()) +
                           " coordinates, expected " + std::to_string(dim));
  for (double c : origin)
    if (!std::isfinite(c)) throw validation_error("origin coordinates must be finite");
  if (cell_budget <= 0) cell_budget = default_cell_budget();
  const std::int64_t bits = std::int64_t{depth} * dim;
  if (bits >= 62 || (std::int64_t{1} << bits) > cell_budget)
    throw resource_error("grid with 2^" + std::to_string(bits) +
                         " cells exceeds the cell budget " + std::to_string(cell_budget));

  DyadicGrid g;
  g.dim = dim;
  g.depth = depth;
  g.side = side;
  for (int d = 0; d < dim; ++d) g.origin[d] = origin[d];
  return g;
}

StepFunction make_step_function(const DyadicGrid& grid, std::vector<double> values) {
  if (values.size() != static_cast<std::size_t>(grid.cell_count()))
    throw validation_error("values length " + std::to_string(values.size()) +
                           " does not match cell count " + std::to_string(grid.cell_count()));
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!std::isfinite(values[i]))
      throw validation_error("non-finite value at cell index " + std::to_string(i));
  return StepFunction{grid, std::move(values)};
}

void validate_cube(const DyadicGrid& grid, const DyadicCube& cube) {
  if (cube.level < 0 || cube.level > grid.depth)
    throw validation_error("cube level " + std::to_string(cube.level) +
                           " outside grid depth " + std::to_string(grid.depth));
  const std::int64_t n = std::int64_t{1} << cube.level;
  for (int d = 0; d < grid.dim; ++d)
    if (cube.index[d] < 0 || cube.index[d] >= n)
      throw validation_error("cube index " + std::to_string(cube.index[d]) +
                             " outside [0, " + std::to_string(n) + ") at level " +
                             std::to_string(cube.level));
}

DyadicCube root_cube() { return DyadicCube{0, {0, 0, 0}}; }

DyadicCube parent_of(const DyadicCube& cube) {
  DyadicCube p = cube;
  p.level = cube.level - 1;
  for (auto& k : p.index) k >>= 1;
  return p;
}

DyadicCube child_of(const DyadicCube& cube, int dim, int e) {
  DyadicCube c = cube;
  c.level = cube.level + 1;
  for (int d = 0; d < dim; ++d)
    c.index[d] = 2 * cube.index[d] + ((e >> (dim - 1 - d)) & 1);
  return c;
}

bool cube_contains(const DyadicGrid& grid, const DyadicCube& outer, const DyadicCube& inner) {
  if (outer.level > inner.level) return false;
  const int shift = inner.level - outer.level;
  for (int d = 0; d < grid.dim; ++d)
    if ((inner.index[d] >> shift) != outer.index[d]) return false;
  return true;
}

bool cube_less(const DyadicCube& a, const DyadicCube& b) {
  if (a.level != b.level) return a.level < b.level;
  return a.index < b.index;
}

std::int64_t rowmajor_index(const DyadicGrid& grid, const std::array<std::int64_t, 3>& multi) {
  std::int64_t flat = 0;
  for (int d = 0; d < grid.dim; ++d) flat = (flat << grid.depth) | multi[d];
  return flat;
}

std::array<std::int64_t, 3> multi_of_rowmajor(const DyadicGrid& grid, std::int64_t flat) {
  std::array<std::int64_t, 3> multi{0, 0, 0};
  const std::int64_t mask = grid.cells_per_side() - 1;
  for (int d = grid.dim - 1; d >= 0; --d) {
    multi[d] = flat & mask;
    flat >>= grid.depth;
  }
  return multi;
}

std::array<double, 3> cell_midpoint(const DyadicGrid& grid, std::int64_t flat) {
  const auto multi = multi_of_rowmajor(grid, flat);
  const double h = grid.cell_side();
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int d = 0; d < grid.dim; ++d) x[d] = grid.origin[d] + (double(multi[d]) + 0.5) * h;
  return x;
}

std::int64_t morton_rank(const DyadicCube& cube, int dim) {
  std::int64_t r = 0;
  for (int b = cube.level - 1; b >= 0; --b)
    for (int d = 0; d < dim; ++d)
      r = (r << 1) | ((cube.index[d] >> b) & 1);
  return r;
}

DyadicCube cube_of_morton(int level, std::int64_t rank, int dim) {
  DyadicCube c;
  c.level = level;
  c.index = {0, 0, 0};
  for (int b = 0; b < level; ++b)
    for (int d = dim - 1; d >= 0; --d) {
      c.index[d] |= (rank & 1) << b;
      rank >>= 1;
    }
  return c;
}

std::vector<std::int64_t> tree_order_to_rowmajor(const DyadicGrid& grid) {
  const std::int64_t n = grid.cell_count();
  std::vector<std::int64_t> perm(static_cast<std::size_t>(n));
  if (grid.dim == 1) {  // Morton order coincides with row-major in 1D
    for (std::int64_t z = 0; z < n; ++z) perm[static_cast<std::size_t>(z)] = z;
    return perm;
  }
  for (std::int64_t z = 0; z < n; ++z) {
    const DyadicCube leaf = cube_of_morton(grid.depth, z, grid.dim);
    perm[static_cast<std::size_t>(z)] = rowmajor_index(grid, leaf.index);
  }
  return perm;
}

void cells_of(const DyadicGrid& grid, const DyadicCube& cube, std::vector<std::int64_t>& out) {
  validate_cube(grid, cube);
  const int shift = grid.depth - cube.level;
  const std::int64_t per_dim = std::int64_t{1} << shift;
  const std::int64_t m = grid.cells_per_cube(cube.level);
  out.resize(static_cast<std::size_t>(m));
  if (grid.dim == 1) {
    const std::int64_t base = cube.index[0] << shift;
    for (std::int64_t i = 0; i < m; ++i) out[static_cast<std::size_t>(i)] = base + i;
    return;
  }
  std::array<std::int64_t, 3> base{0, 0, 0};
  for (int d = 0; d < grid.dim; ++d) base[d] = cube.index[d] << shift;
  for (std::int64_t off = 0; off < m; ++off) {
    std::int64_t rem = off;
    std::array<std::int64_t, 3> multi = base;
    for (int d = grid.dim - 1; d >= 0; --d) {
      multi[d] += rem & (per_dim - 1);
      rem >>= shift;
    }
    out[static_cast<std::size_t>(off)] = rowmajor_index(grid, multi);
  }
}

void gather_cells(const StepFunction& f, const DyadicCube& cube, std::vector<double>& out) {
  static thread_local std::vector<std::int64_t> idx;
  cells_of(f.grid, cube, idx);
  out.resize(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    out[i] = f.values[static_cast<std::size_t>(idx[i])];
}

TreeOrderedValues tree_ordered(const StepFunction& f, bool absolute) {
  TreeOrderedValues t;
  t.to_rowmajor = tree_order_to_rowmajor(f.grid);
  t.values.resize(t.to_rowmajor.size());
  for (std::size_t z = 0; z < t.to_rowmajor.size(); ++z) {
    const double v = f.values[static_cast<std::size_t>(t.to_rowmajor[z])];
    t.values[z] = absolute ? std::abs(v) : v;
  }
  return t;
}

}  // namespace dyadic
