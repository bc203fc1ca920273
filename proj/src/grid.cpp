#include "paropt/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace paropt {

namespace {

// Snaps a subdomain corner to its mesh index, rejecting coordinates that
// are not multiples of h.
int mesh_index(double coord, double h, int m, const char* name) {
  const double raw = coord / h;
  const int idx = static_cast<int>(std::lround(raw));
  if (idx < 0 || idx > m || std::abs(raw - idx) > 1e-9) {
    std::ostringstream os;
    os << "subdomain corner " << name << "=" << coord
       << " is not aligned with the mesh (h=" << h << ")";
    throw ConfigError(os.str());
  }
  return idx;
}

}  // namespace

void GridSpec::validate() const {
  if (m < 2) throw ConfigError("m must be >= 2");
  if (nt < 1) throw ConfigError("nt must be >= 1");
  if (!(T > 0.0)) throw ConfigError("T must be positive");
  if (!(subdomain.x_lo < subdomain.x_hi) || !(subdomain.y_lo < subdomain.y_hi))
    throw ConfigError("subdomain is empty");
  const double h = 1.0 / m;
  mesh_index(subdomain.x_lo, h, m, "x_lo");
  mesh_index(subdomain.x_hi, h, m, "x_hi");
  mesh_index(subdomain.y_lo, h, m, "y_lo");
  mesh_index(subdomain.y_hi, h, m, "y_hi");
}

Grid build_grid(const GridSpec& spec) {
  spec.validate();

  Grid g;
  g.m = spec.m;
  g.nt = spec.nt;
  g.T = spec.T;
  g.h = 1.0 / spec.m;
  g.tau = spec.T / spec.nt;
  g.ns = (spec.m - 1) * (spec.m - 1);

  const int m = spec.m;
  g.dof_of_vertex.assign((m + 1) * (m + 1), -1);
  g.coords.resize(g.ns, 2);
  int dof = 0;
  for (int j = 1; j < m; ++j) {
    for (int i = 1; i < m; ++i) {
      g.dof_of_vertex[g.vertex_id(i, j)] = dof;
      g.coords(dof, 0) = i * g.h;
      g.coords(dof, 1) = j * g.h;
      ++dof;
    }
  }

  g.triangles.reserve(2 * m * m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      const int a = g.vertex_id(i, j);
      const int b = g.vertex_id(i + 1, j);
      const int c = g.vertex_id(i + 1, j + 1);
      const int d = g.vertex_id(i, j + 1);
      g.triangles.push_back({a, b, c});
      g.triangles.push_back({a, c, d});
    }
  }

  // Control nodes: interior nodes inside the CLOSED subdomain. Corners are
  // mesh-aligned, so membership reduces to integer index ranges.
  const int ix_lo = mesh_index(spec.subdomain.x_lo, g.h, m, "x_lo");
  const int ix_hi = mesh_index(spec.subdomain.x_hi, g.h, m, "x_hi");
  const int iy_lo = mesh_index(spec.subdomain.y_lo, g.h, m, "y_lo");
  const int iy_hi = mesh_index(spec.subdomain.y_hi, g.h, m, "y_hi");
  for (int j = std::max(1, iy_lo); j <= std::min(m - 1, iy_hi); ++j) {
    for (int i = std::max(1, ix_lo); i <= std::min(m - 1, ix_hi); ++i) {
      g.control_nodes.push_back(g.dof_of_vertex[g.vertex_id(i, j)]);
    }
  }
  std::sort(g.control_nodes.begin(), g.control_nodes.end());
  g.nc = static_cast<int>(g.control_nodes.size());
  if (g.nc == 0) throw ConfigError("subdomain contains no interior nodes");
  return g;
}

AssembledOperators assemble(const Grid& grid, double nu, double a0) {
  if (!(nu > 0.0)) throw ConfigError("diffusion coefficient nu must be positive");
  if (a0 < 0.0) throw ConfigError("reaction coefficient a0 must be nonnegative");
  (void)nu;  // K is the pure Laplacian block; nu enters the time-step operator

  const int m1 = grid.m + 1;
  std::vector<Triplet> tm, tk;
  tm.reserve(grid.triangles.size() * 9);
  tk.reserve(grid.triangles.size() * 9);

  for (const auto& tri : grid.triangles) {
    double x[3], y[3];
    for (int v = 0; v < 3; ++v) {
      x[v] = (tri[v] % m1) * grid.h;
      y[v] = (tri[v] / m1) * grid.h;
    }
    const double det =
        (x[1] - x[0]) * (y[2] - y[0]) - (x[2] - x[0]) * (y[1] - y[0]);
    const double area = 0.5 * std::abs(det);

    // Gradient components of the P1 basis: grad phi_v = (bv, cv) / (2 area).
    double b[3], c[3];
    for (int v = 0; v < 3; ++v) {
      const int v1 = (v + 1) % 3, v2 = (v + 2) % 3;
      b[v] = y[v1] - y[v2];
      c[v] = x[v2] - x[v1];
    }

    for (int r = 0; r < 3; ++r) {
      const int dr = grid.dof_of_vertex[tri[r]];
      if (dr < 0) continue;
      for (int s = 0; s < 3; ++s) {
        const int ds = grid.dof_of_vertex[tri[s]];
        if (ds < 0) continue;
        const double mass = area / 12.0 * (r == s ? 2.0 : 1.0);
        const double stiff = (b[r] * b[s] + c[r] * c[s]) / (4.0 * area);
        tm.emplace_back(dr, ds, mass);
        tk.emplace_back(dr, ds, stiff);
      }
    }
  }

  AssembledOperators ops;
  ops.M.resize(grid.ns, grid.ns);
  ops.M.setFromTriplets(tm.begin(), tm.end());
  ops.K.resize(grid.ns, grid.ns);
  ops.K.setFromTriplets(tk.begin(), tk.end());
  ops.Ma0 = a0 * ops.M;

  // MG and B are sub-blocks of M picked out by the control map.
  std::vector<int> col_of_dof(grid.ns, -1);
  for (int cidx = 0; cidx < grid.nc; ++cidx)
    col_of_dof[grid.control_nodes[cidx]] = cidx;

  std::vector<Triplet> tb, tg;
  for (int outer = 0; outer < ops.M.outerSize(); ++outer) {
    const int col = col_of_dof[outer];
    if (col < 0) continue;
    for (SpMat::InnerIterator it(ops.M, outer); it; ++it) {
      tb.emplace_back(static_cast<int>(it.row()), col, it.value());
      const int row = col_of_dof[it.row()];
      if (row >= 0) tg.emplace_back(row, col, it.value());
    }
  }
  ops.B.resize(grid.ns, grid.nc);
  ops.B.setFromTriplets(tb.begin(), tb.end());
  ops.MG.resize(grid.nc, grid.nc);
  ops.MG.setFromTriplets(tg.begin(), tg.end());

  ops.lump_G = ops.MG * Vec::Ones(grid.nc);
  return ops;
}

Vec extend_by_zero(const Grid& grid, const Vec& on_control_nodes) {
  if (on_control_nodes.size() != grid.nc)
    throw DimensionError("extend_by_zero: control field has wrong size");
  Vec full = Vec::Zero(grid.ns);
  for (int c = 0; c < grid.nc; ++c)
    full[grid.control_nodes[c]] = on_control_nodes[c];
  return full;
}

Vec restrict_to_control(const Grid& grid, const Vec& on_interior_nodes) {
  if (on_interior_nodes.size() != grid.ns)
    throw DimensionError("restrict_to_control: field has wrong size");
  Vec out(grid.nc);
  for (int c = 0; c < grid.nc; ++c)
    out[c] = on_interior_nodes[grid.control_nodes[c]];
  return out;
}

}  // namespace paropt
