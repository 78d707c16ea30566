#pragma once

// Conforming simplicial triangulations of the unit square with full
// cell/facet/vertex connectivity and the affine reference maps.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <map>
#include <vector>

namespace stokesnc {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;

struct Vertex {
  int id = -1;
  Vec2 coords = Vec2::Zero();
  bool on_boundary = false;
};

/// Triangle with counterclockwise vertices; facet_ids[k] is the facet
/// opposite vertex_ids[k].
struct Cell {
  int id = -1;
  std::array<int, 3> vertex_ids{};
  std::array<int, 3> facet_ids{};
  double area = 0.0;
  double diameter = 0.0;
  double inradius = 0.0;

  double shape_ratio() const { return diameter / inradius; }
};

/// Edge of the triangulation. The unit normal points out of left_cell; for
/// interior facets left_cell is the lower of the two incident cell ids, so
/// jumps [v] = v|_L - v|_R have a fixed sign convention.
struct Facet {
  int id = -1;
  std::array<int, 2> vertex_ids{};
  int left_cell = -1;
  std::optional<int> right_cell;
  Vec2 normal = Vec2::Zero();
  Vec2 barycenter = Vec2::Zero();
  double length = 0.0;

  bool interior() const { return right_cell.has_value(); }
};

/// x = B * xhat + b maps the reference triangle (0,0),(1,0),(0,1) onto the
/// cell, vertex by vertex; J = det(B) = 2|K|.
struct AffineMap {
  Mat2 B = Mat2::Identity();
  Vec2 b = Vec2::Zero();
  double J = 1.0;
};

struct MeshStats {
  double h_max = 0.0;
  double h_grid = 0.0;  // structured spacing 1/n
  double sigma = 0.0;   // max h_l / rho_l
  int n_theta = 0;      // max number of cells sharing a vertex
};

class Mesh {
public:
  /// Builds connectivity from raw vertices and counterclockwise triangles.
  Mesh(std::vector<Vec2> coords, std::vector<std::array<int, 3>> tris,
       double h_grid = 0.0) {
    vertices_.resize(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
      vertices_[i].id = static_cast<int>(i);
      vertices_[i].coords = coords[i];
    }
    cells_.resize(tris.size());
    maps_.resize(tris.size());
    std::map<std::array<int, 2>, int> facet_of;
    for (std::size_t c = 0; c < tris.size(); ++c) {
      Cell& cell = cells_[c];
      cell.id = static_cast<int>(c);
      cell.vertex_ids = tris[c];
      const Vec2 p0 = coords[tris[c][0]];
      const Vec2 p1 = coords[tris[c][1]];
      const Vec2 p2 = coords[tris[c][2]];
      Mat2 B;
      B.col(0) = p1 - p0;
      B.col(1) = p2 - p0;
      const double J = B.determinant();
      cell.area = 0.5 * J;
      if (cell.area <= 1e-14)
        throw std::invalid_argument("Mesh: degenerate or misoriented cell " +
                                    std::to_string(c));
      maps_[c] = AffineMap{B, p0, J};
      const double a = (p1 - p2).norm();
      const double b = (p2 - p0).norm();
      const double d = (p0 - p1).norm();
      cell.diameter = std::max({a, b, d});
      cell.inradius = cell.area / (0.5 * (a + b + d));
      for (int k = 0; k < 3; ++k) {
        const int va = tris[c][(k + 1) % 3];
        const int vb = tris[c][(k + 2) % 3];
        const std::array<int, 2> key{std::min(va, vb), std::max(va, vb)};
        auto it = facet_of.find(key);
        int f;
        if (it == facet_of.end()) {
          f = static_cast<int>(facets_.size());
          facet_of.emplace(key, f);
          Facet facet;
          facet.id = f;
          facet.vertex_ids = key;
          facet.left_cell = static_cast<int>(c);
          const Vec2 pa = coords[key[0]];
          const Vec2 pb = coords[key[1]];
          facet.length = (pb - pa).norm();
          facet.barycenter = 0.5 * (pa + pb);
          facets_.push_back(facet);
        } else {
          f = it->second;
          if (facets_[f].right_cell)
            throw std::invalid_argument("Mesh: facet shared by >2 cells");
          facets_[f].right_cell = static_cast<int>(c);
        }
        cell.facet_ids[k] = f;
      }
    }
    // left cell = lower incident id; normal out of it
    for (Facet& f : facets_) {
      if (f.right_cell && *f.right_cell < f.left_cell)
        std::swap(f.left_cell, *f.right_cell);
      const Vec2 pa = vertices_[f.vertex_ids[0]].coords;
      const Vec2 pb = vertices_[f.vertex_ids[1]].coords;
      const Vec2 t = pb - pa;
      Vec2 n(t.y(), -t.x());
      n.normalize();
      Vec2 centroid = Vec2::Zero();
      for (int v : cells_[f.left_cell].vertex_ids)
        centroid += vertices_[v].coords / 3.0;
      if ((f.barycenter - centroid).dot(n) < 0.0) n = -n;
      f.normal = n;
    }
    for (const Facet& f : facets_)
      if (!f.interior())
        for (int v : f.vertex_ids) vertices_[v].on_boundary = true;
    vertex_cells_.resize(vertices_.size());
    for (const Cell& c : cells_)
      for (int v : c.vertex_ids) vertex_cells_[v].push_back(c.id);

    stats_.h_max = 0.0;
    stats_.sigma = 0.0;
    for (const Cell& c : cells_) {
      stats_.h_max = std::max(stats_.h_max, c.diameter);
      stats_.sigma = std::max(stats_.sigma, c.shape_ratio());
    }
    stats_.n_theta = 0;
    for (const auto& cs : vertex_cells_)
      stats_.n_theta = std::max(stats_.n_theta, static_cast<int>(cs.size()));
    stats_.h_grid = h_grid > 0.0 ? h_grid : stats_.h_max / std::sqrt(2.0);
  }

  int n_vertices() const { return static_cast<int>(vertices_.size()); }
  int n_cells() const { return static_cast<int>(cells_.size()); }
  int n_facets() const { return static_cast<int>(facets_.size()); }
  int n_interior_facets() const {
    int k = 0;
    for (const Facet& f : facets_) k += f.interior() ? 1 : 0;
    return k;
  }

  const Vertex& vertex(int i) const { return vertices_[i]; }
  const Cell& cell(int i) const { return cells_[i]; }
  const Facet& facet(int i) const { return facets_[i]; }
  const AffineMap& map(int cell) const { return maps_[cell]; }
  const std::vector<int>& cells_of_vertex(int v) const {
    return vertex_cells_[v];
  }
  const MeshStats& stats() const { return stats_; }

  Vec2 to_physical(int cell, const Vec2& xhat) const {
    return maps_[cell].B * xhat + maps_[cell].b;
  }
  Vec2 to_reference(int cell, const Vec2& x) const {
    return maps_[cell].B.partialPivLu().solve(x - maps_[cell].b);
  }

  /// +1 when the global normal of the cell's k-th facet points out of the
  /// cell, -1 otherwise.
  double outward_sign(int cell, int k) const {
    return facets_[cells_[cell].facet_ids[k]].left_cell == cell ? 1.0 : -1.0;
  }

  /// Outward normal of the facet opposite local vertex k, scaled by the
  /// facet length (the vector S_{j,l} entering the barycentric formula).
  Vec2 scaled_outward_normal(int cell, int k) const {
    const Facet& f = facets_[cells_[cell].facet_ids[k]];
    return outward_sign(cell, k) * f.length * f.normal;
  }

private:
  std::vector<Vertex> vertices_;
  std::vector<Cell> cells_;
  std::vector<Facet> facets_;
  std::vector<AffineMap> maps_;
  std::vector<std::vector<int>> vertex_cells_;
  MeshStats stats_;
};

/// Uniform n x n grid of the unit square, each square split along the
/// diagonal from (i/n, j/n) to ((i+1)/n, (j+1)/n).
inline Mesh build_structured_unit_square(int n) {
  if (n < 1) throw std::invalid_argument("build_structured_unit_square: n >= 1");
  std::vector<Vec2> coords;
  coords.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      coords.emplace_back(static_cast<double>(i) / n,
                          static_cast<double>(j) / n);
  auto vid = [n](int i, int j) { return j * (n + 1) + i; };
  std::vector<std::array<int, 3>> tris;
  tris.reserve(2 * n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j);
      const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      tris.push_back({v00, v10, v11});
      tris.push_back({v00, v11, v01});
    }
  return Mesh(std::move(coords), std::move(tris), 1.0 / n);
}

/// lambda_j(x) = (d |K|)^{-1} (x_j - x) . S_j with x_j the barycenter of the
/// facet opposite vertex j and S_j its outward normal scaled by the length.
inline Vec3 barycentric_coords(const Mesh& mesh, int cell, const Vec2& x) {
  const Cell& c = mesh.cell(cell);
  Vec3 lambda;
  for (int k = 0; k < 3; ++k) {
    const Vec2 xj = mesh.facet(c.facet_ids[k]).barycenter;
    lambda[k] = (xj - x).dot(mesh.scaled_outward_normal(cell, k)) /
                (2.0 * c.area);
  }
  return lambda;
}

inline const AffineMap& affine_map(const Mesh& mesh, int cell) {
  return mesh.map(cell);
}

inline Vec2 inverse_map(const Mesh& mesh, int cell, const Vec2& x) {
  return mesh.to_reference(cell, x);
}

inline MeshStats mesh_stats(const Mesh& mesh) { return mesh.stats(); }

// Plain-text mesh exchange: header `vertices <V> cells <C>`, then V lines
// `x y`, then C lines `i j k` (0-based), 17 significant digits.
inline void write_mesh_text(const Mesh& mesh, std::ostream& out) {
  out << "vertices " << mesh.n_vertices() << " cells " << mesh.n_cells()
      << "\n";
  char buf[80];
  for (int i = 0; i < mesh.n_vertices(); ++i) {
    const Vec2& p = mesh.vertex(i).coords;
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x(), p.y());
    out << buf;
  }
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const auto& v = mesh.cell(c).vertex_ids;
    out << v[0] << " " << v[1] << " " << v[2] << "\n";
  }
}

inline Mesh read_mesh_text(std::istream& in) {
  std::string kw1, kw2;
  int nv = 0, nc = 0;
  in >> kw1 >> nv >> kw2 >> nc;
  if (!in || kw1 != "vertices" || kw2 != "cells")
    throw std::invalid_argument("read_mesh_text: bad header");
  std::vector<Vec2> coords(nv);
  for (int i = 0; i < nv; ++i) in >> coords[i].x() >> coords[i].y();
  std::vector<std::array<int, 3>> tris(nc);
  for (int c = 0; c < nc; ++c) in >> tris[c][0] >> tris[c][1] >> tris[c][2];
  if (!in) throw std::invalid_argument("read_mesh_text: truncated file");
  return Mesh(std::move(coords), std::move(tris));
}

}  // namespace stokesnc
