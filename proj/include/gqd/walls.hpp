#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace gqd {

struct CylinderParams {
  int k = 2;       // height
  int64_t l = 0;   // twist
  void validate() const;  // k >= 2, l >= 0, k + l even
  bool operator==(const CylinderParams&) const = default;
};

struct WallVertex {
  int64_t n = 0;  // column
  int m = 0;      // row
  auto operator<=>(const WallVertex&) const = default;
};

// Periodic double ray: index q*p + r is motif[r] shifted by q*shift columns.
struct CoordDoubleRay {
  std::vector<WallVertex> motif;
  int64_t shift = 0;

  WallVertex at(int64_t x) const;
  // same ray, motif repeated `times` times
  CoordDoubleRay repeated(int64_t times) const;
};

enum class GraphKind { Wall, Cylinder, Grid };
enum class EdgeKind { Horizontal, Straight, Twisted };

struct CoordGraph {
  GraphKind kind = GraphKind::Wall;
  int k = 1;        // height (rows 0..k-1)
  int64_t l = 0;    // twist, cylinders only

  bool adjacent(const WallVertex& u, const WallVertex& v) const;
  std::vector<WallVertex> neighbors(const WallVertex& u) const;
  std::optional<EdgeKind> edge_kind(const WallVertex& u, const WallVertex& v) const;
};

CoordGraph wall_graph(int k);
CoordGraph cylinder_graph(const CylinderParams& p);
CoordGraph grid_graph(int height);

struct WallEdge {
  WallVertex u, v;
  EdgeKind kind;
};

struct WallWindow {
  CoordGraph graph;
  int64_t n_lo = 0, n_hi = 0;
  std::vector<WallVertex> vertices;  // sorted
  std::vector<WallEdge> edges;       // u < v, sorted by (u, v)

  bool contains(const WallVertex& v) const;
  bool has_edge(const WallVertex& u, const WallVertex& v) const;
  size_t degree(const WallVertex& v) const;
};

WallWindow make_window(const CoordGraph& g, int64_t n_lo, int64_t n_hi);
WallWindow wall_window(int k, int64_t n_lo, int64_t n_hi);
WallWindow cylinder_window(const CylinderParams& p, int64_t n_lo, int64_t n_hi);

// Hamiltonian path of the block B_{i,2j} (two_j = 2j).
std::vector<WallVertex> snake(const CylinderParams& p, int64_t i, int64_t two_j);
// The column Q_i, built edge by edge (used to cross-check snake(i, 2)).
std::vector<WallVertex> column(const CylinderParams& p, int64_t i);
std::vector<WallVertex> staircase(const CylinderParams& p, int64_t i);

struct CylinderIso {
  CylinderParams src, dst;
  WallVertex forward(const WallVertex& v) const;
  WallVertex backward(const WallVertex& v) const;
};

CylinderIso cylinder_iso(const CylinderParams& p);
CylinderParams iso_target(const CylinderParams& p);

CoordDoubleRay cylinder_double_ray(const CylinderParams& p);
std::pair<CoordDoubleRay, CoordDoubleRay> cylinder_two_rays(const CylinderParams& p);

// P_height x Z, column = n, row = m
CoordDoubleRay grid_double_ray(int height);
std::pair<CoordDoubleRay, CoordDoubleRay> grid_two_rays(int height);

}  // namespace gqd
