#include "gqd/walls.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "gqd/checked.hpp"

namespace gqd {

void CylinderParams::validate() const {
  if (k < 2) throw std::invalid_argument("cylinder height must be >= 2");
  if (l < 0) throw std::invalid_argument("cylinder twist must be >= 0");
  if ((k + l) % 2 != 0) throw std::invalid_argument("cylinder requires k + l even");
}

WallVertex CoordDoubleRay::at(int64_t x) const {
  const int64_t p = static_cast<int64_t>(motif.size());
  int64_t q = floor_div(x, p);
  WallVertex v = motif[static_cast<size_t>(x - q * p)];
  v.n = checked_add(v.n, checked_mul(q, shift));
  return v;
}

CoordDoubleRay CoordDoubleRay::repeated(int64_t times) const {
  CoordDoubleRay out;
  const int64_t p = static_cast<int64_t>(motif.size());
  for (int64_t x = 0; x < times * p; ++x) out.motif.push_back(at(x));
  out.shift = shift * times;
  return out;
}

namespace {

bool same_parity(int64_t a, int64_t b) { return pos_mod(a - b, 2) == 0; }

// parity of columns in row k-1 that carry a twisted edge
int64_t top_parity(int k) { return k % 2 == 0 ? 1 : 0; }

}  // namespace

CoordGraph wall_graph(int k) {
  if (k < 1) throw std::invalid_argument("wall height must be >= 1");
  return {GraphKind::Wall, k, 0};
}

CoordGraph cylinder_graph(const CylinderParams& p) {
  p.validate();
  return {GraphKind::Cylinder, p.k, p.l};
}

CoordGraph grid_graph(int height) {
  if (height < 1) throw std::invalid_argument("grid height must be >= 1");
  return {GraphKind::Grid, height, 0};
}

std::vector<WallVertex> CoordGraph::neighbors(const WallVertex& u) const {
  std::vector<WallVertex> out;
  if (u.m < 0 || u.m >= k) return out;
  out.push_back({u.n - 1, u.m});
  out.push_back({u.n + 1, u.m});
  if (kind == GraphKind::Grid) {
    if (u.m + 1 < k) out.push_back({u.n, u.m + 1});
    if (u.m >= 1) out.push_back({u.n, u.m - 1});
    return out;
  }
  if (u.m + 1 <= k - 1 && same_parity(u.n, u.m)) out.push_back({u.n, u.m + 1});
  if (u.m >= 1 && same_parity(u.n, u.m - 1)) out.push_back({u.n, u.m - 1});
  if (kind == GraphKind::Cylinder) {
    if (u.m == k - 1 && same_parity(u.n, top_parity(k))) out.push_back({u.n + l, 0});
    if (u.m == 0 && same_parity(u.n - l, top_parity(k))) out.push_back({u.n - l, k - 1});
  }
  return out;
}

std::optional<EdgeKind> CoordGraph::edge_kind(const WallVertex& u, const WallVertex& v) const {
  auto nb = neighbors(u);
  if (std::find(nb.begin(), nb.end(), v) == nb.end()) return std::nullopt;
  if (u.m == v.m && (u.n - v.n == 1 || v.n - u.n == 1)) return EdgeKind::Horizontal;
  if (u.n == v.n && (u.m - v.m == 1 || v.m - u.m == 1) &&
      (kind == GraphKind::Grid || same_parity(u.n, std::min(u.m, v.m))))
    return EdgeKind::Straight;
  return EdgeKind::Twisted;
}

bool CoordGraph::adjacent(const WallVertex& u, const WallVertex& v) const {
  return edge_kind(u, v).has_value();
}

WallWindow make_window(const CoordGraph& g, int64_t n_lo, int64_t n_hi) {
  if (n_lo > n_hi) throw std::invalid_argument("empty window range");
  WallWindow w;
  w.graph = g;
  w.n_lo = n_lo;
  w.n_hi = n_hi;
  for (int64_t n = n_lo; n <= n_hi; ++n)
    for (int m = 0; m < g.k; ++m) w.vertices.push_back({n, m});
  for (const auto& u : w.vertices)
    for (const auto& v : g.neighbors(u))
      if (u < v && w.contains(v)) w.edges.push_back({u, v, *g.edge_kind(u, v)});
  std::sort(w.edges.begin(), w.edges.end(),
            [](const WallEdge& a, const WallEdge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  return w;
}

WallWindow wall_window(int k, int64_t n_lo, int64_t n_hi) { return make_window(wall_graph(k), n_lo, n_hi); }

WallWindow cylinder_window(const CylinderParams& p, int64_t n_lo, int64_t n_hi) {
  return make_window(cylinder_graph(p), n_lo, n_hi);
}

bool WallWindow::contains(const WallVertex& v) const {
  return v.n >= n_lo && v.n <= n_hi && v.m >= 0 && v.m < graph.k;
}

bool WallWindow::has_edge(const WallVertex& a, const WallVertex& b) const {
  WallVertex u = std::min(a, b), v = std::max(a, b);
  auto it = std::lower_bound(edges.begin(), edges.end(), std::tie(u, v), [](const WallEdge& e, const auto& key) {
    return std::tie(e.u, e.v) < key;
  });
  return it != edges.end() && it->u == u && it->v == v;
}

size_t WallWindow::degree(const WallVertex& v) const {
  size_t d = 0;
  for (const auto& e : edges)
    if (e.u == v || e.v == v) ++d;
  return d;
}

// Row-by-row boustrophedon over `width` columns starting at column `start`.
// dir = +1 sweeps row 0 rightward, dir = -1 leftward.
static std::vector<WallVertex> sweep(int k, int64_t start, int64_t width, int dir) {
  std::vector<WallVertex> out;
  int64_t far = start + dir * (width - 1);
  for (int m = 0; m < k; ++m) {
    bool outward = (m % 2 == 0);
    int64_t from = outward ? start : far;
    int64_t step = outward ? dir : -dir;
    for (int64_t c = 0; c < width; ++c) out.push_back({from + step * c, m});
  }
  return out;
}

std::vector<WallVertex> snake(const CylinderParams& p, int64_t i, int64_t two_j) {
  p.validate();
  if (two_j < 2 || two_j % 2 != 0) throw std::invalid_argument("snake length must be even and >= 2");
  return sweep(p.k, 2 * i + 1, two_j, p.k % 2 == 0 ? +1 : -1);
}

std::vector<WallVertex> column(const CylinderParams& p, int64_t i) {
  p.validate();
  // walk up from (2i+1, 0), alternating one horizontal step with one straight edge
  std::vector<WallVertex> out{{2 * i + 1, 0}};
  int dir = p.k % 2 == 0 ? +1 : -1;
  for (int m = 0; m < p.k; ++m) {
    WallVertex cur = out.back();
    out.push_back({cur.n + dir, m});
    if (m + 1 < p.k) out.push_back({cur.n + dir, m + 1});
    dir = -dir;
  }
  return out;
}

std::vector<WallVertex> staircase(const CylinderParams& p, int64_t i) {
  p.validate();
  std::vector<WallVertex> out;
  for (int m = 0; m < p.k; ++m) {
    out.push_back({2 * i + 1 + m, m});
    out.push_back({2 * i + 2 + m, m});
  }
  return out;
}

CylinderParams iso_target(const CylinderParams& p) {
  p.validate();
  return {static_cast<int>((p.k + p.l) / 2), (3 * static_cast<int64_t>(p.k) - p.l) / 2};
}

CylinderIso cylinder_iso(const CylinderParams& p) {
  CylinderParams dst = iso_target(p);
  if (dst.k < 2) throw std::invalid_argument("cylinder_iso: target height < 2");
  if (dst.l < 0) throw std::invalid_argument("cylinder_iso: negative target twist");
  return {p, dst};
}

WallVertex CylinderIso::forward(const WallVertex& v) const {
  const int64_t k = src.k, h = dst.k;
  // v is vertex t of staircase i
  int64_t t, i;
  if (pos_mod(v.n - v.m - 1, 2) == 0) {
    t = 2 * v.m;
    i = (v.n - v.m - 1) / 2;
  } else {
    t = 2 * v.m + 1;
    i = (v.n - v.m - 2) / 2;
  }
  int64_t j = floor_div(i, h);
  int64_t r = i - j * h;
  return {2 * k * j + t + r + 1, static_cast<int>(r)};
}

WallVertex CylinderIso::backward(const WallVertex& v) const {
  const int64_t k = src.k, h = dst.k;
  int64_t x = v.n - v.m - 1;
  int64_t j = floor_div(x, 2 * k);
  int64_t t = x - 2 * k * j;
  int64_t i = j * h + v.m;
  int64_t m = t / 2;
  return {2 * i + 1 + m + (t % 2), static_cast<int>(m)};
}

namespace {

CoordDoubleRay concat(std::vector<std::vector<WallVertex>> parts, int64_t shift) {
  CoordDoubleRay r;
  for (auto& p : parts) r.motif.insert(r.motif.end(), p.begin(), p.end());
  r.shift = shift;
  return r;
}

// Pull a ray on the iso target back to the source cylinder.
CoordDoubleRay pull_back(const CylinderIso& iso, const CoordDoubleRay& ray) {
  // a shift of 2k target columns is a shift of k+l source columns
  const int64_t period = 2 * iso.src.k;
  int64_t s = ray.shift < 0 ? -ray.shift : ray.shift;
  int64_t times = period / std::gcd(s, period);
  CoordDoubleRay rep = ray.repeated(times);
  CoordDoubleRay out;
  for (const auto& v : rep.motif) out.motif.push_back(iso.backward(v));
  out.shift = rep.shift / period * (iso.src.k + iso.src.l);
  return out;
}

CoordDoubleRay ladder_ray() {
  // W_{2,0} is P_2 x Z
  return grid_double_ray(2);
}

}  // namespace

CoordDoubleRay cylinder_double_ray(const CylinderParams& p) {
  p.validate();
  const int k = p.k;
  const int64_t l = p.l;
  if (k == 2 && l == 0) return ladder_ray();
  if (k % 2 == 0 && l >= 2) return concat({snake(p, 0, l)}, l);
  if (k % 2 == 1 && l >= 3) {
    const int64_t l1 = 2, l2 = l - 1;
    // leftward snakes from columns 1 and l; their top ends twist onto the next start
    return concat({snake(p, 0, l1), snake(p, (l - 1) / 2, l2)}, l + 1);
  }
  CylinderIso iso = cylinder_iso(p);
  return pull_back(iso, cylinder_double_ray(iso.dst));
}

std::pair<CoordDoubleRay, CoordDoubleRay> cylinder_two_rays(const CylinderParams& p) {
  p.validate();
  const int k = p.k;
  const int64_t l = p.l;
  if (k == 2) return {concat({{{0, 0}}}, 1), concat({{{0, 1}}}, 1)};
  if (k % 2 == 0 && l >= 4) {
    const int64_t l1 = 2, l2 = l - 2;
    return {concat({snake(p, 0, l1)}, l), concat({snake(p, l1 / 2, l2)}, l)};
  }
  if (k % 2 == 1 && l >= 3) {
    // rightward sweeps of width l-1 leave gaps of width l-1, filled by the second ray
    const int64_t w = l - 1;
    return {concat({sweep(k, 1, w, +1)}, 2 * w), concat({sweep(k, 1 + w, w, +1)}, 2 * w)};
  }
  CylinderIso iso = cylinder_iso(p);
  auto [d1, d2] = cylinder_two_rays(iso.dst);
  return {pull_back(iso, d1), pull_back(iso, d2)};
}

CoordDoubleRay grid_double_ray(int height) {
  if (height < 1) throw std::invalid_argument("grid height must be >= 1");
  CoordDoubleRay r;
  for (int m = 0; m < height; ++m) r.motif.push_back({0, m});
  for (int m = height - 1; m >= 0; --m) r.motif.push_back({1, m});
  r.shift = 2;
  return r;
}

std::pair<CoordDoubleRay, CoordDoubleRay> grid_two_rays(int height) {
  if (height < 2) throw std::invalid_argument("grid_two_rays needs height >= 2");
  CoordDoubleRay d1{{{0, 0}}, 1};
  CoordDoubleRay d2;
  if (height == 2) {
    d2 = {{{0, 1}}, 1};
  } else {
    for (int m = 1; m < height; ++m) d2.motif.push_back({0, m});
    for (int m = height - 1; m >= 1; --m) d2.motif.push_back({1, m});
    d2.shift = 2;
  }
  return {d1, d2};
}

}  // namespace gqd
