#include "gqd/verify.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "gqd/checked.hpp"

namespace gqd {

namespace {

constexpr size_t kMaxListed = 20;

void note(std::vector<std::string>& list, const std::string& s) {
  if (list.size() < kMaxListed) list.push_back(s);
}

int64_t ceil_div(int64_t a, int64_t d) { return -floor_div(-a, d); }

// Periods q for which some motif entry with coordinate c (min..max) can satisfy
// |c + q*z| <= bound, i.e. q*z in [lo - cmax, hi - cmin].
std::pair<int64_t, int64_t> period_range(int64_t lo, int64_t hi, int64_t cmin, int64_t cmax, int64_t z) {
  int64_t a = checked_sub(lo, cmax), b = checked_sub(hi, cmin);
  if (z > 0) return {ceil_div(a, z), floor_div(b, z)};
  return {ceil_div(b, z), floor_div(a, z)};
}

std::string wv_string(const WallVertex& v) {
  return "(" + std::to_string(v.n) + "," + std::to_string(v.m) + ")";
}

struct GroupExpansion {
  std::vector<GqdElem> verts;
  TailStatus tails;
  bool ok = true;
};

// Walks one ray over enough periods to cover the inner ball plus one period each side.
GroupExpansion expand(const GqdGroup& G, const GenSet& S, const CayleyWindow& W,
                      const GroupDoubleRay& ray, int inner_radius, int64_t bound, VerifyReport& rep) {
  GroupExpansion ex;
  auto fail = [&](const std::string& s) {
    note(rep.errors, s);
    ex.ok = false;
    return ex;
  };
  if (ray.motif.empty()) return fail("empty motif");
  if (ray.labels.size() != ray.motif.size()) return fail("label count differs from motif length");
  for (int lab : ray.labels)
    if (lab < 0 || lab >= static_cast<int>(S.size())) return fail("label out of range");
  if (!valid_elem(G, ray.period)) return fail("period is not a valid element");
  if (is_torsion(G, ray.period)) return fail("period " + to_string(ray.period) + " is torsion");
  for (const auto& v : ray.motif)
    if (!valid_elem(G, v)) return fail("motif entry " + to_string(v) + " is not a valid element");
  if (inner_radius > W.radius) return fail("inner radius exceeds window radius");

  // word length of g is at least |g.i| / c
  int64_t c = 0;
  for (const auto& s : S.gens) c = std::max<int64_t>(c, s.i < 0 ? -s.i : s.i);
  if (c == 0) return fail("generating set has no a-exponent");
  int64_t R = checked_mul(inner_radius, c);
  int64_t cmin = ray.motif[0].i, cmax = ray.motif[0].i;
  for (const auto& v : ray.motif) {
    cmin = std::min(cmin, v.i);
    cmax = std::max(cmax, v.i);
  }
  int64_t z = ray.period.i;
  auto [q_lo, q_hi] = period_range(-R, R, cmin, cmax, z);
  if (q_lo > q_hi) q_hi = q_lo;
  --q_lo;
  ++q_hi;
  int64_t p = ray.size();
  if ((q_hi - q_lo + 1) > bound / p) return fail("coverage bound exceeded");

  int64_t x_lo = q_lo * p, x_hi = (q_hi + 1) * p - 1;
  GqdElem cur = ray.at(G, x_lo);
  for (int64_t x = x_lo; x <= x_hi; ++x) {
    ex.verts.push_back(cur);
    int lab = ray.label_at(x);
    GqdElem next = ray.at(G, x + 1);
    GqdElem step = mul(G, cur, S[lab]);
    if (step != next) {
      note(rep.non_edges, "index " + std::to_string(x) + ": " + to_string(cur) + " * s" + std::to_string(lab) +
                              " != " + to_string(next));
    } else if (W.contains(cur) && W.contains(next) && !W.has_edge(cur, next, lab)) {
      note(rep.non_edges, "index " + std::to_string(x) + ": window lacks edge");
    }
    cur = next;
  }
  // beyond [x_lo, x_hi] every vertex has |i| > R, hence word length > inner_radius
  auto outside = [&](int64_t x) {
    int64_t i = ray.at(G, x).i;
    return i > R || i < -R;
  };
  bool fwd = true, bwd = true;
  for (int64_t j = 1; j <= p; ++j) {
    fwd = fwd && outside(x_hi + j);
    bwd = bwd && outside(x_lo - j);
  }
  ex.tails.forward = fwd;
  ex.tails.backward = bwd;
  ex.tails.opposite = (ray.at(G, x_hi + 1).i > 0) != (ray.at(G, x_lo - 1).i > 0);
  if (!(fwd && bwd && ex.tails.opposite)) note(rep.errors, "tails do not reach both ends");
  return ex;
}

struct CoordExpansion {
  std::vector<WallVertex> verts;
  TailStatus tails;
  bool ok = true;
};

CoordExpansion expand(const WallWindow& W, const CoordDoubleRay& ray, int64_t lo, int64_t hi, int64_t bound,
                      VerifyReport& rep) {
  CoordExpansion ex;
  auto fail = [&](const std::string& s) {
    note(rep.errors, s);
    ex.ok = false;
    return ex;
  };
  if (ray.motif.empty()) return fail("empty motif");
  if (ray.shift == 0) return fail("zero shift");
  if (lo > hi || lo < W.n_lo || hi > W.n_hi) return fail("inner range not inside window");
  for (const auto& v : ray.motif)
    if (v.m < 0 || v.m >= W.graph.k) return fail("row out of range: " + wv_string(v));
  int64_t cmin = ray.motif[0].n, cmax = ray.motif[0].n;
  for (const auto& v : ray.motif) {
    cmin = std::min(cmin, v.n);
    cmax = std::max(cmax, v.n);
  }
  auto [q_lo, q_hi] = period_range(lo, hi, cmin, cmax, ray.shift);
  if (q_lo > q_hi) q_hi = q_lo;
  --q_lo;
  ++q_hi;
  int64_t p = static_cast<int64_t>(ray.motif.size());
  if ((q_hi - q_lo + 1) > bound / p) return fail("coverage bound exceeded");
  int64_t x_lo = q_lo * p, x_hi = (q_hi + 1) * p - 1;
  for (int64_t x = x_lo; x <= x_hi; ++x) {
    WallVertex u = ray.at(x), v = ray.at(x + 1);
    ex.verts.push_back(u);
    if (!W.graph.adjacent(u, v)) {
      note(rep.non_edges, "index " + std::to_string(x) + ": " + wv_string(u) + " - " + wv_string(v));
    } else if (W.contains(u) && W.contains(v) && !W.has_edge(u, v)) {
      note(rep.non_edges, "index " + std::to_string(x) + ": window lacks edge");
    }
  }
  auto outside = [&](int64_t x) {
    int64_t n = ray.at(x).n;
    return n < lo || n > hi;
  };
  bool fwd = true, bwd = true;
  for (int64_t j = 1; j <= p; ++j) {
    fwd = fwd && outside(x_hi + j);
    bwd = bwd && outside(x_lo - j);
  }
  ex.tails.forward = fwd;
  ex.tails.backward = bwd;
  ex.tails.opposite = (ray.at(x_hi + 1).n > hi) != (ray.at(x_lo - 1).n > hi);
  if (!(fwd && bwd && ex.tails.opposite)) note(rep.errors, "tails do not reach both ends");
  return ex;
}

void finish(VerifyReport& rep) {
  bool tails = !rep.tail_status.empty();
  for (const auto& t : rep.tail_status) tails = tails && t.forward && t.backward && t.opposite;
  rep.passed = tails && rep.duplicates.empty() && rep.non_edges.empty() && rep.missing.empty() &&
               rep.errors.empty();
}

VerifyReport verify_group(const GqdGroup& G, const GenSet& S, const CayleyWindow& W,
                          const std::vector<const GroupDoubleRay*>& rays, int inner_radius, int64_t bound) {
  VerifyReport rep;
  rep.checked_inner_radius = inner_radius;
  std::unordered_map<GqdElem, int, GqdElemHash> count;
  bool ok = true;
  for (const auto* r : rays) {
    GroupExpansion ex = expand(G, S, W, *r, inner_radius, bound, rep);
    rep.tail_status.push_back(ex.tails);
    ok = ok && ex.ok;
    for (const auto& v : ex.verts)
      if (++count[v] == 2) note(rep.duplicates, to_string(v));
  }
  if (ok) {
    for (const auto& v : W.vertices) {
      if (W.dist.at(v) > inner_radius) continue;
      auto it = count.find(v);
      if (it == count.end()) note(rep.missing, to_string(v));
      else if (it->second == 1) ++rep.covered;
    }
  }
  finish(rep);
  return rep;
}

VerifyReport verify_coord(const WallWindow& W, const std::vector<const CoordDoubleRay*>& rays, int64_t lo,
                          int64_t hi, int64_t bound) {
  VerifyReport rep;
  rep.checked_inner_radius = std::max(lo < 0 ? -lo : lo, hi < 0 ? -hi : hi);
  std::map<WallVertex, int> count;
  bool ok = true;
  for (const auto* r : rays) {
    CoordExpansion ex = expand(W, *r, lo, hi, bound, rep);
    rep.tail_status.push_back(ex.tails);
    ok = ok && ex.ok;
    for (const auto& v : ex.verts)
      if (++count[v] == 2) note(rep.duplicates, wv_string(v));
  }
  if (ok) {
    for (int64_t n = lo; n <= hi; ++n)
      for (int m = 0; m < W.graph.k; ++m) {
        auto it = count.find({n, m});
        if (it == count.end()) note(rep.missing, wv_string({n, m}));
        else if (it->second == 1) ++rep.covered;
      }
  }
  finish(rep);
  return rep;
}

}  // namespace

std::string VerifyReport::summary() const {
  std::ostringstream os;
  os << (passed ? "PASS" : "FAIL") << " inner=" << checked_inner_radius << " covered=" << covered
     << " duplicates=" << duplicates.size() << " non_edges=" << non_edges.size() << " missing=" << missing.size();
  for (const auto& e : errors) os << "; " << e;
  return os.str();
}

VerifyReport verify_ray(const GqdGroup& G, const GenSet& S, const CayleyWindow& W, const GroupDoubleRay& ray,
                        int inner_radius, int64_t coverage_bound) {
  return verify_group(G, S, W, {&ray}, inner_radius, coverage_bound);
}

VerifyReport verify_circle(const GqdGroup& G, const GenSet& S, const CayleyWindow& W, const HamCircle& circle,
                           int inner_radius, int64_t coverage_bound) {
  return verify_group(G, S, W, {&circle.first, &circle.second}, inner_radius, coverage_bound);
}

VerifyReport verify_ray(const WallWindow& W, const CoordDoubleRay& ray, int64_t inner_lo, int64_t inner_hi,
                        int64_t coverage_bound) {
  return verify_coord(W, {&ray}, inner_lo, inner_hi, coverage_bound);
}

VerifyReport verify_circle(const WallWindow& W, const std::pair<CoordDoubleRay, CoordDoubleRay>& rays,
                           int64_t inner_lo, int64_t inner_hi, int64_t coverage_bound) {
  return verify_coord(W, {&rays.first, &rays.second}, inner_lo, inner_hi, coverage_bound);
}

VerifyReport verify_finite_path(const FiniteGraph& g, const std::vector<int>& path) {
  VerifyReport rep;
  std::vector<int> seen(g.size(), 0);
  for (size_t j = 0; j < path.size(); ++j) {
    int v = path[j];
    if (v < 0 || v >= static_cast<int>(g.size())) {
      note(rep.errors, "vertex " + std::to_string(v) + " out of range");
      continue;
    }
    if (++seen[v] == 2) note(rep.duplicates, std::to_string(v));
    if (j + 1 < path.size() && !g.adjacent(v, path[j + 1]))
      note(rep.non_edges, std::to_string(v) + " - " + std::to_string(path[j + 1]));
  }
  for (size_t v = 0; v < g.size(); ++v) {
    if (seen[v] == 0) note(rep.missing, std::to_string(v));
    else if (seen[v] == 1) ++rep.covered;
  }
  rep.passed = rep.duplicates.empty() && rep.non_edges.empty() && rep.missing.empty() && rep.errors.empty();
  return rep;
}

}  // namespace gqd
