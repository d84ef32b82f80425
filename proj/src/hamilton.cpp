#include "gqd/hamilton.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "gqd/checked.hpp"

namespace gqd {

void BuildTrace::add(int depth, const std::string& s) { steps.push_back(std::string(2 * depth, ' ') + s); }

namespace {

void trace_add(BuildTrace* t, int depth, const std::string& s) {
  if (t) t->add(depth, s);
}

std::string set_string(const GenSet& S) {
  std::string out = "{";
  for (size_t j = 0; j < S.size(); ++j) out += (j ? ", " : "") + to_string(S[j]);
  return out + "}";
}

std::string group_string(const GqdGroup& G) {
  std::ostringstream os;
  os << "K=Z";
  if (G.K.factors.empty()) os << "1";
  for (size_t j = 0; j < G.K.factors.size(); ++j) os << (j ? "xZ" : "") << G.K.factors[j];
  os << " beta=" << k_to_string(G.beta);
  return os.str();
}

// Finite search state shared by the path oracle.
struct PathSearch {
  const FiniteGraph& g;
  int64_t budget;
  int64_t nodes = 0;
  std::vector<char> used;
  std::vector<int> path;

  // every unvisited vertex reachable from v through unvisited vertices
  bool connected_rest(int v) const {
    size_t remaining = g.size() - path.size();
    if (remaining == 0) return true;
    std::vector<char> seen(g.size(), 0);
    std::vector<int> stack{v};
    seen[v] = 1;
    size_t reached = 0;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (const auto& [w, lab] : g.adj[u]) {
        if (used[w] || seen[w]) continue;
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
    return reached == remaining;
  }

  int free_degree(int v) const {
    int d = 0;
    for (const auto& [w, lab] : g.adj[v]) d += used[w] ? 0 : 1;
    return d;
  }

  bool dfs(int v) {
    if (path.size() == g.size()) return true;
    if (++nodes > budget) return false;
    std::vector<std::pair<int, int>> cand;
    for (const auto& [w, lab] : g.adj[v])
      if (!used[w]) cand.push_back({free_degree(w), w});
    std::sort(cand.begin(), cand.end());
    for (const auto& [deg, w] : cand) {
      used[w] = 1;
      path.push_back(w);
      if (connected_rest(w) && dfs(w)) return true;
      path.pop_back();
      used[w] = 0;
      if (nodes > budget) return false;
    }
    return false;
  }
};

GqdElem kz_elem(const KZElem& x) { return from_kz(x); }

LatticeSubgroup lattice_of(const GqdGroup& G, const GenSet& S, const std::vector<int>& T) {
  std::vector<KZElem> gens;
  for (int j : T) gens.push_back(to_kz(S[j]));
  return lattice_canonicalize(G.K, gens);
}

// Line s* + m: motif [m], period s*.
GroupDoubleRay line_row(const GenSet& S, const GqdElem& m, int star) {
  GroupDoubleRay r;
  r.motif = {m};
  r.period = S[star];
  r.labels = {star};
  return r;
}

GroupDoubleRay map_up(const GqdGroup& G, const GenSet& S, const SubgroupPresentation& P,
                      const GroupDoubleRay& RH, const GenSet& SH) {
  GroupDoubleRay out;
  out.period = P.up(G, RH.period);
  for (const auto& x : RH.motif) out.motif.push_back(P.up(G, x));
  for (int lab : RH.labels) {
    int j = S.index_of(P.up(G, SH[lab]));
    if (j < 0) throw std::logic_error("subgroup generator does not map into S");
    out.labels.push_back(j);
  }
  return out;
}

bool commutes(const GqdGroup& G, const GqdElem& x, const GqdElem& y) { return mul(G, x, y) == mul(G, y, x); }

// Rows of the cylinder extracted in Case 1, or nothing when the twist is not a constant shift.
struct CylinderFrame {
  std::vector<GroupDoubleRay> rows;
  int64_t twist = 0;
  bool reflect = false;
};

std::optional<CylinderFrame> cylinder_frame(const GqdGroup& G, const GenSet& S, const CosetLadder& ladder,
                                            GroupDoubleRay R0, int s, BuildTrace* trace, int depth) {
  if (R0.size() % 2 != 0) throw std::logic_error("row does not alternate between the two cosets");
  if (coset_of(G, ladder, R0.motif[0]).second == 0) R0 = R0.rotated(G, -1);
  for (int64_t x = 0; x < R0.size(); ++x) {
    auto [l, side] = coset_of(G, ladder, R0.motif[static_cast<size_t>(x)]);
    if (l != 0 || side != (x % 2 == 0 ? 1 : 0)) throw std::logic_error("row does not alternate between the two cosets");
  }
  CylinderFrame f;
  f.rows.push_back(R0);
  for (int64_t l = 0; l < ladder.m; ++l) {
    f.rows.push_back(next_row(G, S, f.rows.back(), s, static_cast<int>(l % 2)));
    for (const auto& v : f.rows.back().motif)
      if (coset_of(G, ladder, v).first != l + 1) throw std::logic_error("row left its coset");
  }
  const auto& top = f.rows.back();
  std::set<int64_t> offsets;
  for (int64_t n = ladder.m % 2; n < top.size(); n += 2) {
    auto idx = ray_index(G, R0, mul(G, top.motif[static_cast<size_t>(n)], S[s]));
    if (!idx) throw std::logic_error("wrap edge leaves the bottom row");
    offsets.insert(*idx - n);
  }
  if (offsets.size() != 1) {
    trace_add(trace, depth, "wrap map is not a shift (" + std::to_string(offsets.size()) + " offsets)");
    return std::nullopt;
  }
  f.twist = *offsets.begin();
  if (f.twist < 0) {
    f.twist = -f.twist;
    f.reflect = true;
  }
  return f;
}

template <class Coord>
auto frame_pull_back(const GqdGroup& G, const GenSet& S, const CylinderFrame& f, const Coord& ray) {
  auto E = [&](const WallVertex& v) {
    const auto& row = f.rows.at(static_cast<size_t>(v.m));
    return row.at(G, f.reflect ? -v.n : v.n);
  };
  GqdElem sigma = f.reflect ? inv(G, f.rows[0].period) : f.rows[0].period;
  return pull_back(G, S, ray, E, f.rows[0].size(), sigma);
}

struct Case1Attempt {
  std::optional<GroupDoubleRay> ray;
  std::optional<HamCircle> circle;
};

// Two pairs {s, s^-1, t, t^-1} with b^2 != 1: zigzag rows t s t s ...
std::vector<GroupDoubleRay> zigzag_rows(const GqdGroup& G, const GenSet& S) {
  int s = 0;
  int t = -1;
  for (size_t j = 0; j < S.size(); ++j)
    if (S[j] != S[s] && S[j] != inv(G, S[s])) {
      t = static_cast<int>(j);
      break;
    }
  if (t < 0) throw std::invalid_argument("S does not generate G");
  GqdElem ts = mul(G, S[t], S[s]);
  if (is_torsion(G, ts)) throw std::invalid_argument("S does not generate G");
  GroupDoubleRay Z;
  Z.motif = {identity(G), S[t]};
  Z.period = ts;
  Z.labels = {t, s};
  GqdElem beta = from_k(G, G.beta);
  LatticeSubgroup line = lattice_canonicalize(G.K, {to_kz(ts)});
  if (lattice_contains(G.K, line, to_kz(beta))) return {Z};
  GroupDoubleRay Z2;
  Z2.motif = {mul(G, beta, S[t]), mul(G, mul(G, beta, S[t]), S[s])};
  Z2.period = ts;
  Z2.labels = {s, t};
  return {Z, Z2};
}

Case1Attempt case1_impl(const GqdGroup& G, const GenSet& S, bool want_circle, const HamOptions& opt,
                        BuildTrace* trace, int depth) {
  Case1Attempt out;
  auto cands = pivot_candidates(G, S);
  if (cands.empty()) {
    auto rows = zigzag_rows(G, S);
    trace_add(trace, depth, "case1 zigzag ladder, " + std::to_string(rows.size()) + " row(s)");
    check_grid(G, S, rows);
    if (!want_circle) {
      out.ray = rows.size() == 1 ? rows[0] : grid_assemble(G, S, rows);
    } else if (rows.size() >= 2) {
      out.circle = grid_circle(G, S, rows);
    }
    return out;
  }
  for (const auto& [s, t] : cands) {
    auto ladder = coset_ladder(G, S, s, t);
    std::vector<GqdElem> rest;
    for (int j : without_pair(G, S, s)) rest.push_back(S[j]);
    auto P = represent_subgroup(G, rest);
    std::vector<GqdElem> down;
    for (const auto& x : rest) down.push_back(P.down(G, x));
    GenSet SH = make_genset(P.GH, down);
    trace_add(trace, depth,
              "case1 pivot s=" + to_string(S[s]) + " t=" + to_string(S[t]) + " m=" + std::to_string(ladder.m) +
                  "; subgroup " + group_string(P.GH) + " S'=" + set_string(SH));
    if (ladder.m == 0) {
      if (!want_circle) {
        out.ray = map_up(G, S, P, hamiltonian_double_ray(P.GH, SH, opt, trace, depth + 1), SH);
        return out;
      }
      if (SH.size() >= 3) {
        HamCircle c = hamiltonian_circle(P.GH, SH, opt, trace, depth + 1);
        out.circle = HamCircle{map_up(G, S, P, c.first, SH), map_up(G, S, P, c.second, SH)};
        return out;
      }
      continue;
    }
    GroupDoubleRay R0 = map_up(G, S, P, hamiltonian_double_ray(P.GH, SH, opt, trace, depth + 1), SH);
    auto frame = cylinder_frame(G, S, ladder, R0, s, trace, depth);
    if (!frame) continue;
    CylinderParams cp{static_cast<int>(ladder.m + 1), frame->twist};
    cp.validate();
    trace_add(trace, depth,
              "cylinder k=" + std::to_string(cp.k) + " l=" + std::to_string(cp.l) + (frame->reflect ? " (reflected)" : ""));
    if (!want_circle) {
      out.ray = frame_pull_back(G, S, *frame, cylinder_double_ray(cp));
    } else {
      auto [a, b] = cylinder_two_rays(cp);
      out.circle = HamCircle{frame_pull_back(G, S, *frame, a), frame_pull_back(G, S, *frame, b)};
    }
    return out;
  }
  return out;
}

// Case 2i: rows f_j * L over a Hamiltonian path of Cay(F, S2).
std::vector<GroupDoubleRay> case2i_rows(const GqdGroup& G, const GenSet& S, const HamOptions& opt,
                                        BuildTrace* trace, int depth) {
  CaseTag tag = classify_case(G, S);
  std::vector<KElem> s2k;
  for (int j : tag.S2) s2k.push_back(S[j].k);
  std::vector<KElem> F = k_span(G.K, s2k);
  auto Q = quotient_by(G, F);
  std::vector<GqdElem> qgens;
  std::vector<int> pre;
  for (int j : tag.S1) {
    GqdElem q = Q.down(S[j]);
    if (std::find(qgens.begin(), qgens.end(), q) == qgens.end()) {
      qgens.push_back(q);
      pre.push_back(j);
    }
  }
  GenSet SQ;
  SQ.gens = qgens;
  trace_add(trace, depth,
            "case2i |F|=" + std::to_string(F.size()) + "; quotient " + group_string(Q.GQ) + " S1=" + set_string(SQ));
  GroupDoubleRay RQ = hamiltonian_double_ray(Q.GQ, SQ, opt, trace, depth + 1);
  std::vector<GqdElem> L{Q.lift(RQ.motif[0])};
  std::vector<int> labels;
  for (int64_t x = 0; x < RQ.size(); ++x) {
    int j = pre.at(static_cast<size_t>(RQ.labels[static_cast<size_t>(x)]));
    labels.push_back(j);
    L.push_back(mul(G, L.back(), S[j]));
  }
  GroupDoubleRay lifted;
  lifted.period = mul(G, L.back(), inv(G, L.front()));
  L.pop_back();
  lifted.motif = L;
  lifted.labels = labels;
  if (lifted.period.eps != 0 || is_torsion(G, lifted.period)) throw std::logic_error("lifted period is torsion");

  std::vector<int> s2_labels;
  std::vector<KElem> s2_elems;
  for (int j : tag.S2) {
    s2_labels.push_back(j);
    s2_elems.push_back(S[j].k);
  }
  std::vector<KElem> elems;
  FiniteGraph fg = finite_cayley<KElem>(
      k_zero(G.K), s2_elems, s2_labels, [&](const KElem& x, const KElem& y) { return k_add(G.K, x, y); }, &elems,
      opt.finite_bound);
  auto path = finite_ham_path(fg, 0, opt.finite_bound, opt.finite_node_budget);
  if (!path) throw std::runtime_error("no Hamiltonian path found in Cay(F, S2)");
  std::vector<GroupDoubleRay> rows;
  for (int v : *path) rows.push_back(left_translate(G, lifted, from_k(G, elems[static_cast<size_t>(v)])));
  return rows;
}

std::vector<GroupDoubleRay> case2ii_rows(const GqdGroup& G, const GenSet& S, const HamOptions& opt,
                                         BuildTrace* trace, int depth) {
  CaseTag tag = classify_case(G, S);
  LatticeSubgroup Hp = lattice_of(G, S, tag.S2);
  GroupDoubleRay R = abelian_double_ray(G, S, tag.S2, opt, trace, depth + 1);
  auto key = [&](const GqdElem& g) {
    KZElem c = lattice_coset_rep(G.K, Hp, {g.k, g.i});
    return GqdElem{c.k, c.z, g.eps};
  };
  std::vector<GqdElem> gens;
  std::vector<int> labels;
  for (int j : tag.S1) {
    gens.push_back(S[j]);
    labels.push_back(j);
  }
  std::vector<GqdElem> elems;
  FiniteGraph fg = finite_cayley<GqdElem>(
      identity(G), gens, labels, [&](const GqdElem& x, const GqdElem& y) { return key(mul(G, x, y)); }, &elems,
      opt.finite_bound);
  trace_add(trace, depth, "case2ii |G/H'|=" + std::to_string(elems.size()));
  auto path = finite_ham_path(fg, 0, opt.finite_bound, opt.finite_node_budget);
  if (!path) throw std::runtime_error("no Hamiltonian path found in the quotient G/H'");
  std::vector<GroupDoubleRay> rows{R};
  GqdElem w = identity(G);
  for (size_t j = 0; j + 1 < path->size(); ++j) {
    int lab = fg.label((*path)[j], (*path)[j + 1]);
    w = mul(G, w, S[lab]);
    rows.push_back(right_translate(G, S, R, w));
  }
  return rows;
}

}  // namespace

std::optional<std::vector<int>> finite_ham_path(const FiniteGraph& g, int start, size_t bound, int64_t node_budget) {
  if (g.size() > bound) throw std::length_error("finite graph exceeds size bound");
  if (g.size() == 0) return std::vector<int>{};
  if (start < 0 || start >= static_cast<int>(g.size())) throw std::invalid_argument("start vertex out of range");
  PathSearch ps{g, node_budget, 0, {}, {}};
  ps.used.assign(g.size(), 0);
  ps.used[start] = 1;
  ps.path.push_back(start);
  if (!ps.connected_rest(start)) return std::nullopt;
  if (ps.dfs(start)) return ps.path;
  return std::nullopt;
}

GroupDoubleRay right_translate(const GqdGroup& G, const GenSet& S, const GroupDoubleRay& R, const GqdElem& w) {
  GroupDoubleRay out;
  out.period = R.period;
  GqdElem wi = inv(G, w);
  for (const auto& x : R.motif) out.motif.push_back(mul(G, x, w));
  for (int lab : R.labels) {
    int j = S.index_of(mul(G, mul(G, wi, S[lab]), w));
    if (j < 0) throw std::logic_error("conjugated label not in S");
    out.labels.push_back(j);
  }
  return out;
}

GroupDoubleRay left_translate(const GqdGroup& G, const GroupDoubleRay& R, const GqdElem& g) {
  if (!commutes(G, g, R.period)) throw std::logic_error("left translation does not commute with the period");
  GroupDoubleRay out = R;
  for (auto& x : out.motif) x = mul(G, g, x);
  return out;
}

GroupDoubleRay with_labels(const GqdGroup& G, const GenSet& S, std::vector<GqdElem> motif, const GqdElem& period) {
  GroupDoubleRay out;
  out.period = period;
  out.motif = std::move(motif);
  for (size_t j = 0; j < out.motif.size(); ++j) {
    GqdElem next = j + 1 < out.motif.size() ? out.motif[j + 1] : mul(G, period, out.motif[0]);
    int lab = S.index_of(mul(G, inv(G, out.motif[j]), next));
    if (lab < 0) throw std::logic_error("consecutive ray vertices are not adjacent");
    out.labels.push_back(lab);
  }
  return out;
}

std::optional<int64_t> ray_index(const GqdGroup& G, const GroupDoubleRay& R, const GqdElem& v) {
  int64_t z = R.period.i;
  for (int64_t r = 0; r < R.size(); ++r) {
    const auto& m = R.motif[static_cast<size_t>(r)];
    if (m.eps != v.eps) continue;
    int64_t d = checked_sub(v.i, m.i);
    if (d % z != 0) continue;
    int64_t q = d / z;
    if (mul(G, power(G, R.period, q), m) == v) return checked_add(checked_mul(q, R.size()), r);
  }
  return std::nullopt;
}

GroupDoubleRay pull_back(const GqdGroup& G, const GenSet& S, const CoordDoubleRay& ray,
                         const std::function<GqdElem(const WallVertex&)>& E, int64_t P, const GqdElem& sigma_P) {
  int64_t d = ray.shift < 0 ? -ray.shift : ray.shift;
  int64_t times = P / std::gcd(d, P);
  CoordDoubleRay rep = ray.repeated(times);
  std::vector<GqdElem> motif;
  for (const auto& v : rep.motif) motif.push_back(E(v));
  return with_labels(G, S, std::move(motif), power(G, sigma_P, rep.shift / P));
}

GroupDoubleRay base_ray(const GqdGroup& G, const GenSet& S) {
  if (S.size() != 2 || S[0].eps != 1 || S[1].eps != 1 || inv(G, S[0]) != S[0] || inv(G, S[1]) != S[1])
    throw std::invalid_argument("base case needs two distinct involutions");
  GroupDoubleRay r;
  r.motif = {identity(G), S[0]};
  r.labels = {0, 1};
  r.period = mul(G, S[0], S[1]);
  if (is_torsion(G, r.period)) throw std::invalid_argument("S does not generate G");
  return r;
}

GroupDoubleRay next_row(const GqdGroup& G, const GenSet& S, const GroupDoubleRay& R, int s, int pivot_parity) {
  int64_t p = R.size();
  if (p % 2 != 0) throw std::logic_error("next_row: odd motif length");
  GroupDoubleRay out;
  out.period = R.period;
  for (int64_t r = 0; r < p; ++r) {
    bool pivot = pos_mod(r - pivot_parity, 2) == 0;
    if (pivot) {
      out.motif.push_back(mul(G, R.motif[static_cast<size_t>(r)], S[s]));
      out.labels.push_back(R.label_at(r + 1));
    } else {
      out.motif.push_back(mul(G, mul(G, R.at(G, r - 1), S[s]), S[R.label_at(r)]));
      out.labels.push_back(R.label_at(r - 1));
    }
  }
  for (int64_t r = 0; r < p; ++r) {
    GqdElem next = r + 1 < p ? out.motif[static_cast<size_t>(r + 1)] : mul(G, out.period, out.motif[0]);
    if (mul(G, out.motif[static_cast<size_t>(r)], S[out.labels[static_cast<size_t>(r)]]) != next)
      throw std::logic_error("next_row: 6-cycle step failed");
  }
  return out;
}

void check_grid(const GqdGroup& G, const GenSet& S, const std::vector<GroupDoubleRay>& rows) {
  if (rows.empty()) throw std::invalid_argument("grid needs at least one row");
  int64_t p = rows[0].size();
  std::unordered_set<GqdElem, GqdElemHash> seen;
  for (size_t j = 0; j < rows.size(); ++j) {
    const auto& R = rows[j];
    if (R.size() != p || R.period != rows[0].period) throw std::logic_error("grid rows differ in period");
    for (int64_t x = -p; x < 2 * p; ++x) {
      GqdElem v = R.at(G, x);
      if (mul(G, v, S[R.label_at(x)]) != R.at(G, x + 1)) throw std::logic_error("grid row is not a walk");
      if (!seen.insert(v).second) throw std::logic_error("grid rows overlap");
      if (j + 1 < rows.size() && S.index_of(mul(G, inv(G, v), rows[j + 1].at(G, x))) < 0)
        throw std::logic_error("grid rung is not an edge");
    }
  }
}

GroupDoubleRay grid_assemble(const GqdGroup& G, const GenSet& S, const std::vector<GroupDoubleRay>& rows) {
  check_grid(G, S, rows);
  auto E = [&](const WallVertex& v) { return rows.at(static_cast<size_t>(v.m)).at(G, v.n); };
  return pull_back(G, S, grid_double_ray(static_cast<int>(rows.size())), E, rows[0].size(), rows[0].period);
}

HamCircle grid_circle(const GqdGroup& G, const GenSet& S, const std::vector<GroupDoubleRay>& rows) {
  check_grid(G, S, rows);
  if (rows.size() < 2) throw std::invalid_argument("grid circle needs at least two rows");
  auto E = [&](const WallVertex& v) { return rows.at(static_cast<size_t>(v.m)).at(G, v.n); };
  auto [a, b] = grid_two_rays(static_cast<int>(rows.size()));
  return HamCircle{pull_back(G, S, a, E, rows[0].size(), rows[0].period),
                   pull_back(G, S, b, E, rows[0].size(), rows[0].period)};
}

GqdElem SubgroupPresentation::up(const GqdGroup& G, const GqdElem& x) const {
  KZElem base = kz_add(G.K, {iso.forward(x.k), 0}, kz_scale(G.K, agen, x.i));
  GqdElem y = kz_elem(base);
  return x.eps ? mul(G, y, t) : y;
}

GqdElem SubgroupPresentation::down(const GqdGroup& G, const GqdElem& g) const {
  GqdElem y = g.eps ? mul(G, g, inv(G, t)) : g;
  if (y.i % agen.z != 0) throw std::invalid_argument("element not in the subgroup");
  int64_t j = y.i / agen.z;
  KElem f = k_sub(G.K, y.k, k_scale(G.K, agen.k, j));
  return {iso.backward(f), j, g.eps};
}

SubgroupPresentation represent_subgroup(const GqdGroup& G, const std::vector<GqdElem>& X) {
  SubgroupClass c = classify_subgroup(G, X);
  if (c.abelian || !c.part.inf_gen) throw std::invalid_argument("subgroup is not an infinite GQD subgroup");
  SubgroupPresentation P;
  P.agen = *c.part.inf_gen;
  P.t = *c.rep;
  P.iso = decompose_subquotient(G.K, c.part.finite, {k_zero(G.K)});
  P.GH = GqdGroup(P.iso.target, P.iso.backward(G.beta));
  return P;
}

GqdElem QuotientPresentation::down(const GqdElem& g) const { return {iso.backward(g.k), g.i, g.eps}; }
GqdElem QuotientPresentation::lift(const GqdElem& q) const { return {iso.forward(q.k), q.i, q.eps}; }

QuotientPresentation quotient_by(const GqdGroup& G, const std::vector<KElem>& F) {
  QuotientPresentation Q;
  Q.iso = decompose_subquotient(G.K, k_enumerate(G.K), F);
  Q.GQ = GqdGroup(Q.iso.target, Q.iso.backward(G.beta));
  return Q;
}

GroupDoubleRay abelian_double_ray(const GqdGroup& G, const GenSet& S, const std::vector<int>& T,
                                  const HamOptions& opt, BuildTrace* trace, int depth) {
  if (depth > opt.max_depth) throw std::runtime_error("recursion too deep");
  int star = -1;
  for (int j : T) {
    if (S[j].eps != 0) throw std::invalid_argument("abelian generators must lie in K<a>");
    if (star < 0 && S[j].i != 0) star = j;
  }
  if (star < 0) throw std::invalid_argument("abelian generators span a finite group");
  LatticeSubgroup L = lattice_of(G, S, T);
  std::vector<int> rest;
  for (int j : T)
    if (S[j] != S[star] && S[j] != inv(G, S[star])) rest.push_back(j);
  LatticeSubgroup M = lattice_of(G, S, rest);
  std::vector<GroupDoubleRay> rows;
  if (M.is_finite()) {
    std::vector<GqdElem> gens;
    std::vector<int> labels;
    for (int j : rest) {
      gens.push_back(S[j]);
      labels.push_back(j);
    }
    std::vector<GqdElem> elems;
    FiniteGraph fg = finite_cayley<GqdElem>(
        identity(G), gens, labels, [&](const GqdElem& x, const GqdElem& y) { return mul(G, x, y); }, &elems,
        opt.finite_bound);
    auto path = finite_ham_path(fg, 0, opt.finite_bound, opt.finite_node_budget);
    if (!path) throw std::runtime_error("no Hamiltonian path in the finite abelian part");
    for (int v : *path) rows.push_back(line_row(S, elems[static_cast<size_t>(v)], star));
    trace_add(trace, depth, "abelian s*=" + to_string(S[star]) + " |M|=" + std::to_string(elems.size()));
  } else {
    int64_t q = quotient_cyclic_order(G.K, M, to_kz(S[star]), L);
    trace_add(trace, depth, "abelian s*=" + to_string(S[star]) + " M infinite, " + std::to_string(q) + " rows");
    GroupDoubleRay RM = abelian_double_ray(G, S, rest, opt, trace, depth + 1);
    GqdElem shift = identity(G);
    for (int64_t j = 0; j < q; ++j) {
      rows.push_back(left_translate(G, RM, shift));
      shift = mul(G, shift, S[star]);
    }
  }
  if (rows.size() == 1 && rows[0].size() >= 1) return rows[0];
  return grid_assemble(G, S, rows);
}

GroupDoubleRay case1_ray(const GqdGroup& G, const GenSet& S, const HamOptions& opt, BuildTrace* trace, int depth) {
  auto a = case1_impl(G, S, false, opt, trace, depth);
  if (a.ray) return *a.ray;
  trace_add(trace, depth, "case1 fallback: periodic search");
  auto r = periodic_search_ray(G, S, opt);
  if (!r) throw std::runtime_error("case1: no construction succeeded");
  return *r;
}

GroupDoubleRay case2i_ray(const GqdGroup& G, const GenSet& S, const HamOptions& opt, BuildTrace* trace, int depth) {
  return grid_assemble(G, S, case2i_rows(G, S, opt, trace, depth));
}

GroupDoubleRay case2ii_ray(const GqdGroup& G, const GenSet& S, const HamOptions& opt, BuildTrace* trace,
                           int depth) {
  return grid_assemble(G, S, case2ii_rows(G, S, opt, trace, depth));
}

GroupDoubleRay hamiltonian_double_ray(const GqdGroup& G, const GenSet& S, const HamOptions& opt, BuildTrace* trace,
                                      int depth) {
  if (depth > opt.max_depth) throw std::runtime_error("recursion too deep");
  if (depth == 0) validate_genset(G, S);
  CaseTag tag = classify_case(G, S);
  switch (tag.kind) {
    case CaseTag::Kind::Base:
      trace_add(trace, depth, "base " + group_string(G) + " S=" + set_string(S));
      return base_ray(G, S);
    case CaseTag::Kind::Case1:
      return case1_ray(G, S, opt, trace, depth);
    case CaseTag::Kind::Case2i:
      return case2i_ray(G, S, opt, trace, depth);
    case CaseTag::Kind::Case2ii:
      return case2ii_ray(G, S, opt, trace, depth);
  }
  throw std::logic_error("unreachable");
}

HamCircle hamiltonian_circle(const GqdGroup& G, const GenSet& S, const HamOptions& opt, BuildTrace* trace,
                             int depth) {
  if (depth > opt.max_depth) throw std::runtime_error("recursion too deep");
  if (depth == 0) validate_genset(G, S);
  if (S.size() < 3) throw std::invalid_argument("degree < 3");
  CaseTag tag = classify_case(G, S);
  switch (tag.kind) {
    case CaseTag::Kind::Base:
      break;
    case CaseTag::Kind::Case1: {
      auto a = case1_impl(G, S, true, opt, trace, depth);
      if (a.circle) return *a.circle;
      trace_add(trace, depth, "case1 fallback: periodic circle search");
      auto c = periodic_search_circle(G, S, opt);
      if (!c) throw std::runtime_error("case1: no circle construction succeeded");
      return *c;
    }
    case CaseTag::Kind::Case2i:
      return grid_circle(G, S, case2i_rows(G, S, opt, trace, depth));
    case CaseTag::Kind::Case2ii:
      return grid_circle(G, S, case2ii_rows(G, S, opt, trace, depth));
  }
  throw std::logic_error("unreachable");
}

namespace {

// DFS over G/<sigma>; orbit keys are the representatives with 0 <= i < z.
struct PeriodicSearch {
  const GqdGroup& G;
  const GenSet& S;
  GqdElem sigma;
  int64_t target_power;  // close with sigma^{+-target_power}
  int64_t budget;
  size_t n_orbits;
  int64_t nodes = 0;
  std::unordered_set<GqdElem, GqdElemHash> used;
  std::vector<GqdElem> path;
  GqdElem closing;

  GqdElem key(const GqdElem& g) const {
    int64_t q = floor_div(g.i, sigma.i);
    return mul(G, power(G, sigma, -q), g);
  }

  int free_degree(const GqdElem& g) const {
    int d = 0;
    for (const auto& s : S.gens) d += used.count(key(mul(G, g, s))) ? 0 : 1;
    return d;
  }

  bool dfs() {
    const GqdElem& g = path.back();
    if (path.size() == n_orbits) {
      for (const auto& s : S.gens) {
        GqdElem h = mul(G, g, s);
        if (h == power(G, sigma, target_power) || h == power(G, sigma, -target_power)) {
          closing = h;
          return true;
        }
      }
      return false;
    }
    if (++nodes > budget) return false;
    std::vector<std::pair<int, GqdElem>> cand;
    for (const auto& s : S.gens) {
      GqdElem h = mul(G, g, s);
      if (!used.count(key(h))) cand.push_back({free_degree(h), h});
    }
    std::sort(cand.begin(), cand.end());
    for (const auto& [d, h] : cand) {
      if (used.count(key(h))) continue;
      used.insert(key(h));
      path.push_back(h);
      if (dfs()) return true;
      path.pop_back();
      used.erase(key(h));
      if (nodes > budget) return false;
    }
    return false;
  }
};

std::optional<std::vector<GqdElem>> periodic_search(const GqdGroup& G, const GenSet& S, int64_t target_power,
                                                    const HamOptions& opt, GqdElem* closing, GqdElem* sigma) {
  int64_t kord = G.K.order();
  for (int64_t z = 1; 2 * kord * z <= static_cast<int64_t>(opt.finite_bound); ++z) {
    for (const auto& k : k_enumerate(G.K)) {
      PeriodicSearch ps{G, S, GqdElem{k, z, 0}, target_power, opt.search_node_budget,
                        static_cast<size_t>(2 * kord * z), 0, {}, {}, {}};
      ps.path.push_back(identity(G));
      ps.used.insert(ps.key(identity(G)));
      if (ps.dfs()) {
        *closing = ps.closing;
        *sigma = ps.sigma;
        return ps.path;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<GroupDoubleRay> periodic_search_ray(const GqdGroup& G, const GenSet& S, const HamOptions& opt) {
  GqdElem closing, sigma;
  auto path = periodic_search(G, S, 1, opt, &closing, &sigma);
  if (!path) return std::nullopt;
  return with_labels(G, S, *path, closing);
}

std::optional<HamCircle> periodic_search_circle(const GqdGroup& G, const GenSet& S, const HamOptions& opt) {
  GqdElem closing, sigma;
  auto path = periodic_search(G, S, 2, opt, &closing, &sigma);
  if (!path) return std::nullopt;
  GroupDoubleRay first = with_labels(G, S, *path, closing);
  // closing = sigma^{+-2}; the other ray is the sigma-translate
  return HamCircle{first, left_translate(G, first, sigma)};
}

}  // namespace gqd
