#include "gqd/io.hpp"

#include <sstream>

namespace gqd {

namespace {

const char* kPalette[] = {"red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"};

std::string palette(size_t j) { return kPalette[j % (sizeof(kPalette) / sizeof(kPalette[0]))]; }

std::string vname(const WallVertex& v) { return std::to_string(v.n) + "," + std::to_string(v.m); }

const char* kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::Horizontal: return "horizontal";
    case EdgeKind::Straight: return "straight";
    case EdgeKind::Twisted: return "twisted";
  }
  return "?";
}

std::vector<int64_t> int_array(const Json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError(field, "expected an integer array");
  std::vector<int64_t> out;
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) throw ParseError(field + "[" + std::to_string(i) + "]", "expected an integer");
    out.push_back(j[i].get<int64_t>());
  }
  return out;
}

std::map<std::pair<WallVertex, WallVertex>, size_t> overlay_edges(const Overlay& o) {
  std::map<std::pair<WallVertex, WallVertex>, size_t> out;
  for (size_t p = 0; p < o.paths.size(); ++p)
    for (size_t j = 0; j + 1 < o.paths[p].size(); ++j) {
      auto u = o.paths[p][j], v = o.paths[p][j + 1];
      out[{std::min(u, v), std::max(u, v)}] = p;
    }
  return out;
}

}  // namespace

Json group_to_json(const GqdGroup& G) { return {{"invariant_factors", G.K.factors}, {"beta", G.beta}}; }

GqdGroup group_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("group", "expected an object");
  if (!j.contains("invariant_factors")) throw ParseError("group.invariant_factors", "missing");
  auto f = int_array(j["invariant_factors"], "group.invariant_factors");
  for (auto n : f)
    if (n < 1) throw ParseError("group.invariant_factors", "factors must be >= 1");
  FiniteAbelianGroup K(f);
  KElem beta = j.contains("beta") ? int_array(j["beta"], "group.beta") : k_zero(K);
  if (!K.valid(beta)) throw ParseError("group.beta", "not a reduced element of K");
  try {
    return GqdGroup(K, beta);
  } catch (const std::invalid_argument& e) {
    throw ParseError("group.beta", e.what());
  }
}

Json elem_to_json(const GqdElem& x) { return {{"k", x.k}, {"i", x.i}, {"eps", x.eps}}; }

GqdElem elem_from_json(const GqdGroup& G, const Json& j, const std::string& field) {
  if (j.is_string()) {
    try {
      return normalize_word(G, parse_word(G, j.get<std::string>()));
    } catch (const std::exception& e) {
      throw ParseError(field, e.what());
    }
  }
  if (!j.is_object()) throw ParseError(field, "expected an element record or a word string");
  GqdElem x;
  x.k = j.contains("k") ? int_array(j["k"], field + ".k") : k_zero(G.K);
  if (!j.contains("i") || !j["i"].is_number_integer()) throw ParseError(field + ".i", "expected an integer");
  x.i = j["i"].get<int64_t>();
  if (!j.contains("eps") || !j["eps"].is_number_integer()) throw ParseError(field + ".eps", "expected 0 or 1");
  int64_t e = j["eps"].get<int64_t>();
  if (e != 0 && e != 1) throw ParseError(field + ".eps", "expected 0 or 1");
  x.eps = static_cast<int>(e);
  if (!valid_elem(G, x)) throw ParseError(field + ".k", "not a reduced element of K");
  return x;
}

JobSpec job_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("spec", "expected an object");
  if (!j.contains("group")) throw ParseError("group", "missing");
  JobSpec spec;
  spec.group = group_from_json(j["group"]);
  if (!j.contains("gens") || !j["gens"].is_array()) throw ParseError("gens", "expected an array");
  std::vector<GqdElem> xs;
  for (size_t i = 0; i < j["gens"].size(); ++i)
    xs.push_back(elem_from_json(spec.group, j["gens"][i], "gens[" + std::to_string(i) + "]"));
  spec.gens = make_genset(spec.group, xs);
  return spec;
}

Json ray_to_json(const GroupDoubleRay& r) {
  Json motif = Json::array();
  for (const auto& x : r.motif) motif.push_back(elem_to_json(x));
  return {{"motif", motif}, {"period", elem_to_json(r.period)}, {"labels", r.labels}};
}

GroupDoubleRay ray_from_json(const GqdGroup& G, const Json& j, const std::string& field) {
  if (!j.is_object()) throw ParseError(field, "expected an object");
  GroupDoubleRay r;
  if (!j.contains("motif") || !j["motif"].is_array()) throw ParseError(field + ".motif", "expected an array");
  for (size_t i = 0; i < j["motif"].size(); ++i)
    r.motif.push_back(elem_from_json(G, j["motif"][i], field + ".motif[" + std::to_string(i) + "]"));
  if (!j.contains("period")) throw ParseError(field + ".period", "missing");
  r.period = elem_from_json(G, j["period"], field + ".period");
  if (!j.contains("labels")) throw ParseError(field + ".labels", "missing");
  for (auto v : int_array(j["labels"], field + ".labels")) r.labels.push_back(static_cast<int>(v));
  return r;
}

Json circle_to_json(const HamCircle& c) { return Json::array({ray_to_json(c.first), ray_to_json(c.second)}); }

HamCircle circle_from_json(const GqdGroup& G, const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("circle", "expected an array of two rays");
  return {ray_from_json(G, j[0], "circle[0]"), ray_from_json(G, j[1], "circle[1]")};
}

Json report_to_json(const VerifyReport& r) {
  Json tails = Json::array();
  for (const auto& t : r.tail_status)
    tails.push_back({{"forward", t.forward}, {"backward", t.backward}, {"opposite_ends", t.opposite}});
  return {{"passed", r.passed},     {"checked_inner_radius", r.checked_inner_radius},
          {"covered", r.covered},   {"duplicates", r.duplicates},
          {"non_edges", r.non_edges}, {"missing", r.missing},
          {"errors", r.errors},     {"tail_status", tails}};
}

std::string window_to_dot(const WallWindow& W, const Overlay& overlay) {
  auto hl = overlay_edges(overlay);
  std::ostringstream os;
  os << "graph W {\n  node [shape=circle, width=0.25, fontsize=8];\n";
  for (const auto& v : W.vertices) {
    os << "  \"" << vname(v) << "\" [pos=\"" << v.n << "," << v.m << "!\"";
    auto it = overlay.vertex_class.find(v);
    if (it != overlay.vertex_class.end())
      os << ", style=filled, fillcolor=" << palette(static_cast<size_t>(it->second));
    os << "];\n";
  }
  for (const auto& e : W.edges) {
    os << "  \"" << vname(e.u) << "\" -- \"" << vname(e.v) << "\" [kind=" << kind_name(e.kind);
    if (e.kind == EdgeKind::Twisted) os << ", style=dashed";
    auto it = hl.find({e.u, e.v});
    if (it != hl.end()) os << ", color=" << palette(it->second) << ", penwidth=3";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

Json window_to_json(const WallWindow& W, const Overlay& overlay) {
  auto hl = overlay_edges(overlay);
  Json verts = Json::array(), edges = Json::array();
  for (const auto& v : W.vertices) {
    Json jv = {{"n", v.n}, {"m", v.m}};
    auto it = overlay.vertex_class.find(v);
    if (it != overlay.vertex_class.end()) jv["class"] = it->second;
    verts.push_back(jv);
  }
  for (const auto& e : W.edges) {
    Json je = {{"u", {e.u.n, e.u.m}}, {"v", {e.v.n, e.v.m}}, {"kind", kind_name(e.kind)}};
    auto it = hl.find({e.u, e.v});
    if (it != hl.end()) je["path"] = it->second;
    edges.push_back(je);
  }
  return {{"k", W.graph.k}, {"l", W.graph.l}, {"n_lo", W.n_lo}, {"n_hi", W.n_hi}, {"vertices", verts}, {"edges", edges}};
}

std::string cayley_window_to_dot(const CayleyWindow& W) {
  std::ostringstream os;
  os << "digraph C {\n";
  for (size_t j = 0; j < W.vertices.size(); ++j) os << "  v" << j << " [label=\"" << to_string(W.vertices[j]) << "\"];\n";
  for (const auto& [u, v, s] : W.edges) os << "  v" << u << " -> v" << v << " [label=" << s << "];\n";
  os << "}\n";
  return os.str();
}

}  // namespace gqd
