// gqdham: Hamiltonian double rays and circles in two-ended GQD Cayley graphs.
//
// Exit codes: 0 verified, 1 verification failed, 2 bad input or construction error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "gqd/hamilton.hpp"
#include "gqd/io.hpp"
#include "gqd/verify.hpp"

using namespace gqd;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kInputError = 2;

struct Options {
  std::string spec_path;
  std::string ray_path;
  int radius = 12;
  int inner_radius = 10;
  std::string format = "json";
  size_t budget = kDefaultWindowBudget;
  uint64_t seed = 1;
  bool trace = false;
  // wall
  int k = 4;
  int64_t l = -1;
  int64_t n_lo = -8, n_hi = 8;
  std::string show = "none";
};

Json read_json(const std::string& path) {
  std::ifstream in;
  std::istream* src = &std::cin;
  if (path != "-") {
    in.open(path);
    if (!in) throw ParseError(path, "cannot open file");
    src = &in;
  }
  try {
    return Json::parse(*src);
  } catch (const Json::parse_error& e) {
    throw ParseError(path, e.what());
  }
}

void print_trace(const BuildTrace& t) {
  for (const auto& s : t.steps) std::cerr << "# " << s << "\n";
}

int emit(const Options& o, const Json& payload, const VerifyReport& rep) {
  if (o.format == "json") {
    Json out = payload;
    out["report"] = report_to_json(rep);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << payload.dump() << "\n" << rep.summary() << "\n";
    for (const auto& s : rep.duplicates) std::cout << "  duplicate " << s << "\n";
    for (const auto& s : rep.non_edges) std::cout << "  non-edge " << s << "\n";
    for (const auto& s : rep.missing) std::cout << "  missing " << s << "\n";
  }
  return rep.passed ? kOk : kVerifyFailed;
}

int cmd_group_info(const Options& o) {
  JobSpec spec = job_from_json(read_json(o.spec_path));
  const auto& G = spec.group;
  Json out;
  out["group"] = group_to_json(G);
  out["order_K"] = G.K.order();
  out["infinite_dihedral"] = G.is_infinite_dihedral();
  Json gens = Json::array();
  int torsion = 0;
  for (const auto& s : spec.gens.gens) {
    auto ord = order(G, s);
    Json js = elem_to_json(s);
    js["order"] = ord ? Json(*ord) : Json("infinite");
    torsion += ord ? 1 : 0;
    gens.push_back(js);
  }
  out["gens"] = gens;
  out["torsion_generators"] = torsion;
  out["generates"] = generates_group(G, spec.gens.gens);
  CaseTag tag = classify_case(G, spec.gens);
  out["case"] = case_name(tag.kind);
  out["S1"] = tag.S1;
  out["S2"] = tag.S2;
  if (o.format == "json") {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "K = " << Json(G.K.factors).dump() << " |K| = " << G.K.order() << " beta = " << Json(G.beta).dump()
              << "\n";
    if (G.is_infinite_dihedral()) std::cout << "infinite dihedral\n";
    std::cout << "|S| = " << spec.gens.size() << ", torsion generators: " << torsion << "\n";
    std::cout << "case: " << case_name(tag.kind) << "\n";
  }
  return kOk;
}

int cmd_ham(const Options& o, bool circle) {
  JobSpec spec = job_from_json(read_json(o.spec_path));
  if (o.inner_radius > o.radius) throw ParseError("--inner-radius", "must not exceed --radius");
  BuildTrace trace;
  Json payload;
  VerifyReport rep;
  CayleyWindow W = build_window(spec.group, spec.gens, o.radius, o.budget);
  if (circle) {
    HamCircle c = hamiltonian_circle(spec.group, spec.gens, {}, &trace);
    payload["circle"] = circle_to_json(c);
    rep = verify_circle(spec.group, spec.gens, W, c, o.inner_radius);
  } else {
    GroupDoubleRay r = hamiltonian_double_ray(spec.group, spec.gens, {}, &trace);
    payload["ray"] = ray_to_json(r);
    rep = verify_ray(spec.group, spec.gens, W, r, o.inner_radius);
  }
  Json steps = trace.steps;
  payload["construction"] = steps;
  if (o.trace) print_trace(trace);
  return emit(o, payload, rep);
}

int cmd_verify(const Options& o) {
  JobSpec spec = job_from_json(read_json(o.spec_path));
  validate_genset(spec.group, spec.gens);
  Json j = read_json(o.ray_path);
  CayleyWindow W = build_window(spec.group, spec.gens, o.radius, o.budget);
  if (j.is_object() && j.contains("circle")) j = j["circle"];
  else if (j.is_object() && j.contains("ray")) j = j["ray"];
  if (j.is_array()) {
    HamCircle c = circle_from_json(spec.group, j);
    return emit(o, Json::object(), verify_circle(spec.group, spec.gens, W, c, o.inner_radius));
  }
  GroupDoubleRay r = ray_from_json(spec.group, j);
  return emit(o, Json::object(), verify_ray(spec.group, spec.gens, W, r, o.inner_radius));
}

int cmd_wall(const Options& o) {
  if (o.n_lo > o.n_hi) throw ParseError("--n-lo", "empty column range");
  Overlay ov;
  WallWindow W;
  if (o.l < 0) {
    if (o.show != "none") throw ParseError("--show", "overlays need a cylinder (--l)");
    W = wall_window(o.k, o.n_lo, o.n_hi);
  } else {
    CylinderParams p{o.k, o.l};
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      throw ParseError("--k/--l", e.what());
    }
    W = cylinder_window(p, o.n_lo, o.n_hi);
    auto clip = [&](const std::vector<WallVertex>& path) {
      std::vector<WallVertex> out;
      for (const auto& v : path)
        if (W.contains(v)) out.push_back(v);
      return out;
    };
    auto ray_path = [&](const CoordDoubleRay& r) {
      std::vector<WallVertex> out;
      int64_t span = (o.n_hi - o.n_lo + 1) * o.k * 4;
      for (int64_t x = -span; x <= span; ++x) {
        WallVertex v = r.at(x);
        if (W.contains(v) && W.contains(r.at(x + 1))) {
          if (!out.empty() && out.back() != v) {
            ov.paths.push_back(out);
            out.clear();
          }
          if (out.empty()) out.push_back(v);
          out.push_back(r.at(x + 1));
        }
      }
      if (!out.empty()) ov.paths.push_back(out);
    };
    if (o.show == "column") {
      ov.paths.push_back(clip(column(p, 0)));
    } else if (o.show == "iso-rows") {
      CylinderIso iso = cylinder_iso(p);
      for (const auto& v : W.vertices) ov.vertex_class[v] = iso.forward(v).m;
    } else if (o.show == "ray") {
      ray_path(cylinder_double_ray(p));
    } else if (o.show == "circle") {
      auto [a, b] = cylinder_two_rays(p);
      ray_path(a);
      ray_path(b);
    } else if (o.show != "none") {
      throw ParseError("--show", "expected none, column, iso-rows, ray or circle");
    }
  }
  if (o.format == "dot") std::cout << window_to_dot(W, ov);
  else std::cout << window_to_json(W, ov).dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hamiltonian double rays and circles in two-ended GQD Cayley graphs"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", o.spec_path, "job spec JSON (- for stdin)")->required();
    sub->add_option("--radius", o.radius, "Cayley window radius")->check(CLI::Range(0, 64));
    sub->add_option("--inner-radius", o.inner_radius, "verified inner word radius")->check(CLI::Range(0, 64));
    sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--budget", o.budget, "window vertex budget");
    sub->add_option("--seed", o.seed, "reserved; all constructions are deterministic");
    sub->add_flag("--trace", o.trace, "print the construction steps to stderr");
  };
  auto* info = app.add_subcommand("group-info", "describe a group and generating set");
  info->add_option("--spec", o.spec_path, "job spec JSON (- for stdin)")->required();
  info->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  auto* ray = app.add_subcommand("ham-ray", "construct and verify a Hamiltonian double ray");
  add_common(ray);
  auto* circ = app.add_subcommand("ham-circle", "construct and verify a Hamiltonian circle");
  add_common(circ);
  auto* ver = app.add_subcommand("verify", "verify a ray or circle JSON against a spec");
  add_common(ver);
  ver->add_option("--ray", o.ray_path, "ray or circle JSON")->required();
  auto* wall = app.add_subcommand("wall", "export a wall or twisted cylinder window");
  wall->add_option("--k", o.k, "height")->check(CLI::PositiveNumber);
  wall->add_option("--l", o.l, "twist (omit for the plain wall)");
  wall->add_option("--n-lo", o.n_lo, "first column");
  wall->add_option("--n-hi", o.n_hi, "last column");
  wall->add_option("--show", o.show, "none, column, iso-rows, ray or circle");
  wall->add_option("--format", o.format, "dot or json")->check(CLI::IsMember({"dot", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }
  if (wall->parsed() && wall->count("--format") == 0) o.format = "dot";

  try {
    if (info->parsed()) return cmd_group_info(o);
    if (ray->parsed()) return cmd_ham(o, false);
    if (circ->parsed()) return cmd_ham(o, true);
    if (ver->parsed()) return cmd_verify(o);
    if (wall->parsed()) return cmd_wall(o);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
