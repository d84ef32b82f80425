#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "gqd/cayley.hpp"
#include "gqd/ray.hpp"
#include "gqd/verify.hpp"
#include "gqd/walls.hpp"

namespace gqd {

using Json = nlohmann::json;

// Input problems; `field` names the offending JSON path.
struct ParseError : std::runtime_error {
  std::string field;
  ParseError(std::string f, const std::string& msg) : std::runtime_error(f + ": " + msg), field(std::move(f)) {}
};

struct JobSpec {
  GqdGroup group;
  GenSet gens;
};

Json group_to_json(const GqdGroup& G);
GqdGroup group_from_json(const Json& j);
Json elem_to_json(const GqdElem& x);
GqdElem elem_from_json(const GqdGroup& G, const Json& j, const std::string& field = "elem");
// {"group": {...}, "gens": [record or word string, ...]}; gens are closed under inverses.
JobSpec job_from_json(const Json& j);

Json ray_to_json(const GroupDoubleRay& r);
GroupDoubleRay ray_from_json(const GqdGroup& G, const Json& j, const std::string& field = "ray");
Json circle_to_json(const HamCircle& c);
HamCircle circle_from_json(const GqdGroup& G, const Json& j);
Json report_to_json(const VerifyReport& r);

struct Overlay {
  std::vector<std::vector<WallVertex>> paths;  // drawn as highlighted edges, one color per path
  std::map<WallVertex, int> vertex_class;      // vertex fill color index
};

std::string window_to_dot(const WallWindow& W, const Overlay& overlay = {});
Json window_to_json(const WallWindow& W, const Overlay& overlay = {});
std::string cayley_window_to_dot(const CayleyWindow& W);

}  // namespace gqd
