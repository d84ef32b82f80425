#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gqd/cayley.hpp"
#include "gqd/ray.hpp"
#include "gqd/walls.hpp"

namespace gqd {

inline constexpr int64_t kDefaultCoverageBound = 100000;

struct TailStatus {
  bool forward = false;   // indices -> +inf leave the inner region
  bool backward = false;  // indices -> -inf leave the inner region
  bool opposite = false;  // and they leave towards different ends
};

struct VerifyReport {
  bool passed = false;
  int64_t checked_inner_radius = 0;
  int64_t covered = 0;  // inner vertices seen exactly once
  std::vector<std::string> duplicates;
  std::vector<std::string> non_edges;
  std::vector<std::string> missing;
  std::vector<std::string> errors;  // structural problems (bad period, bound exceeded, ...)
  std::vector<TailStatus> tail_status;

  std::string summary() const;
};

VerifyReport verify_ray(const GqdGroup& G, const GenSet& S, const CayleyWindow& W,
                        const GroupDoubleRay& ray, int inner_radius,
                        int64_t coverage_bound = kDefaultCoverageBound);
VerifyReport verify_circle(const GqdGroup& G, const GenSet& S, const CayleyWindow& W,
                           const HamCircle& circle, int inner_radius,
                           int64_t coverage_bound = kDefaultCoverageBound);

// Inner region: columns [inner_lo, inner_hi], all rows.
VerifyReport verify_ray(const WallWindow& W, const CoordDoubleRay& ray, int64_t inner_lo,
                        int64_t inner_hi, int64_t coverage_bound = kDefaultCoverageBound);
VerifyReport verify_circle(const WallWindow& W, const std::pair<CoordDoubleRay, CoordDoubleRay>& rays,
                           int64_t inner_lo, int64_t inner_hi,
                           int64_t coverage_bound = kDefaultCoverageBound);

VerifyReport verify_finite_path(const FiniteGraph& g, const std::vector<int>& path);

}  // namespace gqd
