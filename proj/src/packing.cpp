#include "aap/packing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "aap/errors.hpp"

namespace aap {

namespace {

constexpr double kPi = std::numbers::pi;
// Relative slack on ratio comparisons; well below the verifier tolerance so
// that boundary cases (exact tangency) land on the admitting side.
constexpr double kRatioSlack = 1e-12;

struct PolygonAngles {
  double theta;
  double alpha;
};

PolygonAngles polygon_angles(int n) {
  if (n < 3) {
    throw DomainError("ring count bound needs n >= 3, got " + std::to_string(n));
  }
  const double theta = (n - 2) * kPi / (2.0 * n);
  return {theta, kPi / 2.0 - theta};
}

int area_bound(double ratio) {
  const double capacity = kPi * ratio * ratio * (1.0 + kRatioSlack);
  // bracket(n) > pi for every n, so n <= ratio^2 bounds the scan.
  const int limit = static_cast<int>(std::floor(ratio * ratio)) + 1;
  int best = 0;
  for (int n = 3; n <= limit; ++n) {
    if (n * prop2_bracket(n) <= capacity) {
      best = n;
    }
  }
  return best;
}

int geometric_bound(double ratio) {
  const double s = 1.0 / (ratio - 1.0);
  if (s >= 1.0) {
    return 2;
  }
  return static_cast<int>(std::floor(kPi / std::asin(s) + 1e-9));
}

PackingLevel make_level(int index, double ring_radius, double r_a,
                        const LevelCount& lc, double phase) {
  PackingLevel level;
  level.level_index = index;
  level.ring_radius = ring_radius;
  level.count = lc.count;
  level.area_bound = lc.area_bound;
  level.geometric_bound = lc.geometric_bound;
  level.phase = phase;
  if (lc.count == 1) {
    level.center_radius = 0.0;
    level.centers.push_back({0.0, 0.0});
    return level;
  }
  level.center_radius = ring_radius - r_a;
  level.centers.reserve(static_cast<std::size_t>(lc.count));
  for (int m = 0; m < lc.count; ++m) {
    const double angle = phase + 2.0 * kPi * m / lc.count;
    level.centers.push_back({level.center_radius * std::cos(angle),
                             level.center_radius * std::sin(angle)});
  }
  return level;
}

}  // namespace

double three_disk_ratio() { return 1.0 + 1.0 / std::cos(kPi / 6.0); }

double prop2_bracket(int n) {
  const auto [theta, alpha] = polygon_angles(n);
  const double sec_term = 1.0 + 1.0 / std::cos(theta);
  return kPi + alpha * sec_term * sec_term -
         std::sqrt(3.0) * (kPi + 2.0 * alpha) / kPi - theta;
}

double void_edge(int n) {
  const auto [theta, alpha] = polygon_angles(n);
  const double sec_term = 1.0 + 1.0 / std::cos(theta);
  return alpha * sec_term * sec_term - std::tan(theta) -
         std::sqrt(3.0) * (kPi + 2.0 * alpha) / kPi;
}

double void_center(int n) {
  const auto [theta, alpha] = polygon_angles(n);
  return std::tan(theta) - theta;
}

LevelCount max_count_per_level(double ring_radius, double r_a) {
  if (!(r_a > 0.0)) {
    throw DomainError("coverage radius must be positive");
  }
  const double ratio = ring_radius / r_a;
  LevelCount lc;
  if (ratio < 1.0 - kRatioSlack) {
    lc.degenerate = true;
    return lc;
  }
  if (ratio < 2.0 - kRatioSlack) {
    lc.count = lc.area_bound = lc.geometric_bound = 1;
    return lc;
  }
  if (ratio < three_disk_ratio() - kRatioSlack) {
    lc.count = lc.area_bound = lc.geometric_bound = 2;
    return lc;
  }
  lc.area_bound = area_bound(ratio);
  lc.geometric_bound = geometric_bound(ratio);
  lc.count = std::max(2, std::min(lc.area_bound, lc.geometric_bound));
  return lc;
}

double geometric_tolerance(double r_a) { return 1e-9 * r_a; }

PlacementPlan run_algorithm1(double area_radius, double r_a,
                             const PlacementOptions& options) {
  if (!(r_a > 0.0)) {
    throw DomainError("coverage radius must be positive");
  }
  if (area_radius < r_a * (1.0 - kRatioSlack)) {
    throw DegenerateCoverageError(
        "target area is smaller than a single coverage disk");
  }
  PlacementPlan plan;
  plan.r_a = r_a;
  plan.area_radius = area_radius;

  const double three = three_disk_ratio() * (1.0 - kRatioSlack);
  for (int l = 1;; ++l) {
    const double ring = area_radius - 2.0 * (l - 1) * r_a;
    const LevelCount lc = max_count_per_level(ring, r_a);
    if (lc.degenerate) {
      break;
    }
    const auto idx = static_cast<std::size_t>(l - 1);
    const double phase =
        idx < options.phase_offsets.size() ? options.phase_offsets[idx] : 0.0;
    plan.levels.push_back(make_level(l, ring, r_a, lc, phase));
    plan.total_aaps += lc.count;
    if (ring / r_a < three) {
      break;
    }
  }
  plan.packing_density = packing_density(plan);
  plan.feasibility = verify_plan(plan);
  return plan;
}

FeasibilityReport verify_plan(const PlacementPlan& plan) {
  return verify_plan(plan, geometric_tolerance(plan.r_a));
}

FeasibilityReport verify_plan(const PlacementPlan& plan, double tolerance) {
  FeasibilityReport rep;
  rep.tolerance = tolerance;
  rep.worst_containment_margin = std::numeric_limits<double>::infinity();
  rep.worst_level_margin = std::numeric_limits<double>::infinity();

  struct Owned {
    Point2 c;
    double ring;
  };
  std::vector<Owned> centers;
  for (const PackingLevel& level : plan.levels) {
    if (level.ring_radius < plan.r_a - tolerance) {
      rep.min_radius_ok = false;
    }
    for (const Point2& c : level.centers) {
      centers.push_back({c, level.ring_radius});
    }
  }

  for (std::size_t j = 0; j < centers.size(); ++j) {
    const double norm = std::hypot(centers[j].c.x, centers[j].c.y);
    rep.worst_containment_margin = std::min(
        rep.worst_containment_margin, plan.area_radius - norm - plan.r_a);
    rep.worst_level_margin =
        std::min(rep.worst_level_margin, centers[j].ring - norm - plan.r_a);
    for (std::size_t k = j + 1; k < centers.size(); ++k) {
      const double d = std::hypot(centers[j].c.x - centers[k].c.x,
                                  centers[j].c.y - centers[k].c.y);
      const double margin = d - 2.0 * plan.r_a;
      rep.worst_pairwise_margin =
          rep.worst_pairwise_margin ? std::min(*rep.worst_pairwise_margin, margin)
                                    : margin;
    }
  }
  if (centers.empty()) {
    rep.worst_containment_margin = 0.0;
    rep.worst_level_margin = 0.0;
  }

  rep.pairwise_ok =
      !rep.worst_pairwise_margin || *rep.worst_pairwise_margin >= -tolerance;
  rep.containment_ok = rep.worst_containment_margin >= -tolerance;
  rep.level_containment_ok = rep.worst_level_margin >= -tolerance;
  return rep;
}

double packing_density(const PlacementPlan& plan) {
  int total = 0;
  for (const PackingLevel& level : plan.levels) {
    total += level.count;
  }
  return total * plan.r_a * plan.r_a / (plan.area_radius * plan.area_radius);
}

std::vector<Point2> all_centers(const PlacementPlan& plan) {
  std::vector<Point2> out;
  for (const PackingLevel& level : plan.levels) {
    out.insert(out.end(), level.centers.begin(), level.centers.end());
  }
  return out;
}

}  // namespace aap
