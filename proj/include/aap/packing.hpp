#pragma once

// Horizontal AAP placement: equal non-overlapping coverage disks packed into
// the circular target area ring by ring, each ring a regular polygon of
// mutually tangent-or-separated disks.

#include <optional>
#include <vector>

namespace aap {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

// 1 + sec(30 deg): the smallest ring/disk radius ratio that holds three disks.
double three_disk_ratio();

// Per-disk area factor of the ring-count bound, in multiples of R_a^2:
//   pi + alpha (1 + sec theta)^2 - sqrt(3) (pi + 2 alpha) / pi - theta,
//   theta = (n - 2) pi / (2n), alpha = pi/2 - theta.
// DomainError for n < 3.
double prop2_bracket(int n);

// Void next to one boundary disk, in multiples of R_a^2.
double void_edge(int n);
// Void at the polygon center attributed to one disk, tan(theta) - theta.
double void_center(int n);

struct LevelCount {
  int count = 0;
  int area_bound = 0;       // largest n with n * bracket(n) <= pi (R_l/R_a)^2
  int geometric_bound = 0;  // largest n whose ring at R_l - R_a does not overlap
  bool degenerate = false;  // ring smaller than one disk
};

// Disks of radius r_a that fit along the boundary of a ring of radius
// ring_radius: 1 below 2 r_a, 2 below three_disk_ratio() r_a, otherwise the
// area bound clamped by the geometric non-overlap bound.
LevelCount max_count_per_level(double ring_radius, double r_a);

struct PackingLevel {
  int level_index = 0;       // 1-based
  double ring_radius = 0.0;  // R_l
  int count = 0;
  double center_radius = 0.0;  // distance of centers from the origin
  double phase = 0.0;          // angle of the first center, rad
  int area_bound = 0;
  int geometric_bound = 0;
  std::vector<Point2> centers;

  friend bool operator==(const PackingLevel&, const PackingLevel&) = default;
};

struct FeasibilityReport {
  bool pairwise_ok = true;         // |c_j - c_k| >= 2 R_a
  bool containment_ok = true;      // |c| + R_a <= R
  bool level_containment_ok = true;  // |c| + R_a <= R_l for the owning level
  bool min_radius_ok = true;       // R_l >= R_a for every level
  std::optional<double> worst_pairwise_margin;  // min(|c_j - c_k| - 2 R_a)
  double worst_containment_margin = 0.0;  // min(R - |c| - R_a)
  double worst_level_margin = 0.0;        // min(R_l - |c| - R_a)
  double tolerance = 0.0;

  bool all_ok() const {
    return pairwise_ok && containment_ok && level_containment_ok && min_radius_ok;
  }
  friend bool operator==(const FeasibilityReport&, const FeasibilityReport&) = default;
};

struct PlacementPlan {
  std::vector<PackingLevel> levels;
  double r_a = 0.0;
  double area_radius = 0.0;
  int total_aaps = 0;
  double packing_density = 0.0;
  FeasibilityReport feasibility;

  friend bool operator==(const PlacementPlan&, const PlacementPlan&) = default;
};

struct PlacementOptions {
  // Angle of the first center per level (index 0 = level 1); missing entries
  // default to 0. Also orients the axis of a two-disk level.
  std::vector<double> phase_offsets;
};

// Multilevel placement. Ring l has radius R - 2(l-1) R_a; rings continue while
// they can hold three disks, and a final one- or two-disk level fills the
// remaining center. DegenerateCoverageError when area_radius < r_a.
PlacementPlan run_algorithm1(double area_radius, double r_a,
                             const PlacementOptions& options = {});

// Absolute geometric tolerance used by run_algorithm1 and verify_plan.
double geometric_tolerance(double r_a);

FeasibilityReport verify_plan(const PlacementPlan& plan);
FeasibilityReport verify_plan(const PlacementPlan& plan, double tolerance);

// total_aaps * R_a^2 / R^2
double packing_density(const PlacementPlan& plan);

std::vector<Point2> all_centers(const PlacementPlan& plan);

}  // namespace aap
