#pragma once

// Air-to-ground channel: free-space path loss with LoS/N-LoS excess loss,
// elevation-dependent LoS probability and the threshold-based coverage disk.

namespace aap {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

// Elevation angle in degrees. The LoS S-curve is fitted in degrees, so angles
// cross module boundaries in this wrapper and are converted to radians only
// where trigonometry needs them.
struct Degrees {
  double value = 0.0;

  constexpr explicit Degrees(double v) : value(v) {}
  double radians() const;
  friend constexpr auto operator<=>(Degrees, Degrees) = default;
};

double db_to_ratio(double db);

// Reference channel gain at 1 m from the carrier frequency, (c / 4 pi fc)^2.
double reference_gain_from_carrier(double carrier_hz);
double carrier_from_reference_gain(double g0);

struct EnvironmentParams {
  double a = 0.0;         // S-curve parameter (dimensionless)
  double b = 0.0;         // S-curve slope per degree
  double eta_los = 1.0;   // linear mean excess loss, LoS
  double eta_nlos = 1.0;  // linear mean excess loss, N-LoS
  double g0 = 0.0;        // reference gain at 1 m

  // Excess losses given in dB. Throws ConfigError on invalid values.
  static EnvironmentParams from_db(double a, double b, double eta_los_db,
                                   double eta_nlos_db, double g0);

  // Suburban constants used throughout the evaluation:
  // a=4.88, b=0.43, 0.1 dB / 21 dB excess loss, g0=1.42e-4.
  static EnvironmentParams suburban();

  void validate() const;
};

struct UeAapGeometry {
  double r = 0.0;  // horizontal UE to cell-center distance, m
  double h = 0.0;  // AAP altitude, m

  double distance() const;
  Degrees elevation() const;  // in (0, 90]; exactly 90 at r = 0
};

// eta * d^2 / g0
double path_loss(const UeAapGeometry& geom, double eta,
                 const EnvironmentParams& env);

// 1 / (1 + a exp(-b (phi - a))), phi in (0, 90].
double los_probability(Degrees phi, const EnvironmentParams& env);

// Inverse of los_probability. Valid for thresholds whose angle lands in (0, 90].
Degrees phi_from_delta(double delta, const EnvironmentParams& env);

// Smallest and largest thresholds accepted by phi_from_delta (both exclusive
// at the lower end, inclusive at 90 degrees).
double min_valid_delta(const EnvironmentParams& env);
double max_valid_delta(const EnvironmentParams& env);

// eta_nlos + P_l (eta_los - eta_nlos)
double mean_additional_path_loss(Degrees phi, const EnvironmentParams& env);

// Mean path loss using the UE's own elevation angle.
double mean_path_loss(const UeAapGeometry& geom, const EnvironmentParams& env);

struct Coverage {
  double radius = 0.0;  // R_a, m
  Degrees phi{0.0};     // edge elevation phi(delta)
  double cot_phi = 0.0;
  bool degenerate = false;  // phi(delta) at 90 degrees, R_a = 0

  explicit operator bool() const { return !degenerate; }
};

// R_a = h cot(phi(delta)).
Coverage coverage_radius(double h, double delta, const EnvironmentParams& env);

// Same as coverage_radius but throws DegenerateCoverageError when R_a = 0.
Coverage require_coverage(double h, double delta, const EnvironmentParams& env);

}  // namespace aap
