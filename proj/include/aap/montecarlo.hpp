#pragma once

// Brute-force oracle for the analytic cell model: explicit UE populations,
// empirical sums, and an independent adaptive-Simpson quadrature.
//
// Random streams are portable: each trial seeds a std::mt19937_64 (whose
// output sequence is fixed by the C++ standard) with splitmix64(base, trial),
// and uniforms/Poisson variates are drawn with the transforms defined here
// rather than the implementation-defined <random> distributions.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "aap/channel.hpp"
#include "aap/packing.hpp"
#include "aap/uplink.hpp"

namespace aap {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial);

// 53-bit uniform in [0, 1).
double uniform01(Rng& rng);

// Knuth multiplication below mean 10, Hoermann's PTRS rejection above.
std::uint64_t poisson_variate(double mean, Rng& rng);

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

enum class CountMode { Poisson, Fixed };

struct SamplingOptions {
  CountMode mode = CountMode::Poisson;
  std::size_t fixed_count = 0;
};

struct UeSample {
  std::vector<Point2> positions;
  std::uint64_t seed = 0;
  std::size_t realized_count = 0;
};

// UEs uniform on the disk of radius r_a (r = r_a sqrt(u)); count Poisson with
// mean rho pi r_a^2 unless a fixed count is requested.
UeSample sample_ues(double r_a, double rho, std::uint64_t seed,
                    const SamplingOptions& options = {});

struct SumPower {
  double uncapped = 0.0;  // sum of P_a B L^beta over UEs
  double capped = 0.0;    // sum of min(P_max, P_a B L^beta)
};

SumPower empirical_sum_power(const UeSample& sample, double h,
                             const SystemParams& sys,
                             const EnvironmentParams& env);

enum class EtaMode {
  EdgeConstant,  // every UE carries the cell-edge excess loss
  PerUe,         // each UE's own elevation
};

// rho * integral_0^{R_a} 2 pi r P(r) dr by adaptive Simpson.
double quadrature_sum_power(double h, double delta, const SystemParams& sys,
                            const EnvironmentParams& env, EtaMode mode,
                            double rel_tol = 1e-13);

struct TrialStats {
  std::size_t trials = 0;
  double mean_uncapped = 0.0;
  double stderr_uncapped = 0.0;
  double mean_capped = 0.0;
  double mean_count = 0.0;
  double mean_los_probability = 0.0;  // averaged over all sampled UEs
  double min_los_probability = 1.0;
  double max_los_probability = 0.0;
};

// Independent trials at altitude h and threshold delta. Per-trial results are
// reduced in trial order, so the outcome does not depend on `workers`.
TrialStats run_sum_power_trials(double h, double delta, const SystemParams& sys,
                                const EnvironmentParams& env,
                                std::uint64_t seed, std::size_t trials,
                                unsigned workers = 1,
                                const SamplingOptions& options = {});

struct GapReport {
  double h = 0.0;
  double delta = 0.0;
  double phi_deg = 0.0;
  double r_a = 0.0;
  double closed_form = 0.0;
  double exact = 0.0;
  double relative_gap = 0.0;  // (closed_form - exact) / exact
  double mc_mean = 0.0;
  double mc_stderr = 0.0;
  double mc_relative_error = 0.0;  // (mc_mean - exact) / exact
  double edge_los_probability = 0.0;
  double nadir_los_probability = 0.0;
  TrialStats stats;

  std::vector<std::pair<std::string, double>> rows() const;
};

GapReport approximation_gap_report(double h, double delta,
                                   const SystemParams& sys,
                                   const EnvironmentParams& env,
                                   std::size_t trials, std::uint64_t seed,
                                   unsigned workers = 1);

}  // namespace aap
