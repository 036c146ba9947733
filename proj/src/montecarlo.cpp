#include "aap/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "aap/errors.hpp"

namespace aap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct TrialResult {
  SumPower power;
  std::size_t count = 0;
  double los_sum = 0.0;
  double los_min = 1.0;
  double los_max = 0.0;
};

TrialResult run_trial(double h, double r_a, const SystemParams& sys,
                      const EnvironmentParams& env, std::uint64_t seed,
                      const SamplingOptions& options) {
  const UeSample sample = sample_ues(r_a, sys.ue_density_rho, seed, options);
  TrialResult res;
  res.power = empirical_sum_power(sample, h, sys, env);
  res.count = sample.realized_count;
  CompensatedSum los;
  for (const Point2& p : sample.positions) {
    const double pl =
        los_probability(UeAapGeometry{std::hypot(p.x, p.y), h}.elevation(), env);
    los.add(pl);
    res.los_min = std::min(res.los_min, pl);
    res.los_max = std::max(res.los_max, pl);
  }
  res.los_sum = los.value();
  return res;
}

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm,
                        double fb, double whole, double abs_tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = f(0.5 * (a + m));
  const double rm = f(0.5 * (m + b));
  const double left = simpson(a, m, fa, lm, fm);
  const double right = simpson(m, b, fm, rm, fb);
  const double diff = left + right - whole;
  if (depth <= 0) {
    throw QuadratureError("adaptive Simpson exhausted its depth",
                          std::abs(diff));
  }
  if (std::abs(diff) <= 15.0 * abs_tol) {
    return left + right + diff / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, lm, fm, left, 0.5 * abs_tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, rm, fb, right, 0.5 * abs_tol, depth - 1);
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial) {
  return splitmix64(splitmix64(base_seed) ^ trial);
}

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t poisson_variate(double mean, Rng& rng) {
  if (!(mean >= 0.0)) {
    throw DomainError("Poisson mean must be non-negative");
  }
  if (mean == 0.0) {
    return 0;
  }
  if (mean < 10.0) {
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double prod = uniform01(rng);
    while (prod > limit) {
      ++k;
      prod *= uniform01(rng);
    }
    return k;
  }
  // PTRS, W. Hoermann, Insurance: Mathematics and Economics 12 (1993).
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = uniform01(rng) - 0.5;
    const double v = uniform01(rng);
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) {
      return static_cast<std::uint64_t>(k);
    }
    if (k < 0.0 || (us < 0.013 && v > us)) {
      continue;
    }
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(k);
    }
  }
}

void CompensatedSum::add(double v) {
  const double t = sum_ + v;
  if (std::abs(sum_) >= std::abs(v)) {
    comp_ += (sum_ - t) + v;
  } else {
    comp_ += (v - t) + sum_;
  }
  sum_ = t;
}

UeSample sample_ues(double r_a, double rho, std::uint64_t seed,
                    const SamplingOptions& options) {
  if (!(r_a > 0.0) || !(rho > 0.0)) {
    throw DomainError("sampling needs a positive cell radius and density");
  }
  Rng rng(seed);
  const std::size_t count =
      options.mode == CountMode::Fixed
          ? options.fixed_count
          : static_cast<std::size_t>(
                poisson_variate(rho * std::numbers::pi * r_a * r_a, rng));
  UeSample sample;
  sample.seed = seed;
  sample.positions.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double r = r_a * std::sqrt(uniform01(rng));
    const double angle = kTwoPi * uniform01(rng);
    sample.positions.push_back({r * std::cos(angle), r * std::sin(angle)});
  }
  sample.realized_count = sample.positions.size();
  return sample;
}

SumPower empirical_sum_power(const UeSample& sample, double h,
                             const SystemParams& sys,
                             const EnvironmentParams& env) {
  CompensatedSum uncapped;
  CompensatedSum capped;
  for (const Point2& p : sample.positions) {
    const UeAapGeometry geom{std::hypot(p.x, p.y), h};
    const double power = ue_mean_transmit_power(geom, sys, env);
    uncapped.add(power);
    capped.add(std::min(sys.p_max, power));
  }
  return {uncapped.value(), capped.value()};
}

double quadrature_sum_power(double h, double delta, const SystemParams& sys,
                            const EnvironmentParams& env, EtaMode mode,
                            double rel_tol) {
  const Coverage cov = require_coverage(h, delta, env);
  const double eta_edge = mean_additional_path_loss(cov.phi, env);
  const double scale = sys.p_target_pa * sys.resource_blocks_b;
  auto integrand = [&](double r) {
    const double d2 = r * r + h * h;
    double eta = eta_edge;
    if (mode == EtaMode::PerUe) {
      const double phi_deg =
          r == 0.0 ? 90.0 : std::atan2(h, r) * 180.0 / std::numbers::pi;
      const double pl =
          1.0 / (1.0 + env.a * std::exp(-env.b * (phi_deg - env.a)));
      eta = env.eta_nlos + pl * (env.eta_los - env.eta_nlos);
    }
    return kTwoPi * r * scale * std::pow(eta * d2 / env.g0, sys.tpc_beta);
  };
  const double a = 0.0;
  const double b = cov.radius;
  const double fa = integrand(a);
  const double fm = integrand(0.5 * (a + b));
  const double fb = integrand(b);
  const double whole = simpson(a, b, fa, fm, fb);
  // One refinement pass sets the absolute tolerance from the integral size.
  const double abs_tol = rel_tol * std::max(std::abs(whole), 1e-300);
  return sys.ue_density_rho *
         adaptive_simpson(integrand, a, b, fa, fm, fb, whole, abs_tol, 60);
}

TrialStats run_sum_power_trials(double h, double delta, const SystemParams& sys,
                                const EnvironmentParams& env,
                                std::uint64_t seed, std::size_t trials,
                                unsigned workers,
                                const SamplingOptions& options) {
  if (trials == 0) {
    throw DomainError("at least one trial is required");
  }
  const Coverage cov = require_coverage(h, delta, env);
  std::vector<TrialResult> results(trials);
  const unsigned nw = std::max(1u, std::min<unsigned>(workers, trials));
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < trials; i += nw) {
      results[i] = run_trial(h, cov.radius, sys, env, trial_seed(seed, i), options);
    }
  };
  if (nw == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(nw);
    for (unsigned w = 0; w < nw; ++w) {
      pool.emplace_back(work, w);
    }
  }

  TrialStats stats;
  stats.trials = trials;
  CompensatedSum uncapped;
  CompensatedSum capped;
  CompensatedSum count;
  CompensatedSum los;
  for (const TrialResult& r : results) {
    uncapped.add(r.power.uncapped);
    capped.add(r.power.capped);
    count.add(static_cast<double>(r.count));
    los.add(r.los_sum);
    if (r.count > 0) {
      stats.min_los_probability = std::min(stats.min_los_probability, r.los_min);
      stats.max_los_probability = std::max(stats.max_los_probability, r.los_max);
    }
  }
  const double n = static_cast<double>(trials);
  stats.mean_uncapped = uncapped.value() / n;
  stats.mean_capped = capped.value() / n;
  stats.mean_count = count.value() / n;
  stats.mean_los_probability = count.value() > 0.0 ? los.value() / count.value() : 0.0;

  if (trials > 1) {
    CompensatedSum sq;
    for (const TrialResult& r : results) {
      const double d = r.power.uncapped - stats.mean_uncapped;
      sq.add(d * d);
    }
    stats.stderr_uncapped = std::sqrt(sq.value() / (n - 1.0) / n);
  }
  return stats;
}

std::vector<std::pair<std::string, double>> GapReport::rows() const {
  return {
      {"h_m", h},
      {"delta", delta},
      {"phi_deg", phi_deg},
      {"r_a_m", r_a},
      {"sum_power_closed_form_w", closed_form},
      {"sum_power_exact_w", exact},
      {"relative_gap", relative_gap},
      {"mc_trials", static_cast<double>(stats.trials)},
      {"mc_mean_sum_power_w", mc_mean},
      {"mc_stderr_w", mc_stderr},
      {"mc_relative_error", mc_relative_error},
      {"mc_mean_ue_count", stats.mean_count},
      {"edge_los_probability", edge_los_probability},
      {"nadir_los_probability", nadir_los_probability},
      {"mean_ue_los_probability", stats.mean_los_probability},
      {"min_ue_los_probability", stats.min_los_probability},
      {"max_ue_los_probability", stats.max_los_probability},
  };
}

GapReport approximation_gap_report(double h, double delta,
                                   const SystemParams& sys,
                                   const EnvironmentParams& env,
                                   std::size_t trials, std::uint64_t seed,
                                   unsigned workers) {
  const Coverage cov = require_coverage(h, delta, env);
  GapReport rep;
  rep.h = h;
  rep.delta = delta;
  rep.phi_deg = cov.phi.value;
  rep.r_a = cov.radius;
  rep.closed_form = expected_sum_power_closed_form(h, delta, sys, env);
  rep.exact = expected_sum_power_exact(h, delta, sys, env).value;
  rep.relative_gap = (rep.closed_form - rep.exact) / rep.exact;
  rep.stats = run_sum_power_trials(h, delta, sys, env, seed, trials, workers);
  rep.mc_mean = rep.stats.mean_uncapped;
  rep.mc_stderr = rep.stats.stderr_uncapped;
  rep.mc_relative_error = (rep.mc_mean - rep.exact) / rep.exact;
  rep.edge_los_probability = los_probability(cov.phi, env);
  rep.nadir_los_probability = los_probability(Degrees{90.0}, env);
  return rep;
}

}  // namespace aap
