#include <cmath>
#include <stdexcept>
#include <vector>

#include "seqmeas/shots.hpp"

namespace seqmeas::shots {

namespace {

// Inversion walks the CDF term by term, so its cost and rounding error grow
// with the mean; hand off to transformed rejection well before that bites.
constexpr double kRejectionThreshold = 30.0;

std::uint64_t poisson_inversion(Rng& rng, double mean) {
  const double target = rng.next_double();
  double term = std::exp(-mean);
  double cdf = term;
  std::uint64_t k = 0;
  // The tail bound keeps a (never observed) rounding stall from spinning.
  while (target > cdf && k < 1000) {
    ++k;
    term *= mean / static_cast<double>(k);
    cdf += term;
  }
  return k;
}

std::uint64_t poisson_rejection(Rng& rng, double mean) {
  // Hoermann's PTRS: one uniform pair per attempt, acceptance rate > 0.9
  // across the whole range.
  const double log_mean = std::log(mean);
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  while (true) {
    const double u = rng.next_double() - 0.5;
    double v = rng.next_double();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * log_mean - mean - std::lgamma(k + 1.0))
      return static_cast<std::uint64_t>(k);
  }
}

std::array<double, 8> frequencies(const CountRecord& c) {
  if (c.total == 0)
    throw std::invalid_argument("cannot form frequencies from zero counts");
  std::array<double, 8> f{};
  for (int i = 0; i < 8; ++i)
    f[i] = static_cast<double>(c.counts[i]) / static_cast<double>(c.total);
  return f;
}

tradeoff::ScenarioDistributions scenario_from_counts(const CountRecord& z_run,
                                                     const CountRecord& x_run,
                                                     double gamma) {
  qcore::Distribution z, x;
  const std::array<double, 8> fz = frequencies(z_run);
  const std::array<double, 8> fx = frequencies(x_run);
  z.p.assign(fz.begin(), fz.end());
  x.p.assign(fx.begin(), fx.end());
  z.physical = x.physical = true;
  return models::scenario_from_joint_distributions(z, x, gamma);
}

CountRecord redraw(const CountRecord& observed, Rng& rng) {
  CountRecord rec;
  rec.basis = observed.basis;
  rec.seed = observed.seed;
  for (int i = 0; i < 8; ++i) {
    rec.counts[i] =
        poisson_sample(rng, static_cast<double>(observed.counts[i]));
    rec.total += rec.counts[i];
  }
  return rec;
}

double sample_std(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (n - 1.0));
}

}  // namespace

std::uint64_t Rng::next_u64() {
  // splitmix64: Weyl-sequence state plus an avalanching finalizer.
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // Finalizing (hash(seed), index) keeps sub-streams disjoint even for
  // adjacent master seeds, which differ in one low bit.
  Rng base(seed);
  Rng mixed(base.next_u64() ^ index);
  return mixed.next_u64();
}

std::uint64_t poisson_sample(Rng& rng, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw std::invalid_argument("poisson mean must be finite and >= 0");
  if (mean == 0.0) return 0;
  return mean < kRejectionThreshold ? poisson_inversion(rng, mean)
                                    : poisson_rejection(rng, mean);
}

CountRecord simulate_counts(const qcore::Distribution& probabilities,
                            double mean_total, std::uint64_t seed,
                            models::RunBasis basis) {
  if (probabilities.p.size() != 8 || !probabilities.physical)
    throw std::invalid_argument(
        "simulate_counts needs an 8-outcome physical distribution");
  if (!(mean_total >= 0.0) || !std::isfinite(mean_total))
    throw std::invalid_argument("mean_total must be finite and >= 0");

  CountRecord rec;
  rec.basis = basis;
  rec.seed = seed;
  Rng rng(seed);
  for (int i = 0; i < 8; ++i) {
    rec.counts[i] = poisson_sample(rng, mean_total * probabilities.p[i]);
    rec.total += rec.counts[i];
  }
  return rec;
}

MarginalEstimates estimate_probabilities(const CountRecord& c) {
  if (c.total == 0)
    throw std::invalid_argument("cannot estimate from zero counts");
  const double n = static_cast<double>(c.total);
  double j_plus = 0.0, k_plus = 0.0, l_plus = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double count = static_cast<double>(c.counts[i]);
    if (!(i & 4)) j_plus += count;
    if (!(i & 2)) k_plus += count;
    if (!(i & 1)) l_plus += count;
  }
  MarginalEstimates est;
  const auto binomial = [n](double plus) {
    EstimateWithError e;
    e.value = plus / n;
    e.std = std::sqrt(e.value * (1.0 - e.value) / n);
    return e;
  };
  est.p_j = binomial(j_plus);
  est.p_k = binomial(k_plus);
  est.p_l = binomial(l_plus);
  return est;
}

TradeoffEstimate estimate_tradeoff(const CountRecord& z_run,
                                   const CountRecord& x_run, double gamma,
                                   int bootstrap, std::uint64_t seed) {
  if (bootstrap < 1)
    throw std::invalid_argument("bootstrap must be >= 1 replicate");

  TradeoffEstimate est;
  est.dists = scenario_from_counts(z_run, x_run, gamma);
  const tradeoff::TradeoffReport report = tradeoff::tradeoff_report(est.dists);
  est.epsilon = report.epsilon;
  est.eta = report.eta;
  est.xi_g_max = report.xi_g_max;
  est.lhs.value = report.epsilon + report.eta;
  est.rhs.value = report.xi_g_max;

  if (bootstrap == 1) {
    est.degenerate_bootstrap = true;
    return est;
  }

  std::vector<double> lhs_reps, rhs_reps;
  lhs_reps.reserve(bootstrap);
  rhs_reps.reserve(bootstrap);
  for (int r = 0; r < bootstrap; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    const CountRecord z_rep = redraw(z_run, rng);
    const CountRecord x_rep = redraw(x_run, rng);
    const tradeoff::TradeoffReport rep =
        tradeoff::tradeoff_report(scenario_from_counts(z_rep, x_rep, gamma));
    lhs_reps.push_back(rep.epsilon + rep.eta);
    rhs_reps.push_back(rep.xi_g_max);
  }
  est.lhs.std = sample_std(lhs_reps);
  est.rhs.std = sample_std(rhs_reps);
  return est;
}

}  // namespace seqmeas::shots
