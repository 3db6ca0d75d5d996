// Finite-statistics simulation for the circuit/sagnac scenarios: each of the
// eight joint outcomes accumulates an independent Poisson count (as detector
// clicks would), estimates are rebuilt from the counts exactly like the
// infinite-statistics pipeline, and uncertainties come from a parametric
// bootstrap because the permutation minimizations make the trade-off
// quantities non-smooth functions of the counts.

#pragma once

#include <array>
#include <cstdint>

#include "seqmeas/models.hpp"
#include "seqmeas/qcore.hpp"
#include "seqmeas/tradeoff.hpp"

namespace seqmeas::shots {

// Deterministic 64-bit generator (splitmix64).  Cheap to seed, so every
// trial/replicate gets its own independent stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next_u64();
  double next_double();  // uniform in [0, 1), 53-bit resolution

 private:
  std::uint64_t state_;
};

// Stable sub-stream seed for trial/replicate `index` of master seed `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

// Poisson sample by inversion for small means, PTRS transformed rejection
// for large ones.  mean must be finite and >= 0.
std::uint64_t poisson_sample(Rng& rng, double mean);

struct CountRecord {
  std::array<std::uint64_t, 8> counts{};  // joint_index order
  models::RunBasis basis = models::RunBasis::z;
  std::uint64_t total = 0;
  std::uint64_t seed = 0;
};

struct EstimateWithError {
  double value = 0.0;
  double std = 0.0;
};

// Channel i gets an independent Poisson count of mean mean_total * p(i);
// probabilities must be 8 physical entries.
CountRecord simulate_counts(const qcore::Distribution& probabilities,
                            double mean_total, std::uint64_t seed,
                            models::RunBasis basis = models::RunBasis::z);

// Estimated probability of the + outcome of each binary margin (probe j,
// meter k, system l), with the binomial standard error sqrt(P(1-P)/N).
struct MarginalEstimates {
  EstimateWithError p_j;
  EstimateWithError p_k;
  EstimateWithError p_l;
};

MarginalEstimates estimate_probabilities(const CountRecord& c);

// Trade-off quantities reconstructed from one z run and one x run:
// lhs = epsilon + eta and rhs = xi_g_max, with standard deviations over
// `bootstrap` parametric replicates (counts redrawn Poisson around the
// observed ones, replicate r seeded with derive_seed(seed, r)).
// bootstrap = 1 yields std = 0 and sets degenerate_bootstrap.
struct TradeoffEstimate {
  tradeoff::ScenarioDistributions dists;
  double epsilon = 0.0;
  double eta = 0.0;
  double xi_g_max = 0.0;
  EstimateWithError lhs;
  EstimateWithError rhs;
  bool degenerate_bootstrap = false;
};

TradeoffEstimate estimate_tradeoff(const CountRecord& z_run,
                                   const CountRecord& x_run, double gamma,
                                   int bootstrap, std::uint64_t seed);

}  // namespace seqmeas::shots
