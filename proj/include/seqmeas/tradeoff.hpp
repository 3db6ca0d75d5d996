// Error-disturbance trade-off quantities for a sequential measurement
// scenario described by four outcome distributions:
//   p_a  target observable on the input state (no measurement chain),
//   p_c  same observable read out through the measurement chain (error side),
//   p_b  second observable on the undisturbed input,
//   p_d  second observable after the chain has acted (disturbance side).
// The error epsilon and disturbance eta are permutation-minimized statistical
// distances; their sum is bounded below by a state-independent quantity
// xi_g_max built from the same four distributions.

#pragma once

#include <vector>

#include "seqmeas/qcore.hpp"

namespace seqmeas::tradeoff {

struct ScenarioDistributions {
  qcore::Distribution p_a;
  qcore::Distribution p_b;
  qcore::Distribution p_c;
  qcore::Distribution p_d;
};

// A permutation maps outcome index i of the relabeled distribution to
// perm[i] of the original: relabeled[i] = original[perm[i]].
using Permutation = std::vector<int>;

struct MinDistanceResult {
  double value = 0.0;
  // Every permutation attaining the minimum within 1e-12, in lexicographic
  // order, deduplicated by the relabeled probability vector (two labelings
  // that produce identical vectors count once).
  std::vector<Permutation> minimizers;
};

struct TradeoffReport {
  double epsilon = 0.0;
  double eta = 0.0;
  double xi_g_max = 0.0;
  double Xi = 0.0;  // epsilon + eta - xi_g_max, >= 0 up to rounding
  Permutation sigma_a;     // epsilon-minimizing relabeling applied to p_a
  Permutation sigma_b;     // eta-minimizing relabeling applied to p_b
  Permutation sigma_star;  // maximizer inside xi_g_max
};

// Sum_i |p_i - q_i| (unnormalized L1; in [0,2] for physical distributions).
double statistical_distance(const qcore::Distribution& p,
                            const qcore::Distribution& q);

// min over permutations sigma of Sum_i |p[sigma(i)] - q[i]|, by exhaustive
// enumeration.  Throws std::invalid_argument for more than 6 outcomes
// ("exhaustive permutation bound exceeded") or mismatched sizes.
MinDistanceResult min_permutation_distance(const qcore::Distribution& p,
                                           const qcore::Distribution& q);

struct XiGResult {
  double value = 0.0;
  Permutation sigma_star;  // applied jointly to (p_a, p_c)
  Permutation sigma_a;     // the epsilon-minimizer the maximum was found at
  Permutation sigma_b;     // the eta-minimizer the maximum was found at
};

// max over sigma of |Sum_i (|p_a[sigma(i)] - p_b[i]| - |p_c[sigma(i)] - p_d[i]|)|
// where p_a has first been relabeled by an epsilon-minimizer and p_b by an
// eta-minimizer; the outer maximum also ranges over all minimizer choices.
// With extended=true an extra permutation applied jointly to (p_b, p_d) is
// maximized over as well, which can only tighten (raise) the bound while the
// inequality epsilon + eta >= xi_g_max still holds term by term.
XiGResult xi_g_max(const ScenarioDistributions& s,
                   const std::vector<Permutation>& sigma_a_choices,
                   const std::vector<Permutation>& sigma_b_choices,
                   bool extended = false);

TradeoffReport tradeoff_report(const ScenarioDistributions& s,
                               bool extended = false);

// Root-mean-square error/disturbance and the two lower bounds of the
// operator-based trade-off, evaluated on system state rho with meter state mu
// coupled by unitary u (system slow index).  The error observable is the
// meter readout m after u; the disturbance compares b before and after.
struct OzawaReport {
  double eps_rms = 0.0;
  double eta_rms = 0.0;
  double sigma_a = 0.0;  // standard deviation of a on rho
  double sigma_b = 0.0;
  double lhs = 0.0;  // eps*eta + eps*sigma_b + sigma_a*eta
  double rhs_commutator = 0.0;  // |Tr(rho [a,b])| / 2
  double rhs_dab = 0.0;         // Tr|sqrt(rho) [a,b] sqrt(rho)| / 2
};

OzawaReport ozawa_quantities(const qcore::Operator& a, const qcore::Operator& b,
                             const qcore::Operator& m, const qcore::Operator& u,
                             const qcore::QuantumState& system,
                             const qcore::QuantumState& meter);

}  // namespace seqmeas::tradeoff
