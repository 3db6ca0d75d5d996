// Concrete sequential-measurement models producing the four distributions
// consumed by the trade-off machinery:
//   - qubit: CNOT-type coupling to a qubit meter, arbitrary observable axes,
//     with independent closed forms for cross-checking,
//   - qutrit: shift coupling to a qutrit meter,
//   - circuit: three-qubit gate realization (system + weak probe + meter),
//   - sagnac: polarization-interferometer realization of the same circuit
//     with imperfect polarizing beam splitters (finite extinction ratios).
// All angles are radians.

#pragma once

#include <array>
#include <limits>
#include <optional>
#include <stdexcept>

#include "seqmeas/qcore.hpp"
#include "seqmeas/tradeoff.hpp"

namespace seqmeas::models {

// Invalid or degenerate model parameters (e.g. coupling strength at which
// the weak-value inversion divides by zero).
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ----------------------------------------------------------------- qubit --

// System state cos(alpha)|0> + e^{i phi} sin(alpha)|1>.  The first measured
// observable is a.sigma (read through a meter coupled along the same axis
// with strength theta); the second is b.sigma.
struct QubitParams {
  double alpha = 0.0;
  double phi = 0.0;
  double theta = 0.0;  // meter strength; 0 = projective, pi/4 = no readout
  std::array<double, 3> a_axis{0.0, 0.0, 1.0};
  std::array<double, 3> b_axis{1.0, 0.0, 0.0};
};

// Full simulation: couple a meter qubit prepared along the a-axis, read the
// meter in the a-basis (error side) and the system along b afterwards
// (disturbance side).  Outcome order: (+, -) eigenvalues descending.
tradeoff::ScenarioDistributions qubit_cnot_model(const QubitParams& p);

// Closed forms in the invariants <a.sigma>, <b.sigma>, a.b; valid for
// cos(2 theta) >= 0.  eta1/eta2 are the two relabeling branches of the
// disturbance; xi_g1..4 the four candidate bound values; epsilon/eta/
// xi_g_max/Xi the branch-selected results.
struct QubitClosedForms {
  double epsilon = 0.0;
  double eta = 0.0;
  double xi_g_max = 0.0;
  double Xi = 0.0;
  double eta1 = 0.0;
  double eta2 = 0.0;
  double xi_g1 = 0.0;
  double xi_g2 = 0.0;
  double xi_g3 = 0.0;
  double xi_g4 = 0.0;
};

QubitClosedForms qubit_closed_forms(const QubitParams& p);

// ---------------------------------------------------------------- qutrit --

// System ket (sin a cos f, e^{i chi12} sin a sin f, e^{i chi13} cos a) with
// a = alpha, f = phi_s; meter ket (sin t cos g, sin t sin g, cos t) with
// t = theta, g = phi_m.  The coupling shifts the meter level by the system
// level (mod 3).  First observable: level operator diag(1, 0, -1) read from
// the meter; second: its x-type counterpart read on the system afterwards.
struct QutritParams {
  double alpha = 0.0;
  double phi_s = 0.0;
  double chi12 = 0.0;
  double chi13 = 0.0;
  double theta = 0.0;
  double phi_m = 0.0;
};

// Outcome order for all four distributions: eigenvalue +1, 0, -1.
tradeoff::ScenarioDistributions qutrit_model(const QutritParams& p);

// Level operator diag(1, 0, -1) and its conjugate ladder combination
// (X-type angular momentum) whose eigenbasis defines the second observable.
qcore::Operator qutrit_lz();
qcore::Operator qutrit_lx();

// ------------------------------------------------------ circuit / sagnac --

// Which observable the weak probe reads: z couples the probe directly,
// x sandwiches the probe stage between Hadamards on the system.
enum class RunBasis { z, x };

// Shared parameter set for the three-qubit circuit and its interferometric
// realization.  gamma in (1/sqrt2, 1] is the probe amplitude (weak-value
// inversion divides by 2 gamma^2 - 1); theta the meter strength; e1/e2 the
// transmission extinction ratios of the two probe-loop beam splitters
// (infinity = ideal).  The meter loop uses the same extinction ratios unless
// meter_e1/meter_e2 override them.
struct CircuitParams {
  double alpha = 0.0;
  double phi = 0.0;
  double gamma = 0.766;
  double theta = 0.0;
  double e1 = std::numeric_limits<double>::infinity();
  double e2 = std::numeric_limits<double>::infinity();
  std::optional<double> meter_e1;
  std::optional<double> meter_e2;
};

struct PovmSet {
  std::vector<qcore::Operator> elements;
};

// Joint outcome index for (j, k, l) = (probe z, meter z, system x), each
// valued +1 or -1: idx = 4*(j<0) + 2*(k<0) + (l<0).
int joint_index(int j, int k, int l);

// Ideal-optics system POVM of the eight joint outcomes, one run basis at a
// time, in joint_index order.
PovmSet circuit_povm(double gamma, double theta, RunBasis basis);

// Eight-outcome joint distribution from a pure three-qubit gate simulation
// (system (x) probe (x) meter, system slowest).  Ideal optics only: throws
// ModelError when any extinction ratio is finite.
qcore::Distribution circuit_probabilities(const CircuitParams& p, RunBasis basis);

// Error/disturbance quadruple from the two runs' joint distributions (model
// outputs or normalized counts alike).  p_a and p_b are weak-probe readouts
// divided by 2 gamma^2 - 1 and may leave [0, 1] (physical = false); p_c
// (meter marginal, z run) and p_d (system marginal, x run) are directly
// measured.  Throws ModelError when 2 gamma^2 - 1 vanishes.
tradeoff::ScenarioDistributions scenario_from_joint_distributions(
    const qcore::Distribution& z_run, const qcore::Distribution& x_run,
    double gamma);

// The quadruple for the ideal-optics circuit at the given parameters.
tradeoff::ScenarioDistributions circuit_scenario(const CircuitParams& p);

// ------------------------------------------------------------------ sagnac

// 4x4 loop unitary on polarization (x) path (index 2*pol + path) built from
// the two beam-splitter extinction ratios; gamma splits the polarization
// amplitudes inside the loop.  Columns acting on path-0 inputs follow the
// device model exactly; the path-1 columns (never populated by the input
// port) complete the matrix orthonormally.
qcore::Operator sagnac_unitary(double gamma, double e1, double e2);

// Polarization-space Kraus operators of the loop for path outcome 0 and 1
// (the two exit ports), i.e. the path-0 input columns of sagnac_unitary.
std::array<qcore::Operator, 2> sagnac_measurement_operators(double gamma,
                                                            double e1,
                                                            double e2);

// The two-element POVM M_j^dagger M_j of the exit ports.
PovmSet sagnac_povm(double gamma, double e1, double e2);

// Pauli expansion Pi_j = a_j I + b_j X + c_j Y + d_j Z of that POVM.
struct SagnacCoefficients {
  double a0 = 0.0, b0 = 0.0, c0 = 0.0, d0 = 0.0;
  double a1 = 0.0, b1 = 0.0, c1 = 0.0, d1 = 0.0;
};

SagnacCoefficients sagnac_povm_coefficients(double gamma, double e1, double e2);

// Eight-outcome joint distribution of the full optical chain: probe loop
// (strength gamma, ratios e1/e2), meter loop (strength theta, ratios
// meter_e1/meter_e2 or the probe's), final polarization readout along x.
// Reduces to circuit_probabilities when every ratio is infinite.
qcore::Distribution sagnac_joint_probabilities(const CircuitParams& p,
                                               RunBasis basis);

// Scenario quadruple plus the quantities plotted against each other in the
// imperfect-optics analysis: lhs = epsilon + eta, rhs = xi_g_max, and the
// two single-relabeling bound branches xi_g1 (identity) / xi_g2 (swap)
// evaluated at the minimizers chosen by the report.
struct SagnacReport {
  tradeoff::ScenarioDistributions dists;
  double epsilon = 0.0;
  double eta = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double xi_g1 = 0.0;
  double xi_g2 = 0.0;
};

SagnacReport imperfect_probabilities(const CircuitParams& p);

}  // namespace seqmeas::models
