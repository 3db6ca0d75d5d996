#include <cmath>

#include "seqmeas/models.hpp"

namespace seqmeas::models {

namespace {

constexpr double kInversionTol = 1e-12;

void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw ModelError("gamma must lie in [0, 1]");
}

qcore::Operator hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  return qcore::Operator(2, {qcore::cxd(r, 0), qcore::cxd(r, 0),
                             qcore::cxd(r, 0), qcore::cxd(-r, 0)});
}

qcore::Operator basis_projector(int outcome_sign, bool x_basis) {
  // Rank-1 projector onto the +1 or -1 eigenstate of Z (or X).
  qcore::Operator p(2);
  if (!x_basis) {
    p.at(outcome_sign > 0 ? 0 : 1, outcome_sign > 0 ? 0 : 1) = 1.0;
  } else {
    const double s = outcome_sign > 0 ? 0.5 : -0.5;
    p.at(0, 0) = 0.5;
    p.at(1, 1) = 0.5;
    p.at(0, 1) = s;
    p.at(1, 0) = s;
  }
  return p;
}

}  // namespace

int joint_index(int j, int k, int l) {
  return 4 * (j < 0 ? 1 : 0) + 2 * (k < 0 ? 1 : 0) + (l < 0 ? 1 : 0);
}

PovmSet circuit_povm(double gamma, double theta, RunBasis basis) {
  check_gamma(gamma);
  const double gbar = std::sqrt(1.0 - gamma * gamma);
  const double big_g = 2.0 * gamma * gamma - 1.0;
  const double c2 = std::cos(2.0 * theta), s2 = std::sin(2.0 * theta);

  PovmSet set;
  set.elements.reserve(8);
  for (int j : {+1, -1})
    for (int k : {+1, -1})
      for (int l : {+1, -1}) {
        double ci, cz, cx;
        if (basis == RunBasis::z) {
          ci = 1.0 + j * k * big_g * c2;
          cz = j * big_g + k * c2;
          cx = l * 2.0 * gamma * gbar * s2;
        } else {
          ci = 1.0 + j * l * big_g * s2;
          cx = j * big_g + l * s2;
          cz = k * 2.0 * gamma * gbar * c2;
        }
        qcore::Operator pi(2);
        pi.at(0, 0) = qcore::cxd((ci + cz) / 8.0, 0.0);
        pi.at(1, 1) = qcore::cxd((ci - cz) / 8.0, 0.0);
        pi.at(0, 1) = qcore::cxd(cx / 8.0, 0.0);
        pi.at(1, 0) = qcore::cxd(cx / 8.0, 0.0);
        set.elements.push_back(std::move(pi));
      }
  return set;
}

qcore::Distribution circuit_probabilities(const CircuitParams& p,
                                          RunBasis basis) {
  check_gamma(p.gamma);
  const bool ideal = std::isinf(p.e1) && std::isinf(p.e2) &&
                     std::isinf(p.meter_e1.value_or(p.e1)) &&
                     std::isinf(p.meter_e2.value_or(p.e2));
  if (!ideal)
    throw ModelError(
        "gate simulation assumes ideal optics; use the interferometric model "
        "for finite extinction ratios");

  const double gbar = std::sqrt(1.0 - p.gamma * p.gamma);
  const qcore::QuantumState sys = qcore::QuantumState::ket(
      {qcore::cxd(std::cos(p.alpha), 0.0),
       std::exp(qcore::cxd(0.0, p.phi)) * std::sin(p.alpha)});
  const qcore::QuantumState probe =
      qcore::QuantumState::ket({qcore::cxd(p.gamma, 0.0), qcore::cxd(gbar, 0.0)});
  const qcore::QuantumState meter = qcore::QuantumState::ket(
      {qcore::cxd(std::cos(p.theta), 0.0), qcore::cxd(std::sin(p.theta), 0.0)});

  // Wire order system (x) probe (x) meter, system slowest.
  const qcore::Operator id2 = qcore::Operator::identity(2);
  const qcore::Operator id4 = qcore::Operator::identity(4);
  const qcore::Operator p0 = basis_projector(+1, false);
  const qcore::Operator p1 = basis_projector(-1, false);
  const qcore::Operator flip_probe =
      tensor(p0, id4) + tensor(p1, tensor(qcore::pauli_x(), id2));
  const qcore::Operator flip_meter =
      tensor(p0, id4) + tensor(p1, tensor(id2, qcore::pauli_x()));

  qcore::Operator u = flip_meter * flip_probe;
  if (basis == RunBasis::x) {
    const qcore::Operator hs = tensor(hadamard(), id4);
    u = flip_meter * hs * flip_probe * hs;
  }

  const qcore::QuantumState out =
      evolve(tensor(sys, tensor(probe, meter)), u);

  std::vector<qcore::Operator> projectors(8, qcore::Operator(8));
  for (int j : {+1, -1})
    for (int k : {+1, -1})
      for (int l : {+1, -1})
        projectors[static_cast<std::size_t>(joint_index(j, k, l))] =
            tensor(basis_projector(l, true),
                   tensor(basis_projector(j, false), basis_projector(k, false)));
  return born_probabilities(out, projectors);
}

tradeoff::ScenarioDistributions scenario_from_joint_distributions(
    const qcore::Distribution& z_run, const qcore::Distribution& x_run,
    double gamma) {
  check_gamma(gamma);
  if (z_run.size() != 8 || x_run.size() != 8)
    throw ModelError("joint distributions must have 8 outcomes");
  const double big_g = 2.0 * gamma * gamma - 1.0;
  if (std::abs(big_g) < kInversionTol)
    throw ModelError(
        "weak-value inversion undefined: 2 gamma^2 - 1 is zero at gamma = "
        "1/sqrt(2)");

  auto marginal = [](const qcore::Distribution& d, int bit) {
    // Probability that the given index bit is 0 (+ outcome).
    double s = 0.0;
    for (int idx = 0; idx < 8; ++idx)
      if (((idx >> bit) & 1) == 0) s += d[idx];
    return s;
  };

  const double pj_z = marginal(z_run, 2);  // probe margin, z run
  const double pk_z = marginal(z_run, 1);  // meter margin, z run
  const double pj_x = marginal(x_run, 2);  // probe margin, x run
  const double pl_x = marginal(x_run, 0);  // system margin, x run

  const double mean_a = (2.0 * pj_z - 1.0) / big_g;
  const double mean_b = (2.0 * pj_x - 1.0) / big_g;

  tradeoff::ScenarioDistributions s;
  s.p_a = qcore::Distribution({0.5 * (1.0 + mean_a), 0.5 * (1.0 - mean_a)}, false);
  s.p_b = qcore::Distribution({0.5 * (1.0 + mean_b), 0.5 * (1.0 - mean_b)}, false);
  s.p_c = qcore::Distribution({pk_z, 1.0 - pk_z}, true);
  s.p_d = qcore::Distribution({pl_x, 1.0 - pl_x}, true);
  return s;
}

tradeoff::ScenarioDistributions circuit_scenario(const CircuitParams& p) {
  return scenario_from_joint_distributions(
      circuit_probabilities(p, RunBasis::z), circuit_probabilities(p, RunBasis::x),
      p.gamma);
}

}  // namespace seqmeas::models
