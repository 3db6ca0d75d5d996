#include <cmath>

#include "seqmeas/models.hpp"

namespace seqmeas::models {

namespace {

constexpr double kTieTol = 1e-12;

std::array<double, 3> unit(const std::array<double, 3>& v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (n < 1e-12) throw ModelError("observable axis must be nonzero");
  return {v[0] / n, v[1] / n, v[2] / n};
}

qcore::QuantumState system_ket(double alpha, double phi) {
  return qcore::QuantumState::ket(
      {qcore::cxd(std::cos(alpha), 0.0),
       std::exp(qcore::cxd(0.0, phi)) * std::sin(alpha)});
}

}  // namespace

tradeoff::ScenarioDistributions qubit_cnot_model(const QubitParams& p) {
  const std::array<double, 3> a = unit(p.a_axis);
  const std::array<double, 3> b = unit(p.b_axis);

  const qcore::Operator a_obs = qcore::axis_observable(a);
  const qcore::Observable oa = qcore::Observable::from_matrix(a_obs);
  const qcore::Observable ob =
      qcore::Observable::from_matrix(qcore::axis_observable(b));

  // Coupling flips the meter along the a-axis when the system is in the
  // lower a-eigenstate; the meter starts tilted by theta in that basis and
  // is read out along a as well.
  const qcore::EigSystem ea = qcore::eig_hermitian(a_obs);
  qcore::Operator flip(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      flip.at(i, j) = ea.vectors.at(i, 0) * std::conj(ea.vectors.at(j, 1)) +
                      ea.vectors.at(i, 1) * std::conj(ea.vectors.at(j, 0));
  const qcore::Operator u =
      tensor(oa.projectors[0], qcore::Operator::identity(2)) +
      tensor(oa.projectors[1], flip);

  std::vector<qcore::cxd> mu(2);
  for (int i = 0; i < 2; ++i)
    mu[static_cast<std::size_t>(i)] = std::cos(p.theta) * ea.vectors.at(i, 0) +
                                      std::sin(p.theta) * ea.vectors.at(i, 1);

  const qcore::QuantumState sys = system_ket(p.alpha, p.phi);
  const qcore::QuantumState joint =
      evolve(tensor(sys, qcore::QuantumState::ket(std::move(mu))), u);

  const qcore::Operator id2 = qcore::Operator::identity(2);
  tradeoff::ScenarioDistributions out;
  out.p_a = born_probabilities(sys, oa.projectors);
  out.p_b = born_probabilities(sys, ob.projectors);
  out.p_c = born_probabilities(
      joint, {tensor(id2, oa.projectors[0]), tensor(id2, oa.projectors[1])});
  out.p_d = born_probabilities(
      joint, {tensor(ob.projectors[0], id2), tensor(ob.projectors[1], id2)});
  return out;
}

QubitClosedForms qubit_closed_forms(const QubitParams& p) {
  const std::array<double, 3> a = unit(p.a_axis);
  const std::array<double, 3> b = unit(p.b_axis);

  const double c2 = std::cos(2.0 * p.theta);
  const double s2 = std::sin(2.0 * p.theta);
  if (c2 < -kTieTol)
    throw ModelError("closed forms require cos(2 theta) >= 0");

  // Bloch vector of cos(alpha)|0> + e^{i phi} sin(alpha)|1>.
  const double s2a = std::sin(2.0 * p.alpha);
  const std::array<double, 3> r{s2a * std::cos(p.phi), s2a * std::sin(p.phi),
                                std::cos(2.0 * p.alpha)};
  const double A = a[0] * r[0] + a[1] * r[1] + a[2] * r[2];
  const double B = b[0] * r[0] + b[1] * r[1] + b[2] * r[2];
  const double ba = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];

  // Mean of the second observable after the coupling has acted.
  const double T = s2 * B + (1.0 - s2) * ba * A;

  QubitClosedForms f;
  f.epsilon = (1.0 - c2) * std::abs(A);
  f.eta1 = std::abs(B - T);
  f.eta2 = std::abs(B + T);
  f.xi_g1 = std::abs(std::abs(A - B) - std::abs(c2 * A - T));
  f.xi_g2 = std::abs(std::abs(A + B) - std::abs(c2 * A + T));
  f.xi_g3 = std::abs(std::abs(A - B) - std::abs(c2 * A + T));
  f.xi_g4 = std::abs(std::abs(A + B) - std::abs(c2 * A - T));

  // The disturbance branch fixes which relabeling pairings can attain the
  // maximum; a tie keeps every candidate.
  if (f.eta1 < f.eta2 - kTieTol) {
    f.eta = f.eta1;
    f.xi_g_max = std::max(f.xi_g1, f.xi_g2);
  } else if (f.eta2 < f.eta1 - kTieTol) {
    f.eta = f.eta2;
    f.xi_g_max = std::max(f.xi_g3, f.xi_g4);
  } else {
    f.eta = std::min(f.eta1, f.eta2);
    f.xi_g_max = std::max(std::max(f.xi_g1, f.xi_g2), std::max(f.xi_g3, f.xi_g4));
  }
  f.Xi = f.epsilon + f.eta - f.xi_g_max;
  return f;
}

}  // namespace seqmeas::models
