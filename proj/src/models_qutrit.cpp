#include <cmath>

#include "seqmeas/models.hpp"

namespace seqmeas::models {

namespace {

const double kInvRt2 = 1.0 / std::sqrt(2.0);

// Cyclic raise: |m> -> |m+1 mod 3>.
qcore::Operator shift3() {
  qcore::Operator x(3);
  x.at(1, 0) = 1.0;
  x.at(2, 1) = 1.0;
  x.at(0, 2) = 1.0;
  return x;
}

}  // namespace

qcore::Operator qutrit_lz() {
  qcore::Operator lz(3);
  lz.at(0, 0) = 1.0;
  lz.at(2, 2) = -1.0;
  return lz;
}

qcore::Operator qutrit_lx() {
  qcore::Operator lx(3);
  lx.at(0, 1) = kInvRt2;
  lx.at(1, 0) = kInvRt2;
  lx.at(1, 2) = kInvRt2;
  lx.at(2, 1) = kInvRt2;
  return lx;
}

tradeoff::ScenarioDistributions qutrit_model(const QutritParams& p) {
  const double sa = std::sin(p.alpha), ca = std::cos(p.alpha);
  const qcore::QuantumState sys = qcore::QuantumState::ket(
      {qcore::cxd(sa * std::cos(p.phi_s), 0.0),
       std::exp(qcore::cxd(0.0, p.chi12)) * (sa * std::sin(p.phi_s)),
       std::exp(qcore::cxd(0.0, p.chi13)) * ca});
  const qcore::QuantumState meter = qcore::QuantumState::ket(
      {qcore::cxd(std::sin(p.theta) * std::cos(p.phi_m), 0.0),
       qcore::cxd(std::sin(p.theta) * std::sin(p.phi_m), 0.0),
       qcore::cxd(std::cos(p.theta), 0.0)});

  // Coupling shifts the meter level by the system level: sum_s |s><s| (x) X^s.
  const qcore::Operator x3 = shift3();
  const qcore::Operator x3sq = x3 * x3;
  qcore::Operator u(9);
  for (int s = 0; s < 3; ++s) {
    const qcore::Operator& pow = (s == 0) ? qcore::Operator::identity(3)
                                : (s == 1) ? x3
                                           : x3sq;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) u.at(3 * s + i, 3 * s + j) = pow.at(i, j);
  }

  const qcore::Observable oa = qcore::Observable::from_matrix(qutrit_lz());
  const qcore::Observable ob = qcore::Observable::from_matrix(qutrit_lx());
  const qcore::QuantumState joint = evolve(tensor(sys, meter), u);

  const qcore::Operator id3 = qcore::Operator::identity(3);
  std::vector<qcore::Operator> meter_readout, system_after;
  for (int k = 0; k < 3; ++k) {
    qcore::Operator pk(3);
    pk.at(k, k) = 1.0;
    meter_readout.push_back(tensor(id3, pk));
  }
  for (const qcore::Operator& pb : ob.projectors)
    system_after.push_back(tensor(pb, id3));

  tradeoff::ScenarioDistributions out;
  out.p_a = born_probabilities(sys, oa.projectors);
  out.p_b = born_probabilities(sys, ob.projectors);
  out.p_c = born_probabilities(joint, meter_readout);
  out.p_d = born_probabilities(joint, system_after);
  return out;
}

}  // namespace seqmeas::models
