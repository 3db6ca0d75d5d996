#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "seqmeas/models.hpp"

namespace seqmeas::models {

namespace {

// Residual below this after projecting a candidate column onto the span of
// the fixed ones means the candidate is linearly dependent; try the next.
constexpr double kCompletionFloor = 1e-8;

using qcore::cxd;
using qcore::Operator;

void check_loop_amplitude(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw ModelError("loop amplitude must lie in [0, 1]");
}

struct SplitAmplitudes {
  double s = 0.0;  // cross-port amplitude, sqrt(1/e)
  double t = 1.0;  // straight-port amplitude, sqrt(1 - 1/e)
};

SplitAmplitudes split_amplitudes(double extinction_ratio) {
  if (std::isinf(extinction_ratio)) return {0.0, 1.0};
  if (!(extinction_ratio >= 1.0))
    throw ModelError("extinction ratio must be >= 1 (or infinite)");
  const double leak = 1.0 / extinction_ratio;
  return {std::sqrt(leak), std::sqrt(1.0 - leak)};
}

using Column = std::array<cxd, 4>;

cxd overlap(const Column& u, const Column& v) {
  cxd sum = 0.0;
  for (int i = 0; i < 4; ++i) sum += std::conj(u[i]) * v[i];
  return sum;
}

double norm(const Column& v) { return std::sqrt(std::real(overlap(v, v))); }

}  // namespace

Operator sagnac_unitary(double gamma, double e1, double e2) {
  check_loop_amplitude(gamma);
  const SplitAmplitudes b1 = split_amplitudes(e1), b2 = split_amplitudes(e2);
  const double g = gamma, gb = std::sqrt(1.0 - gamma * gamma);
  const double s1 = b1.s, t1 = b1.t, s2 = b2.s, t2 = b2.t;
  const cxd im(0.0, 1.0);

  // Path-0 input columns carry the device model exactly.
  std::array<Column, 4> cols;
  cols[0] = {t1 * t2 * g + s1 * s2 * gb, t1 * gb, im * (s1 * g),
             im * (t1 * s2 * g - s1 * t2 * gb)};
  cols[2] = {im * (s2 * g), 0.0, gb, t2 * g};

  // Path-1 input columns are never populated by the input port; the raw
  // device-model expressions for them fail orthonormality at finite e, so
  // complete the matrix by Gram-Schmidt (falling back to basis vectors if a
  // candidate turns out dependent).  At infinite ratios the raw columns are
  // already orthonormal and pass through unchanged up to normalization.
  const std::array<Column, 2> raw = {
      Column{im * (s1 * t2 * g - t1 * s2 * gb), im * (s1 * g), t1 * g,
             -(t1 * t2 * gb + s1 * s2 * g)},
      Column{-t2 * gb, g, 0.0, -s2 * gb}};
  std::vector<int> fixed = {0, 2};
  for (int which = 0; which < 2; ++which) {
    const int target = which == 0 ? 1 : 3;
    std::vector<Column> candidates = {raw[which]};
    for (int axis = 0; axis < 4; ++axis) {
      Column e{};
      e[axis] = 1.0;
      candidates.push_back(e);
    }
    for (Column v : candidates) {
      for (int f : fixed) {
        const cxd c = overlap(cols[f], v);
        for (int i = 0; i < 4; ++i) v[i] -= c * cols[f][i];
      }
      const double n = norm(v);
      if (n > kCompletionFloor) {
        for (int i = 0; i < 4; ++i) cols[target][i] = v[i] / n;
        break;
      }
    }
    fixed.push_back(target);
  }

  Operator u(4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) u.at(r, c) = cols[c][r];
  return u;
}

std::array<Operator, 2> sagnac_measurement_operators(double gamma, double e1,
                                                     double e2) {
  // Polarization blocks <pol_out, path_out| U |pol_in, path_in = 0>.
  const Operator u = sagnac_unitary(gamma, e1, e2);
  std::array<Operator, 2> ops = {Operator(2), Operator(2)};
  for (int path_out = 0; path_out < 2; ++path_out)
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        ops[path_out].at(r, c) = u.at(2 * r + path_out, 2 * c);
  return ops;
}

PovmSet sagnac_povm(double gamma, double e1, double e2) {
  const auto ops = sagnac_measurement_operators(gamma, e1, e2);
  PovmSet set;
  for (const Operator& m : ops) set.elements.push_back(m.adjoint() * m);
  return set;
}

SagnacCoefficients sagnac_povm_coefficients(double gamma, double e1,
                                            double e2) {
  check_loop_amplitude(gamma);
  const SplitAmplitudes b1 = split_amplitudes(e1), b2 = split_amplitudes(e2);
  const double g = gamma, gb = std::sqrt(1.0 - gamma * gamma);
  const double s1 = b1.s, t1 = b1.t, s2 = b2.s, t2 = b2.t;

  SagnacCoefficients co;
  const double cross = 2.0 * g * gb * s1 * s2 * t1 * t2;
  const double leak = s1 * s1 * s2 * s2;
  co.a0 = 0.5 * (1.0 + cross + leak);
  co.b0 = 0.0;
  co.c0 = g * gb * s1 * t2 * t2 - g * g * t1 * s2 * t2;
  co.d0 = 0.5 * (cross + (2.0 * g * g - 1.0) * t2 * t2 - s2 * s2 + leak);
  co.a1 = 1.0 - co.a0;
  co.b1 = 0.0;
  co.c1 = -co.c0;
  co.d1 = -co.d0;
  return co;
}

qcore::Distribution sagnac_joint_probabilities(const CircuitParams& p,
                                               RunBasis basis) {
  auto probe = sagnac_measurement_operators(p.gamma, p.e1, p.e2);
  const auto meter = sagnac_measurement_operators(
      std::cos(p.theta), p.meter_e1.value_or(p.e1), p.meter_e2.value_or(p.e2));

  if (basis == RunBasis::x) {
    const double r = 1.0 / std::sqrt(2.0);
    const Operator h(2, {cxd(r, 0), cxd(r, 0), cxd(r, 0), cxd(-r, 0)});
    for (Operator& m : probe) m = h * m * h;
  }

  const double sa = std::sin(p.alpha);
  const std::array<cxd, 2> phi = {
      cxd(std::cos(p.alpha), 0.0),
      cxd(sa * std::cos(p.phi), sa * std::sin(p.phi))};

  qcore::Distribution joint;
  joint.p.assign(8, 0.0);
  for (int j : {+1, -1})
    for (int k : {+1, -1}) {
      const Operator chain = meter[k > 0 ? 0 : 1] * probe[j > 0 ? 0 : 1];
      std::array<cxd, 2> out{};
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out[r] += chain.at(r, c) * phi[c];
      for (int l : {+1, -1}) {
        // Final readout projects onto (|0> +/- |1>)/sqrt(2).
        const cxd amp = (out[0] + double(l) * out[1]) / std::sqrt(2.0);
        joint.p[joint_index(j, k, l)] = std::norm(amp);
      }
    }
  joint.physical = true;
  return joint;
}

SagnacReport imperfect_probabilities(const CircuitParams& p) {
  const qcore::Distribution z_run = sagnac_joint_probabilities(p, RunBasis::z);
  const qcore::Distribution x_run = sagnac_joint_probabilities(p, RunBasis::x);

  SagnacReport report;
  report.dists = scenario_from_joint_distributions(z_run, x_run, p.gamma);
  const tradeoff::TradeoffReport bound = tradeoff::tradeoff_report(report.dists);
  report.epsilon = bound.epsilon;
  report.eta = bound.eta;
  report.lhs = bound.epsilon + bound.eta;
  report.rhs = bound.xi_g_max;

  // The two sign pairings of the bound at the relabelings the report chose;
  // their max is exactly rhs.
  const auto relabeled = [](const std::vector<double>& v,
                            const tradeoff::Permutation& perm) {
    std::vector<double> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[perm[i]];
    return out;
  };
  const std::vector<double> pa =
      relabeled(report.dists.p_a.p, bound.sigma_a);
  const std::vector<double> pb =
      relabeled(report.dists.p_b.p, bound.sigma_b);
  const std::vector<double>& pc = report.dists.p_c.p;
  const std::vector<double>& pd = report.dists.p_d.p;
  const auto pairing = [&](int i0, int i1) {
    double acc = 0.0;
    acc += std::abs(pa[i0] - pb[0]) - std::abs(pc[i0] - pd[0]);
    acc += std::abs(pa[i1] - pb[1]) - std::abs(pc[i1] - pd[1]);
    return std::abs(acc);
  };
  report.xi_g1 = pairing(0, 1);
  report.xi_g2 = pairing(1, 0);
  return report;
}

}  // namespace seqmeas::models
