#include "seqmeas/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace seqmeas::tradeoff {

namespace {

constexpr int kMaxOutcomes = 6;
constexpr double kTieTol = 1e-12;

void check_sizes(const qcore::Distribution& p, const qcore::Distribution& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("distribution size mismatch: " +
                                std::to_string(p.size()) + " vs " +
                                std::to_string(q.size()));
  if (p.size() == 0) throw std::invalid_argument("empty distribution");
}

std::vector<double> relabel(const std::vector<double>& p, const Permutation& s) {
  std::vector<double> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    out[i] = p[static_cast<std::size_t>(s[i])];
  return out;
}

std::vector<double> relabel(const qcore::Distribution& p, const Permutation& s) {
  return relabel(p.p, s);
}

double l1(const std::vector<double>& x, const std::vector<double>& y) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d += std::abs(x[i] - y[i]);
  return d;
}

std::vector<Permutation> all_permutations(int n) {
  Permutation idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<Permutation> out;
  do {
    out.push_back(idx);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

}  // namespace

double statistical_distance(const qcore::Distribution& p,
                            const qcore::Distribution& q) {
  check_sizes(p, q);
  double d = 0.0;
  for (int i = 0; i < p.size(); ++i) d += std::abs(p[i] - q[i]);
  return d;
}

MinDistanceResult min_permutation_distance(const qcore::Distribution& p,
                                           const qcore::Distribution& q) {
  check_sizes(p, q);
  const int n = p.size();
  if (n > kMaxOutcomes)
    throw std::invalid_argument("exhaustive permutation bound exceeded: " +
                                std::to_string(n) + " outcomes (max 6)");

  MinDistanceResult result;
  result.value = std::numeric_limits<double>::infinity();
  std::vector<std::pair<Permutation, std::vector<double>>> hits;
  for (const Permutation& s : all_permutations(n)) {
    std::vector<double> rp = relabel(p, s);
    double d = 0.0;
    for (int i = 0; i < n; ++i) d += std::abs(rp[static_cast<std::size_t>(i)] - q[i]);
    if (d < result.value - kTieTol) {
      result.value = d;
      hits.clear();
      hits.emplace_back(s, std::move(rp));
    } else if (d <= result.value + kTieTol) {
      result.value = std::min(result.value, d);
      hits.emplace_back(s, std::move(rp));
    }
  }
  // Second pass against the settled minimum, then dedupe permutations that
  // relabel p into exactly the same vector (they are indistinguishable
  // downstream).  Lexicographic generation order is preserved.
  std::set<std::vector<double>> seen;
  for (auto& [perm, vec] : hits) {
    if (l1(vec, q.p) <= result.value + kTieTol && seen.insert(vec).second)
      result.minimizers.push_back(perm);
  }
  return result;
}

XiGResult xi_g_max(const ScenarioDistributions& s,
                   const std::vector<Permutation>& sigma_a_choices,
                   const std::vector<Permutation>& sigma_b_choices,
                   bool extended) {
  check_sizes(s.p_a, s.p_b);
  check_sizes(s.p_a, s.p_c);
  check_sizes(s.p_a, s.p_d);
  if (sigma_a_choices.empty() || sigma_b_choices.empty())
    throw std::invalid_argument("xi_g_max: empty minimizer choice set");
  const int n = s.p_a.size();
  if (n > kMaxOutcomes)
    throw std::invalid_argument("exhaustive permutation bound exceeded: " +
                                std::to_string(n) + " outcomes (max 6)");

  const std::vector<Permutation> sigmas = all_permutations(n);
  const Permutation identity = sigmas.front();

  XiGResult best;
  best.value = -1.0;
  for (const Permutation& sa : sigma_a_choices) {
    const std::vector<double> pa = relabel(s.p_a, sa);
    for (const Permutation& sb : sigma_b_choices) {
      const std::vector<double> pb = relabel(s.p_b, sb);
      auto consider = [&](const Permutation& tau) {
        const std::vector<double> tb = relabel(pb, tau);
        const std::vector<double> td = relabel(s.p_d, tau);
        for (const Permutation& sigma : sigmas) {
          double acc = 0.0;
          for (int i = 0; i < n; ++i) {
            const std::size_t si = static_cast<std::size_t>(sigma[i]);
            acc += std::abs(pa[si] - tb[static_cast<std::size_t>(i)]) -
                   std::abs(s.p_c[sigma[i]] - td[static_cast<std::size_t>(i)]);
          }
          const double v = std::abs(acc);
          if (v > best.value) {
            best.value = v;
            best.sigma_star = sigma;
            best.sigma_a = sa;
            best.sigma_b = sb;
          }
        }
      };
      if (extended)
        for (const Permutation& tau : sigmas) consider(tau);
      else
        consider(identity);
    }
  }
  return best;
}

TradeoffReport tradeoff_report(const ScenarioDistributions& s, bool extended) {
  MinDistanceResult ma = min_permutation_distance(s.p_a, s.p_c);
  MinDistanceResult mb = min_permutation_distance(s.p_b, s.p_d);
  XiGResult xi = xi_g_max(s, ma.minimizers, mb.minimizers, extended);

  TradeoffReport r;
  r.epsilon = ma.value;
  r.eta = mb.value;
  r.xi_g_max = xi.value;
  r.Xi = r.epsilon + r.eta - r.xi_g_max;
  r.sigma_a = xi.sigma_a;
  r.sigma_b = xi.sigma_b;
  r.sigma_star = xi.sigma_star;
  return r;
}

namespace {

qcore::Operator matrix_sqrt_psd(const qcore::Operator& rho) {
  qcore::EigSystem es = qcore::eig_hermitian(rho);
  const int n = rho.dim();
  qcore::Operator r(n);
  for (int k = 0; k < n; ++k) {
    double lam = es.values[static_cast<std::size_t>(k)];
    if (lam < 0.0) {
      if (lam < -1e-10)
        throw std::invalid_argument("matrix square root of indefinite matrix");
      lam = 0.0;
    }
    const double s = std::sqrt(lam);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        r.at(i, j) += s * es.vectors.at(i, k) * std::conj(es.vectors.at(j, k));
  }
  return r;
}

double expectation(const qcore::Operator& rho, const qcore::Operator& op) {
  return (rho * op).trace().real();
}

}  // namespace

OzawaReport ozawa_quantities(const qcore::Operator& a, const qcore::Operator& b,
                             const qcore::Operator& m, const qcore::Operator& u,
                             const qcore::QuantumState& system,
                             const qcore::QuantumState& meter) {
  const int ds = a.dim();
  const int dm = m.dim();
  if (b.dim() != ds) throw std::invalid_argument("observable dimension mismatch");
  if (u.dim() != ds * dm)
    throw std::invalid_argument("coupling unitary dimension mismatch");

  const qcore::Operator id_s = qcore::Operator::identity(ds);
  const qcore::Operator id_m = qcore::Operator::identity(dm);
  const qcore::Operator ua = u.adjoint();

  // Heisenberg-picture readout and post-interaction observables.
  const qcore::Operator n_a = ua * tensor(id_s, m) * u;
  const qcore::Operator n_b = ua * tensor(b, id_m) * u;
  const qcore::Operator a_in = tensor(a, id_m);
  const qcore::Operator b_in = tensor(b, id_m);

  const qcore::Operator rho_joint =
      tensor(system, meter).density_matrix();
  const qcore::Operator rho_sys = system.density_matrix();

  const qcore::Operator da = n_a - a_in;
  const qcore::Operator db = n_b - b_in;

  OzawaReport rep;
  rep.eps_rms = std::sqrt(std::max(0.0, expectation(rho_joint, da * da)));
  rep.eta_rms = std::sqrt(std::max(0.0, expectation(rho_joint, db * db)));

  const double mean_a = expectation(rho_sys, a);
  const double mean_b = expectation(rho_sys, b);
  rep.sigma_a =
      std::sqrt(std::max(0.0, expectation(rho_sys, a * a) - mean_a * mean_a));
  rep.sigma_b =
      std::sqrt(std::max(0.0, expectation(rho_sys, b * b) - mean_b * mean_b));

  rep.lhs = rep.eps_rms * rep.eta_rms + rep.eps_rms * rep.sigma_b +
            rep.sigma_a * rep.eta_rms;

  const qcore::Operator comm = a * b - b * a;
  rep.rhs_commutator = 0.5 * std::abs((rho_sys * comm).trace());

  // Tr|K| for anti-Hermitian K via the Hermitian matrix iK: the absolute
  // eigenvalues of iK are the singular values of K.
  const qcore::Operator sq = matrix_sqrt_psd(rho_sys);
  qcore::Operator k = sq * comm * sq;
  k *= qcore::cxd(0.0, 1.0);
  qcore::EigSystem es = qcore::eig_hermitian(k);
  double tr_abs = 0.0;
  for (double lam : es.values) tr_abs += std::abs(lam);
  rep.rhs_dab = 0.5 * tr_abs;
  return rep;
}

}  // namespace seqmeas::tradeoff
