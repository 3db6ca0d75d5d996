#include "seqmeas/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace seqmeas::qcore {

namespace {

constexpr double kHermTol = 1e-10;
constexpr double kUnitaryTol = 1e-10;
constexpr double kStateTol = 1e-12;
constexpr double kCompletenessTol = 1e-10;
constexpr double kJacobiStop = 1e-13;
constexpr double kPhaseFloor = 1e-8;

void check_same_dim(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("operator dimension mismatch: " +
                                std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()));
}

}  // namespace

Operator::Operator(int dim) : dim_(dim) {
  if (dim <= 0) throw std::invalid_argument("operator dimension must be positive");
  a_.assign(static_cast<std::size_t>(dim) * dim, cxd(0.0, 0.0));
}

Operator::Operator(int dim, std::vector<cxd> entries) : dim_(dim), a_(std::move(entries)) {
  if (dim <= 0) throw std::invalid_argument("operator dimension must be positive");
  if (a_.size() != static_cast<std::size_t>(dim) * dim)
    throw std::invalid_argument("operator entry count does not match dimension");
}

Operator Operator::identity(int dim) {
  Operator id(dim);
  for (int i = 0; i < dim; ++i) id.at(i, i) = 1.0;
  return id;
}

Operator Operator::adjoint() const {
  Operator r(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) r.at(i, j) = std::conj(at(j, i));
  return r;
}

cxd Operator::trace() const {
  cxd t = 0.0;
  for (int i = 0; i < dim_; ++i) t += at(i, i);
  return t;
}

double Operator::frobenius_norm() const {
  double s = 0.0;
  for (const cxd& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

double Operator::max_abs_diff(const Operator& other) const {
  check_same_dim(*this, other);
  double m = 0.0;
  for (std::size_t i = 0; i < a_.size(); ++i)
    m = std::max(m, std::abs(a_[i] - other.a_[i]));
  return m;
}

bool Operator::is_hermitian(double tol) const {
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j)
      if (std::abs(at(i, j) - std::conj(at(j, i))) > tol) return false;
  return true;
}

bool Operator::is_unitary(double tol) const {
  Operator g = adjoint() * (*this);
  return g.max_abs_diff(identity(dim_)) <= tol;
}

bool Operator::is_positive_semidefinite(double tol) const {
  if (!is_hermitian(kHermTol)) return false;
  EigSystem es = eig_hermitian(*this);
  return es.values.back() >= -tol;
}

Operator& Operator::operator+=(const Operator& o) {
  check_same_dim(*this, o);
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

Operator& Operator::operator-=(const Operator& o) {
  check_same_dim(*this, o);
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

Operator& Operator::operator*=(cxd s) {
  for (cxd& v : a_) v *= s;
  return *this;
}

Operator operator+(Operator a, const Operator& b) { return a += b; }
Operator operator-(Operator a, const Operator& b) { return a -= b; }

Operator operator*(const Operator& a, const Operator& b) {
  check_same_dim(a, b);
  const int n = a.dim();
  Operator r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const cxd aik = a.at(i, k);
      if (aik == cxd(0.0, 0.0)) continue;
      for (int j = 0; j < n; ++j) r.at(i, j) += aik * b.at(k, j);
    }
  return r;
}

Operator operator*(cxd s, Operator a) { return a *= s; }

QuantumState::QuantumState(bool pure, std::vector<cxd> amps, Operator rho)
    : pure_(pure), amps_(std::move(amps)), rho_(std::move(rho)) {}

QuantumState QuantumState::ket(std::vector<cxd> amplitudes) {
  if (amplitudes.empty()) throw std::invalid_argument("ket must not be empty");
  double n2 = 0.0;
  for (const cxd& v : amplitudes) n2 += std::norm(v);
  if (std::abs(n2 - 1.0) > kStateTol)
    throw std::invalid_argument("ket norm^2 deviates from 1 by " +
                                std::to_string(std::abs(n2 - 1.0)));
  return QuantumState(true, std::move(amplitudes), Operator(1));
}

QuantumState QuantumState::density(Operator rho) {
  if (!rho.is_hermitian(kHermTol))
    throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(rho.trace() - cxd(1.0, 0.0)) > kStateTol)
    throw std::invalid_argument("density matrix trace deviates from 1");
  if (!rho.is_positive_semidefinite(1e-10))
    throw std::invalid_argument("density matrix has a negative eigenvalue");
  return QuantumState(false, {}, std::move(rho));
}

int QuantumState::dim() const {
  return pure_ ? static_cast<int>(amps_.size()) : rho_.dim();
}

const std::vector<cxd>& QuantumState::amplitudes() const {
  if (!pure_) throw std::logic_error("amplitudes() requires a pure state");
  return amps_;
}

Operator QuantumState::density_matrix() const {
  if (!pure_) return rho_;
  const int n = dim();
  Operator rho(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rho.at(i, j) = amps_[i] * std::conj(amps_[j]);
  return rho;
}

Distribution::Distribution(std::vector<double> probs, bool is_physical)
    : p(std::move(probs)), physical(is_physical) {
  if (!physical) return;
  double sum = 0.0;
  for (double v : p) {
    if (v < -1e-12 || v > 1.0 + 1e-12)
      throw std::invalid_argument("physical probability out of range: " +
                                  std::to_string(v));
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-10)
    throw std::invalid_argument("physical probabilities sum to " +
                                std::to_string(sum));
}

Operator tensor(const Operator& a, const Operator& b) {
  const int na = a.dim(), nb = b.dim();
  Operator r(na * nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) {
      const cxd aij = a.at(i, j);
      if (aij == cxd(0.0, 0.0)) continue;
      for (int k = 0; k < nb; ++k)
        for (int l = 0; l < nb; ++l)
          r.at(i * nb + k, j * nb + l) = aij * b.at(k, l);
    }
  return r;
}

QuantumState tensor(const QuantumState& a, const QuantumState& b) {
  if (a.is_pure() && b.is_pure()) {
    const auto& va = a.amplitudes();
    const auto& vb = b.amplitudes();
    std::vector<cxd> out;
    out.reserve(va.size() * vb.size());
    for (const cxd& x : va)
      for (const cxd& y : vb) out.push_back(x * y);
    return QuantumState::ket(std::move(out));
  }
  return QuantumState::density(tensor(a.density_matrix(), b.density_matrix()));
}

EigSystem eig_hermitian(const Operator& h) {
  const int n = h.dim();
  {
    double asym = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        asym = std::max(asym, std::abs(h.at(i, j) - std::conj(h.at(j, i))));
    if (asym > kHermTol)
      throw std::invalid_argument("eig_hermitian: matrix asymmetry " +
                                  std::to_string(asym) + " exceeds 1e-10");
  }

  Operator a = h;
  // Symmetrize exactly so rounding in the input cannot bias the iteration.
  for (int i = 0; i < n; ++i) {
    a.at(i, i) = cxd(a.at(i, i).real(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      const cxd m = 0.5 * (a.at(i, j) + std::conj(a.at(j, i)));
      a.at(i, j) = m;
      a.at(j, i) = std::conj(m);
    }
  }
  Operator v = Operator::identity(n);

  auto off_norm = [&a, n]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) s += std::norm(a.at(i, j));
    return std::sqrt(s);
  };

  const int max_sweeps = 100;
  int sweep = 0;
  while (off_norm() > kJacobiStop) {
    if (++sweep > max_sweeps)
      throw std::runtime_error("eig_hermitian failed to converge");
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const cxd apq = a.at(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        // Unitary similarity that zeroes a_pq: a complex Jacobi rotation
        // with phase alpha = arg(a_pq) folded into the off-diagonal entries.
        const cxd phase = apq / r;
        const double app = a.at(p, p).real();
        const double aqq = a.at(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cxd rpq = s * phase;          // R[p][q]
        const cxd rqp = -s * std::conj(phase);  // R[q][p]
        // A <- R^dagger A R, applied as column then row updates.
        for (int i = 0; i < n; ++i) {
          const cxd aip = a.at(i, p);
          const cxd aiq = a.at(i, q);
          a.at(i, p) = c * aip + rqp * aiq;
          a.at(i, q) = rpq * aip + c * aiq;
        }
        for (int j = 0; j < n; ++j) {
          const cxd apj = a.at(p, j);
          const cxd aqj = a.at(q, j);
          a.at(p, j) = c * apj + std::conj(rqp) * aqj;
          a.at(q, j) = std::conj(rpq) * apj + c * aqj;
        }
        for (int i = 0; i < n; ++i) {
          const cxd vip = v.at(i, p);
          const cxd viq = v.at(i, q);
          v.at(i, p) = c * vip + rqp * viq;
          v.at(i, q) = rpq * vip + c * viq;
        }
        a.at(p, q) = cxd(0.0, 0.0);
        a.at(q, p) = cxd(0.0, 0.0);
        a.at(p, p) = cxd(a.at(p, p).real(), 0.0);
        a.at(q, q) = cxd(a.at(q, q).real(), 0.0);
      }
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&a](int i, int j) {
    return a.at(i, i).real() > a.at(j, j).real();
  });

  EigSystem es{std::vector<double>(static_cast<std::size_t>(n)), Operator(n)};
  for (int k = 0; k < n; ++k) {
    const int src = order[static_cast<std::size_t>(k)];
    es.values[static_cast<std::size_t>(k)] = a.at(src, src).real();
    // Deterministic phase: first component above the floor made real positive.
    cxd ph(1.0, 0.0);
    for (int i = 0; i < n; ++i) {
      const cxd vi = v.at(i, src);
      if (std::abs(vi) > kPhaseFloor) {
        ph = std::conj(vi) / std::abs(vi);
        break;
      }
    }
    for (int i = 0; i < n; ++i) es.vectors.at(i, k) = ph * v.at(i, src);
  }
  return es;
}

Observable Observable::from_matrix(const Operator& h, double degeneracy_tol) {
  EigSystem es = eig_hermitian(h);
  const int n = h.dim();
  Observable obs{h, {}, {}};
  int k = 0;
  while (k < n) {
    int k_end = k + 1;
    while (k_end < n &&
           es.values[static_cast<std::size_t>(k)] -
                   es.values[static_cast<std::size_t>(k_end)] <
               degeneracy_tol)
      ++k_end;
    double mean = 0.0;
    Operator proj(n);
    for (int m = k; m < k_end; ++m) {
      mean += es.values[static_cast<std::size_t>(m)];
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          proj.at(i, j) += es.vectors.at(i, m) * std::conj(es.vectors.at(j, m));
    }
    obs.eigenvalues.push_back(mean / (k_end - k));
    obs.projectors.push_back(std::move(proj));
    k = k_end;
  }
  return obs;
}

Distribution born_probabilities(const QuantumState& state,
                                const std::vector<Operator>& projectors) {
  if (projectors.empty())
    throw std::invalid_argument("born_probabilities: empty projector set");
  const int n = state.dim();
  Operator sum(n);
  for (const Operator& p : projectors) {
    check_same_dim(p, sum);
    sum += p;
  }
  const double defect = sum.max_abs_diff(Operator::identity(n));
  if (defect > kCompletenessTol)
    throw std::invalid_argument(
        "born_probabilities: projectors sum to identity with defect " +
        std::to_string(defect));

  std::vector<double> probs;
  probs.reserve(projectors.size());
  if (state.is_pure()) {
    const auto& psi = state.amplitudes();
    for (const Operator& p : projectors) {
      cxd val = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          val += std::conj(psi[i]) * p.at(i, j) * psi[j];
      probs.push_back(val.real());
    }
  } else {
    const Operator rho = state.density_matrix();
    for (const Operator& p : projectors) probs.push_back((rho * p).trace().real());
  }
  // Projective probabilities can undershoot zero only by rounding.
  for (double& v : probs) v = std::clamp(v, 0.0, 1.0);
  return Distribution(std::move(probs), true);
}

QuantumState evolve(const QuantumState& state, const Operator& u) {
  if (u.dim() != state.dim())
    throw std::invalid_argument("evolve: unitary dimension mismatch");
  if (!u.is_unitary(kUnitaryTol))
    throw std::invalid_argument("evolve: operator is not unitary within 1e-10");
  if (state.is_pure()) {
    const auto& psi = state.amplitudes();
    const int n = state.dim();
    std::vector<cxd> out(static_cast<std::size_t>(n), cxd(0.0, 0.0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out[static_cast<std::size_t>(i)] += u.at(i, j) * psi[static_cast<std::size_t>(j)];
    return QuantumState::ket(std::move(out));
  }
  return QuantumState::density(u * state.density_matrix() * u.adjoint());
}

Operator pauli_x() { return Operator(2, {0.0, 1.0, 1.0, 0.0}); }
Operator pauli_y() {
  return Operator(2, {cxd(0, 0), cxd(0, -1), cxd(0, 1), cxd(0, 0)});
}
Operator pauli_z() { return Operator(2, {1.0, 0.0, 0.0, -1.0}); }

Operator axis_observable(const std::array<double, 3>& a) {
  Operator r(2);
  r.at(0, 0) = cxd(a[2], 0.0);
  r.at(0, 1) = cxd(a[0], -a[1]);
  r.at(1, 0) = cxd(a[0], a[1]);
  r.at(1, 1) = cxd(-a[2], 0.0);
  return r;
}

}  // namespace seqmeas::qcore
