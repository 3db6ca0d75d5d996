// Dense complex linear algebra and quantum primitives: operators, states,
// tensor products, Hermitian eigendecomposition, Born-rule probabilities.
// Dimensions are small (<= 64); everything is immutable after construction
// and all free functions are pure, so values are safe to share across threads.

#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqmeas::qcore {

using cxd = std::complex<double>;

// Square complex matrix, row-major storage.
class Operator {
 public:
  explicit Operator(int dim);
  Operator(int dim, std::vector<cxd> entries);

  static Operator identity(int dim);

  int dim() const { return dim_; }
  cxd& at(int r, int c) { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
  const cxd& at(int r, int c) const {
    return a_[static_cast<std::size_t>(r) * dim_ + c];
  }

  Operator adjoint() const;
  cxd trace() const;
  double frobenius_norm() const;
  // Largest entrywise |a_ij - b_ij|; operands must share dimensions.
  double max_abs_diff(const Operator& other) const;

  bool is_hermitian(double tol) const;
  bool is_unitary(double tol) const;
  bool is_positive_semidefinite(double tol) const;

  Operator& operator+=(const Operator& o);
  Operator& operator-=(const Operator& o);
  Operator& operator*=(cxd s);

 private:
  int dim_;
  std::vector<cxd> a_;
};

Operator operator+(Operator a, const Operator& b);
Operator operator-(Operator a, const Operator& b);
Operator operator*(const Operator& a, const Operator& b);
Operator operator*(cxd s, Operator a);

// Result of eig_hermitian: values descending, matching unit eigenvectors as
// columns of `vectors`.  Each column's first component of magnitude > 1e-8 is
// made real positive, so the output is deterministic.
struct EigSystem {
  std::vector<double> values;
  Operator vectors;
};

// Pure ket (unit norm within 1e-12) or density matrix (Hermitian, positive
// semidefinite, unit trace within 1e-12).
class QuantumState {
 public:
  static QuantumState ket(std::vector<cxd> amplitudes);
  static QuantumState density(Operator rho);

  bool is_pure() const { return pure_; }
  int dim() const;
  const std::vector<cxd>& amplitudes() const;  // pure states only
  Operator density_matrix() const;             // works for both kinds

 private:
  QuantumState(bool pure, std::vector<cxd> amps, Operator rho);
  bool pure_;
  std::vector<cxd> amps_;
  Operator rho_;
};

// Ordered outcome probabilities.  Physical distributions have entries in
// [-1e-12, 1+1e-12] summing to 1 within 1e-10 (validated on construction).
// Non-physical ones (e.g. recovered by dividing a weak-measurement marginal
// by the coupling strength) carry arbitrary real entries and are consumed
// downstream without clamping or renormalization.
struct Distribution {
  std::vector<double> p;
  bool physical = true;

  Distribution() = default;
  Distribution(std::vector<double> probs, bool is_physical);

  int size() const { return static_cast<int>(p.size()); }
  double operator[](int i) const { return p[static_cast<std::size_t>(i)]; }
};

// Hermitian observable with one projector per distinct eigenvalue,
// eigenvalues descending.  Eigenvalues closer than degeneracy_tol are merged
// into a single outcome whose projector spans the degenerate subspace.
struct Observable {
  Operator matrix;
  std::vector<double> eigenvalues;
  std::vector<Operator> projectors;

  static Observable from_matrix(const Operator& h, double degeneracy_tol = 1e-8);
  int outcomes() const { return static_cast<int>(eigenvalues.size()); }
};

// Kronecker product with the left operand as the slow (most significant)
// index.  Mixed pure/density operands are promoted to density matrices.
Operator tensor(const Operator& a, const Operator& b);
QuantumState tensor(const QuantumState& a, const QuantumState& b);

// Cyclic Jacobi rotations, iterated until the off-diagonal Frobenius norm
// drops below 1e-13.  Throws std::invalid_argument (carrying the maximum
// asymmetry) when the input is not Hermitian within 1e-10.
EigSystem eig_hermitian(const Operator& h);

// Tr(rho P_i) for a complete projector set (sum = identity within 1e-10).
Distribution born_probabilities(const QuantumState& state,
                                const std::vector<Operator>& projectors);

// u|psi> for kets, u rho u^dagger for density matrices; u must be unitary
// within 1e-10.
QuantumState evolve(const QuantumState& state, const Operator& u);

Operator pauli_x();
Operator pauli_y();
Operator pauli_z();
// a.sigma for a real 3-vector (not required to be unit length here).
Operator axis_observable(const std::array<double, 3>& a);

}  // namespace seqmeas::qcore
