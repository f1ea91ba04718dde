#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "phasetomo/errors.hpp"

namespace phasetomo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Power-of-two Hilbert space dimension N = 2^n.
class HilbertDim {
public:
  explicit HilbertDim(int qubits) : qubits_(qubits) {
    if (qubits < 1 || qubits > 20) {
      throw InvalidDimension("qubit count must be in [1,20], got " +
                             std::to_string(qubits));
    }
  }
  static HilbertDim from_size(std::int64_t size);

  int qubits() const noexcept { return qubits_; }
  int size() const noexcept { return 1 << qubits_; }
  /// Side of the Wigner lattice, 2N.
  int wigner_size() const noexcept { return 2 * size(); }

  friend bool operator==(HilbertDim, HilbertDim) = default;

private:
  int qubits_;
};

/// Non-negative representative of value mod m.
inline std::int64_t mod(std::int64_t value, std::int64_t m) {
  const std::int64_t r = value % m;
  return r < 0 ? r + m : r;
}

double max_abs(const Matrix& m);
bool is_unitary(const Matrix& m, double tol = 1e-10);
bool is_hermitian(const Matrix& m, double tol = 1e-12);

/// m^k for k >= 0 by repeated squaring.
Matrix matrix_power(const Matrix& m, std::uint64_t k);

/// Unit-norm amplitude vector.
class PureState {
public:
  explicit PureState(Vector amplitudes, double tol = 1e-12);
  /// Normalizes instead of validating.
  static PureState normalized(Vector amplitudes);
  static PureState basis(int dim, int index);

  const Vector& amplitudes() const noexcept { return amps_; }
  int dim() const noexcept { return static_cast<int>(amps_.size()); }
  Complex operator[](int i) const { return amps_(i); }

  Complex inner(const PureState& other) const { return amps_.dot(other.amps_); }
  /// |<this|other>|^2
  double fidelity(const PureState& other) const { return std::norm(inner(other)); }

private:
  struct Unchecked {};
  PureState(Vector amplitudes, Unchecked) : amps_(std::move(amplitudes)) {}
  Vector amps_;
};

/// Hermitian, positive semidefinite, unit-trace N x N matrix.
class DensityOperator {
public:
  explicit DensityOperator(Matrix m);
  static DensityOperator pure(const PureState& psi);
  static DensityOperator maximally_mixed(int dim);

  const Matrix& matrix() const noexcept { return m_; }
  int dim() const noexcept { return static_cast<int>(m_.rows()); }

  /// Eigen-ensemble rho = sum_i weight_i |v_i><v_i|, weights below `cutoff`
  /// dropped.
  struct Ensemble {
    std::vector<double> weights;
    std::vector<PureState> states;
  };
  Ensemble ensemble(double cutoff = 1e-14) const;

private:
  Matrix m_;
};

/// Eigendecomposition of a unitary matrix with orthonormal eigenvectors.
/// Phases follow U v = exp(i 2 pi phi) v with phi in [0,1).
struct UnitarySpectrum {
  RealVector phases;
  Matrix vectors;
};
UnitarySpectrum unitary_spectrum(const Matrix& u);

/// Distance between two phases on the unit circle, in [0, 1/2].
double cyclic_distance(double a, double b);

}  // namespace phasetomo
