#include "phasetomo/linalg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace phasetomo {

HilbertDim HilbertDim::from_size(std::int64_t size) {
  if (size < 2 || !std::has_single_bit(static_cast<std::uint64_t>(size))) {
    throw InvalidDimension("dimension must be a power of two >= 2, got " +
                           std::to_string(size));
  }
  return HilbertDim(std::countr_zero(static_cast<std::uint64_t>(size)));
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())) < tol;
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) < tol;
}

Matrix matrix_power(const Matrix& m, std::uint64_t k) {
  Matrix result = Matrix::Identity(m.rows(), m.cols());
  Matrix base = m;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

PureState::PureState(Vector amplitudes, double tol) : amps_(std::move(amplitudes)) {
  const double norm = amps_.norm();
  if (std::abs(norm - 1.0) > tol) {
    throw DimensionMismatch("state is not unit norm (norm = " + std::to_string(norm) + ")");
  }
}

PureState PureState::normalized(Vector amplitudes) {
  const double norm = amplitudes.norm();
  if (norm == 0.0) throw DimensionMismatch("cannot normalize the zero vector");
  return PureState(amplitudes / norm, Unchecked{});
}

PureState PureState::basis(int dim, int index) {
  if (index < 0 || index >= dim) {
    throw PointOutOfRange("basis index " + std::to_string(index) +
                          " outside [0," + std::to_string(dim) + ")");
  }
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v), Unchecked{});
}

DensityOperator::DensityOperator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw DimensionMismatch("density matrix is not square");
  if (!is_hermitian(m_, 1e-12)) throw NonHermitianInput("density matrix is not Hermitian");
  if (std::abs(m_.trace() - Complex(1.0)) > 1e-12) {
    throw NonPSDInput("density matrix trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw NonPSDInput("density matrix has a negative eigenvalue " +
                      std::to_string(es.eigenvalues().minCoeff()));
  }
}

DensityOperator DensityOperator::pure(const PureState& psi) {
  const Vector& v = psi.amplitudes();
  Matrix m = v * v.adjoint();
  // Exact Hermitian symmetrization; v v^dagger is Hermitian up to rounding.
  m = (m + m.adjoint()) / 2.0;
  return DensityOperator(std::move(m));
}

DensityOperator DensityOperator::maximally_mixed(int dim) {
  return DensityOperator(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityOperator::Ensemble DensityOperator::ensemble(double cutoff) const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_);
  Ensemble out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double w = es.eigenvalues()(i);
    if (w < cutoff) continue;
    out.weights.push_back(w);
    out.states.push_back(PureState::normalized(es.eigenvectors().col(i)));
  }
  return out;
}

UnitarySpectrum unitary_spectrum(const Matrix& u) {
  // A unitary is normal, so its complex Schur form is diagonal and the Schur
  // vectors are an orthonormal eigenbasis even when eigenvalues collide.
  Eigen::ComplexSchur<Matrix> schur(u);
  const Matrix& t = schur.matrixT();
  UnitarySpectrum out;
  out.phases.resize(t.rows());
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    double phi = std::arg(t(i, i)) / kTwoPi;
    if (phi < 0) phi += 1.0;
    if (phi >= 1.0) phi -= 1.0;
    out.phases(i) = phi;
  }
  out.vectors = schur.matrixU();
  return out;
}

double cyclic_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 1.0);
  return std::min(d, 1.0 - d);
}

}  // namespace phasetomo
