#include "phasetomo/phase_space.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace phasetomo {

namespace {

Complex cis(double angle) { return std::polar(1.0, angle); }

Matrix diagonal(const Vector& d) { return d.asDiagonal(); }

}  // namespace

PhasePoint PhasePoint::make(HilbertDim dim, int q, int p, Grid grid) {
  const int side = grid == Grid::Wigner ? dim.wigner_size() : dim.size();
  if (q < 0 || q >= side || p < 0 || p >= side) {
    throw PointOutOfRange("point (" + std::to_string(q) + "," + std::to_string(p) +
                          ") outside the " + std::to_string(side) + "x" +
                          std::to_string(side) + " grid");
  }
  return PhasePoint{q, p, grid};
}

LineSpec LineSpec::make(HilbertDim dim, std::int64_t n1, std::int64_t n2, std::int64_t n3) {
  const std::int64_t m = dim.wigner_size();
  LineSpec spec{static_cast<int>(mod(n1, m)), static_cast<int>(mod(n2, m)),
                static_cast<int>(mod(n3, m))};
  if (spec.n1 == 0 && spec.n2 == 0) {
    throw NotAxisAligned("line coefficients (n1,n2) are both zero mod 2N");
  }
  return spec;
}

bool LineSpec::contains(HilbertDim dim, int q, int p) const {
  const std::int64_t m = dim.wigner_size();
  return mod(std::int64_t{n1} * q + std::int64_t{n2} * p - n3, m) == 0;
}

Matrix shift_operator(HilbertDim dim) {
  const int n = dim.size();
  Matrix u = Matrix::Zero(n, n);
  for (int q = 0; q < n; ++q) u((q + 1) % n, q) = 1.0;
  return u;
}

Matrix clock_operator(HilbertDim dim) {
  const int n = dim.size();
  Vector d(n);
  for (int q = 0; q < n; ++q) d(q) = cis(kTwoPi * q / n);
  return diagonal(d);
}

Matrix reflection_operator(HilbertDim dim) {
  const int n = dim.size();
  Matrix r = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) r((n - k) % n, k) = 1.0;
  return r;
}

Matrix fourier_matrix(int size) {
  Matrix f(size, size);
  const double scale = 1.0 / std::sqrt(static_cast<double>(size));
  for (int k = 0; k < size; ++k) {
    for (int q = 0; q < size; ++q) {
      // Reduce the exponent first so large products stay exact.
      const auto e = mod(std::int64_t{k} * q, size);
      f(k, q) = scale * cis(kTwoPi * static_cast<double>(e) / size);
    }
  }
  return f;
}

BasicOperators build_basic_operators(HilbertDim dim) {
  return {shift_operator(dim), clock_operator(dim), reflection_operator(dim),
          fourier_matrix(dim.size())};
}

Matrix translation(HilbertDim dim, int q, int p) {
  const int n = dim.size();
  Matrix t = Matrix::Zero(n, n);
  const Complex phase = cis(kPi * static_cast<double>(p) * q / n);
  for (int k = 0; k < n; ++k) {
    const auto target = mod(std::int64_t{k} + q, n);
    const auto e = mod(std::int64_t{p} * k, n);
    t(target, k) = phase * cis(kTwoPi * static_cast<double>(e) / n);
  }
  return t;
}

Matrix phase_point(HilbertDim dim, int q, int p) {
  const int n = dim.size();
  Matrix a = Matrix::Zero(n, n);
  const Complex phase = cis(kPi * static_cast<double>(p) * q / n);
  for (int k = 0; k < n; ++k) {
    const auto target = mod(std::int64_t{q} - k, n);
    const auto e = mod(-std::int64_t{p} * k, n);
    a(target, k) = phase * cis(kTwoPi * static_cast<double>(e) / n);
  }
  return a;
}

HarperSystem harper_system(HilbertDim dim) {
  const int n = dim.size();
  const Matrix u = shift_operator(dim);
  const Matrix v = clock_operator(dim);
  Matrix h = 2.0 * Matrix::Identity(n, n) - (u + u.adjoint()) / 2.0 - (v + v.adjoint()) / 2.0;

  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const RealVector& e = es.eigenvalues();
  if (e(1) - e(0) < 1e-12) {
    throw DegenerateGround("Harper ground level is degenerate at N=" + std::to_string(n));
  }
  Vector g = es.eigenvectors().col(0);
  Eigen::Index imax = 0;
  g.cwiseAbs().maxCoeff(&imax);
  g *= std::abs(g(imax)) / g(imax);
  return HarperSystem{std::move(h), e, es.eigenvectors(), PureState::normalized(std::move(g))};
}

Matrix kicked_map(HilbertDim dim, double gamma) {
  const int n = dim.size();
  Vector kick(n);
  for (int k = 0; k < n; ++k) {
    kick(k) = cis(-gamma * n * std::cos(kTwoPi * k / n));
  }
  const Matrix ft = fourier_matrix(n);
  // Potential and kinetic kicks share the same diagonal profile.
  return kick.asDiagonal() * (ft.adjoint() * kick.asDiagonal() * ft);
}

Matrix cat_map(HilbertDim dim, CatParams params) {
  const int n = dim.size();
  const std::int64_t two_n = 2 * n;
  auto shear = [&](int c) {
    Vector d(n);
    for (int k = 0; k < n; ++k) {
      // exp(-i 2 pi k^2 (1-c) / 2N); reduce the integer exponent mod 2N.
      const auto e = mod(std::int64_t{k} * k * (1 - c), two_n);
      d(k) = cis(-kTwoPi * static_cast<double>(e) / static_cast<double>(two_n));
    }
    return d;
  };
  Vector kinetic(n);
  for (int k = 0; k < n; ++k) {
    const auto e = mod(std::int64_t{k} * k, two_n);
    kinetic(k) = cis(-kTwoPi * static_cast<double>(e) / static_cast<double>(two_n));
  }
  const Matrix ft = fourier_matrix(n);
  const Matrix kinetic_pos = ft * kinetic.asDiagonal() * ft.adjoint();
  return shear(params.a).asDiagonal() * kinetic_pos * shear(params.b).asDiagonal();
}

Vector continuous_coherent_amplitudes(HilbertDim dim, int q, int p) {
  const int n = dim.size();
  const double nn = n;
  const double log_prefactor = 0.25 * std::log(2.0 / nn) + kPi / (2.0 * nn) * (double(q) * q + double(p) * p);
  const double cutoff = std::log(1e-18);

  Vector amps = Vector::Zero(n);
  for (int k = 0; k < n; ++k) {
    auto term = [&](long j) -> std::pair<Complex, double> {
      const double d = nn * j - q + k;
      const double log_gauss = -kPi / nn * d * d;
      const double angle = -kTwoPi / nn * p * (nn * j + q / 2.0 - k);
      return {std::exp(log_prefactor + log_gauss) * cis(angle), log_gauss};
    };
    // The Gaussian is centered at j = (q - k) / N; walk outward from there.
    const long center = std::lround(static_cast<double>(q - k) / nn);
    amps(k) += term(center).first;
    for (int dir : {-1, 1}) {
      for (long j = center + dir;; j += dir) {
        const auto [value, log_gauss] = term(j);
        if (log_gauss < cutoff) break;
        amps(k) += value;
      }
    }
  }
  return amps;
}

PureState continuous_coherent(HilbertDim dim, int q, int p) {
  return PureState::normalized(continuous_coherent_amplitudes(dim, q, p));
}

PureState harper_coherent(const HarperSystem& harper, HilbertDim dim, int q, int p) {
  return PureState::normalized(translation(dim, q, p) * harper.ground.amplitudes());
}

Complex wigner_trace(const DensityOperator& rho, PhasePoint pt) {
  const HilbertDim dim = HilbertDim::from_size(rho.dim());
  if (pt.grid != Grid::Wigner) throw PointOutOfRange("Wigner needs a 2N-grid point");
  PhasePoint::make(dim, pt.q, pt.p, Grid::Wigner);
  const Matrix a = phase_point(dim, pt.q, pt.p);
  // Tr[A rho] = sum_ij A_ij rho_ji
  return a.cwiseProduct(rho.matrix().transpose()).sum();
}

double wigner_direct(const DensityOperator& rho, PhasePoint pt) {
  return wigner_trace(rho, pt).real() / (2.0 * rho.dim());
}

Complex kirkwood_direct(const DensityOperator& rho, PhasePoint pt) {
  const HilbertDim dim = HilbertDim::from_size(rho.dim());
  PhasePoint::make(dim, pt.q, pt.p, Grid::Torus);
  const int n = dim.size();
  Vector momentum(n);
  for (int k = 0; k < n; ++k) {
    momentum(k) = cis(kTwoPi * static_cast<double>(mod(std::int64_t{k} * pt.p, n)) / n) /
                  std::sqrt(static_cast<double>(n));
  }
  const Complex q_p = momentum(pt.q);  // <q|p>
  const Complex p_rho_q = momentum.dot(rho.matrix().col(pt.q));
  return q_p * p_rho_q;
}

double husimi_direct(const DensityOperator& rho, const PureState& alpha) {
  if (alpha.dim() != rho.dim()) throw DimensionMismatch("coherent state dimension differs from rho");
  const Vector& a = alpha.amplitudes();
  return a.dot(rho.matrix() * a).real() / rho.dim();
}

std::pair<int, int> classical_cat_map(HilbertDim dim, CatParams params, int q, int p) {
  const std::int64_t m = dim.wigner_size();
  const std::int64_t a = params.a;
  const std::int64_t b = params.b;
  return {static_cast<int>(mod(b * q + p, m)), static_cast<int>(mod((a * b - 1) * q + a * p, m))};
}

std::pair<double, double> harper_step(double q, double p, double gamma) {
  auto wrap = [](double x) {
    x -= std::floor(x);
    return x >= 1.0 ? 0.0 : x;
  };
  const double q_next = wrap(q - gamma * std::sin(kTwoPi * p));
  const double p_next = wrap(p + gamma * std::sin(kTwoPi * q_next));
  return {q_next, p_next};
}

double harper_energy(double q, double p) {
  const double sq = std::sin(kPi * q);
  const double sp = std::sin(kPi * p);
  return 0.5 * (sq * sq + sp * sp);
}

}  // namespace phasetomo
