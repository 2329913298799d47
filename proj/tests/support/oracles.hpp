// Reference implementations used only by the test suite: a fixed-grid Simpson
// integrator, a deterministic RNG, dense 4x4 helpers (LAPACK eigenvalues,
// index-swap partial transpose, Pauli tensor products).
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <lapacke.h>

namespace oracle {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Composite Simpson rule on [0, pi] with n intervals (n even). Slow but has a
// completely independent error profile from the adaptive Gauss-Kronrod code.
template <typename F>
double simpson_0_pi(F&& f, int n = 200000) {
  if (n % 2 != 0) ++n;
  const double h = kPi / n;
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < n; i += 2) odd += f(i * h);
  for (int i = 2; i < n; i += 2) even += f(i * h);
  return (f(0.0) + f(kPi) + 4.0 * odd + 2.0 * even) * h / 3.0;
}

// SplitMix64: tiny, seedable, identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [lo, hi)
  double uniform(double lo, double hi) {
    const double u = (next() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::uint64_t state_;
};

using Mat4 = std::array<std::complex<double>, 16>;

// Eigenvalues of a 4x4 Hermitian matrix via LAPACK zheev, ascending.
inline std::array<double, 4> hermitian_eigenvalues(Mat4 m) {
  std::array<double, 4> w{};
  const lapack_int info = LAPACKE_zheev(
      LAPACK_ROW_MAJOR, 'N', 'U', 4, reinterpret_cast<lapack_complex_double*>(m.data()), 4,
      w.data());
  if (info != 0) throw std::runtime_error("zheev failed");
  return w;
}

// Trace norm of a Hermitian 4x4 matrix: sum of |eigenvalues|.
inline double trace_norm_dense(const Mat4& m) {
  double s = 0.0;
  for (double w : hermitian_eigenvalues(m)) s += std::abs(w);
  return s;
}

// Partial transpose on the first qubit by brute-force index swap:
// rho'[(i,j),(k,l)] = rho[(k,j),(i,l)] with row = 2*i + j, col = 2*k + l.
inline Mat4 partial_transpose_dense(const Mat4& rho) {
  Mat4 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          out[(2 * i + j) * 4 + (2 * k + l)] = rho[(2 * k + j) * 4 + (2 * i + l)];
  return out;
}

// Pauli matrices and two-site tensor products, for recovering correlators
// from a density matrix by direct trace.
inline Mat4 kron2(const std::array<std::complex<double>, 4>& a,
                  const std::array<std::complex<double>, 4>& b) {
  Mat4 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          out[(2 * i + k) * 4 + (2 * j + l)] = a[i * 2 + j] * b[k * 2 + l];
  return out;
}

inline const std::array<std::complex<double>, 4>& pauli(char axis) {
  using C = std::complex<double>;
  static const std::array<C, 4> x{C(0), C(1), C(1), C(0)};
  static const std::array<C, 4> y{C(0), C(0, -1), C(0, 1), C(0)};
  static const std::array<C, 4> z{C(1), C(0), C(0), C(-1)};
  static const std::array<C, 4> id{C(1), C(0), C(0), C(1)};
  switch (axis) {
    case 'x': return x;
    case 'y': return y;
    case 'z': return z;
    default: return id;
  }
}

inline std::complex<double> trace_product(const Mat4& a, const Mat4& b) {
  std::complex<double> s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) s += a[i * 4 + k] * b[k * 4 + i];
  return s;
}

// <(sigma^axis/2) x (sigma^axis/2)> * 4 = <sigma sigma>; pass 'i' for identity.
inline double spin_expectation(const Mat4& rho, char first, char second) {
  const Mat4 op = kron2(pauli(first), pauli(second));
  return 0.25 * trace_product(op, rho).real();
}

}  // namespace oracle
