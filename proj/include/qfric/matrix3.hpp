#pragma once

#include <array>
#include <complex>
#include <cstddef>

namespace qfric {

using cplx = std::complex<double>;

enum class Axis { x = 0, y = 1, z = 2 };

/// 3x3 complex matrix with rows/columns ordered (x, y, z).
class M3C {
 public:
  constexpr M3C() = default;
  constexpr explicit M3C(const std::array<cplx, 9>& rowmajor) : a_(rowmajor) {}

  static M3C identity();
  static M3C diag(cplx xx, cplx yy, cplx zz);

  cplx& operator()(std::size_t i, std::size_t j) { return a_[3 * i + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[3 * i + j]; }
  cplx& operator()(Axis i, Axis j) { return (*this)(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); }
  const cplx& operator()(Axis i, Axis j) const {
    return (*this)(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }

  const std::array<cplx, 9>& data() const { return a_; }

  M3C& operator+=(const M3C& o);
  M3C& operator-=(const M3C& o);
  M3C& operator*=(cplx s);

  M3C transpose() const;
  M3C adjoint() const;
  M3C conj() const;
  cplx trace() const { return a_[0] + a_[4] + a_[8]; }
  cplx det() const;
  double norm() const;  // Frobenius
  double max_abs() const;

  friend bool operator==(const M3C&, const M3C&) = default;

 private:
  std::array<cplx, 9> a_{};
};

M3C operator+(M3C a, const M3C& b);
M3C operator-(M3C a, const M3C& b);
M3C operator-(const M3C& a);
M3C operator*(const M3C& a, const M3C& b);
M3C operator*(cplx s, M3C a);
M3C operator*(M3C a, cplx s);

/// so(3) generator, [L_i]_jk = -i eps_ijk.
M3C generator(Axis axis);

M3C sym_part(const M3C& m);
M3C asym_part(const M3C& m);
M3C re_part(const M3C& m);  // elementwise
M3C im_part(const M3C& m);  // elementwise, returned as a real-valued matrix

/// (M - M^dagger) / (2i). Always Hermitian.
M3C im_dagger(const M3C& m);

/// sum_jk A_jk B_kj
cplx trace_product(const M3C& a, const M3C& b);

M3C commutator(const M3C& a, const M3C& b);

/// Throws std::domain_error when |det| <= rel_singular * scale^3, scale = max |entry|.
M3C inverse(const M3C& m, double rel_singular = 1e-14);

/// Eigenvalues of the Hermitian part of m, ascending. Closed-form trigonometric solution.
std::array<double, 3> hermitian_eigenvalues(const M3C& m);

}  // namespace qfric
