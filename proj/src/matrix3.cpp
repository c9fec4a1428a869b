#include "qfric/matrix3.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qfric/constants.hpp"

namespace qfric {

M3C M3C::identity() { return diag(1.0, 1.0, 1.0); }

M3C M3C::diag(cplx xx, cplx yy, cplx zz) {
  M3C m;
  m(0, 0) = xx;
  m(1, 1) = yy;
  m(2, 2) = zz;
  return m;
}

M3C& M3C::operator+=(const M3C& o) {
  for (std::size_t i = 0; i < 9; ++i) a_[i] += o.a_[i];
  return *this;
}

M3C& M3C::operator-=(const M3C& o) {
  for (std::size_t i = 0; i < 9; ++i) a_[i] -= o.a_[i];
  return *this;
}

M3C& M3C::operator*=(cplx s) {
  for (auto& v : a_) v *= s;
  return *this;
}

M3C M3C::transpose() const {
  M3C t;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
  return t;
}

M3C M3C::adjoint() const { return transpose().conj(); }

M3C M3C::conj() const {
  M3C c = *this;
  for (auto& v : c.a_) v = std::conj(v);
  return c;
}

cplx M3C::det() const {
  const auto& m = *this;
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

double M3C::norm() const {
  double s = 0.0;
  for (const auto& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

double M3C::max_abs() const {
  double s = 0.0;
  for (const auto& v : a_) s = std::max(s, std::abs(v));
  return s;
}

M3C operator+(M3C a, const M3C& b) { return a += b; }
M3C operator-(M3C a, const M3C& b) { return a -= b; }
M3C operator-(const M3C& a) { return cplx(-1.0) * a; }

M3C operator*(const M3C& a, const M3C& b) {
  M3C c;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

M3C operator*(cplx s, M3C a) { return a *= s; }
M3C operator*(M3C a, cplx s) { return a *= s; }

namespace {

int levi_civita(std::size_t i, std::size_t j, std::size_t k) {
  if (i == j || j == k || i == k) return 0;
  // even permutations of (0,1,2)
  if ((i == 0 && j == 1) || (i == 1 && j == 2) || (i == 2 && j == 0)) return 1;
  return -1;
}

}  // namespace

M3C generator(Axis axis) {
  const auto i = static_cast<std::size_t>(axis);
  M3C m;
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k) m(j, k) = cplx(0.0, -static_cast<double>(levi_civita(i, j, k)));
  return m;
}

M3C sym_part(const M3C& m) { return 0.5 * (m + m.transpose()); }
M3C asym_part(const M3C& m) { return 0.5 * (m - m.transpose()); }

M3C re_part(const M3C& m) {
  M3C r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = m(i, j).real();
  return r;
}

M3C im_part(const M3C& m) {
  M3C r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = m(i, j).imag();
  return r;
}

M3C im_dagger(const M3C& m) { return cplx(0.0, -0.5) * (m - m.adjoint()); }

cplx trace_product(const M3C& a, const M3C& b) {
  cplx s = 0.0;
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k) s += a(j, k) * b(k, j);
  return s;
}

M3C commutator(const M3C& a, const M3C& b) { return a * b - b * a; }

M3C inverse(const M3C& m, double rel_singular) {
  const cplx d = m.det();
  const double scale = m.max_abs();
  if (!(std::abs(d) > rel_singular * scale * scale * scale)) {
    throw std::domain_error("singular 3x3 matrix (|det| = " + std::to_string(std::abs(d)) + ")");
  }
  M3C inv;
  inv(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  inv(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
  inv(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
  inv(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
  inv(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
  inv(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
  inv(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
  inv(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
  inv(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return inv * (1.0 / d);
}

std::array<double, 3> hermitian_eigenvalues(const M3C& m) {
  const M3C h = 0.5 * (m + m.adjoint());
  const double a00 = h(0, 0).real(), a11 = h(1, 1).real(), a22 = h(2, 2).real();
  const double p1 = std::norm(h(0, 1)) + std::norm(h(0, 2)) + std::norm(h(1, 2));
  const double q = (a00 + a11 + a22) / 3.0;
  const double p2 = (a00 - q) * (a00 - q) + (a11 - q) * (a11 - q) + (a22 - q) * (a22 - q) + 2.0 * p1;
  if (p2 == 0.0) return {q, q, q};
  const double p = std::sqrt(p2 / 6.0);
  const M3C b = (1.0 / p) * (h - q * M3C::identity());
  const double r = std::clamp(0.5 * b.det().real(), -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e_hi = q + 2.0 * p * std::cos(phi);
  const double e_lo = q + 2.0 * p * std::cos(phi + 2.0 * constants::pi / 3.0);
  const double e_mid = 3.0 * q - e_hi - e_lo;
  std::array<double, 3> e{e_lo, e_mid, e_hi};
  std::sort(e.begin(), e.end());
  return e;
}

}  // namespace qfric
