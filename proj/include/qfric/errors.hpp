#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace qfric {

/// A response function evaluated on a pole, or outside its domain.
class DomainError : public std::domain_error {
 public:
  DomainError(const std::string& what, double omega) : std::domain_error(what), omega_(omega) {}
  double omega() const { return omega_; }

 private:
  double omega_;
};

/// Adaptive quadrature ran out of subdivisions.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& where, double rel_err)
      : std::runtime_error(where + ": quadrature did not converge (rel err " + format(rel_err) + ")"),
        rel_err_(rel_err) {}
  static std::string format(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
  }
  double rel_err() const { return rel_err_; }

 private:
  double rel_err_;
};

/// The dressed polarizability matrix is singular (vanishing linewidth).
class ResonanceError : public std::runtime_error {
 public:
  explicit ResonanceError(double omega)
      : std::runtime_error("singular dressed polarizability at omega = " + QuadratureError::format(omega) + " rad/s"),
        omega_(omega) {}
  double omega() const { return omega_; }

 private:
  double omega_;
};

/// Physically inconsistent intermediate result (e.g. a non-positive spectrum).
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qfric
