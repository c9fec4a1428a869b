#include "qfric/quad.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace qfric::quad::detail {

namespace {

Rule build_gk21() {
  using boost::math::quadrature::gauss;
  using boost::math::quadrature::gauss_kronrod;
  const auto& kx = gauss_kronrod<double, 21>::abscissa();  // non-negative half, ascending from 0
  const auto& kw = gauss_kronrod<double, 21>::weights();
  const auto& gx = gauss<double, 10>::abscissa();
  const auto& gw = gauss<double, 10>::weights();

  auto gauss_weight = [&](double x) {
    for (std::size_t j = 0; j < gx.size(); ++j)
      if (std::abs(gx[j] - x) < 1e-14) return gw[j];
    return 0.0;
  };

  Rule r;
  std::size_t i = 0;
  for (std::size_t j = kx.size(); j-- > 1;) {  // negative side
    r.x[i] = -kx[j];
    r.wk[i] = kw[j];
    r.wg[i] = gauss_weight(kx[j]);
    ++i;
  }
  for (std::size_t j = 0; j < kx.size(); ++j) {
    r.x[i] = kx[j];
    r.wk[i] = kw[j];
    r.wg[i] = gauss_weight(kx[j]);
    ++i;
  }
  return r;
}

}  // namespace

const Rule& gk21() {
  static const Rule rule = build_gk21();
  return rule;
}

}  // namespace qfric::quad::detail
