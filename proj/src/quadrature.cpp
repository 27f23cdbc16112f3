#include "tra/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace tra {

QuadratureResult integrate(const std::function<double(double)>& f, double lo,
                           double hi, double rel_tol, unsigned max_depth) {
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, lo, hi, max_depth, rel_tol, &error);
  return {value, error};
}

}  // namespace tra
