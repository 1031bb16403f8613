#include "wlab/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

#include "wlab/errors.hpp"

namespace wlab::quad {

Result integrate(const RealToComplex& f, double a, double b, const Tolerances& tol) {
  double err = 0.0;
  const cplx v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, a, b, static_cast<unsigned>(tol.quad_max_depth), tol.quad_target, &err);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw QuadratureError("non-finite quadrature result");
  return {v, err};
}

Result path_integral(const ComplexFn& f, const std::function<cplx(double)>& z,
                     const std::function<cplx(double)>& dz, const Tolerances& tol) {
  return integrate([&](double t) { return f(z(t)) * dz(t); }, 0.0, 1.0, tol);
}

Result segment(const ComplexFn& f, cplx a, cplx b, const Tolerances& tol) {
  const cplx d = b - a;
  return integrate([&](double t) { return f(a + t * d) * d; }, 0.0, 1.0, tol);
}

cplx circle_trapezoid(const ComplexFn& f, cplx c, double r, int n) {
  cplx sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * pi * k / n;
    const cplx e = std::polar(1.0, t);
    sum += f(c + r * e) * (I * r * e);
  }
  return sum * (2.0 * pi / n);
}

cplx circle_richardson(const ComplexFn& f, cplx c, double r, int n) {
  const cplx fine = circle_trapezoid(f, c, r, n);
  const cplx coarse = circle_trapezoid(f, c, r, n / 2);
  return (4.0 * fine - coarse) / 3.0;
}

double tanh_sinh_unit(const std::function<double(double, double)>& f, int levels, double* error) {
  boost::math::quadrature::tanh_sinh<double> integrator(static_cast<std::size_t>(levels));
  double err = 0.0;
  double l1 = 0.0;
  std::size_t used = 0;
  const double v = integrator.integrate(f, 0.0, 1.0, std::sqrt(std::numeric_limits<double>::epsilon()),
                                        &err, &l1, &used);
  if (!std::isfinite(v)) throw QuadratureError("tanh-sinh did not converge");
  if (error) *error = err;
  return v;
}

}  // namespace wlab::quad
