#pragma once

#include <functional>

#include "wlab/config.hpp"

namespace wlab::quad {

struct Result {
  cplx value;
  double error_estimate = 0.0;
};

using RealToComplex = std::function<cplx(double)>;
using ComplexFn = std::function<cplx(cplx)>;

// Adaptive 61-point Gauss-Kronrod on [a, b].
Result integrate(const RealToComplex& f, double a, double b, const Tolerances& tol = {});

// Integral of f(z) dz along z(t), t in [0, 1], with z'(t) supplied.
Result path_integral(const ComplexFn& f, const std::function<cplx(double)>& z,
                     const std::function<cplx(double)>& dz, const Tolerances& tol = {});

// Straight segment from a to b.
Result segment(const ComplexFn& f, cplx a, cplx b, const Tolerances& tol = {});

// Counter-clockwise circle |z - c| = r, trapezoid rule with n nodes.
cplx circle_trapezoid(const ComplexFn& f, cplx c, double r, int n);

// Trapezoid with n and n/2 nodes combined by one Richardson step.
cplx circle_richardson(const ComplexFn& f, cplx c, double r, int n);

// Tanh-sinh on [0, 1]. f(x, xc) receives xc = distance to the nearer
// endpoint, signed as in Boost (negative near 0, positive near 1) so that
// 1 - x can be formed without cancellation.
double tanh_sinh_unit(const std::function<double(double, double)>& f, int levels, double* error = nullptr);

}  // namespace wlab::quad
