#pragma once

#include <functional>

namespace mgc::quad {

// Tanh-sinh quadrature on a finite interval. Handles integrable
// endpoint singularities. rel_tol is relative to the integral scale,
// with abs_tol as a floor.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, double abs_tol = 1e-300);

// Exp-sinh quadrature on (a, inf).
double integrate_semi_inf(const std::function<double(double)>& f, double a,
                          double rel_tol = 1e-10, double abs_tol = 1e-300);

}  // namespace mgc::quad
