#pragma once

// Cancellation-safe elementary pieces shared by the cylinder Green's function
// and the separability coefficients.

#include <complex>

namespace vet::stable {

inline constexpr double pi = 3.14159265358979323846;

// Below this magnitude the Taylor series paths are used.
inline constexpr double series_threshold = 0.5;

// sin(x) - x
double sin_minus_x(double x);

// sinh(x) - x
double sinh_minus_x(double x);

// 1/x^2 - 1/sin^2(x), finite as x -> 0 (limit -1/3).
double inv_sq_minus_csc_sq(double x);

// ln(x / sinh x), with value 0 at x = 0; valid for arbitrarily large x.
double log_x_csch_x(double x);

// ln|sin(x + i y)|, overflow-free for large |y|.
double log_abs_sin(double x, double y);

// ln((sin^2 x + sinh^2 y) / (x^2 + y^2)) = 2 ln|sin(w)/w| with w = x + i y.
// Finite at w = 0 (value 0).
double log_sinc_sq_ratio(double x, double y);

// ln|sin(w)/w| and Arg(sin(w)/w) for complex w, finite at w = 0.
double log_abs_sinc(std::complex<double> w);
double arg_sinc(std::complex<double> w);

// Arg(sin(x + i y)) without forming cosh/sinh.
double arg_sin(double x, double y);

} // namespace vet::stable
