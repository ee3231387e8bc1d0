#include "vet/stable_math.hpp"

#include <cmath>

namespace vet::stable {

namespace {

constexpr int series_terms = 12;

} // namespace

double sin_minus_x(double x)
{
    if (std::abs(x) >= series_threshold)
        return std::sin(x) - x;
    // -x^3/3! + x^5/5! - ...
    const double x2 = x * x;
    double term = x;
    double sum = 0.0;
    for (int k = 1; k <= series_terms; ++k) {
        term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
        sum += term;
    }
    return sum;
}

double sinh_minus_x(double x)
{
    if (std::abs(x) >= series_threshold)
        return std::sinh(x) - x;
    const double x2 = x * x;
    double term = x;
    double sum = 0.0;
    for (int k = 1; k <= series_terms; ++k) {
        term *= x2 / ((2.0 * k) * (2.0 * k + 1.0));
        sum += term;
    }
    return sum;
}

double inv_sq_minus_csc_sq(double x)
{
    if (x == 0.0)
        return -1.0 / 3.0;
    const double s = std::sin(x);
    return sin_minus_x(x) * (s + x) / (x * x * s * s);
}

double log_x_csch_x(double x)
{
    x = std::abs(x);
    if (x == 0.0)
        return 0.0;
    if (x < series_threshold)
        return -std::log1p(sinh_minus_x(x) / x);
    if (x > 20.0)
        return std::log(x) - (x - std::log(2.0) + std::log1p(-std::exp(-2.0 * x)));
    return std::log(x / std::sinh(x));
}

double log_abs_sin(double x, double y)
{
    const double ay = std::abs(y);
    if (ay > 1.0) {
        const double e2 = std::exp(-2.0 * ay);
        const double s = std::sin(x);
        return ay - std::log(2.0) + 0.5 * std::log1p(4.0 * s * s * e2 - 2.0 * e2 + e2 * e2);
    }
    const double s = std::sin(x);
    const double sh = std::sinh(y);
    return 0.5 * std::log(s * s + sh * sh);
}

double arg_sin(double x, double y)
{
    return std::atan2(std::cos(x) * std::tanh(y), std::sin(x));
}

namespace {

// sin(w)/w - 1 by its Taylor series; only for |w| < series_threshold.
std::complex<double> sinc_minus_one(std::complex<double> w)
{
    const std::complex<double> w2 = w * w;
    std::complex<double> term = 1.0;
    std::complex<double> sum = 0.0;
    for (int k = 1; k <= series_terms; ++k) {
        term *= -w2 / ((2.0 * k) * (2.0 * k + 1.0));
        sum += term;
    }
    return sum;
}

} // namespace

double log_abs_sinc(std::complex<double> w)
{
    if (std::abs(w) < series_threshold) {
        const std::complex<double> e = sinc_minus_one(w);
        return 0.5 * std::log1p(2.0 * e.real() + std::norm(e));
    }
    return log_abs_sin(w.real(), w.imag()) - std::log(std::abs(w));
}

double arg_sinc(std::complex<double> w)
{
    if (std::abs(w) < series_threshold) {
        const std::complex<double> e = sinc_minus_one(w);
        return std::atan2(e.imag(), 1.0 + e.real());
    }
    return std::remainder(arg_sin(w.real(), w.imag()) - std::arg(w), 2.0 * pi);
}

double log_sinc_sq_ratio(double x, double y)
{
    return 2.0 * log_abs_sinc({x, y});
}

} // namespace vet::stable
