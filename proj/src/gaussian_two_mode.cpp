#include "vet/gaussian_two_mode.hpp"

#include "vet/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace vet {

double det2(const Mat2& m)
{
    return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

double det4(const Mat4& m)
{
    // Laplace expansion along the first two rows.
    auto top = [&](int j, int k) { return m[0][j] * m[1][k] - m[0][k] * m[1][j]; };
    auto bottom = [&](int j, int k) { return m[2][j] * m[3][k] - m[2][k] * m[3][j]; };
    return top(0, 1) * bottom(2, 3) - top(0, 2) * bottom(1, 3) + top(0, 3) * bottom(1, 2)
           + top(1, 2) * bottom(0, 3) - top(1, 3) * bottom(0, 2) + top(2, 3) * bottom(0, 1);
}

Mat4 symplectic_form()
{
    Mat4 omega{};
    omega[0][1] = 1.0;
    omega[1][0] = -1.0;
    omega[2][3] = 1.0;
    omega[3][2] = -1.0;
    return omega;
}

TwoModeCovariance::TwoModeCovariance(const Mat4& entries, double box_size, int dimension)
    : entries_(entries), box_size_(box_size), dimension_(dimension)
{
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (entries_[i][j] != entries_[j][i])
                throw std::invalid_argument("TwoModeCovariance: matrix is not symmetric");
    if (!(box_size >= 0.0))
        throw std::invalid_argument("TwoModeCovariance: box size must be non-negative");
    if (dimension < 1)
        throw std::invalid_argument("TwoModeCovariance: dimension must be at least 1");
}

TwoModeCovariance TwoModeCovariance::from_components(const CovarianceComponents& k, double box_size,
                                                     int dimension)
{
    const double w = std::pow(box_size, 2 * dimension);
    Mat4 m{};
    m[0][0] = k.a;
    m[1][1] = w * k.b;
    m[2][2] = k.a_prime;
    m[3][3] = w * k.b_prime;
    m[0][2] = m[2][0] = k.c;
    m[1][3] = m[3][1] = w * k.d;
    return TwoModeCovariance(m, box_size, dimension);
}

Mat2 TwoModeCovariance::block(int row, int col) const
{
    return {{{entries_[row][col], entries_[row][col + 1]},
             {entries_[row + 1][col], entries_[row + 1][col + 1]}}};
}

double TwoModeCovariance::sigma_tilde() const
{
    return det2(block_a()) + det2(block_b()) - 2.0 * det2(block_g());
}

double simon_f(const TwoModeCovariance& v)
{
    return v.sigma_tilde() - (0.25 + 4.0 * v.det());
}

double simon_f_closed(const CovarianceComponents& k, double box_size, int dimension)
{
    const double w = std::pow(box_size, 2 * dimension);
    const double quadratic = k.a * k.b + k.a_prime * k.b_prime - 2.0 * k.c * k.d;
    const double quartic = k.a * k.a_prime * k.b * k.b_prime - k.a * k.a_prime * k.d * k.d
                           - k.c * k.c * k.b * k.b_prime + k.c * k.c * k.d * k.d;
    return -0.25 + w * quadratic - 4.0 * w * w * quartic;
}

PtSpectrum symplectic_spectrum_pt(const TwoModeCovariance& v)
{
    const double delta = v.sigma_tilde();
    const double det = v.det();
    double disc = delta * delta - 4.0 * det;
    const double scale = std::max({delta * delta, std::abs(4.0 * det), std::numeric_limits<double>::min()});

    if (disc < -1e-12 * scale) {
        const double magnitude = std::sqrt(std::sqrt(std::abs(det)));
        std::ostringstream msg;
        msg << "symplectic_spectrum_pt: complex spectrum (seralian " << delta << ", det " << det << ")";
        throw SpectrumError(msg.str(), magnitude, magnitude);
    }
    disc = std::max(disc, 0.0);
    const double root = std::sqrt(disc);

    double plus_sq = 0.5 * (delta + root);
    double minus_sq = 0.5 * (delta - root);
    if (plus_sq > 0.0)
        minus_sq = det / plus_sq; // avoids cancellation in delta - root
    if (plus_sq < 0.0 || minus_sq < 0.0) {
        std::ostringstream msg;
        msg << "symplectic_spectrum_pt: negative squared eigenvalue (seralian " << delta << ", det "
            << det << ")";
        throw SpectrumError(msg.str(), std::sqrt(std::abs(minus_sq)), std::sqrt(std::abs(plus_sq)));
    }
    return {std::sqrt(minus_sq), std::sqrt(plus_sq)};
}

double negativity_blocks(const CovarianceComponents& k, double box_size, int dimension,
                        NegativityConvention convention)
{
    constexpr double tol = 1e-12;
    if (std::abs(k.a - k.a_prime) > tol * std::max(1.0, std::abs(k.a))
        || std::abs(k.b - k.b_prime) > tol * std::max(1.0, std::abs(k.b)))
        throw AsymmetricStateError("negativity_blocks: requires a = a' and b = b'");

    const double scale = convention == NegativityConvention::vacuum_half ? 2.0 : 1.0;
    const double w = std::pow(box_size, 2 * dimension);
    const double denom = w * scale * (k.a - std::abs(k.c)) * scale * (k.b - std::abs(k.d));
    if (denom == 0.0)
        return std::numeric_limits<double>::infinity();
    return std::max(0.0, 1.0 / denom - 1.0);
}

double negativity_standard(double nu_minus)
{
    if (nu_minus <= 0.0)
        return std::numeric_limits<double>::infinity();
    return std::max(0.0, (1.0 - 2.0 * nu_minus) / (2.0 * nu_minus));
}

PhysicalityReport physicality_check(const TwoModeCovariance& v, double tolerance)
{
    const Mat4 omega = symplectic_form();
    Eigen::Matrix4cd h;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            h(i, j) = std::complex<double>(v(i, j), 0.5 * omega[i][j]);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(h, Eigen::EigenvaluesOnly);
    PhysicalityReport report;
    report.min_eigenvalue = solver.eigenvalues().minCoeff();
    report.physical = report.min_eigenvalue >= -tolerance;
    return report;
}

std::string_view to_string(Verdict v)
{
    return v == Verdict::ppt_separable ? "PPT-separable" : "NPT-entangled";
}

namespace {

bool symmetric_standard_form(const TwoModeCovariance& v)
{
    return v(0, 1) == 0.0 && v(0, 3) == 0.0 && v(1, 2) == 0.0 && v(2, 3) == 0.0
           && v(0, 0) == v(2, 2) && v(1, 1) == v(3, 3);
}

} // namespace

SeparabilityReport analyze(const TwoModeCovariance& v)
{
    SeparabilityReport r;
    r.f_value = simon_f(v);
    r.sigma_tilde = v.sigma_tilde();
    r.det_v = v.det();
    try {
        r.spectrum = symplectic_spectrum_pt(v);
        r.nu_minus_magnitude = r.spectrum->nu_minus;
        r.nu_plus_magnitude = r.spectrum->nu_plus;
        r.negativity_standard = negativity_standard(r.spectrum->nu_minus);
    } catch (const SpectrumError& e) {
        r.nu_minus_magnitude = e.nu_minus_magnitude();
        r.nu_plus_magnitude = e.nu_plus_magnitude();
    }
    if (symmetric_standard_form(v)) {
        // Momentum entries already carry the L^{2D} weight.
        CovarianceComponents k{v(0, 0), v(1, 1), v(0, 2), v(1, 3), v(2, 2), v(3, 3)};
        r.negativity_blocks = negativity_blocks(k, 1.0, 1);
    }
    r.physicality = physicality_check(v);
    r.verdict = r.f_value <= 0.0 ? Verdict::ppt_separable : Verdict::npt_entangled;
    return r;
}

} // namespace vet
