#pragma once

// Two-mode Gaussian covariance matrices in the ordering (Phi, Pi, Phi', Pi'),
// with [Phi, Pi] = i so that the vacuum covariance is I/2.

#include "vet/greens_cylinder.hpp"

#include <array>
#include <optional>
#include <string_view>

namespace vet {

using Mat2 = std::array<std::array<double, 2>, 2>;
using Mat4 = std::array<std::array<double, 4>, 4>;

double det2(const Mat2& m);
double det4(const Mat4& m);

// Symplectic form: Omega = J (+) J with J = [[0, 1], [-1, 0]].
Mat4 symplectic_form();

class TwoModeCovariance {
public:
    // Throws std::invalid_argument unless entries are exactly symmetric,
    // box_size >= 0 and dimension >= 1.
    TwoModeCovariance(const Mat4& entries, double box_size = 1.0, int dimension = 1);

    // Standard block form: A = diag(a, L^{2D} b), B = diag(a', L^{2D} b'),
    // G = diag(c, L^{2D} d).
    static TwoModeCovariance from_components(const CovarianceComponents& k, double box_size,
                                             int dimension = 1);

    const Mat4& entries() const { return entries_; }
    double operator()(int i, int j) const { return entries_[i][j]; }
    double box_size() const { return box_size_; }
    int dimension() const { return dimension_; }

    Mat2 block_a() const { return block(0, 0); }
    Mat2 block_b() const { return block(2, 2); }
    Mat2 block_g() const { return block(0, 2); }

    double det() const { return det4(entries_); }

    // det A + det B - 2 det G, the seralian of the partial transpose.
    double sigma_tilde() const;

private:
    Mat2 block(int row, int col) const;

    Mat4 entries_;
    double box_size_;
    int dimension_;
};

// Simon quantity from the matrix: sigma_tilde - 1/4 - 4 det V. F <= 0 is PPT.
double simon_f(const TwoModeCovariance& v);

// The same quantity expanded in the scalars, without assembling a matrix.
double simon_f_closed(const CovarianceComponents& k, double box_size, int dimension = 1);

struct PtSpectrum {
    double nu_minus = 0.0;
    double nu_plus = 0.0;
};

// Symplectic eigenvalues of the partially transposed covariance (momentum of
// the second mode flipped). Throws SpectrumError when the squared eigenvalues
// are complex or negative.
PtSpectrum symplectic_spectrum_pt(const TwoModeCovariance& v);

enum class NegativityConvention {
    vacuum_half, // covariance given with vacuum I/2; rescaled by 2 first
    unscaled,    // formula applied to the entries as given
};

// max{0, 1/(L^{2D}(a-|c|)(b-|d|)) - 1} for states with a = a', b = b'.
// Throws AsymmetricStateError otherwise.
double negativity_blocks(const CovarianceComponents& k, double box_size, int dimension = 1,
                        NegativityConvention convention = NegativityConvention::vacuum_half);

// max{0, (1 - 2 nu_minus) / (2 nu_minus)}.
double negativity_standard(double nu_minus);

struct PhysicalityReport {
    double min_eigenvalue = 0.0; // of V + i Omega / 2
    bool physical = false;       // min_eigenvalue >= -tolerance
};

PhysicalityReport physicality_check(const TwoModeCovariance& v, double tolerance = 1e-10);

enum class Verdict { ppt_separable, npt_entangled };

std::string_view to_string(Verdict v);

struct SeparabilityReport {
    double f_value = 0.0;
    double sigma_tilde = 0.0;
    double det_v = 0.0;
    // Present when the partial-transpose spectrum is real and positive;
    // otherwise the magnitudes below are the only spectral information.
    std::optional<PtSpectrum> spectrum;
    double nu_minus_magnitude = 0.0;
    double nu_plus_magnitude = 0.0;
    std::optional<double> negativity_blocks;
    std::optional<double> negativity_standard;
    PhysicalityReport physicality;
    Verdict verdict = Verdict::ppt_separable;
};

// verdict follows the sign of F. negativity_blocks is filled only when the
// matrix has the symmetric standard form (a = a', b = b', diagonal blocks).
SeparabilityReport analyze(const TwoModeCovariance& v);

} // namespace vet
