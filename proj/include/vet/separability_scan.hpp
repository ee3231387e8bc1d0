#pragma once

// Small-box expansion F = -1/4 + L^2 f2 + L^4 f4 of the Simon quantity for
// the cylinder (R = 1), maximization of its coefficients over (dx, M), the
// resulting global bound, and dense surface scans.
//
// dx is read as a position on the circle and reduced to the circle distance
// min(dx, 1 - dx), so every function here is symmetric about dx = 1/2.

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vet {

// Near-edge guard for dx grids; dx -> 0 and dx -> 1 are coincidence limits.
inline constexpr double dx_edge_guard = 1e-4;

double f2(double delta_x, double big_m);
double f4(double delta_x, double big_m);

// -1/4 + L^2 f2 + L^4 f4; exactly -1/4 at L = 0.
double f_expansion(double delta_x, double big_m, double box_size);

struct AxisRange {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t count = 2;

    // count == 1 yields {lo}; otherwise count evenly spaced points lo..hi.
    std::vector<double> points() const;
};

struct ScanGrid {
    AxisRange delta_x{0.01, 0.99, 99};
    AxisRange big_m{0.0, 3.0, 60};
    std::vector<double> l_values{0.01};

    // Throws std::invalid_argument on an empty, inverted, or out-of-domain grid.
    void validate() const;

    // Domain searched by default for the coefficient maxima.
    static ScanGrid maximization_default();
};

enum class Target { f2, f4 };

std::string to_string(Target t);

struct RefinementStep {
    double step_dx = 0.0;
    double step_m = 0.0;
    double best = 0.0;
};

struct MaximumReport {
    double delta_x = 0.0;
    double big_m = 0.0;
    double value = 0.0;
    std::vector<RefinementStep> history; // coarse grid first
    bool plateau = false;                // some round did not improve the value
};

using Objective = std::function<double(double, double)>;

// Coarse grid evaluation, then `refinements` rounds that shrink the window
// four-fold around the incumbent. When the dx range straddles 1/2 only the
// lower half is searched.
MaximumReport maximize(const Objective& target, const ScanGrid& grid, int refinements = 6);
MaximumReport maximize(Target target, const ScanGrid& grid, int refinements = 6);

struct BoundRow {
    double box_size = 0.0;
    double bound = 0.0;        // -1/4 + c2 L^2 + c4 L^4
    double literal_bound = 0.0; // same with the rounded coefficients 0.134, 0.0164
    double worst_margin = 0.0;  // max over the grid of F - bound (must be <= 0)
    double worst_dx = 0.0;
    double worst_m = 0.0;
    double literal_worst_margin = 0.0;
};

struct BoundCertificate {
    double coefficient_f2 = 0.0;
    double coefficient_f4 = 0.0;
    std::vector<BoundRow> rows;
    bool holds = false;         // every margin <= 0 and every bound < 0
    bool literal_holds = false; // same with the rounded coefficients
};

struct BoundViolation {
    double box_size, delta_x, big_m, f_value, bound;
};

class CertificateError : public std::runtime_error {
public:
    CertificateError(const std::string& what, BoundCertificate certificate,
                     std::vector<BoundViolation> violations)
        : std::runtime_error(what), certificate_(std::move(certificate)),
          violations_(std::move(violations)) {}

    const BoundCertificate& certificate() const { return certificate_; }
    const std::vector<BoundViolation>& violations() const { return violations_; }

private:
    BoundCertificate certificate_;
    std::vector<BoundViolation> violations_;
};

// Checks F <= -1/4 + max(f2) L^2 + max(f4) L^4 at every grid point and that
// the bound is negative, for each L in (0, 1/2). Throws std::invalid_argument
// for L outside that range and CertificateError on violation.
BoundCertificate bound_certificate(const std::vector<double>& l_values, const ScanGrid& grid,
                                   unsigned threads = 0);

struct ScanRow {
    double delta_x, big_m, box_size, f_value, f2, f4, negativity;
};

// Rows ordered L outermost, then dx, then M. The output is identical for any
// thread count (0 = hardware concurrency).
std::vector<ScanRow> scan_surface(const ScanGrid& grid, unsigned threads = 0);

} // namespace vet
