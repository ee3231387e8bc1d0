#include "vet/lattice_oracle.hpp"

#include "vet/errors.hpp"
#include "vet/greens_cylinder.hpp"
#include "vet/stable_math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace vet {

using stable::pi;

void LatticeSpec::validate() const
{
    if (sites < 4 || sites % 2 != 0)
        throw std::invalid_argument("LatticeSpec: sites must be even and at least 4");
    if (!(radius > 0.0))
        throw std::invalid_argument("LatticeSpec: radius must be positive");
    if (!(mass > 0.0))
        throw std::invalid_argument("LatticeSpec: mass must be positive (massless ring has a divergent zero mode)");
    if (beta && !(*beta > 0.0))
        throw std::invalid_argument("LatticeSpec: beta must be positive");
}

LatticeCovariance::LatticeCovariance(int sites, double spacing, std::vector<double> phi_phi,
                                     std::vector<double> pi_pi, std::vector<double> commutator)
    : sites_(sites), spacing_(spacing), phi_phi_(std::move(phi_phi)), pi_pi_(std::move(pi_pi)),
      commutator_(std::move(commutator))
{
}

LatticeCovariance thermal_covariance(const LatticeSpec& spec)
{
    spec.validate();
    const int n = spec.sites;
    const double eps = spec.spacing();

    std::vector<double> phi_weight(n), pi_weight(n), cosine(n);
    for (int k = 0; k < n; ++k) {
        const double s = std::sin(pi * k / n);
        const double omega = std::sqrt(spec.mass * spec.mass + 4.0 / (eps * eps) * s * s);
        const double occupation = spec.beta ? 1.0 / std::tanh(*spec.beta * omega / 2.0) : 1.0;
        phi_weight[k] = occupation / (2.0 * omega);
        pi_weight[k] = omega * occupation / 2.0;
        cosine[k] = std::cos(2.0 * pi * k / n);
    }

    std::vector<double> phi(n), mom(n), comm(n);
    const double norm = 1.0 / (n * eps);
    for (int s = 0; s <= n / 2; ++s) {
        double sp = 0.0, sm = 0.0, sc = 0.0;
        for (int k = 0; k < n; ++k) {
            const double c = cosine[static_cast<std::size_t>((static_cast<long long>(k) * s) % n)];
            sp += phi_weight[k] * c;
            sm += pi_weight[k] * c;
            sc += c;
        }
        phi[s] = norm * sp;
        mom[s] = norm * sm;
        comm[s] = norm * sc;
        if (s > 0) {
            phi[n - s] = phi[s];
            mom[n - s] = mom[s];
            comm[n - s] = comm[s];
        }
    }
    return LatticeCovariance(n, eps, std::move(phi), std::move(mom), std::move(comm));
}

namespace {

std::vector<int> snap_separations(const LatticeSpec& spec, std::span<const double> separations,
                                  std::optional<double> snap_tolerance)
{
    const double eps = spec.spacing();
    const double tol = snap_tolerance.value_or(0.5 * eps * (1.0 + 1e-12));
    std::vector<int> snapped;
    std::set<int> seen;
    for (double dx : separations) {
        if (!(dx > 0.0 && dx < spec.radius))
            throw ResolutionError("compare_continuum: separations must lie in (0, R)");
        const int s = static_cast<int>(std::lround(dx / eps));
        if (std::abs(dx - s * eps) > tol) {
            std::ostringstream msg;
            msg << "compare_continuum: dx = " << dx << " is " << std::abs(dx - s * eps)
                << " from the nearest site (tolerance " << tol << ")";
            throw ResolutionError(msg.str());
        }
        if (s % spec.sites == 0)
            throw ResolutionError("compare_continuum: separation snaps to the origin");
        if (!seen.insert(std::min(s, spec.sites - s)).second)
            throw ResolutionError("compare_continuum: two separations snap to the same site distance");
        snapped.push_back(s);
    }
    return snapped;
}

struct FieldDifference {
    int s1, s2;
    double lattice, massless, thermal;
};

std::vector<FieldDifference> field_differences(const LatticeSpec& spec, const LatticeCovariance& cov,
                                               const std::vector<int>& snapped)
{
    const double eps = spec.spacing();
    auto half_g = [&](int s, double big_m) {
        return 0.5 * hadamard_g({s * eps, 0.0, big_m, spec.radius}).value;
    };
    std::vector<FieldDifference> out;
    for (std::size_t i = 1; i < snapped.size(); ++i) {
        const int s1 = snapped[0];
        const int s2 = snapped[i];
        FieldDifference f{s1, s2, cov.phi_phi(s1) - cov.phi_phi(s2), half_g(s1, 0.0) - half_g(s2, 0.0), 0.0};
        // M = m beta -> infinity at zero temperature flattens the thermal form.
        if (spec.beta)
            f.thermal = half_g(s1, spec.mass * *spec.beta) - half_g(s2, spec.mass * *spec.beta);
        out.push_back(f);
    }
    return out;
}

double relative(double value, double reference)
{
    return std::abs(value - reference) / std::abs(reference);
}

} // namespace

DiscrepancyReport compare_continuum(const LatticeSpec& spec, std::span<const double> separations,
                                    std::optional<double> snap_tolerance)
{
    spec.validate();
    if (separations.size() < 2)
        throw std::invalid_argument("compare_continuum: needs at least two separations");

    LatticeSpec refined = spec;
    refined.sites = 2 * spec.sites;

    const std::vector<int> snapped = snap_separations(spec, separations, snap_tolerance);
    const std::vector<int> snapped_refined = snap_separations(refined, separations, std::nullopt);
    const LatticeCovariance cov = thermal_covariance(spec);
    const LatticeCovariance cov_refined = thermal_covariance(refined);
    const auto coarse = field_differences(spec, cov, snapped);
    const auto fine = field_differences(refined, cov_refined, snapped_refined);

    DiscrepancyReport report;
    report.sites = spec.sites;
    report.big_m = spec.beta ? spec.mass * *spec.beta : std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        SeparationPair p;
        p.delta_x_1 = separations[0];
        p.delta_x_2 = separations[i + 1];
        p.sites_1 = coarse[i].s1;
        p.sites_2 = coarse[i].s2;
        p.lattice_difference = coarse[i].lattice;
        p.continuum_massless = coarse[i].massless;
        p.continuum_thermal = coarse[i].thermal;
        p.relative_discrepancy = relative(coarse[i].lattice, coarse[i].massless);
        p.refined_discrepancy = relative(fine[i].lattice, fine[i].massless);
        p.convergence_ratio = p.refined_discrepancy / p.relative_discrepancy;
        p.thermal_discrepancy = std::abs(coarse[i].lattice - coarse[i].thermal) / std::abs(coarse[i].lattice);
        report.max_relative_discrepancy = std::max(report.max_relative_discrepancy, p.relative_discrepancy);
        report.max_refined_discrepancy = std::max(report.max_refined_discrepancy, p.refined_discrepancy);
        report.pairs.push_back(p);
    }
    const double eps = spec.spacing();
    for (std::size_t i = 0; i < snapped.size(); ++i) {
        MomentumPoint m;
        m.delta_x = separations[i];
        m.sites = snapped[i];
        m.lattice = cov.pi_pi(snapped[i]);
        m.continuum = momentum_correlator(snapped[i] * eps, 0.0, spec.radius);
        m.relative_discrepancy = relative(m.lattice, m.continuum);
        report.momentum.push_back(m);
    }
    return report;
}

LatticeCollective collective_lattice_operators(const LatticeCovariance& cov, int box_sites,
                                               int center_1, int center_2)
{
    const int n = cov.sites();
    if (box_sites < 1 || 2 * box_sites > n)
        throw OverlapError("collective_lattice_operators: box must hold between 1 and N/2 sites");
    auto box = [&](int center) {
        std::vector<int> sites(box_sites);
        const int first = center - box_sites / 2;
        for (int i = 0; i < box_sites; ++i)
            sites[i] = ((first + i) % n + n) % n;
        return sites;
    };
    const std::vector<int> b1 = box(center_1);
    const std::vector<int> b2 = box(center_2);
    const std::set<int> occupied(b1.begin(), b1.end());
    for (int s : b2)
        if (occupied.count(s))
            throw OverlapError("collective_lattice_operators: boxes share a site");

    const double eps = cov.spacing();
    const double inv_n2 = 1.0 / (static_cast<double>(box_sites) * box_sites);
    auto field = [&](const std::vector<int>& x, const std::vector<int>& y) {
        double sum = 0.0;
        for (int i : x)
            for (int j : y)
                sum += cov.phi_phi(j - i);
        return sum * inv_n2;
    };
    auto momentum = [&](const std::vector<int>& x, const std::vector<int>& y) {
        double sum = 0.0;
        for (int i : x)
            for (int j : y)
                sum += cov.pi_pi(j - i);
        return sum * eps * eps;
    };

    Mat4 m{};
    m[0][0] = field(b1, b1);
    m[2][2] = field(b2, b2);
    m[0][2] = m[2][0] = field(b1, b2);
    m[1][1] = momentum(b1, b1);
    m[3][3] = momentum(b2, b2);
    m[1][3] = m[3][1] = momentum(b1, b2);

    double comm = 0.0;
    for (int i : b1)
        for (int j : b1)
            comm += eps * cov.commutator(j - i);
    comm /= box_sites;

    return {TwoModeCovariance(m, box_sites * eps, 1), comm};
}

LatticeCollective collective_lattice_operators(const LatticeSpec& spec, int box_sites, int center_1,
                                               int center_2)
{
    return collective_lattice_operators(thermal_covariance(spec), box_sites, center_1, center_2);
}

} // namespace vet
