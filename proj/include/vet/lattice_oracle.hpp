#pragma once

// Exact thermal state of a harmonic ring,
//   H = (eps/2) sum_n [pi_n^2 + ((phi_{n+1} - phi_n)/eps)^2 + m^2 phi_n^2],
// with [phi_a, pi_b] = i delta_ab / eps, used as a brute-force reference for
// the continuum correlators and the collective-operator construction.

#include "vet/gaussian_two_mode.hpp"

#include <optional>
#include <span>
#include <vector>

namespace vet {

struct LatticeSpec {
    int sites = 1024;
    double radius = 1.0;
    double mass = 1.0;
    std::optional<double> beta; // nullopt: zero temperature

    double spacing() const { return radius / sites; }

    // sites >= 4 and even, mass > 0, radius > 0, beta > 0 when given.
    void validate() const;
};

class LatticeCovariance {
public:
    LatticeCovariance(int sites, double spacing, std::vector<double> phi_phi,
                      std::vector<double> pi_pi, std::vector<double> commutator);

    int sites() const { return sites_; }
    double spacing() const { return spacing_; }

    // <{phi_0, phi_s}>/2 and <{pi_0, pi_s}>/2; s is taken modulo the ring.
    double phi_phi(int s) const { return phi_phi_[wrap(s)]; }
    double pi_pi(int s) const { return pi_pi_[wrap(s)]; }

    // Coefficient of i in [phi_0, pi_s], reconstructed from the mode sum.
    double commutator(int s) const { return commutator_[wrap(s)]; }

private:
    int wrap(int s) const { return ((s % sites_) + sites_) % sites_; }

    int sites_;
    double spacing_;
    std::vector<double> phi_phi_;
    std::vector<double> pi_pi_;
    std::vector<double> commutator_;
};

LatticeCovariance thermal_covariance(const LatticeSpec& spec);

struct SeparationPair {
    double delta_x_1, delta_x_2;   // requested
    int sites_1, sites_2;          // snapped to the lattice
    double lattice_difference;     // phi_phi(s1) - phi_phi(s2)
    double continuum_massless;     // (G(x1) - G(x2))/2 at M -> 0
    double continuum_thermal;      // same with M = m * beta
    double relative_discrepancy;   // lattice vs massless continuum
    double refined_discrepancy;    // same on the 2N ring
    double convergence_ratio;      // refined / coarse
    double thermal_discrepancy;    // lattice vs M = m beta continuum (report only)
};

struct MomentumPoint {
    double delta_x;
    int sites;
    double lattice;   // pi_pi(s)
    double continuum; // d/dt d/dt' G/2 at M -> 0
    double relative_discrepancy;
};

struct DiscrepancyReport {
    int sites;
    double big_m;
    std::vector<SeparationPair> pairs; // first separation against each other one
    std::vector<MomentumPoint> momentum;
    double max_relative_discrepancy = 0.0;
    double max_refined_discrepancy = 0.0;
};

// Compares field-correlator differences against the continuum Hadamard
// function, on N and on 2N sites. Separations are snapped to the nearest
// site; ResolutionError if one lies further than snap_tolerance (default
// half a spacing) from a site, snaps to 0, or two snap to the same site.
DiscrepancyReport compare_continuum(const LatticeSpec& spec, std::span<const double> separations,
                                    std::optional<double> snap_tolerance = std::nullopt);

struct LatticeCollective {
    TwoModeCovariance covariance;
    double commutator; // coefficient of i in [Phi, Pi] for one box
};

// Phi = box average of phi, Pi = box integral of pi for two boxes of
// box_sites sites centered on the given site indices (a box of n sites
// around c covers c - n/2 ... c - n/2 + n - 1). OverlapError if the boxes
// share a site.
LatticeCollective collective_lattice_operators(const LatticeSpec& spec, int box_sites, int center_1,
                                               int center_2);
LatticeCollective collective_lattice_operators(const LatticeCovariance& cov, int box_sites,
                                               int center_1, int center_2);

} // namespace vet
