#pragma once

// Effective two-mode covariance of box-averaged fields and box-integrated
// momenta, taken in the small-box limit where the box correlators reduce to
// the point correlators at the box centers.

#include "vet/gaussian_two_mode.hpp"
#include "vet/greens_cylinder.hpp"

namespace vet {

enum class MomentumWeight {
    integrated, // Pi = int_B pi: momentum entries carry L^{2D}
    averaged,   // Pi = L^{-D} int_B pi: no L factor
};

struct CollectiveSpec {
    double box_size = 0.01;
    int dimension = 1;
    double center_1 = 0.0;
    double center_2 = 0.5;
    double radius = 1.0;
    CovarianceComponents components;
    MomentumWeight momentum = MomentumWeight::integrated;
    // Set when the components describe one homogeneous state on the circle,
    // in which case a = a' and b = b' must hold.
    bool homogeneous = false;

    double separation() const { return circle_distance(center_2 - center_1, radius); }

    // Throws OverlapError if the boxes overlap or L is outside (0, R/2).
    void validate() const;
};

// Two boxes on the cylinder with components from the closed forms.
CollectiveSpec cylinder_collective_spec(double box_size, double center_1, double center_2,
                                        double big_m, double radius = 1.0, int dimension = 1,
                                        MomentumWeight momentum = MomentumWeight::integrated);

TwoModeCovariance build_v_tilde(const CollectiveSpec& spec);

enum class Box { first, second };

// Coefficient of i in [Phi_phi_box, Pi_pi_box]: the overlap volume of the two
// boxes times the field and momentum weights.
double collective_commutator_norm(const CollectiveSpec& spec, Box field_box, Box momentum_box);

} // namespace vet
