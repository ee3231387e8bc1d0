#include "vet/collective_variance.hpp"

#include "vet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vet {

void CollectiveSpec::validate() const
{
    if (!(radius > 0.0))
        throw OverlapError("CollectiveSpec: radius must be positive");
    if (dimension < 1)
        throw OverlapError("CollectiveSpec: dimension must be at least 1");
    if (!(box_size > 0.0) || !(box_size < radius / 2.0))
        throw OverlapError("CollectiveSpec: box size must lie in (0, R/2)");
    if (!(box_size < separation())) {
        std::ostringstream msg;
        msg << "CollectiveSpec: boxes of size " << box_size << " overlap at separation " << separation();
        throw OverlapError(msg.str());
    }
}

CollectiveSpec cylinder_collective_spec(double box_size, double center_1, double center_2,
                                        double big_m, double radius, int dimension,
                                        MomentumWeight momentum)
{
    CollectiveSpec spec;
    spec.box_size = box_size;
    spec.dimension = dimension;
    spec.center_1 = center_1;
    spec.center_2 = center_2;
    spec.radius = radius;
    spec.momentum = momentum;
    spec.homogeneous = true;
    spec.validate();
    spec.components = components_closed_form(std::remainder(center_2 - center_1, radius), big_m, radius);
    return spec;
}

TwoModeCovariance build_v_tilde(const CollectiveSpec& spec)
{
    spec.validate();
    const CovarianceComponents& k = spec.components;
    if (spec.homogeneous) {
        constexpr double tol = 1e-12;
        if (std::abs(k.a - k.a_prime) > tol * std::max(1.0, std::abs(k.a))
            || std::abs(k.b - k.b_prime) > tol * std::max(1.0, std::abs(k.b)))
            throw AsymmetricStateError("build_v_tilde: homogeneous state requires a = a' and b = b'");
    }
    const double weight_box = spec.momentum == MomentumWeight::integrated ? spec.box_size : 1.0;
    const auto weighted = TwoModeCovariance::from_components(k, weight_box, spec.dimension);
    return TwoModeCovariance(weighted.entries(), spec.box_size, spec.dimension);
}

double collective_commutator_norm(const CollectiveSpec& spec, Box field_box, Box momentum_box)
{
    spec.validate();
    // Disjoint boxes share no volume; a box overlaps itself in L^D.
    if (field_box != momentum_box)
        return 0.0;
    const double volume = std::pow(spec.box_size, spec.dimension);
    const double field_weight = 1.0 / volume;
    const double momentum_weight = spec.momentum == MomentumWeight::integrated ? 1.0 : 1.0 / volume;
    return field_weight * momentum_weight * volume;
}

} // namespace vet
