#pragma once

#include <functional>
#include <vector>

#include "chordal/geometry.hpp"

namespace chordal {

/// One evaluated configuration of the k-simplex volume transform.
struct VolumeSample {
    int k = 1;
    std::vector<Vec> configuration;  // k+1 mapped points
    double sq_volume = 0;
};

/// Evaluates the squared k-simplex volume on each configuration of domain
/// samples under the map. For k = 1 on loop chords this is exactly twice
/// the half-squared chord length.
std::vector<VolumeSample> vol_transform(
    const std::function<Vec(double)>& map, int k,
    const std::vector<std::vector<double>>& configurations);

/// Empirical check of the stability bound for the volume transform: the
/// sup of |Vol_k^2(e1) - Vol_k^2(e2)| over sampled configurations against
/// the theoretical bound in terms of M (sup displacement) and D (max
/// diameter). Both the as-published bound and the looser in-proof variant
/// (squared trailing term) are reported; the check is against the looser
/// one.
struct StabilityReport {
    int k = 1;
    double empirical = 0;
    double displacement = 0;      // M
    double diameter = 0;          // D
    double bound = 0;             // in-proof variant, (2k+2)^2 term
    double bound_published = 0;   // displayed variant, (2k+2) term
    bool pass = false;
};

StabilityReport check_stability_bound(
    const std::function<Vec(double)>& e1, const std::function<Vec(double)>& e2,
    int k, const std::vector<double>& domain_samples,
    const std::vector<std::vector<double>>& configurations);

}  // namespace chordal
