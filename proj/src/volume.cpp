#include "chordal/volume.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chordal {

std::vector<VolumeSample> vol_transform(
    const std::function<Vec(double)>& map, int k,
    const std::vector<std::vector<double>>& configurations) {
    std::vector<VolumeSample> out;
    out.reserve(configurations.size());
    for (const std::vector<double>& cfg : configurations) {
        if (int(cfg.size()) != k + 1)
            throw std::invalid_argument("configuration must have k+1 points");
        VolumeSample s;
        s.k = k;
        s.configuration.reserve(cfg.size());
        for (double x : cfg) s.configuration.push_back(map(x));
        s.sq_volume = cayley_menger_sq_volume(s.configuration);
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

double diameter(const std::vector<Vec>& pts) {
    double d2 = 0;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            d2 = std::max(d2, sq_distance(pts[i], pts[j]));
    return std::sqrt(d2);
}

}  // namespace

StabilityReport check_stability_bound(
    const std::function<Vec(double)>& e1, const std::function<Vec(double)>& e2,
    int k, const std::vector<double>& domain_samples,
    const std::vector<std::vector<double>>& configurations) {
    StabilityReport rep;
    rep.k = k;

    std::vector<Vec> img1, img2;
    img1.reserve(domain_samples.size());
    img2.reserve(domain_samples.size());
    double m2 = 0;
    for (double x : domain_samples) {
        img1.push_back(e1(x));
        img2.push_back(e2(x));
        m2 = std::max(m2, sq_distance(img1.back(), img2.back()));
    }
    rep.displacement = std::sqrt(m2);
    rep.diameter = std::max(diameter(img1), diameter(img2));

    const std::vector<VolumeSample> v1 = vol_transform(e1, k, configurations);
    const std::vector<VolumeSample> v2 = vol_transform(e2, k, configurations);
    for (size_t i = 0; i < v1.size(); ++i)
        rep.empirical =
            std::max(rep.empirical, std::abs(v1[i].sq_volume - v2[i].sq_volume));

    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= double(i);
    const double M = rep.displacement, D = rep.diameter;
    const double lead = (k + 2) * std::sqrt(double(k) * (k + 1)) /
                        (fact * fact * std::ldexp(1.0, k - 2));
    const double kk = double(k) * k + 2.0 * k + 2.0;
    rep.bound = lead * M * (M + D) *
                std::pow(std::sqrt(kk * D * D + (2.0 * k + 2.0) * (2.0 * k + 2.0)),
                         k + 1);
    rep.bound_published =
        lead * M * (M + D) *
        std::pow(std::sqrt(kk * D * D + (2.0 * k + 2.0)), k + 1);
    rep.pass = rep.empirical <= rep.bound;
    return rep;
}

}  // namespace chordal
