#ifndef QCURV_MIXED_VOLUMES_HPP
#define QCURV_MIXED_VOLUMES_HPP

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qcurv/profile.hpp"
#include "qcurv/quadrature.hpp"

// Mixed volumes V1..V4 of geodesic balls around the origin and the six
// isoperimetric ratios C_{k,l}, in radial closed form and by 3-sphere
// quadrature for general conformal factors.

namespace qcurv::volumes {

struct MixedVolumes {
    double V4 = 0.0, V3 = 0.0, V2 = 0.0, V1 = 0.0;
    bool V4_tail_resolved = true;  // inner tail estimate available
    bool flagged_negative = false; // v' <= 0: V2/V1 kept, ratios may refuse
};

// Ratio entries are std::nullopt ("undefined") when a fractional power of a
// non-positive volume would be needed; never NaN.
struct MixedVolumeTable {
    std::vector<double> radii;
    std::vector<double> V4, V3, V2, V1;
    std::map<std::pair<int, int>, std::vector<std::optional<double>>> C;
};

// Closed forms at r = e^t:
//   V4 = |S^3| \int_{-inf}^t e^{4v},  V3 = |S^3| e^{3v}/4,
//   V2 = |S^3| v' e^{2v}/4,           V1 = |S^3| (v')^2 e^v / 4.
// V4 integrates from t_min with the tail estimate e^{4v(t_min)}/(4c),
// c = v'(t_min), when a positive local growth rate is detected.
MixedVolumes radial_mixed_volumes(const RadialProfile& p, double r);

// General conformal factor on R^4 \ {0}; w and its radial derivative must
// be evaluable on the sphere of radius r.
struct ConformalFactor {
    std::function<double(const quad::Vec4&)> w;       // w(x)
    std::function<double(const quad::Vec4&)> dw_dr;   // radial derivative
};
MixedVolumes general_mixed_volumes(const ConformalFactor& w, double r,
                                   int quad_order = 24,
                                   double inner_cutoff = 1e-4);

// All six ratios from one set of volumes; composite ratios are products of
// the primitive three.
std::map<std::pair<int, int>, std::optional<double>> iso_ratios_at(
    const MixedVolumes& mv);

// Fill the C columns of a table whose V columns are populated.
void iso_ratios(MixedVolumeTable& tbl);

// Convenience: build a table for a radial profile on a radius grid.
MixedVolumeTable radial_table(const RadialProfile& p,
                              const std::vector<double>& radii);

inline const std::vector<std::pair<int, int>>& ratio_keys()
{
    static const std::vector<std::pair<int, int>> keys = {
        {3, 4}, {2, 3}, {1, 2}, {2, 4}, {1, 3}, {1, 4}};
    return keys;
}

}  // namespace qcurv::volumes

#endif
