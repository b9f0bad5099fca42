#ifndef QCURV_NORMAL_METRIC_HPP
#define QCURV_NORMAL_METRIC_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcurv/profile.hpp"
#include "qcurv/quadrature.hpp"

// Generalised normal metrics: conformal factors built from a Q-density via
// the log kernel, spherical averaging, closed-form kernel averages, and the
// surface-moment diagnostics that compare a metric with its average.

namespace qcurv::normal {

using quad::Vec4;

// Q-density times e^{4w} on R^4, supported in a closed annulus.
// Symmetry flags pick the cheapest exact quadrature reduction.
struct QMeasure {
    enum class Symmetry { radial, axial, none };

    std::function<double(const Vec4&)> density;  // Q_g e^{4w} at y
    double rho_in = 0.0, rho_out = 0.0;          // support annulus
    Symmetry symmetry = Symmetry::none;
    Vec4 axis = {1, 0, 0, 0};                    // for axial symmetry
    std::string id;                              // catalog id, for reports

    // Shell mass density m(rho) = rho^3 \int_{S^3} density(rho sigma) dsigma,
    // so that \int density dy = \int m(rho) drho.
    double shell_mass(double rho, int quad_order = 24) const;
    double total(int quad_order = 24) const;
    double total_abs(int quad_order = 24) const;
};

struct NormalMetricSpec {
    QMeasure qmeasure;
    double alpha = 0.0;  // log coefficient; > -1 for finite area
    double C = 0.0;      // additive constant
    bool finite_area_flag = true;
};

// w(x) = (1/4pi^2) \int log(|y|/|x-y|) density(y) dy + alpha log|x| + C.
// Points inside the support annulus get a singular split: a small ball
// around x in local polar coordinates plus the smooth remainder.
double eval_w(const NormalMetricSpec& spec, const Vec4& x,
              int quad_order = 24);

// Radial derivative by differentiation under the integral (the kernel is
// known in closed form; no finite differences near the support).
double eval_dw_dr(const NormalMetricSpec& spec, const Vec4& x,
                  int quad_order = 24);

// Spherical mean of an arbitrary factor over the sphere of radius r.
double averaged_factor(const std::function<double(const Vec4&)>& w, double r,
                       int quad_order = 24);

// Closed-form averages for the radial symmetrisation of the spec.
double averaged_w(const NormalMetricSpec& spec, double r, int quad_order = 24);
double averaged_dw_dr(const NormalMetricSpec& spec, double r,
                      int quad_order = 24);

// Mean over the sphere of radius r of 1/|x-y|^2: 1/r^2 if |y| <= r, else
// 1/|y|^2. Refuses within relative 1e-9 of |y| = r, where the closed form
// jumps.
double kernel_sphere_average(double abs_y, double r);

// Averaged radial-derivative kernel: (1/(16 pi^2 r)) (2 - |y|^2/r^2) inside,
// r/(16 pi^2 |y|^2) outside; continuous at |y| = r.
double kbar(double r, double abs_y);

// log mean(e^{kw}) - k wbar(r); o(1) at both ends for normal metrics.
double lemma1_ratio(const NormalMetricSpec& spec, double k, double r,
                    int quad_order = 24);

// Surface moments of the radial derivative.
struct MomentReport {
    double mean_pow_k = 0.0;      // mean of (dw/dr)^k
    double scaled_moment = 0.0;   // r^k * mean of (dw/dr)^k  (stays bounded)
    double mean_sq = 0.0;         // mean of (dw/dr)^2
    double avg_deriv = 0.0;       // dwbar/dr
    double deviation = 0.0;       // r^2 (mean_sq - avg_deriv^2)  (tends to 0)
};
MomentReport lemma2_moments(const NormalMetricSpec& spec, double r, int k,
                            int quad_order = 24);

// Laplacian of the averaged factor plus its upper bound.
struct LaplacianBound {
    double lap_avg = 0.0;
    double bound = 0.0;
    bool holds = false;
};
LaplacianBound laplacian_avg_bound(const NormalMetricSpec& spec, double r,
                                   int quad_order = 24);

// Surface-mean ratios comparing the metric with its average:
//   V3/V3bar = mean(e^{3w})/e^{3 wbar},  dV4/dV4bar = mean(e^{4w})/e^{4 wbar},
// and, when 1 + r dwbar/dr stays positive, the V2 and V1 analogues.
struct AverageComparison {
    double ratio_V3 = 0.0;
    double ratio_dV4 = 0.0;
    std::optional<double> ratio_V2, ratio_V1;
};
AverageComparison compare_with_average(const NormalMetricSpec& spec, double r,
                                       int quad_order = 24);

// Completeness and finite-area flags of the spec and of its averaged
// radial profile; they must agree.
struct Flags {
    bool complete = false;
    bool finite_area = false;
};
Flags spec_flags(const NormalMetricSpec& spec);
Flags averaged_flags(const NormalMetricSpec& spec, int quad_order = 24);

}  // namespace qcurv::normal

#endif
