#ifndef QCURV_RADIAL_CORE_HPP
#define QCURV_RADIAL_CORE_HPP

#include <vector>

#include "qcurv/profile.hpp"

// Machinery for radial conformal factors: the fourth-order ODE defect,
// tail-decay diagnostics, the explicit particular solution of
// f'''' - 4 f'' = F (derivatives only), the asymptotic decomposition of v,
// and radial scalar curvature.

namespace qcurv::radial {

// Defect of v'''' - 4 v'' = F at t, with F the density attached to p
// (zero density when none is attached).
double ode_residual(const RadialProfile& p, double t);

// F(t) = v''''(t) - 4 v''(t); the total Q integral is (1/4) \int F dt.
// Flags (without failing) when the truncation-doubling test suggests the
// result is not integrable.
struct QDensityResult {
    ConformalDensity density;
    bool integrable = true;
};
QDensityResult q_density_from_profile(const RadialProfile& p);

// Tail-decay functionals: K1(t) = e^{2t} \int_t^inf F e^{-2x} dx at
// negative probes, K2(t) = e^{-2t} \int_{-inf}^t F e^{2x} dx at positive
// probes. Both must shrink toward zero for integrable F.
struct DecayLimits {
    std::vector<double> probes_negative, k1;
    std::vector<double> probes_positive, k2;
    bool decays = true;  // monotone shrinking over the given probes
};
DecayLimits decay_limits(const ConformalDensity& F,
                         const std::vector<double>& t_probe);

// First and second derivative of the explicit particular solution.
struct ParticularDerivs {
    double f1 = 0.0;
    double f2 = 0.0;
};
ParticularDerivs particular_solution_derivs(const ConformalDensity& F,
                                            double t);
// Third derivative; the boundary term needs it for glued checks.
double particular_solution_f3(const ConformalDensity& F, double t);

// Limits of f' at +/- infinity: -/+ (1/8) \int F dt.
struct ParticularLimits {
    double f1_minus_inf = 0.0;
    double f1_plus_inf = 0.0;
};
ParticularLimits particular_limits(const ConformalDensity& F);

// Least-squares fit of v'(t) - f'(t) against {1, -2 e^{-2t}, 2 e^{2t}} on
// the two tail windows; c0 is anchored by v(0) with the f(0) = 0
// convention (the integration constant of f is undefined by design).
AsymptoticDecomposition asymptotic_decomposition(const RadialProfile& p);

// R_g = 6 e^{-2v} (-v'' - (v')^2 + 1).
double scalar_curvature_radial(const RadialProfile& p, double t);

}  // namespace qcurv::radial

#endif
