#ifndef QCURV_CGB_HPP
#define QCURV_CGB_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qcurv/profile.hpp"

// The headline curvature identities: the punctured-space deficit formula,
// the local end / singular-region identities with the radial boundary term,
// and the glued-manifold assembly.

namespace qcurv::cgb {

// Tail limits of v' with per-ratio extrapolants as cross-checks.
struct LimitsReport {
    double nu = 0.0;  // lim_{t->+inf} v'
    double mu = 0.0;  // lim_{t->-inf} v' - 1
    // Isoperimetric-ratio extrapolants: (k,l) -> (nu_kl, mu_kl).
    std::map<std::pair<int, int>, std::pair<double, double>> ratio_extrapolants;
    double c2 = 0.0, c3 = 0.0;  // fitted growth-mode coefficients
    std::vector<std::string> warnings;  // e.g. scalar-curvature sign at tails
};

// Refuses (DomainError) when the fitted growth modes c2/c3 exceed
// 1e-6 * max(1, sup|v'|): the tail limits do not exist then.
LimitsReport extract_limits(const RadialProfile& p);

struct DeficitReport {
    int chi = 1;
    double total_q = 0.0;  // (1/4) \int F dt
    double nu = 0.0, mu = 0.0;
    double residual = 0.0;  // chi - total_q - (nu - mu)
    std::map<std::pair<int, int>, std::pair<double, double>> ratio_extrapolants;
    double c2 = 0.0, c3 = 0.0;
    std::vector<std::string> warnings;
};

DeficitReport deficit(const RadialProfile& p, int chi = 1);

// Boundary-term contribution at t0: (1/4pi^2) |S^3| (-v'''/2 + 2v')
//                                 = (-v'''(t0)/2 + 2 v'(t0)) / 2.
double radial_boundary_T(const RadialProfile& p, double t0);

// T(t0) - (1/4)\int_{t0}^inf F - nu; zero for exact inputs.
double local_end_identity(const RadialProfile& p, double t0);

// T(t0) + (1/4)\int_{-inf}^{t0} F - (1 + mu); zero for exact inputs.
double local_sing_identity(const RadialProfile& p, double t0);

struct ManifoldSpec {
    int chi = 1;
    double weyl_energy = 0.0;  // \int |W|^2 over the core, user supplied
    double interior_q = 0.0;   // (1/4pi^2) \int_N Q over the compact core
    std::vector<RadialProfile> ends;   // complete at +inf
    std::vector<RadialProfile> sings;  // finite area at -inf
    double glue_radius = 1.0;
};

struct ManifoldReport {
    double residual = 0.0;
    double boundary_mismatch = 0.0;  // max |T_end - T_sing| over glued pairs
    double total_q = 0.0;            // all curvature contributions
    double nu_sum = 0.0, mu_sum = 0.0;
    bool consistent = false;  // |residual| within tolerance
    std::vector<std::string> warnings;
};

// residual = chi - (weyl/32pi^2 + interior_q + piece q) - (sum nu - sum mu).
// Boundary terms of glued pairs are compared at the same t0 with the same
// orientation; a mismatch above tolerance is reported, not silently fixed.
ManifoldReport manifold_assemble(const ManifoldSpec& m, double tol = 1e-6,
                                 double boundary_tol = 1e-8);

}  // namespace qcurv::cgb

#endif
