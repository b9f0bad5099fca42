#include "qcurv/cgb.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcurv/mixed_volumes.hpp"
#include "qcurv/quadrature.hpp"
#include "qcurv/radial_core.hpp"

namespace qcurv::cgb {

namespace {

double guard(const RadialProfile& p)
{
    return p.mode() == RadialProfile::Mode::sampled ? 3.0 * p.h() : 0.0;
}

// Aitken delta-squared step on a geometrically converging triple
// (x0 farthest from the limit). Falls back to x2 for exact sequences.
double aitken(double x0, double x1, double x2)
{
    double d1 = x1 - x0, d2 = x2 - x1;
    double den = d2 - d1;
    if (std::abs(den) < 1e-14 * (std::abs(x2) + 1.0)) return x2;
    double ext = x2 - d2 * d2 / den;
    // A diverging correction means the sequence was not geometric; trust
    // the raw tail value instead.
    if (std::abs(ext - x2) > std::abs(d2)) return x2;
    return ext;
}

ConformalDensity density_of(const RadialProfile& p)
{
    if (p.density()) return *p.density();
    return radial::q_density_from_profile(p).density;
}

quad::TailOptions tails(const ConformalDensity& d)
{
    quad::TailOptions opt;
    opt.support = d.support;
    return opt;
}

}  // namespace

LimitsReport extract_limits(const RadialProfile& p)
{
    AsymptoticDecomposition dec = radial::asymptotic_decomposition(p);
    double thr = 1e-6 * std::max(1.0, p.sup_v1());
    if (std::abs(dec.c3) > thr) {
        std::ostringstream msg;
        msg << "tail limits unavailable: exponential growth mode detected, "
               "fitted c3 ≈ "
            << dec.c3 << " exceeds threshold " << thr;
        throw DomainError(msg.str());
    }
    if (std::abs(dec.c2) > thr) {
        std::ostringstream msg;
        msg << "tail limits unavailable: exponential growth mode detected, "
               "fitted c2 ≈ "
            << dec.c2 << " exceeds threshold " << thr;
        throw DomainError(msg.str());
    }

    LimitsReport rep;
    rep.c2 = dec.c2;
    rep.c3 = dec.c3;
    double lo = p.t_min() + guard(p), hi = p.t_max() - guard(p);
    rep.nu = aitken(p.v1(hi - 1.0), p.v1(hi - 0.5), p.v1(hi));
    rep.mu = aitken(p.v1(lo + 1.0), p.v1(lo + 0.5), p.v1(lo)) - 1.0;

    // Ratio extrapolants: every C_{k,l}(e^t) tends to nu at the top and to
    // 1 + mu at the bottom; extrapolate each defined column.
    auto ratios_at = [&](double t) {
        return volumes::iso_ratios_at(
            volumes::radial_mixed_volumes(p, std::exp(t)));
    };
    auto top0 = ratios_at(hi - 1.0), top1 = ratios_at(hi - 0.5),
         top2 = ratios_at(hi);
    auto bot0 = ratios_at(lo + 1.0), bot1 = ratios_at(lo + 0.5),
         bot2 = ratios_at(lo);
    for (const auto& key : volumes::ratio_keys()) {
        if (!(top0[key] && top1[key] && top2[key] && bot0[key] && bot1[key] &&
              bot2[key]))
            continue;
        double nu_kl = aitken(*top0[key], *top1[key], *top2[key]);
        double mu_kl = aitken(*bot0[key], *bot1[key], *bot2[key]) - 1.0;
        if (std::abs(nu_kl - rep.nu) > 1e-2 || std::abs(mu_kl - rep.mu) > 1e-2) {
            std::ostringstream msg;
            msg << "ratio extrapolation did not converge for C_{" << key.first
                << "," << key.second << "}: got (" << nu_kl << ", " << mu_kl
                << ") against direct limits (" << rep.nu << ", " << rep.mu
                << ")";
            throw DomainError(msg.str());
        }
        rep.ratio_extrapolants[key] = {nu_kl, mu_kl};
    }

    // Scalar-curvature sign at the outer/inner decade: failures only warn;
    // the vanishing of c2/c3 is the operative condition for the limits.
    auto scan = [&](double a, double b, const char* where) {
        for (int i = 0; i <= 8; ++i) {
            double t = a + (b - a) * i / 8.0;
            if (radial::scalar_curvature_radial(p, t) < -1e-10) {
                std::ostringstream msg;
                msg << "scalar curvature negative near the " << where
                    << " tail (t = " << t << ")";
                rep.warnings.push_back(msg.str());
                return;
            }
        }
    };
    scan(hi - 0.1 * (hi - lo), hi, "outer");
    scan(lo, lo + 0.1 * (hi - lo), "inner");
    return rep;
}

DeficitReport deficit(const RadialProfile& p, int chi)
{
    LimitsReport lim = extract_limits(p);
    DeficitReport rep;
    rep.chi = chi;
    rep.total_q = 0.25 * density_of(p).total();
    rep.nu = lim.nu;
    rep.mu = lim.mu;
    rep.residual = chi - rep.total_q - (rep.nu - rep.mu);
    rep.ratio_extrapolants = std::move(lim.ratio_extrapolants);
    rep.c2 = lim.c2;
    rep.c3 = lim.c3;
    rep.warnings = std::move(lim.warnings);
    return rep;
}

double radial_boundary_T(const RadialProfile& p, double t0)
{
    return 0.5 * (-0.5 * p.v3(t0) + 2.0 * p.v1(t0));
}

double local_end_identity(const RadialProfile& p, double t0)
{
    ConformalDensity F = density_of(p);
    double q_outer = 0.25 * quad::integrate_right(F.F, t0, tails(F));
    return radial_boundary_T(p, t0) - q_outer - extract_limits(p).nu;
}

double local_sing_identity(const RadialProfile& p, double t0)
{
    ConformalDensity F = density_of(p);
    double q_inner = 0.25 * quad::integrate_left(F.F, t0, tails(F));
    return radial_boundary_T(p, t0) + q_inner - (1.0 + extract_limits(p).mu);
}

ManifoldReport manifold_assemble(const ManifoldSpec& m, double tol,
                                 double boundary_tol)
{
    ManifoldReport rep;
    double t0 = std::log(m.glue_radius);
    std::vector<double> t_end, t_sing;

    for (std::size_t i = 0; i < m.ends.size(); ++i) {
        const RadialProfile& p = m.ends[i];
        LimitsReport lim = extract_limits(p);
        rep.nu_sum += lim.nu;
        for (const auto& w : lim.warnings)
            rep.warnings.push_back("end " + std::to_string(i) + ": " + w);
        if (!p.is_complete())
            rep.warnings.push_back("end " + std::to_string(i) +
                                   ": not metrically complete at infinity");
        ConformalDensity F = density_of(p);
        rep.total_q += 0.25 * quad::integrate_right(F.F, t0, tails(F));
        t_end.push_back(radial_boundary_T(p, t0));
    }
    for (std::size_t j = 0; j < m.sings.size(); ++j) {
        const RadialProfile& p = m.sings[j];
        LimitsReport lim = extract_limits(p);
        rep.mu_sum += lim.mu;
        for (const auto& w : lim.warnings)
            rep.warnings.push_back("sing " + std::to_string(j) + ": " + w);
        if (1.0 + lim.mu <= 0.0)
            rep.warnings.push_back("sing " + std::to_string(j) +
                                   ": infinite area at the puncture");
        ConformalDensity F = density_of(p);
        rep.total_q += 0.25 * quad::integrate_left(F.F, t0, tails(F));
        t_sing.push_back(radial_boundary_T(p, t0));
    }

    // Glued pairs share the boundary sphere: both boundary terms are
    // computed at the same t0 with the same orientation and must agree.
    std::size_t pairs = std::min(t_end.size(), t_sing.size());
    for (std::size_t i = 0; i < pairs; ++i)
        rep.boundary_mismatch =
            std::max(rep.boundary_mismatch, std::abs(t_end[i] - t_sing[i]));

    rep.total_q += m.interior_q;
    double weyl_term = m.weyl_energy / (32.0 * quad::PI * quad::PI);
    rep.residual =
        m.chi - (weyl_term + rep.total_q) - (rep.nu_sum - rep.mu_sum);
    rep.consistent =
        std::abs(rep.residual) <= tol && rep.boundary_mismatch <= boundary_tol;
    return rep;
}

}  // namespace qcurv::cgb
