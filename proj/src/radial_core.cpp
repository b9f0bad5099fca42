#include "qcurv/radial_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "qcurv/quadrature.hpp"

namespace qcurv::radial {

using quad::TailOptions;

namespace {

TailOptions tails(const ConformalDensity& d)
{
    TailOptions opt;
    opt.support = d.support;
    return opt;
}

double tail_I1(const ConformalDensity& F, double t)
{
    return quad::integrate_right(
        [&](double x) { return F(x) * std::exp(-2.0 * x); }, t, tails(F));
}

double tail_I2(const ConformalDensity& F, double t)
{
    return quad::integrate_left(
        [&](double x) { return F(x) * std::exp(2.0 * x); }, t, tails(F));
}

double mass_below(const ConformalDensity& F, double t)
{
    return quad::integrate_left(F.F, t, tails(F));
}

double mass_above(const ConformalDensity& F, double t)
{
    return quad::integrate_right(F.F, t, tails(F));
}

}  // namespace

double ode_residual(const RadialProfile& p, double t)
{
    double F = p.density() ? (*p.density())(t) : 0.0;
    return p.v4(t) - 4.0 * p.v2(t) - F;
}

QDensityResult q_density_from_profile(const RadialProfile& p)
{
    QDensityResult res;
    ConformalDensity d;
    // Clip to the window where derivatives are defined; outside we treat F
    // as zero, which the integrability flag reports on when unjustified.
    double lo = p.t_min() + 3.0 * p.h(), hi = p.t_max() - 3.0 * p.h();
    d.support = {{lo, hi}};
    d.F = [p, lo, hi](double t) {
        if (t < lo || t > hi) return 0.0;
        return p.v4(t) - 4.0 * p.v2(t);
    };
    res.integrable = d.integrable();
    res.density = std::move(d);
    return res;
}

DecayLimits decay_limits(const ConformalDensity& F,
                         const std::vector<double>& t_probe)
{
    DecayLimits out;
    for (double t : t_probe) {
        if (t < 0.0) {
            out.probes_negative.push_back(t);
            out.k1.push_back(std::exp(2.0 * t) * tail_I1(F, t));
        } else {
            out.probes_positive.push_back(t);
            out.k2.push_back(std::exp(-2.0 * t) * tail_I2(F, t));
        }
    }
    auto shrinking = [](const std::vector<double>& probes,
                        const std::vector<double>& vals, bool neg) {
        // probes may come in any order; check |K| shrinks as |t| grows
        std::vector<std::size_t> idx(vals.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return neg ? probes[a] > probes[b] : probes[a] < probes[b];
        });
        for (std::size_t i = 1; i < idx.size(); ++i)
            if (std::abs(vals[idx[i]]) > std::abs(vals[idx[i - 1]]) + 1e-15)
                return false;
        return true;
    };
    out.decays = shrinking(out.probes_negative, out.k1, true) &&
                 shrinking(out.probes_positive, out.k2, false);
    return out;
}

ParticularDerivs particular_solution_derivs(const ConformalDensity& F,
                                            double t)
{
    double i1 = tail_I1(F, t), i2 = tail_I2(F, t);
    double mm = mass_below(F, t), mp = mass_above(F, t);
    ParticularDerivs d;
    d.f1 = 0.125 * (-std::exp(2.0 * t) * i1 - mm + std::exp(-2.0 * t) * i2 + mp);
    d.f2 = -0.25 * (std::exp(2.0 * t) * i1 + std::exp(-2.0 * t) * i2);
    return d;
}

double particular_solution_f3(const ConformalDensity& F, double t)
{
    double i1 = tail_I1(F, t), i2 = tail_I2(F, t);
    return 0.5 * (-std::exp(2.0 * t) * i1 + std::exp(-2.0 * t) * i2);
}

ParticularLimits particular_limits(const ConformalDensity& F)
{
    double total = F.total();
    return {0.125 * total, -0.125 * total};
}

namespace {

// Least squares with 3 columns by modified Gram-Schmidt QR.
std::array<double, 4> lsq3(const std::vector<std::array<double, 3>>& A,
                           const std::vector<double>& y)
{
    const std::size_t m = A.size();
    std::vector<std::array<double, 3>> Q(m);
    double R[3][3] = {{0}};
    for (std::size_t i = 0; i < m; ++i) Q[i] = A[i];
    for (int j = 0; j < 3; ++j) {
        double nrm = 0.0;
        for (std::size_t i = 0; i < m; ++i) nrm += Q[i][j] * Q[i][j];
        nrm = std::sqrt(nrm);
        if (nrm < 1e-300)
            throw DomainError(
                "asymptotic fit is ill-conditioned: tail windows too short "
                "(need a span of at least ~4 in t on each side)");
        R[j][j] = nrm;
        for (std::size_t i = 0; i < m; ++i) Q[i][j] /= nrm;
        for (int k = j + 1; k < 3; ++k) {
            double dotp = 0.0;
            for (std::size_t i = 0; i < m; ++i) dotp += Q[i][j] * Q[i][k];
            R[j][k] = dotp;
            for (std::size_t i = 0; i < m; ++i) Q[i][k] -= dotp * Q[i][j];
        }
    }
    double qty[3] = {0, 0, 0};
    for (int j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < m; ++i) qty[j] += Q[i][j] * y[i];
    double x[3];
    for (int j = 2; j >= 0; --j) {
        double s = qty[j];
        for (int k = j + 1; k < 3; ++k) s -= R[j][k] * x[k];
        x[j] = s / R[j][j];
    }
    double rss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double fit = A[i][0] * x[0] + A[i][1] * x[1] + A[i][2] * x[2];
        rss += (y[i] - fit) * (y[i] - fit);
    }
    return {x[0], x[1], x[2], std::sqrt(rss / static_cast<double>(m))};
}

}  // namespace

AsymptoticDecomposition asymptotic_decomposition(const RadialProfile& p)
{
    const ConformalDensity& F =
        p.density() ? *p.density() : q_density_from_profile(p).density;

    double lo = p.t_min() + 3.0 * p.h(), hi = p.t_max() - 3.0 * p.h();
    double window = 4.0;
    if (hi - lo < 2.0 * window + 1.0)
        throw DomainError(
            "asymptotic fit needs a grid spanning at least ~9 in t; "
            "widen [t_min, t_max]");

    std::vector<std::array<double, 3>> A;
    std::vector<double> y;
    auto add_window = [&](double a, double b) {
        int n = 64;
        for (int i = 0; i <= n; ++i) {
            double t = a + (b - a) * i / n;
            double f1 = particular_solution_derivs(F, t).f1;
            A.push_back({1.0, -2.0 * std::exp(-2.0 * t), 2.0 * std::exp(2.0 * t)});
            y.push_back(p.v1(t) - f1);
        }
    };
    add_window(lo, lo + window);
    add_window(hi - window, hi);

    auto x = lsq3(A, y);
    AsymptoticDecomposition dec;
    dec.c1 = x[0];
    dec.c2 = x[1];
    dec.c3 = x[2];
    dec.fit_residual = x[3];
    // Anchor c0 at t = 0 (or the nearest interior point), with the f(0) = 0
    // convention for the particular solution.
    double ta = std::clamp(0.0, lo, hi);
    dec.c0 = p.v(ta) - dec.c1 * ta - dec.c2 * std::exp(-2.0 * ta) -
             dec.c3 * std::exp(2.0 * ta);
    return dec;
}

double scalar_curvature_radial(const RadialProfile& p, double t)
{
    double v1 = p.v1(t);
    return 6.0 * std::exp(-2.0 * p.v(t)) * (-p.v2(t) - v1 * v1 + 1.0);
}

}  // namespace qcurv::radial
