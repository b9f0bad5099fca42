#include "qcurv/normal_metric.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qcurv::normal {

using quad::PI;
using quad::S3_VOLUME;

namespace {

// Mean over the sphere of radius r of log|x - y| with |y| = rho (equally,
// the mean over the rho-sphere in y at |x| = r). Smooth except for a kink
// at rho = r.
double log_kernel_average(double r, double rho)
{
    if (rho <= r) return std::log(r) + rho * rho / (4.0 * r * r);
    return std::log(rho) + r * r / (4.0 * rho * rho);
}

double log_kernel_average_dr(double r, double rho)
{
    if (rho <= r) return 1.0 / r - rho * rho / (2.0 * r * r * r);
    return r / (2.0 * rho * rho);
}

// Unit vector orthogonal to a.
quad::Vec4 orthogonal_unit(const Vec4& a)
{
    Vec4 trial = (std::abs(a[0]) < 0.9) ? Vec4{1, 0, 0, 0} : Vec4{0, 1, 0, 0};
    double proj = quad::dot(trial, a);
    Vec4 p = {trial[0] - proj * a[0], trial[1] - proj * a[1],
              trial[2] - proj * a[2], trial[3] - proj * a[3]};
    double n = quad::norm(p);
    return {p[0] / n, p[1] / n, p[2] / n, p[3] / n};
}

// Integrate m over the support [in, out], splitting exactly at the kink
// radius when it falls inside.
double rho_integral(const QMeasure& q, double split,
                    const std::function<double(double)>& f)
{
    double a = q.rho_in, b = q.rho_out;
    if (b <= a) return 0.0;
    int n = 48;
    if (split > a && split < b)
        return quad::integrate_gl(f, a, split, n) +
               quad::integrate_gl(f, split, b, n);
    return quad::integrate_gl(f, a, b, n);
}

struct AxialFrame {
    Vec4 a, p;
};

AxialFrame axial_frame(const QMeasure& q)
{
    double n = quad::norm(q.axis);
    Vec4 a = {q.axis[0] / n, q.axis[1] / n, q.axis[2] / n, q.axis[3] / n};
    return {a, orthogonal_unit(a)};
}

// Triple integral over y for an axially symmetric density:
// coordinates (rho, chi = angle from the axis, beta = angle of the
// orthogonal direction relative to x's orthogonal component).
// kernel(rho, cos gamma) receives the angle gamma between x-hat and y-hat.
double axial_integral(const QMeasure& q, double cos_theta, int order,
                      const std::function<double(double, double)>& kernel)
{
    AxialFrame fr = axial_frame(q);
    int n_chi = 4 * order, n_beta = order;
    const auto& gchi = quad::gauss_legendre(n_chi);
    const auto& gbeta = quad::gauss_legendre(n_beta);
    double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));

    auto chi_beta = [&](double rho) {
        std::vector<double> terms;
        terms.reserve(static_cast<std::size_t>(n_chi) * n_beta);
        for (int i = 0; i < n_chi; ++i) {
            double chi = 0.5 * PI * (1.0 + gchi.nodes[i]);
            double wchi = 0.5 * PI * gchi.weights[i] * std::sin(chi) * std::sin(chi);
            Vec4 y = {rho * (std::cos(chi) * fr.a[0] + std::sin(chi) * fr.p[0]),
                      rho * (std::cos(chi) * fr.a[1] + std::sin(chi) * fr.p[1]),
                      rho * (std::cos(chi) * fr.a[2] + std::sin(chi) * fr.p[2]),
                      rho * (std::cos(chi) * fr.a[3] + std::sin(chi) * fr.p[3])};
            double dens = q.density(y);
            if (dens == 0.0) continue;
            for (int j = 0; j < n_beta; ++j) {
                double beta = 0.5 * PI * (1.0 + gbeta.nodes[j]);
                double wbeta = 0.5 * PI * gbeta.weights[j] * std::sin(beta) * 2.0 * PI;
                double cg = cos_theta * std::cos(chi) +
                            sin_theta * std::sin(chi) * std::cos(beta);
                terms.push_back(wchi * wbeta * dens * kernel(rho, cg));
            }
        }
        return rho * rho * rho * quad::pairwise_sum(terms);
    };
    return rho_integral(q, -1.0, chi_beta);
}

// Shell integral for a density without declared symmetry.
double generic_integral(const QMeasure& q, const Vec4& x, int order,
                        const std::function<double(const Vec4&, double)>& kernel)
{
    const auto& rule = quad::sphere_rule(order);
    auto shell = [&](double rho) {
        std::vector<double> terms(rule.points.size());
        for (std::size_t i = 0; i < rule.points.size(); ++i) {
            Vec4 y = {rho * rule.points[i][0], rho * rule.points[i][1],
                      rho * rule.points[i][2], rho * rule.points[i][3]};
            double dens = q.density(y);
            terms[i] = dens == 0.0 ? 0.0 : rule.weights[i] * dens * kernel(y, rho);
        }
        return rho * rho * rho * quad::pairwise_sum(terms);
    };
    return rho_integral(q, quad::norm(x), shell);
}

bool inside_support(const QMeasure& q, double r)
{
    return r >= 0.98 * q.rho_in && r <= 1.02 * q.rho_out;
}

// Polar coordinates centred at x; the log|x - y| singularity becomes the
// integrable log(s) endpoint handled by tanh-sinh.
double polar_log_integral(const NormalMetricSpec& spec, const Vec4& x,
                          int order)
{
    const QMeasure& q = spec.qmeasure;
    const auto& rule = quad::sphere_rule(2 * order);
    double r = quad::norm(x);
    double s_max = r + q.rho_out;
    auto shell = [&](double s) {
        std::vector<double> terms(rule.points.size());
        for (std::size_t i = 0; i < rule.points.size(); ++i) {
            Vec4 y = {x[0] + s * rule.points[i][0], x[1] + s * rule.points[i][1],
                      x[2] + s * rule.points[i][2], x[3] + s * rule.points[i][3]};
            double dens = q.density(y);
            terms[i] = dens == 0.0
                           ? 0.0
                           : rule.weights[i] * dens *
                                 (std::log(quad::norm(y)) - std::log(s));
        }
        return s * s * s * quad::pairwise_sum(terms);
    };
    // The integrand loses smoothness where the x-centred sphere is tangent
    // to the support annulus; split the range exactly there.
    double width = q.rho_out - q.rho_in;
    double s_split = std::min(0.25 * width, 0.5 * s_max);
    std::vector<double> breaks = {std::abs(r - q.rho_in),
                                  std::abs(r - q.rho_out), r + q.rho_in};
    for (double b : breaks)
        if (b > 1e-12) s_split = std::min(s_split, b);
    breaks.push_back(s_max);
    std::sort(breaks.begin(), breaks.end());
    double total = quad::integrate_tanh_sinh(shell, 0.0, s_split);
    double lo = s_split;
    for (double b : breaks) {
        if (b <= lo + 1e-14) continue;
        if (b > s_max) break;
        total += quad::integrate_panels(shell, lo, b, 24, 0.2 * width);
        lo = b;
    }
    return total;
}

}  // namespace

double QMeasure::shell_mass(double rho, int quad_order) const
{
    double rho3 = rho * rho * rho;
    if (symmetry == Symmetry::radial) {
        return rho3 * S3_VOLUME * density({rho, 0, 0, 0});
    }
    if (symmetry == Symmetry::axial) {
        AxialFrame fr = axial_frame(*this);
        int n = 4 * quad_order;
        const auto& g = quad::gauss_legendre(n);
        std::vector<double> terms(n);
        for (int i = 0; i < n; ++i) {
            double chi = 0.5 * PI * (1.0 + g.nodes[i]);
            Vec4 y = {rho * (std::cos(chi) * fr.a[0] + std::sin(chi) * fr.p[0]),
                      rho * (std::cos(chi) * fr.a[1] + std::sin(chi) * fr.p[1]),
                      rho * (std::cos(chi) * fr.a[2] + std::sin(chi) * fr.p[2]),
                      rho * (std::cos(chi) * fr.a[3] + std::sin(chi) * fr.p[3])};
            terms[i] = 0.5 * PI * g.weights[i] * std::sin(chi) * std::sin(chi) *
                       4.0 * PI * density(y);
        }
        return rho3 * quad::pairwise_sum(terms);
    }
    const auto& rule = quad::sphere_rule(quad_order);
    std::vector<double> terms(rule.points.size());
    for (std::size_t i = 0; i < rule.points.size(); ++i) {
        Vec4 y = {rho * rule.points[i][0], rho * rule.points[i][1],
                  rho * rule.points[i][2], rho * rule.points[i][3]};
        terms[i] = rule.weights[i] * density(y);
    }
    return rho3 * quad::pairwise_sum(terms);
}

double QMeasure::total(int quad_order) const
{
    return rho_integral(*this, -1.0,
                        [&](double rho) { return shell_mass(rho, quad_order); });
}

double QMeasure::total_abs(int quad_order) const
{
    // Mass of |density|; shell_mass keeps the sign, so take |.| pointwise.
    QMeasure absq = *this;
    auto d = density;
    absq.density = [d](const Vec4& y) { return std::abs(d(y)); };
    return rho_integral(absq, -1.0, [&](double rho) {
        return absq.shell_mass(rho, quad_order);
    });
}

double eval_w(const NormalMetricSpec& spec, const Vec4& x, int quad_order)
{
    const QMeasure& q = spec.qmeasure;
    double r = quad::norm(x);
    if (r <= 0.0) throw DomainError("eval_w at the puncture");
    double base = spec.alpha * std::log(r) + spec.C;
    if (q.rho_out <= q.rho_in) return base;

    double I = 0.0;
    if (q.symmetry == QMeasure::Symmetry::radial) {
        I = rho_integral(q, r, [&](double rho) {
            return q.shell_mass(rho, quad_order) *
                   (std::log(rho) - log_kernel_average(r, rho));
        });
    } else if (inside_support(q, r)) {
        I = polar_log_integral(spec, x, quad_order);
    } else if (q.symmetry == QMeasure::Symmetry::axial) {
        AxialFrame fr = axial_frame(q);
        double cos_theta = quad::dot(x, fr.a) / r;
        I = axial_integral(q, cos_theta, quad_order,
                           [&](double rho, double cg) {
                               double d2 = r * r + rho * rho - 2.0 * r * rho * cg;
                               return std::log(rho) - 0.5 * std::log(d2);
                           });
    } else {
        I = generic_integral(q, x, quad_order, [&](const Vec4& y, double rho) {
            return std::log(rho) - std::log(quad::norm(quad::sub(x, y)));
        });
    }
    return I / (4.0 * PI * PI) + base;
}

double eval_dw_dr(const NormalMetricSpec& spec, const Vec4& x, int quad_order)
{
    const QMeasure& q = spec.qmeasure;
    double r = quad::norm(x);
    if (r <= 0.0) throw DomainError("eval_dw_dr at the puncture");
    double base = spec.alpha / r;
    if (q.rho_out <= q.rho_in) return base;

    double I = 0.0;
    if (q.symmetry == QMeasure::Symmetry::radial) {
        I = rho_integral(q, r, [&](double rho) {
            return q.shell_mass(rho, quad_order) * log_kernel_average_dr(r, rho);
        });
    } else if (q.symmetry == QMeasure::Symmetry::axial) {
        AxialFrame fr = axial_frame(q);
        double cos_theta = quad::dot(x, fr.a) / r;
        I = axial_integral(q, cos_theta, quad_order,
                           [&](double rho, double cg) {
                               double d2 = r * r + rho * rho - 2.0 * r * rho * cg;
                               return (r - rho * cg) / d2;
                           });
    } else {
        I = generic_integral(q, x, quad_order, [&](const Vec4& y, double rho) {
            (void)rho;
            Vec4 d = quad::sub(x, y);
            return (r * r - quad::dot(x, y)) / (r * quad::dot(d, d));
        });
    }
    return -I / (4.0 * PI * PI) + base;
}

double averaged_factor(const std::function<double(const Vec4&)>& w, double r,
                       int quad_order)
{
    return quad::sphere_mean(
        [&](const Vec4& s) {
            return w({r * s[0], r * s[1], r * s[2], r * s[3]});
        },
        quad_order);
}

double averaged_w(const NormalMetricSpec& spec, double r, int quad_order)
{
    const QMeasure& q = spec.qmeasure;
    double base = spec.alpha * std::log(r) + spec.C;
    if (q.rho_out <= q.rho_in) return base;
    double I = rho_integral(q, r, [&](double rho) {
        return q.shell_mass(rho, quad_order) *
               (std::log(rho) - log_kernel_average(r, rho));
    });
    return I / (4.0 * PI * PI) + base;
}

double averaged_dw_dr(const NormalMetricSpec& spec, double r, int quad_order)
{
    const QMeasure& q = spec.qmeasure;
    double base = spec.alpha / r;
    if (q.rho_out <= q.rho_in) return base;
    double I = rho_integral(q, r, [&](double rho) {
        return q.shell_mass(rho, quad_order) * log_kernel_average_dr(r, rho);
    });
    return -I / (4.0 * PI * PI) + base;
}

double kernel_sphere_average(double abs_y, double r)
{
    if (r <= 0.0) throw DomainError("kernel_sphere_average: r must be positive");
    if (std::abs(abs_y - r) <= 1e-9 * r)
        throw DomainError(
            "kernel_sphere_average: |y| on the sphere of radius r; the closed "
            "form is discontinuous there");
    double m = std::max(abs_y, r);
    return 1.0 / (m * m);
}

double kbar(double r, double abs_y)
{
    if (r <= 0.0) throw DomainError("kbar: r must be positive");
    if (abs_y <= r)
        return (2.0 - abs_y * abs_y / (r * r)) / (16.0 * PI * PI * r);
    return r / (16.0 * PI * PI * abs_y * abs_y);
}

namespace {

// Weighted samples of w (and optionally dw/dr) on the sphere of radius r,
// using the cheapest exact reduction for the measure's symmetry. Weights
// are normalised to sum to 1.
struct SurfaceSamples {
    std::vector<double> w, dwdr, weight;
};

SurfaceSamples sample_surface(const NormalMetricSpec& spec, double r,
                              int quad_order, bool need_deriv)
{
    SurfaceSamples s;
    const QMeasure& q = spec.qmeasure;
    if (q.symmetry == QMeasure::Symmetry::radial || q.rho_out <= q.rho_in) {
        Vec4 x = {r, 0, 0, 0};
        s.w.push_back(eval_w(spec, x, quad_order));
        if (need_deriv) s.dwdr.push_back(eval_dw_dr(spec, x, quad_order));
        s.weight.push_back(1.0);
        return s;
    }
    if (q.symmetry == QMeasure::Symmetry::axial) {
        AxialFrame fr = axial_frame(q);
        int n = quad_order;
        const auto& g = quad::gauss_legendre(n);
        for (int i = 0; i < n; ++i) {
            double th = 0.5 * PI * (1.0 + g.nodes[i]);
            double wt = 0.5 * PI * g.weights[i] * std::sin(th) * std::sin(th) /
                        (0.5 * PI);
            Vec4 x = {r * (std::cos(th) * fr.a[0] + std::sin(th) * fr.p[0]),
                      r * (std::cos(th) * fr.a[1] + std::sin(th) * fr.p[1]),
                      r * (std::cos(th) * fr.a[2] + std::sin(th) * fr.p[2]),
                      r * (std::cos(th) * fr.a[3] + std::sin(th) * fr.p[3])};
            s.w.push_back(eval_w(spec, x, quad_order));
            if (need_deriv) s.dwdr.push_back(eval_dw_dr(spec, x, quad_order));
            s.weight.push_back(wt);
        }
        return s;
    }
    const auto& rule = quad::sphere_rule(quad_order);
    for (std::size_t i = 0; i < rule.points.size(); ++i) {
        Vec4 x = {r * rule.points[i][0], r * rule.points[i][1],
                  r * rule.points[i][2], r * rule.points[i][3]};
        s.w.push_back(eval_w(spec, x, quad_order));
        if (need_deriv) s.dwdr.push_back(eval_dw_dr(spec, x, quad_order));
        s.weight.push_back(rule.weights[i] / S3_VOLUME);
    }
    return s;
}

double weighted_mean(const std::vector<double>& vals,
                     const std::vector<double>& wts)
{
    std::vector<double> terms(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) terms[i] = wts[i] * vals[i];
    std::vector<double> wcopy = wts;
    double tot = quad::pairwise_sum(wcopy);
    return quad::pairwise_sum(terms) / tot;
}

}  // namespace

double lemma1_ratio(const NormalMetricSpec& spec, double k, double r,
                    int quad_order)
{
    if (k <= 0.0) throw DomainError("lemma1_ratio: k must be positive");
    SurfaceSamples s = sample_surface(spec, r, quad_order, false);
    double wbar = weighted_mean(s.w, s.weight);
    // Centre the exponent so the mean stays O(1) regardless of alpha log r.
    std::vector<double> e(s.w.size());
    for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = std::exp(k * (s.w[i] - wbar));
    return std::log(weighted_mean(e, s.weight));
}

MomentReport lemma2_moments(const NormalMetricSpec& spec, double r, int k,
                            int quad_order)
{
    if (k < 1 || k > 3) throw DomainError("lemma2_moments: k must be 1, 2 or 3");
    SurfaceSamples s = sample_surface(spec, r, quad_order, true);
    MomentReport rep;
    std::vector<double> powk(s.dwdr.size()), sq(s.dwdr.size());
    for (std::size_t i = 0; i < s.dwdr.size(); ++i) {
        powk[i] = std::pow(s.dwdr[i], k);
        sq[i] = s.dwdr[i] * s.dwdr[i];
    }
    rep.mean_pow_k = weighted_mean(powk, s.weight);
    rep.scaled_moment = std::pow(r, k) * rep.mean_pow_k;
    rep.mean_sq = weighted_mean(sq, s.weight);
    rep.avg_deriv = weighted_mean(s.dwdr, s.weight);
    rep.deviation = r * r * (rep.mean_sq - rep.avg_deriv * rep.avg_deriv);
    return rep;
}

LaplacianBound laplacian_avg_bound(const NormalMetricSpec& spec, double r,
                                   int quad_order)
{
    const QMeasure& q = spec.qmeasure;
    LaplacianBound out;
    double I = 0.0, Iabs = 0.0;
    if (q.rho_out > q.rho_in) {
        I = rho_integral(q, r, [&](double rho) {
            double m = std::max(rho, r);
            return q.shell_mass(rho, quad_order) / (m * m);
        });
        Iabs = q.total_abs(quad_order);
    }
    // Delta(-log|x-y|) = -2/|x-y|^2 in R^4, so the density enters with a
    // minus sign; 1/max(r,rho)^2 <= 1/r^2 keeps the upper bound valid.
    out.lap_avg = -I / (2.0 * PI * PI) + 2.0 * spec.alpha / (r * r);
    out.bound = (Iabs / (2.0 * PI * PI) + 2.0 * spec.alpha) / (r * r);
    out.holds = out.lap_avg <= out.bound + 1e-12 * std::abs(out.bound) + 1e-15;
    return out;
}

AverageComparison compare_with_average(const NormalMetricSpec& spec, double r,
                                       int quad_order)
{
    SurfaceSamples s = sample_surface(spec, r, quad_order, true);
    double wbar = weighted_mean(s.w, s.weight);
    auto mean_exp = [&](double k) {
        std::vector<double> e(s.w.size());
        for (std::size_t i = 0; i < e.size(); ++i)
            e[i] = std::exp(k * (s.w[i] - wbar));
        return weighted_mean(e, s.weight);
    };
    AverageComparison cmp;
    cmp.ratio_V3 = mean_exp(3.0);
    cmp.ratio_dV4 = mean_exp(4.0);
    double dbar = weighted_mean(s.dwdr, s.weight);
    double hbar = 1.0 / r + dbar;
    if (hbar > 0.0) {
        // V2/V2bar = mean((1/r + w_r) e^{2(w - wbar)}) / (1/r + wbar_r)
        std::vector<double> v2(s.w.size()), v1(s.w.size());
        for (std::size_t i = 0; i < s.w.size(); ++i) {
            double h = 1.0 / r + s.dwdr[i];
            v2[i] = h * std::exp(2.0 * (s.w[i] - wbar));
            v1[i] = h * h * std::exp(s.w[i] - wbar);
        }
        cmp.ratio_V2 = weighted_mean(v2, s.weight) / hbar;
        cmp.ratio_V1 = weighted_mean(v1, s.weight) / (hbar * hbar);
    }
    return cmp;
}

Flags spec_flags(const NormalMetricSpec& spec)
{
    Flags f;
    double total_q = spec.qmeasure.total() / (4.0 * PI * PI);
    f.complete = (1.0 + spec.alpha - total_q) > 0.0;
    f.finite_area = spec.alpha > -1.0;
    return f;
}

Flags averaged_flags(const NormalMetricSpec& spec, int quad_order)
{
    // Probe 1 + r dwbar/dr of the averaged metric far outside / inside the
    // support; positivity at the outer (inner) end gives completeness
    // (finite area).
    double r_out = std::max(1.0, spec.qmeasure.rho_out) * 1e4;
    double r_in = std::min(1.0, spec.qmeasure.rho_in <= 0.0
                                    ? 1.0
                                    : spec.qmeasure.rho_in) *
                  1e-4;
    Flags f;
    f.complete = 1.0 + r_out * averaged_dw_dr(spec, r_out, quad_order) > 0.0;
    f.finite_area = 1.0 + r_in * averaged_dw_dr(spec, r_in, quad_order) > 0.0;
    return f;
}

}  // namespace qcurv::normal
