#include "qcurv/mixed_volumes.hpp"

#include <cmath>

namespace qcurv::volumes {

using quad::S3_VOLUME;
using quad::Vec4;

namespace {

constexpr double HALF_PI2_CBRT_ARG = quad::PI * quad::PI / 2.0;  // pi^2/2

double edge_guard(const RadialProfile& p)
{
    return p.mode() == RadialProfile::Mode::sampled ? 3.0 * p.h() : 0.0;
}

}  // namespace

MixedVolumes radial_mixed_volumes(const RadialProfile& p, double r)
{
    if (r <= 0.0) throw DomainError("radius must be positive");
    double t = std::log(r);
    double guard = edge_guard(p);
    if (t < p.t_min() + guard || t > p.t_max() - guard)
        throw DomainError("radius outside e^[t_min, t_max]");

    MixedVolumes mv;
    double v = p.v(t), v1 = p.v1(t);
    mv.V3 = 0.25 * S3_VOLUME * std::exp(3.0 * v);
    mv.V2 = 0.25 * S3_VOLUME * v1 * std::exp(2.0 * v);
    mv.V1 = 0.25 * S3_VOLUME * v1 * v1 * std::exp(v);
    mv.flagged_negative = (v1 <= 0.0);

    double t0 = p.t_min() + guard;
    double c = p.v1(t0);
    double tail = 0.0;
    if (c > 1e-8) {
        tail = std::exp(4.0 * p.v(t0)) / (4.0 * c);
    } else {
        mv.V4_tail_resolved = false;
    }
    double body = quad::integrate_panels(
        [&](double s) { return std::exp(4.0 * p.v(s)); }, t0, t, 16, 0.5);
    mv.V4 = S3_VOLUME * (tail + body);
    return mv;
}

MixedVolumes general_mixed_volumes(const ConformalFactor& cf, double r,
                                   int quad_order, double inner_cutoff)
{
    if (r <= 0.0) throw DomainError("radius must be positive");
    const auto& rule = quad::sphere_rule(quad_order);

    auto surface = [&](const std::function<double(const Vec4&)>& f,
                       double rad) {
        std::vector<double> terms(rule.points.size());
        for (std::size_t i = 0; i < rule.points.size(); ++i) {
            Vec4 x = {rad * rule.points[i][0], rad * rule.points[i][1],
                      rad * rule.points[i][2], rad * rule.points[i][3]};
            terms[i] = rule.weights[i] * f(x);
        }
        return quad::pairwise_sum(terms);
    };

    MixedVolumes mv;
    double r3 = r * r * r;
    mv.V3 = 0.25 * r3 * surface([&](const Vec4& x) {
        return std::exp(3.0 * cf.w(x));
    }, r);
    mv.V2 = 0.25 * r3 * surface([&](const Vec4& x) {
        return (1.0 / r + cf.dw_dr(x)) * std::exp(2.0 * cf.w(x));
    }, r);
    mv.V1 = 0.25 * r3 * surface([&](const Vec4& x) {
        double h = 1.0 / r + cf.dw_dr(x);
        return h * h * std::exp(cf.w(x));
    }, r);

    // Shell integration of V4 in t = log s from the inner cutoff, with a
    // growth-rate tail estimate below it.
    auto shell = [&](double t) {
        return std::exp(4.0 * t) * surface([&](const Vec4& x) {
            return std::exp(4.0 * cf.w(x));
        }, std::exp(t));
    };
    double t_cut = std::log(inner_cutoff), t_top = std::log(r);
    double body = quad::integrate_panels(shell, t_cut, t_top, 16, 0.5);
    double g0 = shell(t_cut), gm = shell(t_cut - 0.25);
    double tail = 0.0;
    if (g0 > 0.0 && gm > 0.0) {
        double rate = std::log(g0 / gm) / 0.25;  // d/dt log g
        if (rate > 1e-8)
            tail = g0 / rate;
        else
            mv.V4_tail_resolved = false;
    } else {
        mv.V4_tail_resolved = false;
    }
    mv.V4 = body + tail;
    return mv;
}

std::map<std::pair<int, int>, std::optional<double>> iso_ratios_at(
    const MixedVolumes& mv)
{
    std::map<std::pair<int, int>, std::optional<double>> C;
    const double k = std::cbrt(HALF_PI2_CBRT_ARG);  // (pi^2/2)^{1/3}

    std::optional<double> c34, c23, c12;
    if (mv.V3 > 0.0 && mv.V4 > 0.0)
        c34 = std::pow(mv.V3, 4.0 / 3.0) / (k * mv.V4);
    if (mv.V3 > 0.0) c23 = mv.V2 / (k * std::pow(mv.V3, 2.0 / 3.0));
    if (mv.V1 >= 0.0 && mv.V2 > 0.0)
        c12 = std::pow(mv.V1, 2.0 / 3.0) / (k * std::cbrt(mv.V2));

    C[{3, 4}] = c34;
    C[{2, 3}] = c23;
    C[{1, 2}] = c12;
    C[{2, 4}] = (c34 && c23)
                    ? std::optional<double>(std::cbrt(*c34) *
                                            std::pow(*c23, 2.0 / 3.0))
                    : std::nullopt;
    C[{1, 3}] = (c23 && c12 && *c23 >= 0.0)
                    ? std::optional<double>(std::pow(*c23, 0.25) *
                                            std::pow(*c12, 0.75))
                    : std::nullopt;
    C[{1, 4}] = (c34 && c23 && c12 && *c23 >= 0.0)
                    ? std::optional<double>(std::pow(*c34, 1.0 / 9.0) *
                                            std::pow(*c23, 2.0 / 9.0) *
                                            std::pow(*c12, 2.0 / 3.0))
                    : std::nullopt;
    return C;
}

void iso_ratios(MixedVolumeTable& tbl)
{
    for (const auto& key : ratio_keys()) tbl.C[key].clear();
    for (std::size_t i = 0; i < tbl.radii.size(); ++i) {
        MixedVolumes mv;
        mv.V4 = tbl.V4[i];
        mv.V3 = tbl.V3[i];
        mv.V2 = tbl.V2[i];
        mv.V1 = tbl.V1[i];
        auto C = iso_ratios_at(mv);
        for (const auto& key : ratio_keys()) tbl.C[key].push_back(C[key]);
    }
}

MixedVolumeTable radial_table(const RadialProfile& p,
                              const std::vector<double>& radii)
{
    MixedVolumeTable tbl;
    tbl.radii = radii;
    for (double r : radii) {
        MixedVolumes mv = radial_mixed_volumes(p, r);
        tbl.V4.push_back(mv.V4);
        tbl.V3.push_back(mv.V3);
        tbl.V2.push_back(mv.V2);
        tbl.V1.push_back(mv.V1);
    }
    iso_ratios(tbl);
    return tbl;
}

}  // namespace qcurv::volumes
