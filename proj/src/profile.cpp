#include "qcurv/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qcurv/quadrature.hpp"

namespace qcurv {

using quad::TailOptions;

namespace {

TailOptions tail_options(const ConformalDensity& d)
{
    TailOptions opt;
    opt.support = d.support;
    return opt;
}

}  // namespace

double ConformalDensity::total() const
{
    return quad::integrate_line(F, tail_options(*this));
}

double ConformalDensity::total_abs() const
{
    auto af = [this](double t) { return std::abs(F(t)); };
    return quad::integrate_line(af, tail_options(*this));
}

bool ConformalDensity::integrable(double tol) const
{
    if (support) return std::isfinite(total_abs());
    double w = 16.0;
    double prev = quad::integrate_panels(F, -w, w, 16, 0.5);
    double cur = quad::integrate_panels(F, -2.0 * w, 2.0 * w, 16, 0.5);
    return std::isfinite(cur) && std::abs(cur - prev) < tol * std::max(1.0, std::abs(cur));
}

ConformalDensity ConformalDensity::zero()
{
    ConformalDensity d;
    d.F = [](double) { return 0.0; };
    d.support = {{0.0, 0.0}};
    return d;
}

RadialProfile RadialProfile::analytic(std::function<double(double)> v,
                                      std::function<double(double)> v1,
                                      std::function<double(double)> v2,
                                      std::function<double(double)> v3,
                                      std::function<double(double)> v4,
                                      double t_min, double t_max)
{
    RadialProfile p;
    p.mode_ = Mode::analytic;
    p.t_min_ = t_min;
    p.t_max_ = t_max;
    p.h_ = 1.0 / 64.0;
    p.v_ = std::move(v);
    p.v1_ = std::move(v1);
    p.v2_ = std::move(v2);
    p.v3_ = std::move(v3);
    p.v4_ = std::move(v4);
    return p;
}

RadialProfile RadialProfile::sampled(std::vector<double> values, double t_min,
                                     double h)
{
    if (values.size() < 8)
        throw std::invalid_argument("sampled profile needs at least 8 grid points");
    if (h <= 0.0) throw std::invalid_argument("grid spacing must be positive");
    RadialProfile p;
    p.mode_ = Mode::sampled;
    p.t_min_ = t_min;
    p.h_ = h;
    p.t_max_ = t_min + h * (static_cast<double>(values.size()) - 1.0);
    p.values_ = std::move(values);
    return p;
}

double RadialProfile::deriv(double t, int order) const
{
    if (order < 0 || order > 4)
        throw std::invalid_argument("derivative order must be in [0, 4]");
    if (t < t_min_ - 1e-12 || t > t_max_ + 1e-12)
        throw DomainError("t outside profile domain");
    if (mode_ == Mode::analytic) {
        switch (order) {
            case 0: return v_(t);
            case 1: return v1_(t);
            case 2: return v2_(t);
            case 3: return v3_(t);
            default: return v4_(t);
        }
    }
    // Sampled mode: differentiate the degree-6 polynomial through the 7
    // nodes nearest t.
    const int n = static_cast<int>(values_.size());
    int center = static_cast<int>(std::lround((t - t_min_) / h_));
    center = std::clamp(center, 3, n - 4);
    double tc = t_min_ + center * h_;
    if (order >= 1 && (t - t_min_ < 3.0 * h_ - 1e-12 ||
                       t_max_ - t < 3.0 * h_ - 1e-12))
        throw DomainError("sampled-mode derivative within 3h of grid edge");
    // Newton form in the scaled variable u = (t - tc)/h on nodes
    // u = -3..3; divided differences, then derivatives by synthetic
    // differentiation of the Newton polynomial.
    double dd[7];
    double xs[7];
    for (int i = 0; i < 7; ++i) {
        dd[i] = values_[center - 3 + i];
        xs[i] = static_cast<double>(i - 3);
    }
    for (int lvl = 1; lvl < 7; ++lvl)
        for (int i = 6; i >= lvl; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - lvl]);
    // Evaluate p and derivatives at u via Horner with derivative carries.
    double u = (t - tc) / h_;
    double p[5] = {dd[6], 0, 0, 0, 0};
    for (int i = 5; i >= 0; --i) {
        for (int k = 4; k >= 1; --k) p[k] = p[k] * (u - xs[i]) + p[k - 1];
        p[0] = p[0] * (u - xs[i]) + dd[i];
    }
    static const double fact[5] = {1, 1, 2, 6, 24};
    return p[order] * fact[order] / std::pow(h_, order);
}

bool RadialProfile::is_complete() const
{
    double span = t_max_ - t_min_;
    double lo = t_max_ - 0.1 * span;
    double liminf = std::numeric_limits<double>::infinity();
    double step = std::max(h_, span / 512.0);
    for (double t = lo; t + step <= t_max_; t += step) {
        double slope = (v(t + step) - v(t)) / step;
        liminf = std::min(liminf, slope);
    }
    return liminf >= -1e-10;
}

double RadialProfile::sup_v1() const
{
    double lo = t_min_ + 3.0 * h_, hi = t_max_ - 3.0 * h_;
    double sup = 0.0;
    int n = 256;
    for (int i = 0; i <= n; ++i) {
        double t = lo + (hi - lo) * i / n;
        sup = std::max(sup, std::abs(v1(t)));
    }
    return sup;
}

}  // namespace qcurv
