#include "qcurv/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace qcurv::quad {

namespace {

GaussRule compute_gauss(int n)
{
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

std::mutex g_cache_mutex;

}  // namespace

const GaussRule& gauss_legendre(int n)
{
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss(n)).first;
    return it->second;
}

double pairwise_sum(std::vector<double>& terms)
{
    if (terms.empty()) return 0.0;
    std::size_t n = terms.size();
    while (n > 1) {
        std::size_t half = (n + 1) / 2;
        for (std::size_t i = 0; i < n / 2; ++i)
            terms[i] = terms[2 * i] + terms[2 * i + 1];
        if (n % 2 == 1) terms[n / 2] = terms[n - 1];
        n = half;
    }
    return terms[0];
}

double integrate_gl(const Fn1& f, double a, double b, int n)
{
    const GaussRule& rule = gauss_legendre(n);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    std::vector<double> terms(n);
    for (int i = 0; i < n; ++i)
        terms[i] = rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * pairwise_sum(terms);
}

double integrate_panels(const Fn1& f, double a, double b, int n, double panel)
{
    if (b <= a) return 0.0;
    int np = std::max(1, static_cast<int>(std::ceil((b - a) / panel)));
    std::vector<double> parts(np);
    for (int p = 0; p < np; ++p) {
        double pa = a + (b - a) * p / np;
        double pb = a + (b - a) * (p + 1) / np;
        parts[p] = integrate_gl(f, pa, pb, n);
    }
    return pairwise_sum(parts);
}

namespace {

// exp-sinh on (0, infinity): x = exp((pi/2) sinh(u)).
double exp_sinh_level(const Fn1& g, double h, int kmax)
{
    std::vector<double> terms;
    terms.reserve(2 * kmax + 1);
    for (int k = -kmax; k <= kmax; ++k) {
        double u = k * h;
        double s = std::sinh(u);
        double x = std::exp(0.5 * PI * s);
        double w = 0.5 * PI * std::cosh(u) * x * h;
        if (!std::isfinite(x) || x == 0.0 || !std::isfinite(w)) continue;
        double v = g(x) * w;
        if (std::isfinite(v)) terms.push_back(v);
    }
    return pairwise_sum(terms);
}

}  // namespace

double integrate_right(const Fn1& f, double a, const TailOptions& opt)
{
    if (opt.support) {
        double lo = std::max(a, opt.support->first);
        double hi = opt.support->second;
        if (hi <= lo) return 0.0;
        return integrate_panels(f, lo, hi, 24, 0.5);
    }
    auto g = [&](double x) { return f(a + x); };
    double h = 0.5;
    double prev = exp_sinh_level(g, h, 8);
    for (int level = 1; level <= opt.max_level; ++level) {
        h *= 0.5;
        double cur = exp_sinh_level(g, h, 8 << level);
        if (std::abs(cur - prev) <=
            opt.rel_tol * std::max(std::abs(cur), 1.0) + opt.abs_floor)
            return cur;
        prev = cur;
    }
    return prev;
}

double integrate_left(const Fn1& f, double b, const TailOptions& opt)
{
    TailOptions mirrored = opt;
    if (opt.support)
        mirrored.support = {-opt.support->second, -opt.support->first};
    return integrate_right([&](double x) { return f(-x); }, -b, mirrored);
}

double integrate_line(const Fn1& f, const TailOptions& opt)
{
    if (opt.support) {
        double lo = opt.support->first, hi = opt.support->second;
        if (hi <= lo) return 0.0;
        return integrate_panels(f, lo, hi, 24, 0.5);
    }
    return integrate_left(f, 0.0, opt) + integrate_right(f, 0.0, opt);
}

double integrate_tanh_sinh(const Fn1& f, double a, double b, double rel_tol,
                           int max_level)
{
    if (b <= a) return 0.0;
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    // x = mid + half * tanh((pi/2) sinh(u))
    auto level_sum = [&](double h, int kmax) {
        std::vector<double> terms;
        terms.reserve(2 * kmax + 1);
        for (int k = -kmax; k <= kmax; ++k) {
            double u = k * h;
            double s = std::sinh(u);
            double t = std::tanh(0.5 * PI * s);
            double dxdu = 0.5 * PI * std::cosh(u) /
                          std::pow(std::cosh(0.5 * PI * s), 2);
            double x = mid + half * t;
            if (x <= a || x >= b) continue;
            double v = f(x) * half * dxdu * h;
            if (std::isfinite(v)) terms.push_back(v);
        }
        return pairwise_sum(terms);
    };
    double h = 0.5;
    double prev = level_sum(h, 8);
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        double cur = level_sum(h, 8 << level);
        if (std::abs(cur - prev) <= rel_tol * std::max(std::abs(cur), 1.0))
            return cur;
        prev = cur;
    }
    return prev;
}

double norm(const Vec4& a) { return std::sqrt(dot(a, a)); }

Vec4 sub(const Vec4& a, const Vec4& b)
{
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

namespace {

SphereRule compute_sphere(int order)
{
    const GaussRule& g = gauss_legendre(order);
    SphereRule rule;
    rule.points.reserve(static_cast<std::size_t>(order) * order * order);
    rule.weights.reserve(rule.points.capacity());
    for (int i = 0; i < order; ++i) {
        double psi = 0.5 * PI * (1.0 + g.nodes[i]);
        double wpsi = 0.5 * PI * g.weights[i] * std::sin(psi) * std::sin(psi);
        for (int j = 0; j < order; ++j) {
            double th = 0.5 * PI * (1.0 + g.nodes[j]);
            double wth = 0.5 * PI * g.weights[j] * std::sin(th);
            for (int k = 0; k < order; ++k) {
                double ph = PI * (1.0 + g.nodes[k]);
                double wph = PI * g.weights[k];
                rule.points.push_back(
                    {std::cos(psi), std::sin(psi) * std::cos(th),
                     std::sin(psi) * std::sin(th) * std::cos(ph),
                     std::sin(psi) * std::sin(th) * std::sin(ph)});
                rule.weights.push_back(wpsi * wth * wph);
            }
        }
    }
    return rule;
}

}  // namespace

const SphereRule& sphere_rule(int order)
{
    static std::map<int, SphereRule> cache;
    // Separate mutex: compute_sphere re-enters gauss_legendre.
    static std::mutex sphere_mutex;
    std::lock_guard<std::mutex> lock(sphere_mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_sphere(order)).first;
    return it->second;
}

double sphere_mean(const std::function<double(const Vec4&)>& f, int order)
{
    const SphereRule& rule = sphere_rule(order);
    std::vector<double> terms(rule.points.size());
    for (std::size_t i = 0; i < rule.points.size(); ++i)
        terms[i] = rule.weights[i] * f(rule.points[i]);
    return pairwise_sum(terms) / S3_VOLUME;
}

}  // namespace qcurv::quad
