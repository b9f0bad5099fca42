#ifndef QCURV_QUADRATURE_HPP
#define QCURV_QUADRATURE_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

// Quadrature building blocks: Gauss-Legendre rules, composite panels,
// double-exponential rules for semi-infinite tails, and the product rule
// on the unit 3-sphere in hyperspherical angles.

namespace qcurv::quad {

using Fn1 = std::function<double(double)>;

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// Nodes/weights of the n-point Gauss-Legendre rule, computed by Newton
// iteration on the Legendre polynomial and cached per order.
const GaussRule& gauss_legendre(int n);

// Deterministic pairwise summation; used for all quadrature reductions so
// results do not depend on accumulation order.
double pairwise_sum(std::vector<double>& terms);

// Integral over [a, b] with a single n-point rule.
double integrate_gl(const Fn1& f, double a, double b, int n = 24);

// Composite rule: panels of length <= panel, n points each.
double integrate_panels(const Fn1& f, double a, double b, int n = 16,
                        double panel = 1.0);

struct TailOptions {
    double rel_tol = 1e-12;
    double abs_floor = 1e-300;
    // When the integrand has compact support, clip to it and integrate with
    // panels split exactly at the endpoints (no smoothness assumed there).
    std::optional<std::pair<double, double>> support;
    int max_level = 12;
};

// \int_a^\infty f(x) dx for integrands decaying at least exponentially.
// Uses an exp-sinh change of variables with level doubling until two
// successive levels agree to rel_tol, or clipped panels when a compact
// support is declared.
double integrate_right(const Fn1& f, double a, const TailOptions& opt = {});

// \int_{-\infty}^b f(x) dx, mirrored.
double integrate_left(const Fn1& f, double b, const TailOptions& opt = {});

// \int_{-\infty}^{\infty} f(x) dx.
double integrate_line(const Fn1& f, const TailOptions& opt = {});

// tanh-sinh rule on (a, b); tolerates integrable endpoint singularities
// such as log(x - a).
double integrate_tanh_sinh(const Fn1& f, double a, double b,
                           double rel_tol = 1e-12, int max_level = 10);

using Vec4 = std::array<double, 4>;

inline double dot(const Vec4& a, const Vec4& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}
double norm(const Vec4& a);
Vec4 sub(const Vec4& a, const Vec4& b);

// Product Gauss rule on the unit 3-sphere: angles (psi, theta, phi) with
// measure sin^2(psi) sin(theta) dpsi dtheta dphi; total weight 2*pi^2.
struct SphereRule {
    std::vector<Vec4> points;     // unit vectors
    std::vector<double> weights;  // sum to 2*pi^2
};
const SphereRule& sphere_rule(int order);

// Mean of f over the unit sphere (weights normalised by 2*pi^2).
double sphere_mean(const std::function<double(const Vec4&)>& f, int order);

inline constexpr double PI = 3.14159265358979323846;
inline constexpr double S3_VOLUME = 2.0 * PI * PI;  // |S^3|

}  // namespace qcurv::quad

#endif
