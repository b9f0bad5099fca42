#include "qcurv/catalog.hpp"

#include <cmath>

#include "qcurv/quadrature.hpp"

namespace qcurv::catalog {

namespace {

using quad::PI;

double phi_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
double phi_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

void check_params(const std::map<std::string, double>& given,
                  const std::vector<std::string>& allowed)
{
    for (const auto& [k, v] : given) {
        (void)v;
        bool ok = false;
        for (const auto& a : allowed) ok = ok || a == k;
        if (!ok) throw DomainError("unknown catalog parameter: " + k);
    }
}

double param(const std::map<std::string, double>& p, const std::string& k,
             double dflt)
{
    auto it = p.find(k);
    return it == p.end() ? dflt : it->second;
}

}  // namespace

CatalogEntry cone(double alpha, double c0)
{
    if (alpha <= -1.0)
        throw DomainError("cone: alpha must exceed -1 (metric degenerates)");
    double s = 1.0 / std::sqrt(1.0 + alpha);

    CatalogEntry e;
    e.id = "cone";
    e.params = {{"alpha", alpha}, {"c0", c0}};
    e.profile = RadialProfile::analytic(
        [c0, s](double t) { return c0 + s * t; },
        [s](double) { return s; }, [](double) { return 0.0; },
        [](double) { return 0.0; }, [](double) { return 0.0; });
    e.profile.attach_density(ConformalDensity::zero());
    e.known.nu = s;
    e.known.mu = s - 1.0;
    e.known.total_q = 0.0;
    e.known.c0 = c0;
    e.known.c1 = s;
    e.known.R = [alpha, c0, s](double r) {
        return 6.0 * (alpha / (1.0 + alpha)) * std::exp(-2.0 * c0) *
               std::pow(r, -2.0 * s);
    };
    return e;
}

CatalogEntry gaussian_end()
{
    CatalogEntry e;
    e.id = "gaussian_end";
    // e^{2t} dominates the window quickly; [-12, 2] keeps the values finite
    // while leaving the growth mode unmistakable to the tail fit.
    e.profile = RadialProfile::analytic(
        [](double t) { return t + std::exp(2.0 * t); },
        [](double t) { return 1.0 + 2.0 * std::exp(2.0 * t); },
        [](double t) { return 4.0 * std::exp(2.0 * t); },
        [](double t) { return 8.0 * std::exp(2.0 * t); },
        [](double t) { return 16.0 * std::exp(2.0 * t); }, -12.0, 2.0);
    e.profile.attach_density(ConformalDensity::zero());
    e.known.nu = 0.0;
    e.known.mu = 0.0;
    e.known.total_q = 0.0;
    e.known.c1 = 1.0;
    e.known.c3 = 1.0;
    e.known.R = [](double r) {
        return -(48.0 + 24.0 * r * r) * std::exp(-2.0 * r * r);
    };
    e.known.violates_hypothesis = true;
    return e;
}

CatalogEntry bump_normal(double mass, double center_t, double width,
                         double alpha, double c0)
{
    if (width <= 0.0)
        throw DomainError("bump_normal: width must be positive");
    if (1.0 + alpha - mass / 4.0 <= 0.0)
        throw DomainError(
            "bump_normal: mass/4 - alpha >= 1 leaves no complete end");

    const double c = center_t, sg = width;
    auto F = [mass, c, sg](double t) {
        double z = (t - c) / sg;
        return mass * std::exp(-0.5 * z * z) / (sg * std::sqrt(2.0 * PI));
    };
    // Tail moments of the Gaussian against e^{+-2x} in closed form.
    auto i1 = [mass, c, sg](double t) {
        return mass * std::exp(-2.0 * c + 2.0 * sg * sg) *
               phi_sf((t - c) / sg + 2.0 * sg);
    };
    auto i2 = [mass, c, sg](double t) {
        return mass * std::exp(2.0 * c + 2.0 * sg * sg) *
               phi_cdf((t - c) / sg - 2.0 * sg);
    };
    auto m_below = [mass, c, sg](double t) {
        return mass * phi_cdf((t - c) / sg);
    };

    auto f1 = [i1, i2, m_below, mass](double t) {
        double mm = m_below(t);
        return 0.125 * (-std::exp(2.0 * t) * i1(t) - mm +
                        std::exp(-2.0 * t) * i2(t) + (mass - mm));
    };
    auto f2 = [i1, i2](double t) {
        return -0.25 * (std::exp(2.0 * t) * i1(t) + std::exp(-2.0 * t) * i2(t));
    };
    auto f3 = [i1, i2](double t) {
        return 0.5 * (-std::exp(2.0 * t) * i1(t) + std::exp(-2.0 * t) * i2(t));
    };
    auto f4 = [F, f2](double t) { return F(t) + 4.0 * f2(t); };
    // f itself only through its derivative, anchored by f(0) = 0.
    auto f0 = [f1](double t) {
        if (t > 0.0) return quad::integrate_panels(f1, 0.0, t, 24, 0.5);
        return -quad::integrate_panels(f1, t, 0.0, 24, 0.5);
    };

    double c1 = 1.0 + alpha - mass / 8.0;

    CatalogEntry e;
    e.id = "bump_normal";
    e.params = {{"mass", mass},
                {"center_t", center_t},
                {"width", width},
                {"alpha", alpha},
                {"c0", c0}};
    e.profile = RadialProfile::analytic(
        [c0, c1, f0](double t) { return c0 + c1 * t + f0(t); },
        [c1, f1](double t) { return c1 + f1(t); }, f2, f3, f4);
    ConformalDensity d;
    d.F = F;
    d.envelope_amplitude = mass / (sg * std::sqrt(2.0 * PI));
    d.envelope_rate = 1.0;  // conservative; the true decay is Gaussian
    e.profile.attach_density(std::move(d));

    e.known.nu = 1.0 + alpha - mass / 4.0;
    e.known.mu = alpha;
    e.known.total_q = mass / 4.0;
    e.known.c0 = c0;
    e.known.c1 = c1;
    return e;
}

std::vector<std::string> list_ids()
{
    return {"cone", "euclidean", "gaussian_end", "bump_normal"};
}

CatalogEntry make(const std::string& id,
                  const std::map<std::string, double>& params)
{
    if (id == "cone") {
        check_params(params, {"alpha", "c0"});
        return cone(param(params, "alpha", 0.0), param(params, "c0", 0.0));
    }
    if (id == "euclidean") {
        check_params(params, {"c0"});
        CatalogEntry e = cone(0.0, param(params, "c0", 0.0));
        e.id = "euclidean";
        return e;
    }
    if (id == "gaussian_end") {
        check_params(params, {});
        return gaussian_end();
    }
    if (id == "bump_normal") {
        check_params(params, {"mass", "center_t", "width", "alpha", "c0"});
        return bump_normal(param(params, "mass", 0.8),
                           param(params, "center_t", 0.0),
                           param(params, "width", 0.5),
                           param(params, "alpha", 0.0),
                           param(params, "c0", 0.0));
    }
    throw DomainError("unknown catalog id: " + id);
}

std::vector<std::string> qmeasure_ids()
{
    return {"radial_bump", "offcenter_bump", "shell"};
}

QCatalogEntry make_qmeasure(const std::string& id,
                            const std::map<std::string, double>& params)
{
    using normal::QMeasure;
    QCatalogEntry e;
    e.id = id;
    if (id == "radial_bump") {
        check_params(params, {"amplitude", "center", "width", "alpha"});
        double A = param(params, "amplitude", 1.0);
        double rho0 = param(params, "center", 1.0);
        double s = param(params, "width", 0.1);
        e.spec.alpha = param(params, "alpha", 0.0);
        e.spec.qmeasure.density = [A, rho0, s](const quad::Vec4& y) {
            double z = (quad::norm(y) - rho0) / s;
            return A * std::exp(-0.5 * z * z);
        };
        e.spec.qmeasure.rho_in = std::max(0.0, rho0 - 8.0 * s);
        e.spec.qmeasure.rho_out = rho0 + 8.0 * s;
        e.spec.qmeasure.symmetry = QMeasure::Symmetry::radial;
        e.spec.qmeasure.id = id;
        return e;
    }
    if (id == "offcenter_bump") {
        check_params(params, {"amplitude", "distance", "width", "alpha"});
        double A = param(params, "amplitude", 1.0);
        double d = param(params, "distance", 1.0);
        double s = param(params, "width", 0.15);
        e.spec.alpha = param(params, "alpha", 0.0);
        quad::Vec4 p = {d, 0.0, 0.0, 0.0};
        // Hard-truncated at 6 sigma (height ~1.5e-8 A) so the support
        // annulus stays away from the origin.
        e.spec.qmeasure.density = [A, p, s](const quad::Vec4& y) {
            quad::Vec4 dif = quad::sub(y, p);
            double z2 = quad::dot(dif, dif) / (s * s);
            return z2 <= 36.0 ? A * std::exp(-0.5 * z2) : 0.0;
        };
        e.spec.qmeasure.rho_in = std::max(0.0, d - 6.0 * s);
        e.spec.qmeasure.rho_out = d + 6.0 * s;
        e.spec.qmeasure.symmetry = QMeasure::Symmetry::axial;
        e.spec.qmeasure.axis = {1, 0, 0, 0};
        e.spec.qmeasure.id = id;
        return e;
    }
    if (id == "shell") {
        check_params(params, {"amplitude", "rho_in", "rho_out", "alpha"});
        double A = param(params, "amplitude", 1.0);
        double ri = param(params, "rho_in", 0.8);
        double ro = param(params, "rho_out", 1.2);
        if (!(ro > ri && ri >= 0.0))
            throw DomainError("shell: need 0 <= rho_in < rho_out");
        e.spec.alpha = param(params, "alpha", 0.0);
        e.spec.qmeasure.density = [A, ri, ro](const quad::Vec4& y) {
            double r = quad::norm(y);
            return (r >= ri && r <= ro) ? A : 0.0;
        };
        e.spec.qmeasure.rho_in = ri;
        e.spec.qmeasure.rho_out = ro;
        e.spec.qmeasure.symmetry = QMeasure::Symmetry::radial;
        e.spec.qmeasure.id = id;
        return e;
    }
    throw DomainError("unknown q-measure id: " + id);
}

}  // namespace qcurv::catalog
