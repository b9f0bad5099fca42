#ifndef QCURV_PROFILE_HPP
#define QCURV_PROFILE_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Radial conformal factors in logarithmic coordinates t = log r.
// The central object is v(t) = w(e^t) + t with derivatives through order 4,
// either from analytic callbacks or reconstructed from samples on a uniform
// t-grid.

namespace qcurv {

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Radial density F(t) = 2 Q_g e^{4v(t)} together with an optional compact
// support interval (integration is clipped and split exactly there) and a
// user-declared decay envelope |F| <= A e^{-a|t|} used for error reporting.
struct ConformalDensity {
    std::function<double(double)> F;
    std::optional<std::pair<double, double>> support;
    double envelope_amplitude = 0.0;  // A; 0 means "not declared"
    double envelope_rate = 0.0;       // a

    double operator()(double t) const { return F(t); }

    // \int F dt and \int |F| dt over the working window.
    double total() const;
    double total_abs() const;

    // True when doubling the truncation window moves \int F by less than tol.
    bool integrable(double tol = 1e-8) const;

    static ConformalDensity zero();
};

// Coefficients of v(t) = c0 + c1 t + c2 e^{-2t} + c3 e^{2t} + f(t).
struct AsymptoticDecomposition {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    double fit_residual = 0.0;
};

class RadialProfile {
public:
    enum class Mode { analytic, sampled };

    // Default-constructed profiles are empty placeholders; use the factories.
    RadialProfile() = default;

    // Analytic profile: v and derivatives through order 4 in closed form.
    static RadialProfile analytic(std::function<double(double)> v,
                                  std::function<double(double)> v1,
                                  std::function<double(double)> v2,
                                  std::function<double(double)> v3,
                                  std::function<double(double)> v4,
                                  double t_min = -12.0, double t_max = 12.0);

    // Sampled profile on a uniform grid; derivatives come from the local
    // 7-point interpolating polynomial (exact on quartics; the 4th
    // derivative is the weakest, use the loosened sampled tolerances).
    static RadialProfile sampled(std::vector<double> values, double t_min,
                                 double h);

    Mode mode() const { return mode_; }
    double t_min() const { return t_min_; }
    double t_max() const { return t_max_; }
    double h() const { return h_; }
    const std::vector<double>& values() const { return values_; }

    // v and derivatives; order in [0, 4]. Sampled mode refuses within
    // 3h of the grid edge (stencil underflow) and outside the domain.
    double deriv(double t, int order) const;
    double v(double t) const { return deriv(t, 0); }
    double v1(double t) const { return deriv(t, 1); }
    double v2(double t) const { return deriv(t, 2); }
    double v3(double t) const { return deriv(t, 3); }
    double v4(double t) const { return deriv(t, 4); }

    // Optional attached density; radial_core::q_density_from_profile fills
    // it for self-consistent profiles.
    const std::optional<ConformalDensity>& density() const { return density_; }
    void attach_density(ConformalDensity d) { density_ = std::move(d); }

    // lim inf of the finite-difference slope on the top decade of the grid
    // must be >= 0 for the end to be metrically complete.
    bool is_complete() const;

    // sup |v'| on the interior grid; used for fit thresholds.
    double sup_v1() const;

private:
    Mode mode_ = Mode::analytic;
    double t_min_ = -12.0, t_max_ = 12.0, h_ = 1.0 / 64.0;
    std::function<double(double)> v_, v1_, v2_, v3_, v4_;
    std::vector<double> values_;
    std::optional<ConformalDensity> density_;
};

}  // namespace qcurv

#endif
