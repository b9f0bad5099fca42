#ifndef QCURV_CATALOG_HPP
#define QCURV_CATALOG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcurv/normal_metric.hpp"
#include "qcurv/profile.hpp"

// Closed-form test metrics with known ground truth; every other module's
// regression suite is written against these.

namespace qcurv::catalog {

struct KnownValues {
    double nu = 0.0, mu = 0.0, total_q = 0.0;
    double c0 = 0.0, c1 = 0.0, c2 = 0.0, c3 = 0.0;
    // Scalar curvature R(r) in closed form, when available.
    std::function<double(double)> R;
    bool violates_hypothesis = false;  // tail-limit extraction must refuse
};

struct CatalogEntry {
    std::string id;
    std::map<std::string, double> params;
    RadialProfile profile;  // analytic derivatives through order 4
    KnownValues known;
};

// w(r) = (1/sqrt(1+alpha) - 1) log r + c0; the flat cone of angle defect
// alpha. alpha = 0 is the Euclidean baseline.
CatalogEntry cone(double alpha, double c0 = 0.0);

// v(t) = t + e^{2t} (the e^{2 r^2} metric): zero Q-density but an exact
// e^{2t} growth mode, so tail-limit extraction must refuse it.
CatalogEntry gaussian_end();

// Radial generalised normal metric with Gaussian density
// F(t) = mass * N(center_t, width^2) and log coefficient alpha;
// v = c0 + (1 + alpha - mass/8) t + f(t) with f the explicit particular
// solution (f(0) = 0 convention).
CatalogEntry bump_normal(double mass, double center_t, double width,
                         double alpha, double c0 = 0.0);

// Registry addressable by id; unknown params are rejected.
std::vector<std::string> list_ids();
CatalogEntry make(const std::string& id,
                  const std::map<std::string, double>& params = {});

// Q-measure entries for the normal-metric suite.
struct QCatalogEntry {
    std::string id;
    normal::NormalMetricSpec spec;
};
std::vector<std::string> qmeasure_ids();
QCatalogEntry make_qmeasure(const std::string& id,
                            const std::map<std::string, double>& params = {});

}  // namespace qcurv::catalog

#endif
