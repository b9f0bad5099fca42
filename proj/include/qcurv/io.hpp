#ifndef QCURV_IO_HPP
#define QCURV_IO_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcurv/cgb.hpp"
#include "qcurv/mixed_volumes.hpp"
#include "qcurv/profile.hpp"

// Scenario loading and deterministic report serialization. JSON output is
// emitted with a fixed field order and 17-significant-digit floats so that
// identical runs produce byte-identical files.

namespace qcurv::io {

std::string format_double(double x);  // %.17g

// A metric source: either a catalog id with parameters or a profile file.
struct MetricRef {
    std::string catalog_id;  // empty when profile_path is used
    std::map<std::string, double> params;
    std::string profile_path;
};

struct ManifoldRef {
    int chi = 1;
    double weyl_energy = 0.0;
    double interior_q = 0.0;
    double glue_radius = 1.0;
    std::vector<MetricRef> ends, sings;
};

struct Scenario {
    std::string name = "scenario";
    std::optional<MetricRef> metric;
    // Q-measure source for the normal-metric tasks.
    std::string qcatalog_id;
    std::map<std::string, double> qparams;
    std::optional<ManifoldRef> manifold;
    std::vector<std::string> tasks;
    int chi = 1;
    std::map<std::string, double> tolerances;
    // When set, a refusal carrying this diagnostic fragment counts as the
    // expected outcome (negative-control scenarios).
    std::string expect_refusal;
};

Scenario load_scenario(const std::string& path);

// Sampled profile JSON: {"mode": "sampled", "t_min": ..., "h": ...,
// "values": [...]}.
RadialProfile load_profile(const std::string& path);

// Resolve a metric reference, optionally re-windowed to [a, b] (must lie
// inside the entry's native window).
RadialProfile resolve_metric(const MetricRef& ref,
                             std::optional<std::pair<double, double>> window);

std::string deficit_report_json(const cgb::DeficitReport& rep);
std::string manifold_report_json(const cgb::ManifoldReport& rep);

// Columns: r,V4,V3,V2,V1,C34,C23,C12,C24,C13,C14; undefined ratios are
// empty fields.
std::string table_csv(const volumes::MixedVolumeTable& tbl);

void write_file(const std::string& path, const std::string& content);

}  // namespace qcurv::io

#endif
