#include "qcurv/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "qcurv/catalog.hpp"

namespace qcurv::io {

using nlohmann::json;

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::string quote(const std::string& s)
{
    return json(s).dump();  // proper escaping
}

void reject_unknown(const json& j, const std::vector<std::string>& allowed,
                    const std::string& where)
{
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const auto& a : allowed) ok = ok || a == it.key();
        if (!ok)
            throw DomainError("unknown key '" + it.key() + "' in " + where);
    }
}

std::map<std::string, double> param_map(const json& j)
{
    std::map<std::string, double> out;
    for (auto it = j.begin(); it != j.end(); ++it)
        out[it.key()] = it.value().get<double>();
    return out;
}

MetricRef metric_ref(const json& j, const std::string& where)
{
    reject_unknown(j, {"catalog", "params", "profile"}, where);
    MetricRef ref;
    if (j.contains("catalog")) ref.catalog_id = j["catalog"].get<std::string>();
    if (j.contains("params")) ref.params = param_map(j["params"]);
    if (j.contains("profile")) ref.profile_path = j["profile"].get<std::string>();
    if (ref.catalog_id.empty() == ref.profile_path.empty())
        throw DomainError(where + ": need exactly one of 'catalog', 'profile'");
    return ref;
}

const std::vector<std::string>& known_tasks()
{
    static const std::vector<std::string> tasks = {"deficit", "ratios",
                                                   "lemmas", "local",
                                                   "manifold"};
    return tasks;
}

}  // namespace

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open scenario file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DomainError("scenario parse error in " + path + ": " + e.what());
    }
    reject_unknown(j,
                   {"name", "metric", "qmetric", "manifold", "tasks", "chi",
                    "tolerances", "expect_refusal"},
                   "scenario");
    Scenario s;
    if (j.contains("name")) s.name = j["name"].get<std::string>();
    if (j.contains("metric")) s.metric = metric_ref(j["metric"], "metric");
    if (j.contains("qmetric")) {
        reject_unknown(j["qmetric"], {"catalog", "params"}, "qmetric");
        s.qcatalog_id = j["qmetric"].at("catalog").get<std::string>();
        if (j["qmetric"].contains("params"))
            s.qparams = param_map(j["qmetric"]["params"]);
    }
    if (j.contains("manifold")) {
        const json& m = j["manifold"];
        reject_unknown(m,
                       {"chi", "weyl_energy", "interior_q", "glue_radius",
                        "ends", "sings"},
                       "manifold");
        ManifoldRef ref;
        if (m.contains("chi")) ref.chi = m["chi"].get<int>();
        if (m.contains("weyl_energy"))
            ref.weyl_energy = m["weyl_energy"].get<double>();
        if (m.contains("interior_q"))
            ref.interior_q = m["interior_q"].get<double>();
        if (m.contains("glue_radius"))
            ref.glue_radius = m["glue_radius"].get<double>();
        for (const auto& e : m.value("ends", json::array()))
            ref.ends.push_back(metric_ref(e, "manifold end"));
        for (const auto& e : m.value("sings", json::array()))
            ref.sings.push_back(metric_ref(e, "manifold sing"));
        s.manifold = std::move(ref);
    }
    if (j.contains("tasks"))
        for (const auto& t : j["tasks"]) {
            std::string name = t.get<std::string>();
            bool ok = false;
            for (const auto& k : known_tasks()) ok = ok || k == name;
            if (!ok) throw DomainError("unknown task name: " + name);
            s.tasks.push_back(name);
        }
    if (j.contains("chi")) s.chi = j["chi"].get<int>();
    if (j.contains("tolerances")) s.tolerances = param_map(j["tolerances"]);
    if (j.contains("expect_refusal"))
        s.expect_refusal = j["expect_refusal"].get<std::string>();
    return s;
}

RadialProfile load_profile(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open profile file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DomainError("profile parse error in " + path + ": " + e.what());
    }
    reject_unknown(j, {"mode", "t_min", "t_max", "h", "values"}, "profile");
    if (j.value("mode", "sampled") != "sampled")
        throw DomainError("profile files support mode 'sampled' only");
    std::vector<double> values = j.at("values").get<std::vector<double>>();
    double t_min = j.at("t_min").get<double>();
    double h = j.at("h").get<double>();
    if (j.contains("t_max")) {
        double t_max = j["t_max"].get<double>();
        double implied = t_min + h * (static_cast<double>(values.size()) - 1.0);
        if (std::abs(t_max - implied) > 1e-9)
            throw DomainError("profile t_max inconsistent with t_min + h * n");
    }
    return RadialProfile::sampled(std::move(values), t_min, h);
}

RadialProfile resolve_metric(const MetricRef& ref,
                             std::optional<std::pair<double, double>> window)
{
    RadialProfile p = ref.catalog_id.empty()
                          ? load_profile(ref.profile_path)
                          : catalog::make(ref.catalog_id, ref.params).profile;
    if (!window) return p;
    auto [a, b] = *window;
    if (a < p.t_min() - 1e-12 || b > p.t_max() + 1e-12 || a >= b)
        throw DomainError(
            "requested t-window must lie inside the metric's native window");
    if (p.mode() == RadialProfile::Mode::sampled) {
        // Clip the grid.
        std::size_t i0 = static_cast<std::size_t>(
            std::ceil((a - p.t_min()) / p.h() - 1e-12));
        std::size_t i1 = static_cast<std::size_t>(
            std::floor((b - p.t_min()) / p.h() + 1e-12));
        std::vector<double> vals(p.values().begin() + i0,
                                 p.values().begin() + i1 + 1);
        return RadialProfile::sampled(std::move(vals),
                                      p.t_min() + p.h() * i0, p.h());
    }
    auto inner = std::make_shared<RadialProfile>(p);
    RadialProfile out = RadialProfile::analytic(
        [inner](double t) { return inner->v(t); },
        [inner](double t) { return inner->v1(t); },
        [inner](double t) { return inner->v2(t); },
        [inner](double t) { return inner->v3(t); },
        [inner](double t) { return inner->v4(t); }, a, b);
    if (p.density()) out.attach_density(*p.density());
    return out;
}

namespace {

void append_common(std::ostringstream& out, const cgb::DeficitReport& rep)
{
    out << "\"ratio_extrapolants\":{";
    bool first = true;
    for (const auto& [key, val] : rep.ratio_extrapolants) {
        if (!first) out << ",";
        first = false;
        out << "\"C" << key.first << key.second << "\":["
            << format_double(val.first) << "," << format_double(val.second)
            << "]";
    }
    out << "},\"warnings\":[";
    for (std::size_t i = 0; i < rep.warnings.size(); ++i) {
        if (i) out << ",";
        out << quote(rep.warnings[i]);
    }
    out << "]";
}

}  // namespace

std::string deficit_report_json(const cgb::DeficitReport& rep)
{
    std::ostringstream out;
    out << "{\"chi\":" << rep.chi
        << ",\"total_q\":" << format_double(rep.total_q)
        << ",\"nu\":" << format_double(rep.nu)
        << ",\"mu\":" << format_double(rep.mu)
        << ",\"residual\":" << format_double(rep.residual)
        << ",\"c2\":" << format_double(rep.c2)
        << ",\"c3\":" << format_double(rep.c3) << ",";
    append_common(out, rep);
    out << "}\n";
    return out.str();
}

std::string manifold_report_json(const cgb::ManifoldReport& rep)
{
    std::ostringstream out;
    out << "{\"residual\":" << format_double(rep.residual)
        << ",\"boundary_mismatch\":" << format_double(rep.boundary_mismatch)
        << ",\"total_q\":" << format_double(rep.total_q)
        << ",\"nu_sum\":" << format_double(rep.nu_sum)
        << ",\"mu_sum\":" << format_double(rep.mu_sum)
        << ",\"consistent\":" << (rep.consistent ? "true" : "false")
        << ",\"warnings\":[";
    for (std::size_t i = 0; i < rep.warnings.size(); ++i) {
        if (i) out << ",";
        out << quote(rep.warnings[i]);
    }
    out << "]}\n";
    return out.str();
}

std::string table_csv(const volumes::MixedVolumeTable& tbl)
{
    std::ostringstream out;
    out << "r,V4,V3,V2,V1,C34,C23,C12,C24,C13,C14\n";
    for (std::size_t i = 0; i < tbl.radii.size(); ++i) {
        out << format_double(tbl.radii[i]) << "," << format_double(tbl.V4[i])
            << "," << format_double(tbl.V3[i]) << ","
            << format_double(tbl.V2[i]) << "," << format_double(tbl.V1[i]);
        for (const auto& key : volumes::ratio_keys()) {
            out << ",";
            const auto& col = tbl.C.at(key);
            if (col[i]) out << format_double(*col[i]);
        }
        out << "\n";
    }
    return out.str();
}

void write_file(const std::string& path, const std::string& content)
{
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write file: " + path);
    out << content;
}

}  // namespace qcurv::io
