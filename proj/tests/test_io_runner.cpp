#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qcurv/catalog.hpp"
#include "qcurv/cgb.hpp"
#include "qcurv/io.hpp"
#include "qcurv/runner.hpp"

using namespace qcurv;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir()
{
    fs::path d = fs::temp_directory_path() / "qcurv_io_tests";
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path write_temp(const std::string& name, const std::string& content)
{
    fs::path p = scratch_dir() / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
}

}  // namespace

TEST_CASE("doubles round-trip through the fixed format")
{
    for (double x : {0.1, -1.0 / 3.0, 1e-300, 12345.678901234567, 0.0}) {
        std::string s = io::format_double(x);
        CHECK(std::stod(s) == x);
    }
    CHECK(io::format_double(0.5) == "0.5");
}

TEST_CASE("scenario files load and reject unknown keys")
{
    fs::path p = write_temp("scen_ok.json", R"({
        "name": "probe",
        "metric": {"catalog": "cone", "params": {"alpha": 3.0}},
        "tasks": ["deficit", "ratios"],
        "chi": 1,
        "tolerances": {"residual": 1e-6}
    })");
    io::Scenario s = io::load_scenario(p.string());
    CHECK(s.name == "probe");
    REQUIRE(s.metric.has_value());
    CHECK(s.metric->catalog_id == "cone");
    CHECK(s.metric->params.at("alpha") == 3.0);
    REQUIRE(s.tasks.size() == 2);
    CHECK(s.tolerances.at("residual") == 1e-6);

    fs::path bad_key = write_temp("scen_bad_key.json",
                                  R"({"name": "x", "surprise": 1})");
    CHECK_THROWS_AS(io::load_scenario(bad_key.string()), DomainError);

    fs::path bad_task = write_temp(
        "scen_bad_task.json",
        R"({"metric": {"catalog": "cone"}, "tasks": ["explode"]})");
    CHECK_THROWS_AS(io::load_scenario(bad_task.string()), DomainError);

    fs::path both = write_temp(
        "scen_both.json",
        R"({"metric": {"catalog": "cone", "profile": "x.json"}})");
    CHECK_THROWS_AS(io::load_scenario(both.string()), DomainError);

    CHECK_THROWS_AS(io::load_scenario("/no/such/file.json"), DomainError);
    fs::path mangled = write_temp("scen_mangled.json", "{not json");
    CHECK_THROWS_AS(io::load_scenario(mangled.string()), DomainError);
}

TEST_CASE("sampled profiles round-trip through JSON")
{
    fs::path p = write_temp("prof.json", R"({
        "mode": "sampled", "t_min": -1.0, "h": 0.25, "t_max": 1.0,
        "values": [ -1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.0 ]
    })");
    RadialProfile prof = io::load_profile(p.string());
    CHECK(prof.mode() == RadialProfile::Mode::sampled);
    CHECK(prof.t_min() == -1.0);
    CHECK(prof.t_max() == 1.0);
    CHECK(prof.values().size() == 9);

    fs::path bad = write_temp("prof_bad.json", R"({
        "mode": "sampled", "t_min": -1.0, "h": 0.25, "t_max": 3.0,
        "values": [ -1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.0 ]
    })");
    CHECK_THROWS_AS(io::load_profile(bad.string()), DomainError);
}

TEST_CASE("deficit report JSON is deterministic with fixed key order")
{
    cgb::DeficitReport rep = cgb::deficit(catalog::cone(3.0).profile);
    std::string a = io::deficit_report_json(rep);
    std::string b = io::deficit_report_json(rep);
    CHECK(a == b);
    CHECK(a.find("\"chi\":1") != std::string::npos);
    CHECK(a.find("\"residual\":") != std::string::npos);
    CHECK(a.find("\"C34\":[") != std::string::npos);
    // Key order is part of the format.
    CHECK(a.find("\"chi\"") < a.find("\"total_q\""));
    CHECK(a.find("\"total_q\"") < a.find("\"residual\""));
}

TEST_CASE("volume tables leave undefined ratios empty")
{
    // An oscillating profile has contracting spheres (v' < 0) at some radii,
    // where the V2-based ratios are undefined.
    RadialProfile p = RadialProfile::analytic(
        [](double t) { return t + 2.0 * std::cos(t); },
        [](double t) { return 1.0 - 2.0 * std::sin(t); },
        [](double t) { return -2.0 * std::cos(t); },
        [](double t) { return 2.0 * std::sin(t); },
        [](double t) { return 2.0 * std::cos(t); }, -9.0, 3.0);
    REQUIRE(p.v1(-2.0) > 0.0);
    REQUIRE(p.v1(1.0) < 0.0);
    volumes::MixedVolumeTable tbl =
        volumes::radial_table(p, {std::exp(-2.0), std::exp(1.0)});
    std::string csv = io::table_csv(tbl);
    std::istringstream lines(csv);
    std::string header, row_small, row_large;
    std::getline(lines, header);
    std::getline(lines, row_small);
    std::getline(lines, row_large);
    CHECK(header == "r,V4,V3,V2,V1,C34,C23,C12,C24,C13,C14");
    CHECK(row_small.find(",,") == std::string::npos);
    CHECK(row_large.find(",,") != std::string::npos);  // blanked columns
}

TEST_CASE("metric resolution honours the requested window")
{
    io::MetricRef ref;
    ref.catalog_id = "cone";
    ref.params = {{"alpha", 3.0}};
    RadialProfile clipped = io::resolve_metric(ref, {{-2.0, 2.0}});
    CHECK(clipped.t_min() == -2.0);
    CHECK(clipped.t_max() == 2.0);
    CHECK(clipped.v(1.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(clipped.v(5.0), DomainError);
    CHECK_THROWS_AS(io::resolve_metric(ref, {{-20.0, 2.0}}), DomainError);
    CHECK_THROWS_AS(io::resolve_metric(ref, {{2.0, -2.0}}), DomainError);
}

TEST_CASE("run_scenario writes reports and honours expected refusals")
{
    fs::path out = scratch_dir() / "run_cone";
    io::Scenario s;
    s.name = "cone3";
    s.metric.emplace();
    s.metric->catalog_id = "cone";
    s.metric->params = {{"alpha", 3.0}};
    s.tasks = {"deficit", "ratios", "local"};
    io::RunOptions opt;
    opt.out_dir = out.string();
    io::RunResult res = io::run_scenario(s, opt);
    CHECK(res.ok);
    CHECK(res.files.size() >= 2);
    for (const std::string& f : res.files) CHECK(fs::exists(f));
    for (const std::string& line : res.summary)
        CHECK(line.find("FAIL") == std::string::npos);

    io::Scenario g;
    g.name = "growth";
    g.metric.emplace();
    g.metric->catalog_id = "gaussian_end";
    g.tasks = {"deficit"};
    g.expect_refusal = "c3";
    CHECK(io::run_scenario(g, opt).ok);
    g.expect_refusal = "";  // now the refusal is an actual failure
    CHECK_FALSE(io::run_scenario(g, opt).ok);

    io::Scenario empty;
    empty.name = "noop";
    empty.metric.emplace();
    empty.metric->catalog_id = "euclidean";
    CHECK(io::run_scenario(empty, opt).ok);
}

TEST_CASE("the built-in suite passes and is byte-identical across runs")
{
    fs::path a = scratch_dir() / "verify_a";
    fs::path b = scratch_dir() / "verify_b";
    fs::remove_all(a);
    fs::remove_all(b);
    io::RunOptions oa, ob;
    oa.out_dir = a.string();
    ob.out_dir = b.string();
    io::RunResult ra = io::verify_all(oa);
    io::RunResult rb = io::verify_all(ob);
    CHECK(ra.ok);
    CHECK(rb.ok);
    CHECK(ra.summary == rb.summary);

    std::size_t compared = 0;
    for (const auto& ent : fs::recursive_directory_iterator(a)) {
        if (!ent.is_regular_file()) continue;
        fs::path rel = fs::relative(ent.path(), a);
        CHECK(slurp(ent.path()) == slurp(b / rel));
        ++compared;
    }
    CHECK(compared > 5);

    // Every built-in scenario id resolves through the public registries.
    for (const io::Scenario& s : io::builtin_scenarios()) {
        if (s.metric && !s.metric->catalog_id.empty())
            CHECK_NOTHROW(catalog::make(s.metric->catalog_id, s.metric->params));
        if (!s.qcatalog_id.empty())
            CHECK_NOTHROW(catalog::make_qmeasure(s.qcatalog_id, s.qparams));
    }
}
