#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "qcurv/catalog.hpp"
#include "qcurv/cgb.hpp"
#include "qcurv/quadrature.hpp"
#include "qcurv/radial_core.hpp"

using namespace qcurv;
using quad::PI;

namespace {

RadialProfile sample_of(const RadialProfile& p, double a, double b,
                        double h = 1.0 / 64.0)
{
    std::vector<double> vals;
    for (double t = a; t <= b + 1e-12; t += h) vals.push_back(p.v(t));
    return RadialProfile::sampled(std::move(vals), a, h);
}

}  // namespace

TEST_CASE("tail limits of the cone family")
{
    for (double alpha : {-0.75, -0.5, 0.0, 1.0, 3.0}) {
        double s = 1.0 / std::sqrt(1.0 + alpha);
        cgb::LimitsReport lim = cgb::extract_limits(catalog::cone(alpha).profile);
        CHECK(lim.nu == doctest::Approx(s).epsilon(1e-12));
        CHECK(lim.mu == doctest::Approx(s - 1.0).epsilon(1e-12));
        CHECK(std::abs(lim.c2) < 1e-10);
        CHECK(std::abs(lim.c3) < 1e-10);
        REQUIRE(lim.ratio_extrapolants.size() == 6);
        for (const auto& [key, val] : lim.ratio_extrapolants) {
            (void)key;
            CHECK(val.first == doctest::Approx(s).epsilon(1e-10));
            CHECK(val.second == doctest::Approx(s - 1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("scalar-curvature warnings follow the sign of alpha")
{
    CHECK_FALSE(cgb::extract_limits(catalog::cone(3.0).profile).warnings.size());
    CHECK(cgb::extract_limits(catalog::cone(-0.5).profile).warnings.size() > 0);
    CHECK_FALSE(cgb::extract_limits(catalog::cone(0.0).profile).warnings.size());
}

TEST_CASE("deficit vanishes across the catalog and shifts with chi")
{
    for (double alpha : {-0.75, 0.0, 3.0}) {
        cgb::DeficitReport rep = cgb::deficit(catalog::cone(alpha).profile);
        CHECK(std::abs(rep.residual) < 1e-10);
        cgb::DeficitReport rep2 = cgb::deficit(catalog::cone(alpha).profile, 2);
        CHECK(rep2.residual == doctest::Approx(1.0).epsilon(1e-10));
    }
    cgb::DeficitReport bump =
        cgb::deficit(catalog::bump_normal(0.8, 0.0, 0.5, 0.0).profile);
    CHECK(std::abs(bump.residual) < 1e-8);
    CHECK(bump.total_q == doctest::Approx(0.2).epsilon(1e-10));
    CHECK(bump.nu - bump.mu == doctest::Approx(0.8).epsilon(1e-8));
}

TEST_CASE("flipping the mass sign flips the curvature contribution")
{
    cgb::DeficitReport pos =
        cgb::deficit(catalog::bump_normal(0.8, 0.3, 0.4, 0.0).profile);
    cgb::DeficitReport neg =
        cgb::deficit(catalog::bump_normal(-0.8, 0.3, 0.4, 0.0).profile);
    CHECK(pos.total_q == doctest::Approx(-neg.total_q).epsilon(1e-10));
    CHECK(pos.nu - pos.mu == doctest::Approx(0.8).epsilon(1e-8));
    CHECK(neg.nu - neg.mu == doctest::Approx(1.2).epsilon(1e-8));
    CHECK(std::abs(pos.residual) < 1e-8);
    CHECK(std::abs(neg.residual) < 1e-8);
}

TEST_CASE("catalog known values agree with the extracted ones")
{
    struct Probe {
        const char* id;
        std::map<std::string, double> params;
    };
    for (const Probe& pr :
         {Probe{"cone", {{"alpha", 1.0}}}, Probe{"euclidean", {}},
          Probe{"bump_normal", {{"mass", 0.6}, {"alpha", 0.2}}}}) {
        catalog::CatalogEntry e = catalog::make(pr.id, pr.params);
        REQUIRE_FALSE(e.known.violates_hypothesis);
        cgb::DeficitReport rep = cgb::deficit(e.profile);
        CHECK(rep.nu == doctest::Approx(e.known.nu).epsilon(1e-8));
        CHECK(rep.mu == doctest::Approx(e.known.mu).epsilon(1e-8));
        CHECK(rep.total_q == doctest::Approx(e.known.total_q)
                                 .epsilon(1e-9)
                                 .scale(1.0));
    }
}

TEST_CASE("exponential growth mode is refused with a diagnostic")
{
    catalog::CatalogEntry e = catalog::gaussian_end();
    REQUIRE(e.known.violates_hypothesis);
    try {
        cgb::extract_limits(e.profile);
        FAIL("expected a refusal");
    } catch (const DomainError& err) {
        std::string msg = err.what();
        CHECK(msg.find("c3") != std::string::npos);
        CHECK(msg.find("exponential growth") != std::string::npos);
    }
    CHECK_THROWS_AS(cgb::deficit(e.profile), DomainError);

    // Its Q density vanishes identically even though the limits do not exist.
    ConformalDensity F = radial::q_density_from_profile(e.profile).density;
    for (double t : {-10.0, -3.0, 0.0, 1.5})
        CHECK(std::abs(F(t)) < 1e-7);
    // Scalar curvature is the advertised closed form.
    CHECK(e.known.R(1.0) == doctest::Approx(-72.0 * std::exp(-2.0))
                                .epsilon(1e-12));
    CHECK(radial::scalar_curvature_radial(e.profile, 0.0) ==
          doctest::Approx(e.known.R(1.0)).epsilon(1e-10));
}

TEST_CASE("radial boundary term: exact values and an FD oracle")
{
    CHECK(cgb::radial_boundary_T(catalog::cone(0.0).profile, 0.7) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cgb::radial_boundary_T(catalog::cone(3.0).profile, 0.0) ==
          doctest::Approx(0.5).epsilon(1e-14));

    // v = t + e^{-t^2}: compare with Richardson-extrapolated differences of
    // v alone.
    auto vf = [](double t) { return t + std::exp(-t * t); };
    RadialProfile p = RadialProfile::analytic(
        vf,
        [](double t) { return 1.0 - 2.0 * t * std::exp(-t * t); },
        [](double t) { return (4.0 * t * t - 2.0) * std::exp(-t * t); },
        [](double t) { return (12.0 * t - 8.0 * t * t * t) * std::exp(-t * t); },
        [](double t) {
            return (16.0 * t * t * t * t - 48.0 * t * t + 12.0) *
                   std::exp(-t * t);
        });
    auto T_fd = [&](double t0, double h) {
        double v3 = (-0.5 * vf(t0 - 2.0 * h) + vf(t0 - h) - vf(t0 + h) +
                     0.5 * vf(t0 + 2.0 * h)) /
                    (h * h * h);
        double v1 = (vf(t0 + h) - vf(t0 - h)) / (2.0 * h);
        return 0.5 * (-0.5 * v3 + 2.0 * v1);
    };
    for (double t0 : {-0.8, 0.3, 1.1}) {
        double h = 0.05;
        double oracle = (4.0 * T_fd(t0, h / 2.0) - T_fd(t0, h)) / 3.0;
        CHECK(cgb::radial_boundary_T(p, t0) ==
              doctest::Approx(oracle).epsilon(1e-4));
    }
}

TEST_CASE("local identities vanish and subtract to the global deficit")
{
    for (const auto& entry :
         {catalog::cone(3.0), catalog::cone(-0.5),
          catalog::bump_normal(0.8, 0.0, 0.5, 0.0),
          catalog::bump_normal(-0.5, 0.4, 0.3, 0.2)}) {
        cgb::DeficitReport rep = cgb::deficit(entry.profile);
        for (double t0 : {-1.0, 0.0, 1.3}) {
            double end = cgb::local_end_identity(entry.profile, t0);
            double sing = cgb::local_sing_identity(entry.profile, t0);
            CHECK(std::abs(end) < 1e-7);
            CHECK(std::abs(sing) < 1e-7);
            CHECK(end - sing == doctest::Approx(rep.residual)
                                    .epsilon(1e-12)
                                    .scale(1.0));
        }
    }
}

TEST_CASE("glued punctured space: residual and boundary cancellation")
{
    cgb::ManifoldSpec m;
    m.chi = 1;
    m.glue_radius = 1.0;
    m.ends = {catalog::cone(3.0).profile};
    m.sings = {catalog::cone(3.0).profile};
    cgb::ManifoldReport rep = cgb::manifold_assemble(m);
    CHECK(std::abs(rep.residual) < 1e-6);
    CHECK(rep.boundary_mismatch < 1e-8);
    CHECK(rep.consistent);

    // Same with a nontrivial glue radius and curvature in both pieces.
    cgb::ManifoldSpec mb;
    mb.chi = 1;
    mb.glue_radius = 1.7;
    mb.ends = {catalog::bump_normal(0.8, 0.0, 0.5, 0.0).profile};
    mb.sings = {catalog::bump_normal(0.8, 0.0, 0.5, 0.0).profile};
    cgb::ManifoldReport rb = cgb::manifold_assemble(mb);
    CHECK(std::abs(rb.residual) < 1e-6);
    CHECK(rb.boundary_mismatch < 1e-8);
    CHECK(rb.consistent);
}

TEST_CASE("interior curvature and Weyl energy enter with unit weight")
{
    cgb::ManifoldSpec m;
    m.chi = 1;
    m.ends = {catalog::cone(0.0).profile};
    m.sings = {catalog::cone(0.0).profile};
    m.interior_q = 0.3;
    m.weyl_energy = 32.0 * PI * PI * 0.1;
    cgb::ManifoldReport rep = cgb::manifold_assemble(m);
    CHECK(rep.residual == doctest::Approx(-0.4).epsilon(1e-10));
    CHECK_FALSE(rep.consistent);
}

TEST_CASE("negative controls: wrong chi and mismatched gluing are flagged")
{
    cgb::ManifoldSpec m;
    m.chi = 0;
    m.ends = {catalog::cone(0.0).profile, catalog::cone(0.0).profile};
    cgb::ManifoldReport rep = cgb::manifold_assemble(m);
    CHECK(rep.residual == doctest::Approx(-2.0).epsilon(1e-10));
    CHECK(rep.boundary_mismatch == 0.0);  // nothing was glued
    CHECK_FALSE(rep.consistent);

    cgb::ManifoldSpec mm;
    mm.chi = 1;
    mm.ends = {catalog::cone(3.0).profile};
    mm.sings = {catalog::cone(0.0).profile};
    cgb::ManifoldReport rm = cgb::manifold_assemble(mm);
    CHECK(rm.boundary_mismatch == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_FALSE(rm.consistent);
}

TEST_CASE("sampled profiles reach the loosened tolerances")
{
    RadialProfile cone3 = sample_of(catalog::cone(3.0).profile, -6.0, 6.0);
    cgb::LimitsReport lim = cgb::extract_limits(cone3);
    CHECK(lim.nu == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(lim.mu == doctest::Approx(-0.5).epsilon(1e-9));

    RadialProfile bump =
        sample_of(catalog::bump_normal(0.8, 0.0, 0.5, 0.0).profile, -8.0, 8.0);
    cgb::DeficitReport rep = cgb::deficit(bump);
    CHECK(std::abs(rep.residual) < 1e-3);
    CHECK(rep.total_q == doctest::Approx(0.2).epsilon(1e-3));
}

TEST_CASE("registry rejects bad ids, parameters and degenerate metrics")
{
    CHECK_THROWS_AS(catalog::make("nope", {}), DomainError);
    CHECK_THROWS_AS(catalog::make("cone", {{"bogus", 1.0}}), DomainError);
    CHECK_THROWS_AS(catalog::cone(-1.0), DomainError);
    CHECK_THROWS_AS(catalog::bump_normal(0.8, 0.0, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(catalog::bump_normal(5.0, 0.0, 0.5, 0.0), DomainError);
    CHECK_THROWS_AS(catalog::make_qmeasure("nope", {}), DomainError);
    CHECK_THROWS_AS(
        catalog::make_qmeasure("shell", {{"rho_in", 2.0}, {"rho_out", 1.0}}),
        DomainError);
    CHECK_THROWS_AS(catalog::make_qmeasure("radial_bump", {{"junk", 0.0}}),
                    DomainError);

    // The euclidean alias really is the flat cone.
    catalog::CatalogEntry e = catalog::make("euclidean", {});
    CHECK(e.known.nu == 1.0);
    CHECK(e.known.mu == 0.0);
    CHECK(e.profile.v1(0.3) == 1.0);
}
