#include "core/device.hpp"
#include "core/errors.hpp"
#include "core/units.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace bhc;

TEST_CASE("reference working-point and zero-flux configs load") {
    const DeviceParams wp = bhctest::working_point();
    CHECK(wp.n_sites == 3);
    CHECK(wp.cavity_kappa_ghz == doctest::Approx(0.010));
    CHECK(wp.anharmonicity_ghz(1) == doctest::Approx(-0.240));
    const DeviceParams zf = bhctest::zero_flux();
    CHECK(zf.site_freq_ghz(0) == doctest::Approx(5.074));
    CHECK(zf.hopping_ghz(0, 1) == doctest::Approx(0.177));
    CHECK(zf.hopping_ghz(0, 2) == doctest::Approx(0.026));
    CHECK(zf.drives.empty());
}

TEST_CASE("positive anharmonicity is rejected") {
    DeviceParams p = bhctest::zero_flux();
    p.anharmonicity_ghz(1) = 0.240;
    CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("omitted next-nearest hopping defaults to zero") {
    const char* cfg = R"({
      "sites": [
        {"freq_ghz": 5.0, "anharmonicity_ghz": -0.2},
        {"freq_ghz": 4.9, "anharmonicity_ghz": -0.2},
        {"freq_ghz": 5.1, "anharmonicity_ghz": -0.2}
      ],
      "cavity": {"freq_ghz": 7.0, "kappa_ghz": 0.01},
      "couplings": {"g_ghz": [0.1, 0.2, 0.1]},
      "hopping": {"nn_ghz": 0.15},
      "flux_map": {"slope_rad_per_ma": [0.05, 0, 0.05], "tunable": [true, false, true]}
    })";
    const DeviceParams p = parse_config(cfg);
    CHECK(p.hopping_ghz(0, 2) == 0.0);
    CHECK(p.flux.offset_rad == 0.0);
}

TEST_CASE("schema violations name the field") {
    CHECK_THROWS_WITH_AS(parse_config("{\"cavity\": {}}"),
                         doctest::Contains("sites"), ParseError);
    const char* no_kappa = R"({
      "sites": [{"freq_ghz": 5, "anharmonicity_ghz": -0.2},
                {"freq_ghz": 5, "anharmonicity_ghz": -0.2}],
      "cavity": {"freq_ghz": 7.0},
      "couplings": {"g_ghz": [0.1, 0.1]},
      "hopping": {"nn_ghz": 0.1},
      "flux_map": {"slope_rad_per_ma": [0, 0], "tunable": [false, false]}
    })";
    CHECK_THROWS_WITH_AS(parse_config(no_kappa), doctest::Contains("kappa_ghz"), ParseError);
}

TEST_CASE("config serialization round-trips") {
    const DeviceParams p = bhctest::working_point();
    const DeviceParams q = parse_config(serialize_config(p));
    CHECK((q.site_freq_ghz - p.site_freq_ghz).cwiseAbs().maxCoeff() == 0.0);
    CHECK((q.hopping_ghz - p.hopping_ghz).cwiseAbs().maxCoeff() == 0.0);
    CHECK((q.coupling_ghz - p.coupling_ghz).cwiseAbs().maxCoeff() == 0.0);
    CHECK(q.cavity_freq_ghz == p.cavity_freq_ghz);
    CHECK(q.drives.size() == p.drives.size());
    CHECK(q.flux.slope_rad_per_ma(0) == p.flux.slope_rad_per_ma(0));
}

TEST_CASE("flux map: zero current returns stored frequencies") {
    const DeviceParams p = bhctest::zero_flux();
    const Eigen::VectorXd w = p.freqs_at_current(0.0);
    CHECK(w(0) == doctest::Approx(5.074).epsilon(1e-14));
    CHECK(w(1) == doctest::Approx(4.892).epsilon(1e-14));
    CHECK(w(2) == doctest::Approx(5.165).epsilon(1e-14));
}

TEST_CASE("flux map: cos = 1/2 gives omega0 / 2^{1/2}") {
    DeviceParams p = bhctest::zero_flux();
    p.flux.current_max_ma = 100.0;
    // pick the current so that B_3 I = pi/3
    const double current = (M_PI / 3.0) / p.flux.slope_rad_per_ma(2);
    const Eigen::VectorXd w = p.freqs_at_current(current);
    CHECK(w(2) == doctest::Approx(5.165 * std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("flux map: 17 mA is about a quarter flux quantum") {
    // B3 = pi/68, so B3 * 17 = pi/4 and omega = omega0 (cos pi/4)^{1/2}
    const DeviceParams p = bhctest::zero_flux();
    const Eigen::VectorXd w = p.freqs_at_current(17.0);
    CHECK(w(2) / 5.165 == doctest::Approx(std::sqrt(std::cos(M_PI / 4.0))).epsilon(1e-6));
    CHECK(w(2) / 5.165 == doctest::Approx(0.84090).epsilon(1e-4));
    // the two SQUID slopes differ by 2.5%
    CHECK(p.flux.slope_rad_per_ma(0) / p.flux.slope_rad_per_ma(2) == doctest::Approx(1.025));
}

TEST_CASE("flux map: even in the argument and continued by |cos|") {
    const DeviceParams p = bhctest::zero_flux();
    const Eigen::VectorXd wp = p.freqs_at_current(4.0);
    const Eigen::VectorXd wm = p.freqs_at_current(-4.0);
    CHECK(wp(2) == doctest::Approx(wm(2)).epsilon(1e-14));
    // shifting the argument by pi leaves |cos| unchanged, with the branch flagged
    DeviceParams q = p;
    q.flux.offset_rad = M_PI;
    q.flux.current_max_ma = 1e6;
    bool neg = false;
    const Eigen::VectorXd w1 = q.freqs_at_current(4.0, nullptr, &neg);
    CHECK(wp(2) == doctest::Approx(w1(2)).epsilon(1e-12));
    CHECK(neg);
}

TEST_CASE("flux map: out-of-range current and degenerate flux") {
    const DeviceParams p = bhctest::zero_flux();
    CHECK_THROWS_AS(p.freqs_at_current(40.0), DomainError);
    DeviceParams q = p;
    q.flux.current_max_ma = 100.0;
    bool degenerate = false;
    const double quarter = (M_PI / 2.0) / q.flux.slope_rad_per_ma(2);
    q.freqs_at_current(quarter, &degenerate, nullptr);
    CHECK(degenerate);
}

TEST_CASE("non-tunable sites ignore the flux map") {
    const DeviceParams p = bhctest::zero_flux();
    const Eigen::VectorXd w = p.freqs_at_current(10.0);
    CHECK(w(1) == doctest::Approx(4.892).epsilon(1e-14)); // fixed middle site
}

TEST_CASE("dispersive-ratio guard warns above 0.2 and errors above 0.5") {
    DeviceParams p = bhctest::working_point();
    p.coupling_ghz(1) = 0.5; // ratio ~ 0.23
    p.validate();
    CHECK(!p.warnings.empty());
    p.coupling_ghz(1) = 1.2; // ratio ~ 0.54
    CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("drive spec: exactly one of nbar / rate for cooling") {
    DeviceParams p = bhctest::working_point();
    DriveSpec d;
    d.kind = DriveSpec::Kind::Cooling;
    d.from = "E3";
    d.to = "E1";
    d.nbar = 0.2;
    d.rate_mhz = 3.0;
    p.drives.push_back(d);
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p.drives.back().rate_mhz.reset();
    p.validate(); // nbar alone is fine
}

TEST_CASE("unit conversions compose to identity") {
    using namespace bhc::units;
    const double f = 4.61164;
    CHECK(radus_to_ghz(ghz_to_radus(f)) == doctest::Approx(f).epsilon(1e-15));
    CHECK(ghz_to_radus(1.0) == doctest::Approx(2.0 * M_PI * 1000.0).epsilon(1e-15));
    CHECK(radus_to_mhz(mhz_to_radus(17.3)) == doctest::Approx(17.3).epsilon(1e-15));
}
