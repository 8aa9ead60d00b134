#include "fwm/harness.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <string>
#include <unistd.h>

using namespace fwm;
using namespace fwm::harness;

namespace {

std::filesystem::path temp_dir() {
    static int counter = 0;
    const auto dir = std::filesystem::temp_directory_path() /
                     ("fwm_harness_test_" + std::to_string(::getpid()) + "_" +
                      std::to_string(counter++));
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p);
    REQUIRE(f.good());
    return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("default configuration pins the standard scenario") {
    const SimConfig cfg;
    CHECK(cfg.modes == 45);
    CHECK(cfg.kappa == doctest::Approx(std::numbers::pi / 45.0).epsilon(1e-15));
    CHECK(cfg.steps == 45);
    CHECK(cfg.envelope == "gaussian:22,4");
    CHECK(cfg.mask == "full");
    CHECK(cfg.input == "separable");
    const Lattice lat = lattice_of(cfg);
    CHECK(lat.M == 45);
    CHECK(lat.dz == 1.0);
    CHECK(lat.c == 1.0);
}

TEST_CASE("envelope mini-grammar accepts the documented forms") {
    const Lattice lat{45, 1.0, 1.0};
    const Envelope g = parse_envelope_spec(lat, "gaussian:22,4");
    CHECK(std::abs(envelope_norm(g) - 1.0) < 1e-13);
    const Envelope p = parse_envelope_spec(lat, "point:3");
    CHECK(p.f0[3] == complexd(1.0, 0.0));
    const Envelope ghalf = parse_envelope_spec(lat, "gaussian:22.5,4");  // real center is fine
    CHECK(std::abs(ghalf.f0[22]) == doctest::Approx(std::abs(ghalf.f0[23])).epsilon(1e-13));
}

TEST_CASE("envelope mini-grammar rejects malformed and out-of-range specs") {
    const Lattice lat{45, 1.0, 1.0};
    for (const char* bad : {"gaussian", "gaussian:", "gaussian:22", "gaussian:22,4,5",
                            "gaussian:22,", "gaussian:,4", "gaussian:22,x", "gaussian:22 ,4",
                            "gaussian:45,4", "gaussian:-1,4", "gaussian:22,0", "gaussian:22,-3",
                            "point", "point:", "point:2.5", "point:45", "point:-1", "point:x",
                            "blob:3", "", "full"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_envelope_spec(lat, bad), SpecError);
    }
}

TEST_CASE("mask mini-grammar: full ring, plain window, seam window, rejections") {
    const Lattice lat{45, 1.0, 1.0};
    CHECK(parse_mask_spec(lat, "full").active == std::vector<bool>(45, true));

    const MediumMask w = parse_mask_spec(lat, "window:28,43");
    for (int l = 0; l < 45; ++l) CHECK(w.active[l] == (l >= 28 && l < 43));

    const MediumMask seam = parse_mask_spec(lat, "window:40,50");  // wraps to [40,45) + [0,5)
    for (int l = 0; l < 45; ++l) CHECK(seam.active[l] == (l >= 40 || l < 5));

    for (const char* bad : {"window", "window:", "window:2", "window:2,2", "window:5,4",
                            "window:0,46", "window:45,50", "window:-1,3", "window:2,3,4",
                            "window:a,b", "Full", "window:28 ,43", ""}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_mask_spec(lat, bad), SpecError);
    }
}

TEST_CASE("initial states: separable, diagonal, unknown") {
    SimConfig cfg;
    cfg.modes = 9;
    cfg.envelope = "gaussian:4,1.2";

    cfg.input = "separable";
    const TwoPhotonState s = initial_state(cfg);
    CHECK(s.psi_omega(2, 7) != complexd(0.0, 0.0));

    cfg.input = "diagonal";
    const TwoPhotonState d = initial_state(cfg);
    CHECK(d.psi_omega(2, 7) == complexd(0.0, 0.0));
    CHECK(d.psi_omega(4, 4) != complexd(0.0, 0.0));

    cfg.input = "thermal";
    CHECK_THROWS_AS(initial_state(cfg), SpecError);
}

TEST_CASE("truncated gaussian envelope: compact support, unit norm, empty rejection") {
    const Lattice lat{45, 1.0, 1.0};
    const Envelope env = truncated_gaussian_envelope(lat, 10.0, 3.0, 0, 21);
    for (int l = 21; l < 45; ++l) CHECK(env.f0[l] == complexd(0.0, 0.0));
    CHECK(std::abs(envelope_norm(env) - 1.0) < 1e-13);
    CHECK(std::abs(env.f0[10]) > 0.0);
    CHECK_THROWS_AS(truncated_gaussian_envelope(lat, 10.0, 0.5, 30, 40), std::invalid_argument);
}

TEST_CASE("registry lists ten uniquely named scenarios including the documented core") {
    const auto& reg = registry();
    CHECK(reg.size() == 10);
    std::set<std::string> names;
    for (const auto& s : reg) {
        names.insert(s.name);
        CHECK(!s.description.empty());
        CHECK(static_cast<bool>(s.run));
    }
    CHECK(names.size() == reg.size());
    for (const char* required : {"fig1", "fig2", "fig2d", "conversion", "xicondition", "soliton",
                                 "window_bvp", "fock_crosscheck", "mode_agreement",
                                 "conservation"}) {
        CAPTURE(required);
        CHECK(names.count(required) == 1);
    }
    CHECK(list_scenarios().size() == reg.size());
}

TEST_CASE("unknown scenario lookups and empty scenario lists are rejected") {
    CHECK_THROWS_AS(run_scenario("nope", temp_dir().string()), std::out_of_range);
    CHECK_THROWS_AS(run_these({}, temp_dir().string()), std::invalid_argument);
}

TEST_CASE("fig1 scenario passes and emits its artifact set deterministically") {
    const auto dir1 = temp_dir();
    const ValidationReport rep = run_scenario("fig1", dir1.string());
    CHECK(rep.scenario == "fig1");
    CHECK(rep.pass());
    CHECK(!rep.checks.empty());
    REQUIRE(!rep.artifacts.empty());
    for (const auto& a : rep.artifacts) {
        CAPTURE(a);
        CHECK(std::filesystem::exists(a));
    }

    const auto dir2 = temp_dir();
    const ValidationReport rep2 = run_scenario("fig1", dir2.string());
    REQUIRE(rep.artifacts.size() == rep2.artifacts.size());
    for (std::size_t i = 0; i < rep.artifacts.size(); ++i)
        CHECK(slurp(rep.artifacts[i]) == slurp(rep2.artifacts[i]));
}

TEST_CASE("run_custom: conservation checks plus artifacts for an arbitrary config") {
    SimConfig cfg;
    cfg.modes = 9;
    cfg.kappa = 0.21;
    cfg.steps = 18;
    cfg.snapshot_every = 3;
    cfg.envelope = "gaussian:4,1.2";
    const auto dir = temp_dir();
    const ValidationReport rep = run_custom(cfg, "demo", dir.string());
    CHECK(rep.scenario == "demo");
    CHECK(rep.pass());
    CHECK(rep.checks.size() == 5);  // norm + four transported quantities
    bool found_norm = false;
    for (const auto& c : rep.checks) found_norm |= (c.name == "demo.norm_conservation");
    CHECK(found_norm);
    CHECK(std::filesystem::exists(dir / "demo_diagonal.csv"));
    CHECK(std::filesystem::exists(dir / "demo_intensity.csv"));
    CHECK(std::filesystem::exists(dir / "demo_grid.csv"));
    CHECK(std::filesystem::exists(dir / "demo.gp"));

    SimConfig bad = cfg;
    bad.steps = -1;
    CHECK_THROWS_AS(run_custom(bad, "demo", dir.string()), SpecError);
    bad = cfg;
    bad.snapshot_every = 0;
    CHECK_THROWS_AS(run_custom(bad, "demo", dir.string()), SpecError);
}

TEST_CASE("mode agreement runner rejects bad divisors and partial masks") {
    SimConfig cfg;
    cfg.dt_divisor = 0.0;
    CHECK_THROWS_AS(run_mode_agreement(cfg, temp_dir().string()), SpecError);
    cfg = SimConfig{};
    cfg.mask = "window:0,10";
    CHECK_THROWS_AS(run_mode_agreement(cfg, temp_dir().string()), SpecError);
}

TEST_CASE("report formatting: one line per check and an overall verdict") {
    ValidationReport rep;
    rep.scenario = "demo";
    rep.checks.push_back({"demo.alpha", 1.5e-13, 1e-12, true});
    rep.checks.push_back({"demo.beta", 2.0e-9, 1e-10, false});
    rep.runtime_seconds = 0.25;

    const std::string text = format_report(rep);
    CHECK(text.find("demo.alpha") != std::string::npos);
    CHECK(text.find("PASS") != std::string::npos);
    CHECK(text.find("FAIL") != std::string::npos);
    CHECK(text.find("residual=1.500000e-13") != std::string::npos);
    CHECK(text.find("tol=1.0e-12") != std::string::npos);
    CHECK(!rep.pass());

    const std::string all = format_reports({rep});
    CHECK(all.find("# demo: 2 checks") != std::string::npos);
    CHECK(all.find("overall: FAIL (1/2 checks)") != std::string::npos);
    CHECK(!all_pass({rep}));

    ValidationReport good;
    good.scenario = "ok";
    good.checks.push_back({"ok.only", 0.0, 1e-12, true});
    CHECK(good.pass());
    CHECK(all_pass({good}));
    CHECK(format_reports({good}).find("overall: PASS (1/1 checks)") != std::string::npos);
}
