#include <doctest.h>

#include "spinbath/sweep.hpp"

using namespace spinbath;
using namespace spinbath::sweep;

TEST_SUITE_BEGIN("config");

TEST_CASE("minimal config gets defaults") {
    const auto raw = ConfigMap::parse("engine = meanfield\n[sweep]\nh = 0.5\n");
    const SweepConfig cfg = validate_config(raw);
    CHECK(cfg.engine == EngineSelect::meanfield);
    CHECK(cfg.h_values == std::vector<double>{0.5});
    CHECK(cfg.beta_values == std::vector<double>{40.0});
    CHECK(cfg.n_sites_values == std::vector<int>{kInfiniteSites});
    CHECK(cfg.tls.gap == 0.2);
    CHECK(cfg.tls.tunneling == 0.1);
    CHECK(cfg.coupling.strength == 0.05);
    CHECK(cfg.workers == 1);
    CHECK(cfg.time_search.coarse_points == 2048);
    CHECK(cfg.quadrature.abs_tolerance == 1e-10);
    CHECK(cfg.format == OutputFormat::csv);
}

TEST_CASE("parse errors carry line and column") {
    try {
        ConfigMap::parse("engine = auto\nthis line has no equals sign\n");
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(e.line == 2);
        CHECK(e.column == 1);
    }
    try {
        ConfigMap::parse("[sweep\nh = 1\n");
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(e.line == 1);
    }
    CHECK_THROWS_AS(ConfigMap::parse("x =\n"), config_error);
    CHECK_THROWS_AS(ConfigMap::parse("bad key! = 1\n"), config_error);
}

TEST_CASE("comments and blank lines are ignored") {
    const auto raw = ConfigMap::parse(
        "# leading comment\n\nengine = meanfield  # trailing comment\n[sweep]\nh = 1\n");
    CHECK(raw.contains("engine"));
    CHECK(raw.contains("sweep.h"));
    CHECK_NOTHROW(validate_config(raw));
}

TEST_CASE("numeric lists and ranges") {
    const auto raw = ConfigMap::parse("[sweep]\nh = 0:0.5:1.5\nbeta = 1, 10, 40\n");
    const auto h = raw.get_double_list("sweep.h", {});
    REQUIRE(h.size() == 4);
    CHECK(h[0] == 0.0);
    CHECK(h[1] == 0.5);
    CHECK(h[2] == 1.0);
    CHECK(h[3] == 1.5);
    const auto beta = raw.get_double_list("sweep.beta", {});
    CHECK(beta == std::vector<double>{1.0, 10.0, 40.0});

    CHECK_THROWS_AS(ConfigMap::parse("[sweep]\nh = 0:0.5\n").get_double_list("sweep.h", {}),
                    config_error);
    CHECK_THROWS_AS(
        ConfigMap::parse("[sweep]\nh = 1:0:2\n").get_double_list("sweep.h", {}),
        config_error);
    CHECK_THROWS_AS(
        ConfigMap::parse("[sweep]\nh = banana\n").get_double_list("sweep.h", {}),
        config_error);
}

TEST_CASE("engine constraints are rejected at validation time") {
    SUBCASE("jw_exact needs gamma = 0") {
        const auto raw = ConfigMap::parse(
            "engine = jw_exact\n[sweep]\ngamma = 0.5\nn_sites = 8\nh = 0.5\n");
        try {
            validate_config(raw);
            FAIL("expected config_error");
        } catch (const config_error& e) {
            CHECK(std::string(e.what()).find("jw_exact requires gamma = 0") !=
                  std::string::npos);
            CHECK(e.key == "sweep.gamma");
        }
    }
    SUBCASE("ed respects the memory cap") {
        const auto raw =
            ConfigMap::parse("engine = ed\n[sweep]\nn_sites = 20\nh = 0.5\n");
        try {
            validate_config(raw);
            FAIL("expected config_error");
        } catch (const config_error& e) {
            CHECK(std::string(e.what()).find("memory cap") != std::string::npos);
            CHECK(e.key == "sweep.n_sites");
        }
    }
    SUBCASE("auto routes gamma > 0 to ed and checks the cap") {
        const auto raw = ConfigMap::parse(
            "engine = auto\n[sweep]\ngamma = 0.8\nn_sites = 20\nh = 0.5\n");
        CHECK_THROWS_AS(validate_config(raw), config_error);
    }
    SUBCASE("jw_exact at large finite N is fine") {
        const auto raw = ConfigMap::parse(
            "engine = jw_exact\n[sweep]\ngamma = 0\nn_sites = 64\nh = 0.5\n");
        CHECK_NOTHROW(validate_config(raw));
    }
    SUBCASE("meanfield needs the inf sentinel") {
        const auto raw =
            ConfigMap::parse("engine = meanfield\n[sweep]\nn_sites = 8\nh = 0.5\n");
        CHECK_THROWS_AS(validate_config(raw), config_error);
    }
}

TEST_CASE("unknown keys are rejected") {
    const auto raw = ConfigMap::parse("engine = meanfield\n[sweep]\nhh = 0.5\n");
    try {
        validate_config(raw);
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(e.key == "sweep.hh");
    }
}

TEST_CASE("semantic checks name key and constraint") {
    CHECK_THROWS_AS(validate_config(ConfigMap::parse("engine = warp\n")), config_error);
    CHECK_THROWS_AS(validate_config(ConfigMap::parse("workers = 0\n")), config_error);
    CHECK_THROWS_AS(validate_config(ConfigMap::parse("[system]\ntunneling = 0\n")),
                    config_error);
    CHECK_THROWS_AS(validate_config(ConfigMap::parse("[sweep]\nbeta = -1\n")),
                    config_error);
    CHECK_THROWS_AS(validate_config(ConfigMap::parse("[sweep]\ngamma = 1.5\n")),
                    config_error);
    CHECK_THROWS_AS(validate_config(ConfigMap::parse("[sweep]\nn_sites = 1\n")),
                    config_error);
    CHECK_THROWS_AS(
        validate_config(ConfigMap::parse("[sweep]\nbeta = 1\ninv_beta = 0.5\n")),
        config_error);
    CHECK_THROWS_AS(validate_config(ConfigMap::parse("[output]\nformat = yaml\n")),
                    config_error);
}

TEST_CASE("inv_beta inverts into the beta grid") {
    const auto raw = ConfigMap::parse("[sweep]\ninv_beta = 0.025, 0.5\nh = 0.5\n");
    const SweepConfig cfg = validate_config(raw);
    REQUIRE(cfg.beta_values.size() == 2);
    CHECK(cfg.beta_values[0] == doctest::Approx(40.0));
    CHECK(cfg.beta_values[1] == doctest::Approx(2.0));
}

TEST_CASE("presets parse and validate") {
    for (const char* name : {"fig1", "fig2", "fig3"}) {
        const SweepConfig cfg = validate_config(ConfigMap::parse(preset_text(name)));
        CHECK(cfg.tls.gap == 0.2);
        CHECK(cfg.tls.tunneling == 0.1);
        CHECK(cfg.coupling.strength == 0.05);
    }
    const SweepConfig fig1 = validate_config(ConfigMap::parse(preset_text("fig1")));
    CHECK(fig1.h_values.size() == 151);
    CHECK(fig1.n_sites_values == std::vector<int>{8, 12, 16, kInfiniteSites});
    CHECK(fig1.beta_values == std::vector<double>{40.0});
    CHECK(fig1.derivative);

    const SweepConfig fig3 = validate_config(ConfigMap::parse(preset_text("fig3")));
    CHECK(fig3.beta_values.size() == 40);
    CHECK(fig3.h_values == std::vector<double>{0.5, 2.0});
    CHECK(fig3.gamma_values == std::vector<double>{0.0, 1.0});

    CHECK_THROWS_AS(preset_text("fig9"), config_error);
}

TEST_CASE("overlay semantics: file overrides preset") {
    auto raw = ConfigMap::parse(preset_text("fig1"));
    raw.merge(ConfigMap::parse("[sweep]\nn_sites = 8\n[output]\npath = out.csv\n"));
    const SweepConfig cfg = validate_config(raw);
    CHECK(cfg.n_sites_values == std::vector<int>{8});
    CHECK(cfg.output_path == "out.csv");
    CHECK(cfg.h_values.size() == 151);  // untouched preset value survives
}

TEST_SUITE_END();
