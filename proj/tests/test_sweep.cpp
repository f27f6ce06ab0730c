#include <doctest.h>

#include <sstream>

#include "spinbath/sweep.hpp"

using namespace spinbath;
using namespace spinbath::sweep;

namespace {

SweepConfig tiny_meanfield() {
    return validate_config(ConfigMap::parse(
        "engine = meanfield\n[sweep]\nh = 0.2, 0.6\nbeta = 5, 40\ngamma = 0, 1\n"));
}

}  // namespace

TEST_SUITE_BEGIN("sweep");

TEST_CASE("grid order is h fastest, then beta, gamma, n_sites") {
    const auto records = run_sweep(tiny_meanfield());
    REQUIRE(records.size() == 8);
    CHECK(records[0].h == 0.2);
    CHECK(records[1].h == 0.6);
    CHECK(records[0].beta == 5.0);
    CHECK(records[2].beta == 40.0);
    CHECK(records[0].gamma == 0.0);
    CHECK(records[4].gamma == 1.0);
    for (const ResultRecord& r : records) {
        CHECK(r.status == "ok");
        CHECK(r.engine == "meanfield");
        CHECK(r.n_sites == kInfiniteSites);
        CHECK(r.p_tr.has_value());
        CHECK(r.m_z.has_value());
        CHECK(!r.t_star.has_value());
        CHECK(r.delta == 0.2);
        CHECK(r.tunneling == 0.1);
        CHECK(r.coupling == 0.05);
    }
}

TEST_CASE("worker count does not change results") {
    SweepConfig cfg = validate_config(ConfigMap::parse(
        "engine = auto\n[sweep]\nh = 0.1, 0.4, 0.9\nbeta = 10\ngamma = 0\n"
        "n_sites = 4, inf\n"));
    cfg.workers = 1;
    const auto serial = run_sweep(cfg);
    cfg.workers = 8;
    const auto parallel = run_sweep(cfg);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i)
        CHECK(records_equal(serial[i], parallel[i], /*ignore_timing=*/true));

    std::ostringstream a, b;
    emit_csv(a, serial, 1);
    emit_csv(b, parallel, 1);
    CHECK(csv_data_section(a.str()) == csv_data_section(b.str()));
}

TEST_CASE("individual failures become error rows and the sweep continues") {
    const SweepConfig cfg = validate_config(ConfigMap::parse(
        "engine = meanfield\n[sweep]\nh = 0.5, 1.0\nbeta = 5000\n"
        "[quadrature]\nmax_subdivisions = 2\n"));
    const auto records = run_sweep(cfg);
    REQUIRE(records.size() == 2);
    CHECK(!all_ok(records));
    for (const ResultRecord& r : records) {
        if (r.status == "error") {
            CHECK(!r.error_message.empty());
            CHECK(!r.p_tr.has_value());
        }
    }
    // column count stays fixed across ok and error rows
    std::ostringstream out;
    emit_csv(out, records, 123);
    std::istringstream lines(out.str());
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty() || line.front() == '#') continue;
        CHECK(std::count(line.begin(), line.end(), ',') == 13);
    }
}

TEST_CASE("cross-check mode records both engines and their difference") {
    SweepConfig cfg = validate_config(ConfigMap::parse(
        "engine = auto\ncross_check = true\n[sweep]\nh = 0.5\nbeta = 10\ngamma = 0\n"
        "n_sites = 4\n"));
    const auto records = run_sweep(cfg);
    REQUIRE(records.size() == 1);
    REQUIRE(records[0].diagnostics.count("cross_check_p_tr_ed") == 1);
    REQUIRE(records[0].diagnostics.count("cross_check_abs_diff") == 1);
    CHECK(records[0].diagnostics.at("cross_check_abs_diff") < 1e-8);
}

TEST_CASE("derivative postprocess on synthetic records") {
    std::vector<ResultRecord> group;
    for (int i = 0; i < 5; ++i) {
        ResultRecord r;
        r.engine = "meanfield";
        r.h = 0.1 * double(i);
        r.beta = 40.0;
        r.status = "ok";
        group.push_back(r);
    }

    SUBCASE("constant profile has zero derivative") {
        for (auto& r : group) r.p_tr = 0.64;
        const auto out = derivative_postprocess(group);
        for (const auto& r : out) CHECK(std::abs(*r.dptr_dh) < 1e-14);
    }
    SUBCASE("linear profile has constant derivative") {
        for (auto& r : group) r.p_tr = 0.1 + 0.7 * r.h;
        const auto out = derivative_postprocess(group);
        for (const auto& r : out) CHECK(std::abs(*r.dptr_dh - 0.7) < 1e-12);
    }
    SUBCASE("non-uniform grid is rejected") {
        for (auto& r : group) r.p_tr = 0.5;
        group[3].h = 0.35;
        CHECK_THROWS_AS(derivative_postprocess(group), domain_error);
    }
    SUBCASE("only h is supported") {
        for (auto& r : group) r.p_tr = 0.5;
        CHECK_THROWS_AS(derivative_postprocess(group, "beta"), domain_error);
    }
}

TEST_CASE("json round trip preserves records field-wise") {
    const auto records = run_sweep(tiny_meanfield());
    std::stringstream buffer;
    emit_json(buffer, records);
    const auto back = parse_records_json(buffer);
    REQUIRE(back.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i)
        CHECK(records_equal(records[i], back[i], /*ignore_timing=*/false));
}

TEST_CASE("csv output shape") {
    const auto records = run_sweep(tiny_meanfield());
    std::ostringstream out;
    emit_csv(out, records, config_hash(tiny_meanfield()));
    const std::string text = out.str();
    CHECK(text.find("# simulate v") == 0);
    CHECK(text.find("# config_hash=") != std::string::npos);
    CHECK(text.find("engine,n_sites,gamma,h,beta,delta,tunneling,coupling,p_tr,t_star,"
                    "m_z,dptr_dh,status,wall_time_s") != std::string::npos);
    CHECK(text.find("meanfield,inf,") != std::string::npos);
}

TEST_CASE("config hash is stable and sensitive") {
    const SweepConfig a = tiny_meanfield();
    SweepConfig b = a;
    CHECK(config_hash(a) == config_hash(b));
    b.h_values.push_back(1.7);
    CHECK(config_hash(a) != config_hash(b));
}

TEST_SUITE_END();
