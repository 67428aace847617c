#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <sstream>

#include "support/oracles.hpp"

using namespace switchctl;
using Catch::Matchers::ContainsSubstring;

namespace {

const ThirdOrderSystem kSys = build_third({0.1, 0.2, 0.5});

Schedule sample_schedule() {
    const Su2Matrix t2 = factor_matrix(Factor::z(pi / 4));
    const FactorList f = factorize_third(t2, kSys, Algorithm::bangbang1);
    return compile_schedule({f}, kSys, ScheduleMode::bangbang);
}

nlohmann::json minimal_config() {
    return nlohmann::json{
        {"circuit", {{"type", "third"}, {"C1", 0.1}, {"C2", 0.2}, {"L3", 0.5}}},
        {"transfer", {{"x0", {1.0, 0.0, 0.0}}, {"xf", {0.0, -1.0, 0.0}}}},
    };
}

}  // namespace

TEST_CASE("schedule JSON round-trips bit for bit") {
    const Schedule s = sample_schedule();
    const nlohmann::json j = schedule_to_json(s);
    const Schedule r = schedule_from_json(j);
    REQUIRE(r.dimension == s.dimension);
    REQUIRE(r.mode == s.mode);
    REQUIRE(r.leg_sizes == s.leg_sizes);
    REQUIRE(r.pulses.size() == s.pulses.size());
    for (std::size_t i = 0; i < s.pulses.size(); ++i) {
        REQUIRE(r.pulses[i].duration == s.pulses[i].duration);
        REQUIRE(r.pulses[i].control == s.pulses[i].control);
    }
    const auto& c = std::get<ThirdOrderCircuit>(r.circuit);
    REQUIRE(c.C1 == 0.1);
    REQUIRE(c.C2 == 0.2);
    REQUIRE(c.L3 == 0.5);

    // ... and through a file, including the textual JSON layer
    const std::string path = "io_roundtrip_schedule.json";
    save_schedule(path, s);
    const Schedule f = load_schedule(path);
    for (std::size_t i = 0; i < s.pulses.size(); ++i) {
        REQUIRE(f.pulses[i].duration == s.pulses[i].duration);
        REQUIRE(f.pulses[i].control == s.pulses[i].control);
    }
    std::remove(path.c_str());
}

TEST_CASE("fourth-order schedules serialize their circuit block") {
    const FourthOrderSystem sys = build_fourth({4.0, 1.0, 1.0, 1.0});
    const FourthOrderTarget tgt =
        fourth_order_targets(Eigen::Vector4d::Unit(2), sys, FourthOrderMode::cc1);
    const Schedule s = compile_schedule(fourth_order_factorize(tgt, sys), sys);
    const nlohmann::json j = schedule_to_json(s);
    REQUIRE(j["dimension"] == 4);
    REQUIRE(j["circuit"]["type"] == "fourth");
    const Schedule r = schedule_from_json(j);
    REQUIRE(std::get<FourthOrderCircuit>(r.circuit).C2 == 1.0);
    REQUIRE(r.pulses[0].duration == s.pulses[0].duration);
}

TEST_CASE("schedule_from_json validates shape and values") {
    nlohmann::json good = schedule_to_json(sample_schedule());

    nlohmann::json j = good;
    j["dimension"] = 5;
    REQUIRE_THROWS_WITH(schedule_from_json(j), ContainsSubstring("schedule.dimension"));

    j = good;
    j["mode"] = "soft";
    REQUIRE_THROWS_WITH(schedule_from_json(j), ContainsSubstring("schedule.mode"));

    j = good;
    j["pulses"][0]["duration"] = -1.0;
    REQUIRE_THROWS_WITH(schedule_from_json(j), ContainsSubstring("duration"));

    j = good;
    j["legs"] = {1, 1};
    REQUIRE_THROWS_WITH(schedule_from_json(j), ContainsSubstring("sum to the pulse count"));

    j = good;
    j["circuit"] = {{"type", "fourth"}, {"L1", 1.0}, {"C2", 1.0}, {"L3", 1.0}, {"C4", 1.0}};
    REQUIRE_THROWS_WITH(schedule_from_json(j), ContainsSubstring("match the schedule dimension"));
}

TEST_CASE("config parsing reports dotted field paths") {
    REQUIRE_THROWS_WITH(parse_config(nlohmann::json::object()),
                        ContainsSubstring("config.circuit"));

    nlohmann::json j = minimal_config();
    j["circuit"].erase("C1");
    REQUIRE_THROWS_WITH(parse_config(j), ContainsSubstring("config.circuit.C1"));

    j = minimal_config();
    j["circuit"]["C2"] = "a lot";
    REQUIRE_THROWS_WITH(parse_config(j), ContainsSubstring("config.circuit.C2"));

    j = minimal_config();
    j["transfer"].erase("xf");
    REQUIRE_THROWS_WITH(parse_config(j), ContainsSubstring("config.transfer.xf"));

    j = minimal_config();
    j["algorithm"] = "fastest";
    REQUIRE_THROWS_WITH(parse_config(j), ContainsSubstring("config.algorithm"));

    j = minimal_config();
    j["transfer"]["legs"] = {{{"generator", {1.0, 2.0}}}};
    REQUIRE_THROWS_WITH(parse_config(j),
                        ContainsSubstring("config.transfer.legs[0].generator"));
}

TEST_CASE("config parsing fills every field") {
    nlohmann::json j = minimal_config();
    j["transfer"]["waypoints"] = {{0.0, 0.0, 1.0}};
    j["transfer"]["legs"] = {
        {{"theta1", -0.4}},
        {{"euler", {{"D", 0.1}, {"E", 0.2}, {"F", 0.3}}}, {"generator", {0.0, 1.5, 0.0}}},
    };
    j["algorithm"] = "bangbang2";
    j["tolerance"] = 1e-8;
    j["sample_dt"] = 0.01;
    j["out"] = {{"schedule", "s.json"}, {"trajectory", "t.csv"}, {"report", "r.json"}};

    const RunConfig cfg = parse_config(j);
    REQUIRE(cfg.third);
    REQUIRE(cfg.third->C1 == 0.1);
    REQUIRE_FALSE(cfg.fourth);
    REQUIRE(cfg.transfer.dimension == 3);
    REQUIRE(cfg.transfer.waypoints.size() == 1);
    REQUIRE(cfg.legs.size() == 2);
    REQUIRE(cfg.legs[0].theta1 == -0.4);
    REQUIRE_FALSE(cfg.legs[0].euler);
    REQUIRE(cfg.legs[1].euler->E == 0.2);
    REQUIRE(cfg.legs[1].generator->b == 1.5);
    REQUIRE(cfg.algorithm == Algorithm::bangbang2);
    REQUIRE(cfg.tolerance == 1e-8);
    REQUIRE(cfg.sample_dt == 0.01);
    REQUIRE(cfg.schedule_out == "s.json");
    REQUIRE(cfg.trajectory_out == "t.csv");
    REQUIRE(cfg.report_out == "r.json");

    nlohmann::json j4 = {
        {"circuit",
         {{"type", "fourth"}, {"L1", 4.0}, {"C2", 1.0}, {"L3", 1.0}, {"C4", 1.0}}},
        {"transfer", {{"x0", {1.0, 0.0, 0.0, 0.0}}, {"xf", {0.0, 0.0, 1.0, 0.0}}}},
    };
    const RunConfig cfg4 = parse_config(j4);
    REQUIRE(cfg4.fourth);
    REQUIRE(cfg4.transfer.dimension == 4);
    REQUIRE(cfg4.algorithm == Algorithm::fourth);
}

TEST_CASE("algorithm names round-trip") {
    for (auto a : {Algorithm::piecewise, Algorithm::bangbang1, Algorithm::bangbang2,
                   Algorithm::fourth})
        REQUIRE(algorithm_from_name(algorithm_name(a)) == a);
    REQUIRE_THROWS_AS(algorithm_from_name("simplex"), std::invalid_argument);
}

TEST_CASE("trajectory CSV uses an exact decimal round trip") {
    const Schedule s = sample_schedule();
    const Eigen::Vector3d x0(0, -std::sqrt(0.5), -std::sqrt(0.5));
    const SimulationResult res = run_schedule(x0, kSys, s, s.total_duration() / 7);

    std::ostringstream os;
    write_trajectory_csv(os, res, 3);
    std::istringstream is(os.str());
    std::string line;
    REQUIRE(std::getline(is, line));
    REQUIRE(line == "t,x1,x2,x3");
    for (const auto& smp : res.samples) {
        REQUIRE(std::getline(is, line));
        std::istringstream row(line);
        std::string cell;
        REQUIRE(std::getline(row, cell, ','));
        REQUIRE(std::stod(cell) == smp.t);
        for (int i = 0; i < 3; ++i) {
            REQUIRE(std::getline(row, cell, ','));
            REQUIRE(std::stod(cell) == smp.x(i));
        }
    }
    REQUIRE_FALSE(std::getline(is, line));
}

TEST_CASE("report and synthesis summaries expose their fields") {
    const Schedule s = sample_schedule();
    TransferRequest req;
    req.dimension = 3;
    req.x0 = Eigen::Vector3d(0, -std::sqrt(0.5), -std::sqrt(0.5));
    req.xf = run_schedule(req.x0, kSys, s).final_state.normalized();
    const TransferReport rep = verify_transfer(req, kSys, s, 1e-9);

    const nlohmann::json rj = report_to_json(rep);
    REQUIRE(rj["passed"] == true);
    REQUIRE(rj["endpoint_error"].get<double>() == rep.endpoint_error);
    REQUIRE(rj["tolerance"].get<double>() == 1e-9);
    REQUIRE(rj["bangbang_valid"] == true);

    const nlohmann::json sj = synth_report_json(s);
    REQUIRE(sj["pulses"].size() == s.pulses.size());
    REQUIRE(sj["pulses"][0]["index"] == 1);
    REQUIRE(sj["total_duration"].get<double>() == s.total_duration());
    REQUIRE(sj["bangbang"] == true);

    std::ostringstream table;
    write_pulse_table(table, s);
    REQUIRE_THAT(table.str(), ContainsSubstring("duration"));
    REQUIRE_THAT(table.str(), ContainsSubstring("bang-bang yes"));
}
