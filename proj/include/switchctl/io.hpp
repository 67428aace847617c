#pragma once

#include <fstream>
#include <ostream>
#include <string>

#include "json.hpp"
#include "switchctl/pipeline.hpp"

namespace switchctl {

namespace detail {

[[noreturn]] inline void config_fail(const std::string& path, const std::string& what) {
    throw std::invalid_argument("config field " + path + ": " + what);
}

inline const nlohmann::json& require_key(const nlohmann::json& j, const char* key,
                                         const std::string& path) {
    if (!j.is_object()) config_fail(path, "must be an object");
    auto it = j.find(key);
    if (it == j.end()) config_fail(path + "." + key, "missing");
    return *it;
}

inline double number_at(const nlohmann::json& j, const std::string& path) {
    if (!j.is_number()) config_fail(path, "must be a number");
    return j.get<double>();
}

inline double require_number(const nlohmann::json& j, const char* key, const std::string& path) {
    return number_at(require_key(j, key, path), path + "." + key);
}

inline Eigen::VectorXd vector_at(const nlohmann::json& j, const std::string& path) {
    if (!j.is_array()) config_fail(path, "must be an array of numbers");
    Eigen::VectorXd v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = number_at(j[i], path + "[" + std::to_string(i) + "]");
    return v;
}

inline std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace detail

inline Algorithm algorithm_from_name(const std::string& name) {
    if (name == "piecewise") return Algorithm::piecewise;
    if (name == "bangbang1") return Algorithm::bangbang1;
    if (name == "bangbang2") return Algorithm::bangbang2;
    if (name == "fourth") return Algorithm::fourth;
    throw std::invalid_argument(
        "unknown algorithm \"" + name
        + "\" (expected piecewise, bangbang1, bangbang2, or fourth)");
}

inline const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::piecewise: return "piecewise";
        case Algorithm::bangbang1: return "bangbang1";
        case Algorithm::bangbang2: return "bangbang2";
        case Algorithm::fourth: return "fourth";
    }
    return "?";
}

/// @brief Parse a run configuration, reporting bad fields by dotted path.
inline RunConfig parse_config(const nlohmann::json& j) {
    using detail::config_fail;
    using detail::require_key;
    using detail::require_number;
    RunConfig cfg;

    const auto& circuit = require_key(j, "circuit", "config");
    const auto& type = require_key(circuit, "type", "config.circuit");
    if (!type.is_string()) config_fail("config.circuit.type", "must be a string");
    const std::string kind = type.get<std::string>();
    if (kind == "third") {
        ThirdOrderCircuit c;
        c.C1 = require_number(circuit, "C1", "config.circuit");
        c.C2 = require_number(circuit, "C2", "config.circuit");
        c.L3 = require_number(circuit, "L3", "config.circuit");
        cfg.third = c;
        cfg.transfer.dimension = 3;
        cfg.algorithm = Algorithm::piecewise;
    } else if (kind == "fourth") {
        FourthOrderCircuit c;
        c.L1 = require_number(circuit, "L1", "config.circuit");
        c.C2 = require_number(circuit, "C2", "config.circuit");
        c.L3 = require_number(circuit, "L3", "config.circuit");
        c.C4 = require_number(circuit, "C4", "config.circuit");
        cfg.fourth = c;
        cfg.transfer.dimension = 4;
        cfg.algorithm = Algorithm::fourth;
    } else {
        config_fail("config.circuit.type", "must be \"third\" or \"fourth\"");
    }

    const auto& transfer = require_key(j, "transfer", "config");
    cfg.transfer.x0 = detail::vector_at(require_key(transfer, "x0", "config.transfer"),
                                        "config.transfer.x0");
    cfg.transfer.xf = detail::vector_at(require_key(transfer, "xf", "config.transfer"),
                                        "config.transfer.xf");
    if (auto it = transfer.find("waypoints"); it != transfer.end()) {
        if (!it->is_array()) config_fail("config.transfer.waypoints", "must be an array");
        for (std::size_t i = 0; i < it->size(); ++i)
            cfg.transfer.waypoints.push_back(detail::vector_at(
                (*it)[i], "config.transfer.waypoints[" + std::to_string(i) + "]"));
    }
    if (auto it = transfer.find("legs"); it != transfer.end()) {
        if (!it->is_array()) config_fail("config.transfer.legs", "must be an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string path = "config.transfer.legs[" + std::to_string(i) + "]";
            const auto& lj = (*it)[i];
            if (!lj.is_object()) config_fail(path, "must be an object");
            LegSpec leg;
            if (auto f = lj.find("theta1"); f != lj.end())
                leg.theta1 = detail::number_at(*f, path + ".theta1");
            if (auto f = lj.find("euler"); f != lj.end()) {
                EulerAngles e;
                e.D = require_number(*f, "D", path + ".euler");
                e.E = require_number(*f, "E", path + ".euler");
                e.F = require_number(*f, "F", path + ".euler");
                leg.euler = e;
            }
            if (auto f = lj.find("generator"); f != lj.end()) {
                const Eigen::VectorXd g = detail::vector_at(*f, path + ".generator");
                if (g.size() != 3) config_fail(path + ".generator", "must have 3 entries");
                leg.generator = Su2Vector{g(0), g(1), g(2)};
            }
            cfg.legs.push_back(leg);
        }
    }

    if (auto it = j.find("algorithm"); it != j.end()) {
        if (!it->is_string()) config_fail("config.algorithm", "must be a string");
        try {
            cfg.algorithm = algorithm_from_name(it->get<std::string>());
        } catch (const std::invalid_argument& e) {
            config_fail("config.algorithm", e.what());
        }
    }
    if (auto it = j.find("tolerance"); it != j.end())
        cfg.tolerance = detail::number_at(*it, "config.tolerance");
    if (auto it = j.find("sample_dt"); it != j.end())
        cfg.sample_dt = detail::number_at(*it, "config.sample_dt");
    if (auto it = j.find("out"); it != j.end()) {
        if (!it->is_object()) config_fail("config.out", "must be an object");
        auto str = [&](const char* key) -> std::string {
            auto f = it->find(key);
            if (f == it->end()) return {};
            if (!f->is_string()) config_fail(std::string("config.out.") + key,
                                             "must be a string");
            return f->get<std::string>();
        };
        cfg.schedule_out = str("schedule");
        cfg.trajectory_out = str("trajectory");
        cfg.report_out = str("report");
    }
    return cfg;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("config file " + path + " is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

inline nlohmann::json circuit_to_json(const Schedule& sched) {
    nlohmann::json c;
    if (sched.dimension == 3) {
        const auto& t = std::get<ThirdOrderCircuit>(sched.circuit);
        c = {{"type", "third"}, {"C1", t.C1}, {"C2", t.C2}, {"L3", t.L3}};
    } else {
        const auto& f = std::get<FourthOrderCircuit>(sched.circuit);
        c = {{"type", "fourth"}, {"L1", f.L1}, {"C2", f.C2}, {"L3", f.L3}, {"C4", f.C4}};
    }
    return c;
}

inline nlohmann::json schedule_to_json(const Schedule& sched) {
    nlohmann::json pulses = nlohmann::json::array();
    for (const auto& p : sched.pulses)
        pulses.push_back({{"duration", p.duration}, {"control", p.control}});
    nlohmann::json j = {{"dimension", sched.dimension},
                        {"mode", to_string(sched.mode)},
                        {"pulses", pulses},
                        {"circuit", circuit_to_json(sched)}};
    if (!sched.leg_sizes.empty()) j["legs"] = sched.leg_sizes;
    return j;
}

/// @brief Rebuild a schedule from its serialized form, validating shape.
inline Schedule schedule_from_json(const nlohmann::json& j) {
    using detail::config_fail;
    using detail::require_key;
    using detail::require_number;
    Schedule sched;

    const auto& dim = require_key(j, "dimension", "schedule");
    if (!dim.is_number_integer() || (dim.get<int>() != 3 && dim.get<int>() != 4))
        config_fail("schedule.dimension", "must be 3 or 4");
    sched.dimension = dim.get<int>();

    const auto& mode = require_key(j, "mode", "schedule");
    if (!mode.is_string()) config_fail("schedule.mode", "must be a string");
    const std::string mode_name = mode.get<std::string>();
    if (mode_name == "piecewise") {
        sched.mode = ScheduleMode::piecewise;
    } else if (mode_name == "bangbang") {
        sched.mode = ScheduleMode::bangbang;
    } else {
        config_fail("schedule.mode", "must be \"piecewise\" or \"bangbang\"");
    }

    const auto& circuit = require_key(j, "circuit", "schedule");
    const auto& type = require_key(circuit, "type", "schedule.circuit");
    if (!type.is_string()) config_fail("schedule.circuit.type", "must be a string");
    const std::string kind = type.get<std::string>();
    if (kind == "third" && sched.dimension == 3) {
        ThirdOrderCircuit c;
        c.C1 = require_number(circuit, "C1", "schedule.circuit");
        c.C2 = require_number(circuit, "C2", "schedule.circuit");
        c.L3 = require_number(circuit, "L3", "schedule.circuit");
        sched.circuit = c;
    } else if (kind == "fourth" && sched.dimension == 4) {
        FourthOrderCircuit c;
        c.L1 = require_number(circuit, "L1", "schedule.circuit");
        c.C2 = require_number(circuit, "C2", "schedule.circuit");
        c.L3 = require_number(circuit, "L3", "schedule.circuit");
        c.C4 = require_number(circuit, "C4", "schedule.circuit");
        sched.circuit = c;
    } else {
        config_fail("schedule.circuit.type", "must match the schedule dimension");
    }

    const auto& pulses = require_key(j, "pulses", "schedule");
    if (!pulses.is_array()) config_fail("schedule.pulses", "must be an array");
    for (std::size_t i = 0; i < pulses.size(); ++i) {
        const std::string path = "schedule.pulses[" + std::to_string(i) + "]";
        Pulse p;
        p.duration = require_number(pulses[i], "duration", path);
        p.control = require_number(pulses[i], "control", path);
        if (!(p.duration > 0.0)) config_fail(path + ".duration", "must be positive");
        sched.pulses.push_back(p);
    }

    if (auto it = j.find("legs"); it != j.end()) {
        if (!it->is_array()) config_fail("schedule.legs", "must be an array");
        std::size_t sum = 0;
        for (std::size_t i = 0; i < it->size(); ++i) {
            const auto& n = (*it)[i];
            if (!n.is_number_integer() || n.get<long long>() < 0)
                config_fail("schedule.legs[" + std::to_string(i) + "]",
                            "must be a non-negative integer");
            sched.leg_sizes.push_back(n.get<std::size_t>());
            sum += sched.leg_sizes.back();
        }
        if (sum != sched.pulses.size())
            config_fail("schedule.legs", "entries must sum to the pulse count");
    }
    return sched;
}

inline void save_schedule(const std::string& path, const Schedule& sched) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write schedule file " + path);
    out << schedule_to_json(sched).dump(2) << '\n';
}

inline Schedule load_schedule(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read schedule file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("schedule file " + path + " is not valid JSON: " + e.what());
    }
    return schedule_from_json(j);
}

inline nlohmann::json report_to_json(const TransferReport& rep) {
    return {{"endpoint_error", rep.endpoint_error},
            {"waypoint_errors", rep.waypoint_errors},
            {"max_norm_drift", rep.max_norm_drift},
            {"bangbang_valid", rep.bangbang_valid},
            {"total_duration", rep.total_duration},
            {"tolerance", rep.tolerance},
            {"passed", rep.passed}};
}

inline nlohmann::json synth_report_json(const Schedule& sched) {
    nlohmann::json pulses = nlohmann::json::array();
    for (std::size_t i = 0; i < sched.pulses.size(); ++i) {
        const auto& p = sched.pulses[i];
        pulses.push_back({{"index", i + 1},
                          {"duration", p.duration},
                          {"control", p.control},
                          {"power", p.power()}});
    }
    return {{"dimension", sched.dimension},
            {"mode", to_string(sched.mode)},
            {"pulses", pulses},
            {"total_duration", sched.total_duration()},
            {"total_power", sched.total_power()},
            {"cost", sched.cost()},
            {"bangbang", sched.is_bangbang()}};
}

/// Human-readable pulse table: index, duration a, power b, control u.
inline void write_pulse_table(std::ostream& os, const Schedule& sched) {
    os << "  k  duration a            power b               control u\n";
    for (std::size_t i = 0; i < sched.pulses.size(); ++i) {
        const auto& p = sched.pulses[i];
        char line[128];
        std::snprintf(line, sizeof line, "%3zu  %-20.12g  %-20.12g  %-20.12g\n", i + 1,
                      p.duration, p.power(), p.control);
        os << line;
    }
    char tail[160];
    std::snprintf(tail, sizeof tail,
                  "  total duration %.12g, total power %.12g, cost %.12g, bang-bang %s\n",
                  sched.total_duration(), sched.total_power(), sched.cost(),
                  sched.is_bangbang() ? "yes" : "no");
    os << tail;
}

/// CSV rows t,x1,...,xn with 17 significant digits.
inline void write_trajectory_csv(std::ostream& os, const SimulationResult& res, int dimension) {
    os << 't';
    for (int i = 1; i <= dimension; ++i) os << ",x" << i;
    os << '\n';
    for (const auto& s : res.samples) {
        os << detail::format_double(s.t);
        for (Eigen::Index i = 0; i < s.x.size(); ++i) os << ',' << detail::format_double(s.x(i));
        os << '\n';
    }
}

inline void save_trajectory(const std::string& path, const SimulationResult& res, int dimension) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write trajectory file " + path);
    write_trajectory_csv(out, res, dimension);
}

inline void save_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write file " + path);
    out << j.dump(2) << '\n';
}

}  // namespace switchctl
