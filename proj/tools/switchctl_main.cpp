#include <iostream>

#include "CLI11.hpp"
#include "switchctl/switchctl.hpp"

namespace {

using namespace switchctl;

std::string pick_path(const std::string& out_dir, const char* name,
                      const std::string& config_path, const std::string& fallback) {
    if (!out_dir.empty()) return out_dir + "/" + name;
    if (!config_path.empty()) return config_path;
    return fallback;
}

void print_report(const TransferReport& rep) {
    std::cout << "endpoint error    " << rep.endpoint_error << '\n';
    for (std::size_t i = 0; i < rep.waypoint_errors.size(); ++i)
        std::cout << "waypoint " << i + 1 << " error  " << rep.waypoint_errors[i] << '\n';
    std::cout << "max norm drift    " << rep.max_norm_drift << '\n'
              << "total duration    " << rep.total_duration << '\n'
              << "bang-bang valid   " << (rep.bangbang_valid ? "yes" : "no") << '\n'
              << "tolerance         " << rep.tolerance << '\n'
              << "result            " << (rep.passed ? "pass" : "FAIL") << '\n';
}

struct Options {
    std::string config_path;
    std::string schedule_path;
    std::string out_dir;
    std::string algorithm;
    double tolerance = -1.0;
    double sample_dt = -1.0;
};

int do_synth(const Options& opt) {
    RunConfig cfg = load_config(opt.config_path);
    if (!opt.algorithm.empty()) cfg.algorithm = algorithm_from_name(opt.algorithm);
    if (opt.tolerance > 0.0) cfg.tolerance = opt.tolerance;

    const SynthResult res = synthesize(cfg);
    write_pulse_table(std::cout, res.schedule);

    const std::string sched_path =
        pick_path(opt.out_dir, "schedule.json", cfg.schedule_out, "schedule.json");
    save_schedule(sched_path, res.schedule);
    std::cout << "schedule written to " << sched_path << '\n';

    const std::string report_path =
        pick_path(opt.out_dir, "synth_report.json", cfg.report_out, "");
    if (!report_path.empty()) {
        save_json(report_path, synth_report_json(res.schedule));
        std::cout << "report written to " << report_path << '\n';
    }
    return 0;
}

template <class System>
int simulate_with(const RunConfig& cfg, const System& sys, const Schedule& sched,
                  const Options& opt, bool write_trajectory) {
    const TransferReport rep = verify_transfer(cfg.transfer, sys, sched, cfg.tolerance);
    if (write_trajectory) {
        const SimulationResult res = run_schedule(cfg.transfer.x0, sys, sched, cfg.sample_dt);
        const std::string traj_path =
            pick_path(opt.out_dir, "trajectory.csv", cfg.trajectory_out, "trajectory.csv");
        save_trajectory(traj_path, res, sched.dimension);
        std::cout << "trajectory written to " << traj_path << '\n';
    }
    const std::string report_path = pick_path(opt.out_dir, "report.json", cfg.report_out, "");
    if (!report_path.empty()) {
        save_json(report_path, report_to_json(rep));
        std::cout << "report written to " << report_path << '\n';
    }
    print_report(rep);
    return rep.passed ? 0 : 3;
}

int do_simulate(const Options& opt, bool write_trajectory) {
    RunConfig cfg = load_config(opt.config_path);
    if (opt.tolerance > 0.0) cfg.tolerance = opt.tolerance;
    if (opt.sample_dt > 0.0) cfg.sample_dt = opt.sample_dt;

    const Schedule sched = load_schedule(opt.schedule_path);
    if (sched.dimension != cfg.transfer.dimension)
        throw std::invalid_argument("schedule and transfer dimensions disagree");

    // The schedule file is self-contained; its circuit block defines the
    // system that re-simulates it.
    if (sched.dimension == 3)
        return simulate_with(cfg, build_third(std::get<ThirdOrderCircuit>(sched.circuit)), sched,
                             opt, write_trajectory);
    return simulate_with(cfg, build_fourth(std::get<FourthOrderCircuit>(sched.circuit)), sched,
                         opt, write_trajectory);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Switching-schedule synthesis and simulation for lossless "
                 "switched electrical networks"};
    app.require_subcommand(1);
    Options opt;

    auto* synth = app.add_subcommand(
        "synth", "Synthesize a switching schedule realizing a configured transfer");
    synth->add_option("--config", opt.config_path, "run configuration (JSON)")->required();
    synth->add_option("--out", opt.out_dir, "output directory for schedule and report");
    synth->add_option("--algorithm", opt.algorithm,
                      "override algorithm: piecewise | bangbang1 | bangbang2 | fourth");
    synth->add_option("--tolerance", opt.tolerance, "override endpoint tolerance");

    auto* simulate = app.add_subcommand(
        "simulate", "Propagate a schedule, writing the exact trajectory and a report");
    simulate->add_option("--config", opt.config_path, "run configuration (JSON)")->required();
    simulate->add_option("--schedule", opt.schedule_path, "schedule file (JSON)")->required();
    simulate->add_option("--out", opt.out_dir, "output directory for trajectory and report");
    simulate->add_option("--tolerance", opt.tolerance, "override endpoint tolerance");
    simulate->add_option("--sample-dt", opt.sample_dt, "trajectory sampling step");

    auto* verify = app.add_subcommand(
        "verify", "Check a schedule against a configured transfer without writing a trajectory");
    verify->add_option("--config", opt.config_path, "run configuration (JSON)")->required();
    verify->add_option("--schedule", opt.schedule_path, "schedule file (JSON)")->required();
    verify->add_option("--out", opt.out_dir, "output directory for the report");
    verify->add_option("--tolerance", opt.tolerance, "override endpoint tolerance");

    auto* demo_cmd = app.add_subcommand(
        "demo", "Regenerate the reference tables and transfers and diff against expectations");
    demo_cmd->add_option("--out", opt.out_dir, "output directory for demo artifacts");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*synth) return do_synth(opt);
        if (*simulate) return do_simulate(opt, true);
        if (*verify) return do_simulate(opt, false);
        return switchctl::demo::run_demo(std::cout, opt.out_dir) ? 0 : 3;
    } catch (const synthesis_error& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
