#pragma once

#include <Eigen/Dense>

#include "switchctl/schedule.hpp"

namespace switchctl {

/// Rotation applied by one pulse, in closed form.
inline So3Matrix pulse_rotation(const ThirdOrderSystem& sys, const Pulse& p) {
    return rodrigues(sys.su2_generator(p.control).scaled(p.duration));
}

/// Fourth-order pulses propagate through the two su(2) halves and the
/// double-cover map rather than a 4x4 exponential.
inline So4Matrix pulse_rotation(const FourthOrderSystem& sys, const Pulse& p) {
    const Su2Vector k1 = (sys.A1 + sys.B1.scaled(p.control)).scaled(p.duration);
    const Su2Vector k2 = (sys.A2 + sys.B2.scaled(p.control)).scaled(p.duration);
    return phi_tilde(exp_su2(k1), exp_su2(k2));
}

inline Eigen::VectorXd propagate_pulse(const Eigen::VectorXd& x, const ThirdOrderSystem& sys,
                                       const Pulse& p) {
    return pulse_rotation(sys, p) * x;
}

inline Eigen::VectorXd propagate_pulse(const Eigen::VectorXd& x, const FourthOrderSystem& sys,
                                       const Pulse& p) {
    return pulse_rotation(sys, p) * x;
}

struct TrajectorySample {
    double t = 0.0;
    Eigen::VectorXd x;
};

struct SimulationResult {
    Eigen::VectorXd final_state;
    std::vector<TrajectorySample> samples;        // includes t = 0 and every pulse end
    std::vector<Eigen::VectorXd> leg_states;      // state after each leg
    std::vector<double> leg_times;
};

namespace detail {

template <class System>
SimulationResult run_schedule_impl(const Eigen::VectorXd& x0, const System& sys,
                                   const Schedule& sched, double sample_dt) {
    SimulationResult res;
    res.samples.push_back({0.0, x0});

    if (sample_dt <= 0.0) sample_dt = sched.total_duration() / 1000.0;

    std::vector<std::size_t> breaks;  // pulse index ending each leg
    {
        std::size_t acc = 0, total = 0;
        for (auto n : sched.leg_sizes) total += n;
        if (total == sched.pulses.size()) {
            for (auto n : sched.leg_sizes) breaks.push_back(acc += n);
        }
        if (breaks.empty()) breaks.push_back(sched.pulses.size());
    }

    Eigen::VectorXd x = x0;
    double t = 0.0;
    std::size_t done = 0, leg = 0;
    for (const auto& p : sched.pulses) {
        // Interior samples come from exact partial-duration exponentials.
        if (sample_dt > 0.0) {
            const auto steps = static_cast<long>(std::ceil(p.duration / sample_dt));
            for (long i = 1; i < steps; ++i) {
                const double dt = p.duration * static_cast<double>(i) / static_cast<double>(steps);
                res.samples.push_back({t + dt, propagate_pulse(x, sys, Pulse{dt, p.control})});
            }
        }
        x = propagate_pulse(x, sys, p);
        t += p.duration;
        res.samples.push_back({t, x});
        ++done;
        while (leg < breaks.size() && breaks[leg] == done) {
            res.leg_states.push_back(x);
            res.leg_times.push_back(t);
            ++leg;
        }
    }
    if (sched.pulses.empty()) {
        res.leg_states.assign(breaks.size(), x0);
        res.leg_times.assign(breaks.size(), 0.0);
    }
    res.final_state = x;
    return res;
}

}  // namespace detail

/// @brief Propagate x0 through a schedule, sampling the exact trajectory.
///
/// Pulses apply in time order.  Each pulse is subdivided at sample_dt
/// granularity (default: total duration / 1000) and every sample is an
/// exact exponential from the pulse start — no numerical integration.
inline SimulationResult run_schedule(const Eigen::VectorXd& x0, const ThirdOrderSystem& sys,
                                     const Schedule& sched, double sample_dt = 0.0) {
    return detail::run_schedule_impl(x0, sys, sched, sample_dt);
}

inline SimulationResult run_schedule(const Eigen::VectorXd& x0, const FourthOrderSystem& sys,
                                     const Schedule& sched, double sample_dt = 0.0) {
    return detail::run_schedule_impl(x0, sys, sched, sample_dt);
}

struct TransferReport {
    double endpoint_error = 0.0;
    std::vector<double> waypoint_errors;
    double max_norm_drift = 0.0;
    bool bangbang_valid = false;
    double total_duration = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

namespace detail {

template <class System>
TransferReport verify_transfer_impl(const TransferRequest& req, const System& sys,
                                    const Schedule& sched, double tolerance) {
    if (req.dimension != sched.dimension)
        throw std::invalid_argument("transfer request and schedule dimensions disagree");
    req.validate();

    // Pulse-boundary samples are enough for verification.
    const auto res = run_schedule_impl(Eigen::VectorXd(req.x0), sys, sched,
                                       sched.total_duration() + 1.0);

    TransferReport rep;
    rep.tolerance = tolerance;
    rep.total_duration = sched.total_duration();
    rep.bangbang_valid = sched.is_bangbang();
    rep.endpoint_error = (res.final_state - req.xf).norm();

    const double n0 = req.x0.norm();
    for (const auto& s : res.samples)
        rep.max_norm_drift = std::max(rep.max_norm_drift, std::abs(s.x.norm() - n0));

    bool waypoints_ok = true;
    if (!req.waypoints.empty()) {
        if (res.leg_states.size() != req.waypoints.size() + 1)
            throw std::invalid_argument(
                "schedule leg structure does not match the requested waypoints");
        for (std::size_t i = 0; i < req.waypoints.size(); ++i) {
            rep.waypoint_errors.push_back((res.leg_states[i] - req.waypoints[i]).norm());
            waypoints_ok = waypoints_ok && rep.waypoint_errors.back() <= tolerance;
        }
    }

    rep.passed = rep.endpoint_error <= tolerance && waypoints_ok
                 && rep.max_norm_drift <= tolerance
                 && (sched.mode != ScheduleMode::bangbang || rep.bangbang_valid);
    return rep;
}

}  // namespace detail

inline TransferReport verify_transfer(const TransferRequest& req, const ThirdOrderSystem& sys,
                                      const Schedule& sched, double tolerance = 1e-9) {
    return detail::verify_transfer_impl(req, sys, sched, tolerance);
}

inline TransferReport verify_transfer(const TransferRequest& req, const FourthOrderSystem& sys,
                                      const Schedule& sched, double tolerance = 1e-9) {
    return detail::verify_transfer_impl(req, sys, sched, tolerance);
}

}  // namespace switchctl
