#pragma once

#include <string>

#include "switchctl/simulate.hpp"

namespace switchctl {

/// Per-leg synthesis options (all optional): an explicit phase for the
/// two-V split, an explicit Euler branch, or an explicit rotation
/// generator overriding the geodesic target.
struct LegSpec {
    std::optional<double> theta1;
    std::optional<EulerAngles> euler;
    std::optional<Su2Vector> generator;
};

/// A full synthesis request: one circuit, one transfer, one algorithm.
struct RunConfig {
    std::optional<ThirdOrderCircuit> third;
    std::optional<FourthOrderCircuit> fourth;
    TransferRequest transfer;
    std::vector<LegSpec> legs;  // empty, or one entry per transfer leg
    Algorithm algorithm = Algorithm::piecewise;
    double tolerance = 1e-9;
    double sample_dt = 0.0;  // <= 0 selects total duration / 1000
    std::string schedule_out;
    std::string trajectory_out;
    std::string report_out;

    void validate() const {
        if (third.has_value() == fourth.has_value())
            throw std::invalid_argument("config requires exactly one circuit block");
        if (third && algorithm == Algorithm::fourth)
            throw std::invalid_argument(
                "algorithm \"fourth\" requires a fourth-order circuit");
        if (fourth && algorithm != Algorithm::fourth)
            throw std::invalid_argument(
                "fourth-order circuits admit only algorithm \"fourth\"");
        if (!legs.empty() && static_cast<int>(legs.size()) != transfer.leg_count())
            throw std::invalid_argument("legs block must have one entry per transfer leg");
        transfer.validate();
        if ((third && transfer.dimension != 3) || (fourth && transfer.dimension != 4))
            throw std::invalid_argument("transfer dimension does not match the circuit order");
    }
};

struct SynthResult {
    Schedule schedule;
    std::vector<FactorList> leg_factors;  // third order: one list per leg
};

namespace detail {

inline bool matches_axis(const Eigen::VectorXd& y, int axis, double tol = 1e-9) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(y.size());
    e(axis) = 1.0;
    return (y - e).norm() < tol;
}

}  // namespace detail

/// @brief Synthesize a schedule realizing the configured transfer.
///
/// Third order: each leg's rotation target is factorized by the selected
/// algorithm and the legs are compiled into one schedule (piecewise mode
/// for the piecewise algorithm, bang-bang otherwise).  Fourth order:
/// the final state selects the resonant construction — (0,0,1,0) via the
/// first pattern, (0,0,0,1) via the second, (0,1,0,0) by free evolution.
inline SynthResult synthesize(const RunConfig& cfg) {
    cfg.validate();
    SynthResult out;

    if (cfg.third) {
        const ThirdOrderSystem sys = build_third(*cfg.third);
        std::vector<FactorList> lists;
        Eigen::VectorXd from = cfg.transfer.x0;
        for (int leg = 0; leg < cfg.transfer.leg_count(); ++leg) {
            const bool last = leg == cfg.transfer.leg_count() - 1;
            const Eigen::VectorXd to = last ? cfg.transfer.xf : cfg.transfer.waypoints[leg];
            LegOptions opts;
            TargetPolicy policy = TargetPolicy::geodesic();
            if (!cfg.legs.empty()) {
                opts.theta1 = cfg.legs[leg].theta1;
                opts.euler = cfg.legs[leg].euler;
                if (cfg.legs[leg].generator)
                    policy = TargetPolicy::explicit_generator(*cfg.legs[leg].generator);
            }
            const So3Target target = so3_target(Vec3(from), Vec3(to), policy);
            lists.push_back(factorize_third(exp_su2(target.generator), sys, cfg.algorithm, opts));
            from = to;
        }
        const ScheduleMode mode = cfg.algorithm == Algorithm::piecewise
                                      ? ScheduleMode::piecewise
                                      : ScheduleMode::bangbang;
        out.schedule = compile_schedule(lists, sys, mode);
        out.leg_factors = std::move(lists);
        return out;
    }

    const FourthOrderSystem sys = build_fourth(*cfg.fourth);
    if (!cfg.transfer.waypoints.empty())
        throw synthesis_error("fourth-order synthesis realizes single-leg transfers only");
    if (!detail::matches_axis(cfg.transfer.x0, 0))
        throw synthesis_error("fourth-order synthesis starts from (1,0,0,0)");
    FourthOrderMode mode;
    if (detail::matches_axis(cfg.transfer.xf, 2)) {
        mode = FourthOrderMode::cc1;
    } else if (detail::matches_axis(cfg.transfer.xf, 3)) {
        mode = FourthOrderMode::cc2;
    } else if (detail::matches_axis(cfg.transfer.xf, 1)) {
        mode = FourthOrderMode::free_evolution;
    } else {
        throw synthesis_error(
            "fourth-order synthesis reaches (0,0,1,0), (0,0,0,1), or (0,1,0,0) only");
    }
    const FourthOrderTarget target = fourth_order_targets(Vec4(cfg.transfer.xf), sys, mode);
    out.schedule = compile_schedule(fourth_order_factorize(target, sys), sys);
    return out;
}

}  // namespace switchctl
