#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "switchctl/factorize.hpp"

namespace switchctl {

/// One constant-control segment.  Stores duration and control amplitude;
/// the power (time integral of the control) is derived as u * a so the
/// serialized form keeps a single source of truth.
struct Pulse {
    double duration = 0.0;  // a > 0
    double control = 0.0;   // u; in {0, 1} for bang-bang schedules

    double power() const { return control * duration; }
};

enum class ScheduleMode { piecewise, bangbang };

inline const char* to_string(ScheduleMode m) {
    return m == ScheduleMode::piecewise ? "piecewise" : "bangbang";
}

/// Time-ordered pulse schedule; pulses[0] acts first.  leg_sizes records
/// how many consecutive pulses realize each transfer leg so a simulator
/// can check waypoints at leg boundaries.
struct Schedule {
    int dimension = 3;
    ScheduleMode mode = ScheduleMode::piecewise;
    std::vector<Pulse> pulses;
    std::vector<std::size_t> leg_sizes;
    std::variant<ThirdOrderCircuit, FourthOrderCircuit> circuit;

    double total_duration() const {
        double s = 0.0;
        for (const auto& p : pulses) s += p.duration;
        return s;
    }
    double total_power() const {
        double s = 0.0;
        for (const auto& p : pulses) s += p.power();
        return s;
    }
    /// Pulse-cost metric: sum over pulses of sqrt(a^2 + b^2).
    double cost() const {
        double s = 0.0;
        for (const auto& p : pulses) s += std::hypot(p.duration, p.power());
        return s;
    }
    bool is_bangbang() const {
        for (const auto& p : pulses)
            if (p.control != 0.0 && p.control != 1.0) return false;
        return true;
    }
};

/// @brief Pulse realizing V(gamma) on a third-order network.
///
/// V(gamma) = exp[b (omega2/2) i sx + (b - a)(omega1/2) i sy] gives
/// b = 2 Re gamma / omega2 and a = b + 2 Im gamma / omega1.  The duration
/// is positive exactly when gamma lies strictly inside the half-plane
/// Im gamma > -(omega1/omega2) Re gamma.
inline Pulse pulse_from_gamma(complexd gamma, const ThirdOrderSystem& sys) {
    const double b = 2.0 * gamma.real() / sys.omega2;
    const double a = b + 2.0 * gamma.imag() / sys.omega1;
    if (!(a > 0.0)) {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "gamma = %.12g%+.12gi violates the half-plane condition "
                      "Im gamma > -(omega1/omega2) Re gamma = %.12g atop the boundary "
                      "Im gamma = -%.12g Re gamma; duration %.12g is not positive",
                      gamma.real(), gamma.imag(), -(sys.omega1 / sys.omega2) * gamma.real(),
                      sys.omega1 / sys.omega2, a);
        throw synthesis_error(buf);
    }
    return Pulse{a, b / a};
}

/// @brief Pulse realizing an axis-rotation factor on a third-order network.
///
/// Free evolution realizes e^{theta i sy} with theta <= 0, a switch-on
/// pulse e^{theta i sx} with theta >= 0; angles of the wrong sign are
/// shifted by one period (the factor matrix is unchanged).  Zero-angle
/// factors emit no pulse.
inline std::optional<Pulse> canonicalize_angle(const Factor& f, const ThirdOrderSystem& sys) {
    constexpr double tol = 1e-12;
    double theta = std::fmod(f.angle, 2.0 * pi);
    if (std::abs(theta) < tol || std::abs(std::abs(theta) - 2.0 * pi) < tol) return std::nullopt;
    switch (f.kind) {
        case Factor::Kind::y_rotation: {
            if (theta > 0.0) theta -= 2.0 * pi;
            return Pulse{-2.0 * theta / sys.omega1, 0.0};
        }
        case Factor::Kind::x_rotation: {
            if (theta < 0.0) theta += 2.0 * pi;
            return Pulse{2.0 * theta / sys.omega2, 1.0};
        }
        default:
            throw std::invalid_argument("canonicalize_angle expects an x- or y-rotation factor");
    }
}

/// @brief Compile per-leg factor lists into a third-order schedule.
///
/// Within each list the rightmost factor acts first in time.  Zero-duration
/// factors are dropped.  In bangbang mode every emitted pulse must have
/// control exactly 0 or 1.
inline Schedule compile_schedule(const std::vector<FactorList>& legs, const ThirdOrderSystem& sys,
                                 ScheduleMode mode) {
    Schedule sched;
    sched.dimension = 3;
    sched.mode = mode;
    sched.circuit = sys.circuit;
    for (const auto& leg : legs) {
        std::size_t count = 0;
        for (auto it = leg.factors.rbegin(); it != leg.factors.rend(); ++it) {
            std::optional<Pulse> pulse;
            switch (it->kind) {
                case Factor::Kind::v_factor:
                    if (std::abs(it->gamma) < 1e-12) break;
                    pulse = pulse_from_gamma(it->gamma, sys);
                    break;
                case Factor::Kind::x_rotation:
                case Factor::Kind::y_rotation:
                    pulse = canonicalize_angle(*it, sys);
                    break;
                default:
                    throw std::invalid_argument(
                        "third-order schedules admit only x-rotation, y-rotation, and V "
                        "factors; expand z rotations first");
            }
            if (!pulse) continue;
            if (mode == ScheduleMode::bangbang && pulse->control != 0.0 && pulse->control != 1.0) {
                char buf[160];
                std::snprintf(buf, sizeof buf,
                              "pulse %zu (duration %.12g) has control %.12g, which is not a "
                              "switch position in {0, 1}",
                              sched.pulses.size() + 1, pulse->duration, pulse->control);
                throw synthesis_error(buf);
            }
            sched.pulses.push_back(*pulse);
            ++count;
        }
        sched.leg_sizes.push_back(count);
    }
    return sched;
}

/// @brief Compile a fourth-order factor-list pair into a schedule.
///
/// The resonant construction coefficients are already (duration, power)
/// pairs; both subsystem lists must agree coefficient-by-coefficient since
/// one switching signal drives both.  Control ratios within 1e-9 of a
/// switch position snap to it exactly.
inline Schedule compile_schedule(const std::pair<FactorList, FactorList>& lists,
                                 const FourthOrderSystem& sys) {
    const auto& pl = lists.first.factors;
    const auto& ql = lists.second.factors;
    if (pl.size() != ql.size())
        throw synthesis_error("subsystem factor lists have different lengths");
    for (std::size_t i = 0; i < pl.size(); ++i) {
        const double scale =
            std::max({1.0, std::abs(pl[i].drift_coeff), std::abs(pl[i].control_coeff)});
        if (pl[i].kind != Factor::Kind::mixed || ql[i].kind != Factor::Kind::mixed
            || std::abs(pl[i].drift_coeff - ql[i].drift_coeff) > 1e-10 * scale
            || std::abs(pl[i].control_coeff - ql[i].control_coeff) > 1e-10 * scale) {
            char buf[120];
            std::snprintf(buf, sizeof buf,
                          "factor %zu coefficients differ between the two subsystems", i + 1);
            throw synthesis_error(buf);
        }
    }

    Schedule sched;
    sched.dimension = 4;
    sched.mode = ScheduleMode::bangbang;
    sched.circuit = sys.circuit;
    std::size_t count = 0;
    for (auto it = pl.rbegin(); it != pl.rend(); ++it) {
        const double a = it->drift_coeff;
        if (std::abs(a) < 1e-12) continue;
        if (a < 0.0) throw synthesis_error("fourth-order factor has negative duration");
        double u = it->control_coeff / a;
        if (std::abs(u) < 1e-9) {
            u = 0.0;
        } else if (std::abs(u - 1.0) < 1e-9) {
            u = 1.0;
        } else {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "pulse %zu control %.12g is not a switch position in {0, 1}; the "
                          "circuit is off resonance",
                          count + 1, u);
            throw synthesis_error(buf);
        }
        sched.pulses.push_back(Pulse{a, u});
        ++count;
    }
    sched.leg_sizes.push_back(count);
    return sched;
}

}  // namespace switchctl
