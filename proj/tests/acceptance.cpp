// Acceptance gate: regression numbers, property suites, and end-to-end
// transfers, printed one line per criterion.  Exits nonzero on any failure.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "support/oracles.hpp"

using namespace switchctl;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int idx, const std::string& desc, bool ok, const std::string& detail = "") {
    std::printf("%s criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", idx, desc.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

double elapsed(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <class Fn>
void criterion(int idx, const std::string& desc, Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        report(idx, desc, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

const ThirdOrderSystem kSys = build_third({0.1, 0.2, 0.5});
const double kRt5 = std::sqrt(5.0), kRt10 = std::sqrt(10.0), kRt2 = std::sqrt(2.0);

bool close(double x, double y, double tol) { return std::abs(x - y) <= tol; }

}  // namespace

// 1. Piecewise pulse pair for the quarter z-turn: published 3-decimal values
//    within 1e-3, closed forms within 1e-12, inside 0.1 s.
static void criterion1() {
    const auto t0 = Clock::now();
    const auto [g1, g2] = two_v_decomposition(pi / 4, kSys, -pi / 8);
    const Pulse p1 = pulse_from_gamma(g1, kSys);
    const Pulse p2 = pulse_from_gamma(g2, kSys);

    const double w1 = 2 * kRt5, w2 = kRt10;
    const double b1 = pi * std::cos(pi / 8) / w2;
    const double a1 = b1 + pi * std::sin(-pi / 8) / w1;
    const double b2 = pi * std::cos(5 * pi / 8) / w2;
    const double a2 = b2 + pi * std::sin(5 * pi / 8) / w1;

    bool ok = close(p1.duration, a1, 1e-12) && close(p1.power(), b1, 1e-12)
              && close(p2.duration, a2, 1e-12) && close(p2.power(), b2, 1e-12)
              && close(p1.control, kRt2, 1e-12) && close(p2.control, -kRt2, 1e-12)
              && close(p1.duration, 0.649, 1e-3) && close(p1.power(), 0.917, 1e-3)
              && close(p2.duration, 0.269, 1e-3) && close(p2.power(), -0.380, 1e-3);
    const double dt = elapsed(t0);
    ok = ok && dt < 0.1;
    report(1, "piecewise pulse pair for the quarter z-turn", ok,
           fmt("a = %.6f, %.6f", p1.duration, p2.duration) + fmt(", %.3f ms", dt * 1e3));
}

// 2. First saturated expansion of the quarter z-turn: exact (a, b) rows,
//    every control a switch position.
static void criterion2() {
    const Su2Matrix t2 = factor_matrix(Factor::z(pi / 4));
    const Schedule s = compile_schedule({factorize_third(t2, kSys, Algorithm::bangbang1)}, kSys,
                                        ScheduleMode::bangbang);
    const double rows[3][2] = {{pi * kRt5 / 20, 0.0},
                               {pi * kRt10 / 20, pi * kRt10 / 20},
                               {7 * pi * kRt5 / 20, 0.0}};
    bool ok = s.pulses.size() == 3;
    for (std::size_t i = 0; ok && i < 3; ++i) {
        ok = close(s.pulses[i].duration, rows[i][0], 1e-12)
             && close(s.pulses[i].power(), rows[i][1], 1e-12)
             && (s.pulses[i].control == 0.0 || s.pulses[i].control == 1.0);
    }
    report(2, "saturated z expansion of the quarter turn", ok);
}

// 3. Euler branch (3pi/4, -7pi/4, pi/4) accepted; its product-order rows.
static void criterion3() {
    const CayleyKlein ck{0, pi / 4, 0};
    const EulerAngles branch{3 * pi / 4, -7 * pi / 4, pi / 4};
    bool ok = euler_branch_sign(ck, branch).has_value();

    LegOptions opts;
    opts.euler = branch;
    const Su2Matrix t2 = ck_to_matrix(ck);
    const Schedule s = compile_schedule({factorize_third(t2, kSys, Algorithm::bangbang2, opts)},
                                        kSys, ScheduleMode::bangbang);
    const double rows[3][2] = {{3 * pi * kRt10 / 20, 3 * pi * kRt10 / 20},
                               {7 * pi * kRt5 / 20, 0.0},
                               {pi * kRt10 / 20, pi * kRt10 / 20}};
    ok = ok && s.pulses.size() == 3;
    for (std::size_t i = 0; ok && i < 3; ++i) {
        const Pulse& p = s.pulses[2 - i];  // rows are listed in product order
        ok = close(p.duration, rows[i][0], 1e-12) && close(p.power(), rows[i][1], 1e-12);
    }
    report(3, "x-y-x branch acceptance and its pulse rows", ok);
}

// 4. Three-leg transfer (1,0,0) -> (0,-1,0) through two waypoints, all
//    three algorithms, boundary errors and drift below 1e-9, inside 1 s.
static void criterion4() {
    const auto t0 = Clock::now();
    const double h = std::sqrt(0.5);
    bool ok = true;
    std::string detail;
    for (auto alg : {Algorithm::piecewise, Algorithm::bangbang1, Algorithm::bangbang2}) {
        RunConfig cfg;
        cfg.third = ThirdOrderCircuit{0.1, 0.2, 0.5};
        cfg.algorithm = alg;
        cfg.transfer.dimension = 3;
        cfg.transfer.x0 = Eigen::Vector3d(1, 0, 0);
        cfg.transfer.waypoints = {Eigen::Vector3d(h, 0, -h), Eigen::Vector3d(0, -h, -h)};
        cfg.transfer.xf = Eigen::Vector3d(0, -1, 0);
        const SynthResult res = synthesize(cfg);
        const TransferReport rep =
            verify_transfer(cfg.transfer, build_third(*cfg.third), res.schedule, 1e-9);
        bool leg_ok = rep.endpoint_error < 1e-9 && rep.max_norm_drift < 1e-9;
        for (double w : rep.waypoint_errors) leg_ok = leg_ok && w < 1e-9;
        if (!leg_ok) detail += std::string(algorithm_name(alg)) + " failed; ";
        ok = ok && leg_ok;
    }
    const double dt = elapsed(t0);
    ok = ok && dt < 1.0;
    report(4, "three-leg transfer through both waypoints, all algorithms", ok,
           detail + fmt("%.3f ms", dt * 1e3));
}

// 5. Homomorphism suites, 1000 random inputs each, residuals < 1e-10.
static void criterion5() {
    const auto t0 = Clock::now();
    auto rng = testsupport::seeded_rng(2026);
    double worst = 0.0;
    auto track = [&worst](double r) { worst = std::max(worst, r); };

    for (int i = 0; i < 1000; ++i) {
        const Su2Matrix u = testsupport::random_su2(rng);
        const Su2Matrix v = testsupport::random_su2(rng);
        track((phi(Su2Matrix(u * v)) - So3Matrix(phi(u) * phi(v))).norm());
    }
    for (int i = 0; i < 1000; ++i) {
        const Su2Vector k = testsupport::random_su2_vector(rng);
        track((phi(exp_su2(k)) - testsupport::series_exp(Eigen::Matrix3d(psi(k)))).norm());
    }
    for (int i = 0; i < 1000; ++i) {
        const Su2Matrix u = testsupport::random_su2(rng);
        track((phi(Su2Matrix(-u)) - phi(u)).norm());
    }
    for (int i = 0; i < 1000; ++i) {
        const Su2Pair p{testsupport::random_su2_vector(rng), testsupport::random_su2_vector(rng)};
        const So4Matrix w = psi_tilde(p);
        const Su2Pair q = psi_tilde_inv(w);
        track(std::abs(q.k1.a - p.k1.a) + std::abs(q.k1.b - p.k1.b) + std::abs(q.k1.c - p.k1.c)
              + std::abs(q.k2.a - p.k2.a) + std::abs(q.k2.b - p.k2.b)
              + std::abs(q.k2.c - p.k2.c));
        track((psi_tilde(q) - w).norm());
    }
    for (int i = 0; i < 1000; ++i) {
        const Su2Pair p{testsupport::random_su2_vector(rng), testsupport::random_su2_vector(rng)};
        track((phi_tilde(exp_su2(p.k1), exp_su2(p.k2))
               - testsupport::series_exp(Eigen::Matrix4d(psi_tilde(p))))
                  .norm());
    }
    const double dt = elapsed(t0);
    const bool ok = worst < 1e-10 && dt < 5.0;
    report(5, "double-cover homomorphism suites (5 x 1000 random)", ok,
           fmt("worst residual %.3g, ", worst) + fmt("%.0f ms", dt * 1e3));
}

// 6. Factorization reconstructions, 1000 random targets each, < 1e-10;
//    V pairs stay strictly inside the admissible half-plane.
static void criterion6() {
    auto rng = testsupport::seeded_rng(2027);
    double worst = 0.0;
    bool admissible = true;
    std::uniform_real_distribution<double> ls(1e-6, 2 * pi - 1e-6);

    for (int i = 0; i < 1000; ++i) {
        const double L = ls(rng);
        const auto [g1, g2] = two_v_decomposition(L, kSys);
        worst = std::max(worst,
                         (v_matrix(g1) * v_matrix(g2) - factor_matrix(Factor::z(L))).norm());
        for (const complexd g : {g1, g2}) {
            admissible = admissible
                         && g.imag() > -(kSys.omega1 / kSys.omega2) * g.real()
                         && pulse_from_gamma(g, kSys).duration > 0.0;
        }
    }
    std::uniform_real_distribution<double> lz(-4 * pi, 4 * pi);
    for (int i = 0; i < 1000; ++i) {
        const double L = lz(rng);
        const auto f = bangbang_z(L);
        worst = std::max(worst, (factor_matrix(f[0]) * factor_matrix(f[1]) * factor_matrix(f[2])
                                 - factor_matrix(Factor::z(L)))
                                    .norm());
    }
    for (int i = 0; i < 1000; ++i) {
        const CayleyKlein ck = testsupport::random_ck(rng);
        const auto f = zvz_split(ck);
        worst = std::max(worst, (factor_matrix(f[0]) * factor_matrix(f[1]) * factor_matrix(f[2])
                                 - ck_to_matrix(ck))
                                    .norm());
    }
    for (int i = 0; i < 1000; ++i) {
        const CayleyKlein ck = testsupport::random_ck(rng);
        worst = std::max(worst, (euler_matrix(euler_xyx(ck)) - ck_to_matrix(ck)).norm());
    }
    const bool ok = worst < 1e-10 && admissible;
    report(6, "factor reconstruction suites (4 x 1000 random)", ok,
           fmt("worst residual %.3g", worst));
}

// 7. Fourth-order transfer to (0,0,1,0) on the k=1 resonant circuit.
static void criterion7() {
    const FourthOrderCircuit c{4.0, 1.0, 1.0, 1.0};
    const FourthOrderSystem sys = build_fourth(c);
    bool ok = resonance_k(c, ResonanceMode::cc1) == 1;

    const FourthOrderTarget tgt =
        fourth_order_targets(Eigen::Vector4d::Unit(2), sys, FourthOrderMode::cc1);
    const auto lists = fourth_order_factorize(tgt, sys);
    for (std::size_t i = 0; ok && i < lists.first.factors.size(); ++i) {
        ok = close(lists.first.factors[i].drift_coeff, lists.second.factors[i].drift_coeff,
                   1e-10 * std::max(1.0, std::abs(lists.first.factors[i].drift_coeff)))
             && close(lists.first.factors[i].control_coeff, lists.second.factors[i].control_coeff,
                      1e-10 * std::max(1.0, std::abs(lists.first.factors[i].control_coeff)));
    }
    const Schedule s = compile_schedule(lists, sys);
    for (const auto& p : s.pulses) ok = ok && (p.control == 0.0 || p.control == 1.0);

    const Eigen::VectorXd xf = [&] {
        Eigen::VectorXd x = Eigen::Vector4d::Unit(0);
        for (const auto& p : s.pulses) x = propagate_pulse(x, sys, p);
        return x;
    }();
    const double err = (xf - Eigen::Vector4d::Unit(2)).norm();
    ok = ok && err < 1e-9;
    report(7, "fourth-order switched transfer to the third axis (k = 1)", ok,
           fmt("endpoint error %.3g", err));
}

// 8. Free evolution on the same circuit: one pulse of duration pi/(2 nu)
//    reaches (0,1,0,0).
static void criterion8() {
    const FourthOrderSystem sys = build_fourth({4.0, 1.0, 1.0, 1.0});
    const double a = pi / (2 * sys.nu);
    const Eigen::VectorXd xf =
        propagate_pulse(Eigen::Vector4d::Unit(0), sys, Pulse{a, 0.0});
    const double err = (xf - Eigen::Vector4d::Unit(1)).norm();

    RunConfig cfg;
    cfg.fourth = FourthOrderCircuit{4.0, 1.0, 1.0, 1.0};
    cfg.algorithm = Algorithm::fourth;
    cfg.transfer.dimension = 4;
    cfg.transfer.x0 = Eigen::Vector4d::Unit(0);
    cfg.transfer.xf = Eigen::Vector4d::Unit(1);
    const SynthResult res = synthesize(cfg);
    const bool ok = err < 1e-9 && res.schedule.pulses.size() == 1
                    && close(res.schedule.pulses[0].duration, a, 1e-12)
                    && res.schedule.pulses[0].control == 0.0;
    report(8, "fourth-order free evolution to the second axis", ok,
           fmt("endpoint error %.3g, duration %.6f", err, a));
}

// 9. Search small circuit parameters for the second resonance and run the
//    transfer to (0,0,0,1).
static void criterion9() {
    std::optional<FourthOrderCircuit> found;
    for (double l1 = 1; !found && l1 <= 4; ++l1)
        for (double l3 = 1; !found && l3 <= 4; ++l3)
            for (double c2 = 1; !found && c2 <= 4; ++c2)
                for (double c4 = 1; !found && c4 <= 4; ++c4) {
                    const FourthOrderCircuit c{l1, c2, l3, c4};
                    if (resonance_k(c, ResonanceMode::cc2)) found = c;
                }
    if (!found) {
        report(9, "fourth-order switched transfer to the fourth axis", false,
               "no resonant circuit in the search grid");
        return;
    }
    RunConfig cfg;
    cfg.fourth = *found;
    cfg.algorithm = Algorithm::fourth;
    cfg.transfer.dimension = 4;
    cfg.transfer.x0 = Eigen::Vector4d::Unit(0);
    cfg.transfer.xf = Eigen::Vector4d::Unit(3);
    const SynthResult res = synthesize(cfg);
    const TransferReport rep =
        verify_transfer(cfg.transfer, build_fourth(*cfg.fourth), res.schedule, 1e-9);
    char which[120];
    std::snprintf(which, sizeof which,
                  "L1 = %g, C2 = %g, L3 = %g, C4 = %g; endpoint error %.3g", found->L1,
                  found->C2, found->L3, found->C4, rep.endpoint_error);
    report(9, "fourth-order switched transfer to the fourth axis", rep.passed, which);
}

// 10. Cost diagnostic: cumulative sum of sqrt(a^2 + b^2) over 100 random
//     targets, piecewise vs x-y-x schedules (reported, not compared).
static void criterion10() {
    auto rng = testsupport::seeded_rng(2028);
    double cost_pw = 0.0, cost_euler = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Su2Matrix t = testsupport::random_su2(rng);
        cost_pw += compile_schedule({factorize_third(t, kSys, Algorithm::piecewise)}, kSys,
                                    ScheduleMode::piecewise)
                       .cost();
        cost_euler += compile_schedule({factorize_third(t, kSys, Algorithm::bangbang2)}, kSys,
                                       ScheduleMode::bangbang)
                          .cost();
    }
    report(10, "cumulative pulse-cost diagnostic over 100 random targets", true,
           fmt("piecewise %.4f vs x-y-x %.4f", cost_pw, cost_euler));
}

int main() {
    criterion(1, "piecewise pulse pair for the quarter z-turn", criterion1);
    criterion(2, "saturated z expansion of the quarter turn", criterion2);
    criterion(3, "x-y-x branch acceptance and its pulse rows", criterion3);
    criterion(4, "three-leg transfer through both waypoints, all algorithms", criterion4);
    criterion(5, "double-cover homomorphism suites (5 x 1000 random)", criterion5);
    criterion(6, "factor reconstruction suites (4 x 1000 random)", criterion6);
    criterion(7, "fourth-order switched transfer to the third axis (k = 1)", criterion7);
    criterion(8, "fourth-order free evolution to the second axis", criterion8);
    criterion(9, "fourth-order switched transfer to the fourth axis", criterion9);
    criterion(10, "cumulative pulse-cost diagnostic over 100 random targets", criterion10);

    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
