#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

#include "switchctl/lie.hpp"

namespace switchctl {

namespace detail {

inline void require_positive(double value, const char* name) {
    if (!(value > 0.0)) {
        throw std::invalid_argument(std::string("circuit parameter ") + name
                                    + " must be positive");
    }
}

}  // namespace detail

/// Third-order lossless network: capacitors C1, C2 and inductor L3, with a
/// switch selecting which capacitor the inductor sees (u = 0 or 1).
struct ThirdOrderCircuit {
    double C1 = 0.0;
    double C2 = 0.0;
    double L3 = 0.0;

    double omega1() const { return 1.0 / std::sqrt(C1 * L3); }
    double omega2() const { return 1.0 / std::sqrt(C2 * L3); }
};

/// State-space form x' = (Atil + u Btil) x on the unit sphere of R^3,
/// together with the su(2) coefficient vectors A, B with psi(A) = Atil and
/// psi(B) = Btil.  The drift alone is a y-axis generator; drift plus
/// control is an x-axis generator, which is what every factorization here
/// exploits.
struct ThirdOrderSystem {
    ThirdOrderCircuit circuit;
    double omega1 = 0.0;
    double omega2 = 0.0;
    So3Matrix Atil = So3Matrix::Zero();
    So3Matrix Btil = So3Matrix::Zero();
    Su2Vector A;
    Su2Vector B;

    So3Matrix generator(double u) const { return Atil + u * Btil; }
    Su2Vector su2_generator(double u) const { return {A.a + u * B.a, A.b + u * B.b, A.c + u * B.c}; }
};

inline ThirdOrderSystem build_third(const ThirdOrderCircuit& c) {
    detail::require_positive(c.C1, "C1");
    detail::require_positive(c.C2, "C2");
    detail::require_positive(c.L3, "L3");
    ThirdOrderSystem sys;
    sys.circuit = c;
    sys.omega1 = c.omega1();
    sys.omega2 = c.omega2();
    sys.Atil << 0.0, 0.0, sys.omega1,
                0.0, 0.0, 0.0,
                -sys.omega1, 0.0, 0.0;
    So3Matrix on;  // dynamics with the switch closed (u = 1)
    on << 0.0, 0.0, 0.0,
          0.0, 0.0, sys.omega2,
          0.0, -sys.omega2, 0.0;
    sys.Btil = on - sys.Atil;
    sys.A = psi_inv(sys.Atil);
    sys.B = psi_inv(sys.Btil);
    return sys;
}

/// Fourth-order lossless network with inductors L1, L3 and capacitors
/// C2, C4.  The four natural rates satisfy nu*beta = gam*del identically.
struct FourthOrderCircuit {
    double L1 = 0.0;
    double C2 = 0.0;
    double L3 = 0.0;
    double C4 = 0.0;

    double nu() const { return 1.0 / std::sqrt(L1 * C2); }
    double beta() const { return 1.0 / std::sqrt(L3 * C4); }
    double gam() const { return 1.0 / std::sqrt(L1 * C4); }
    double del() const { return 1.0 / std::sqrt(L3 * C2); }
};

/// x' = (Atil + u Btil) x on the unit sphere of R^4, split through
/// psi_tilde_inv into two su(2) halves: (A1, B1) and (A2, B2).  A control
/// that steers both halves to the right places steers the SO(4) state.
struct FourthOrderSystem {
    FourthOrderCircuit circuit;
    double nu = 0.0;
    double beta = 0.0;
    double gam = 0.0;
    double del = 0.0;
    So4Matrix Atil = So4Matrix::Zero();
    So4Matrix Btil = So4Matrix::Zero();
    Su2Vector A1, B1;  // first half: drift i((nu+beta)/2)sz, control -i((gam+del)/2)sx
    Su2Vector A2, B2;  // second half: drift i((beta-nu)/2)sz, control i((gam-del)/2)sx

    So4Matrix generator(double u) const { return Atil + u * Btil; }
};

inline FourthOrderSystem build_fourth(const FourthOrderCircuit& c) {
    detail::require_positive(c.L1, "L1");
    detail::require_positive(c.C2, "C2");
    detail::require_positive(c.L3, "L3");
    detail::require_positive(c.C4, "C4");
    FourthOrderSystem sys;
    sys.circuit = c;
    sys.nu = c.nu();
    sys.beta = c.beta();
    sys.gam = c.gam();
    sys.del = c.del();
    sys.Atil << 0.0, -sys.nu, 0.0, 0.0,
                sys.nu, 0.0, 0.0, 0.0,
                0.0, 0.0, 0.0, -sys.beta,
                0.0, 0.0, sys.beta, 0.0;
    sys.Btil << 0.0, 0.0, 0.0, sys.gam,
                0.0, 0.0, sys.del, 0.0,
                0.0, -sys.del, 0.0, 0.0,
                -sys.gam, 0.0, 0.0, 0.0;
    const Su2Pair a = psi_tilde_inv(sys.Atil);
    const Su2Pair b = psi_tilde_inv(sys.Btil);
    sys.A1 = a.k1;
    sys.A2 = a.k2;
    sys.B1 = b.k1;
    sys.B2 = b.k2;
    return sys;
}

/// Resonance pattern under which one switching signal steers both su(2)
/// halves at once: cc1 requires (nu+beta)/(beta-nu) = (gam+del)/(del-gam)
/// = 2k+1; cc2 flips the sign of the second ratio.
enum class ResonanceMode { cc1, cc2 };

/// @brief Odd-integer resonance index of a fourth-order circuit.
///
/// Returns k >= 1 when both rate ratios hit 2k+1 (with the mode's sign)
/// within rel_tol; absent otherwise, including the degenerate cases
/// beta = nu and del = gam where a ratio is undefined.
inline std::optional<int> resonance_k(const FourthOrderCircuit& c, ResonanceMode mode,
                                      double rel_tol = 1e-9) {
    const double nu = c.nu(), beta = c.beta(), gam = c.gam(), del = c.del();
    if (std::abs(beta - nu) <= rel_tol * (beta + nu)) return std::nullopt;
    if (std::abs(del - gam) <= rel_tol * (del + gam)) return std::nullopt;
    const double r1 = (nu + beta) / (beta - nu);
    double r2 = (gam + del) / (del - gam);
    if (mode == ResonanceMode::cc2) r2 = -r2;
    const int k = static_cast<int>(std::lround((r1 - 1.0) / 2.0));
    if (k < 1) return std::nullopt;
    const double target = 2.0 * k + 1.0;
    if (std::abs(r1 - target) > rel_tol * target) return std::nullopt;
    if (std::abs(r2 - target) > rel_tol * target) return std::nullopt;
    return k;
}

/// Human-readable account of why resonance_k accepted or rejected a
/// circuit; used for infeasibility reports.
inline std::string resonance_report(const FourthOrderCircuit& c, ResonanceMode mode) {
    const char* name = mode == ResonanceMode::cc1 ? "cc1" : "cc2";
    const double nu = c.nu(), beta = c.beta(), gam = c.gam(), del = c.del();
    char buf[256];
    if (std::abs(beta - nu) <= 1e-9 * (beta + nu) || std::abs(del - gam) <= 1e-9 * (del + gam)) {
        std::snprintf(buf, sizeof buf,
                      "resonance condition %s undefined: degenerate rates (beta ~ nu or del ~ gam)",
                      name);
        return buf;
    }
    const double r1 = (nu + beta) / (beta - nu);
    const double r2 = (gam + del) / (del - gam);
    std::snprintf(buf, sizeof buf,
                  "resonance condition %s requires (nu+beta)/(beta-nu) = %s(gam+del)/(del-gam) "
                  "= 2k+1 for integer k >= 1; got %.12g and %.12g",
                  name, mode == ResonanceMode::cc2 ? "-" : "", r1, r2);
    return buf;
}

}  // namespace switchctl
