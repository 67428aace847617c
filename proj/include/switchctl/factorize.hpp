#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "switchctl/targets.hpp"

namespace switchctl {

/// One factor of a group-element factorization.  Lists are written in
/// product order: in a product F1 F2 ... FQ acting on a state, FQ acts
/// first in time.
struct Factor {
    enum class Kind { z_rotation, x_rotation, y_rotation, v_factor, mixed };
    Kind kind = Kind::z_rotation;
    double angle = 0.0;        // z/x/y rotations: e^{i angle sigma}
    complexd gamma{};          // v_factor parameter
    double drift_coeff = 0.0;  // mixed: exp(drift_coeff A + control_coeff B)
    double control_coeff = 0.0;

    static Factor z(double l) { return {Kind::z_rotation, l, {}, 0.0, 0.0}; }
    static Factor x(double t) { return {Kind::x_rotation, t, {}, 0.0, 0.0}; }
    static Factor y(double t) { return {Kind::y_rotation, t, {}, 0.0, 0.0}; }
    static Factor v(complexd g) { return {Kind::v_factor, 0.0, g, 0.0, 0.0}; }
    static Factor mixed(double da, double db) { return {Kind::mixed, 0.0, {}, da, db}; }
};

/// exp[(Re gamma) i sx + (-Im gamma) i sy]; a free-evolution factor when
/// gamma lies on the positive imaginary axis.
inline Su2Matrix v_matrix(complexd gamma) {
    const double m = std::abs(gamma);
    const double k = m < 1e-8 ? 1.0 - m * m / 6.0 : std::sin(m) / m;  // sin|g|/|g|
    const complexd i(0, 1);
    Su2Matrix v;
    v(0, 0) = std::cos(m);
    v(0, 1) = k * i * gamma;
    v(1, 0) = k * i * std::conj(gamma);
    v(1, 1) = std::cos(m);
    return v;
}

/// Matrix of a single factor; mixed factors are taken with respect to the
/// su(2) generator pair (A, B) of the hosting subsystem.
inline Su2Matrix factor_matrix(const Factor& f, const Su2Vector& A = {}, const Su2Vector& B = {}) {
    switch (f.kind) {
        case Factor::Kind::z_rotation: {
            Su2Matrix m = Su2Matrix::Zero();
            m(0, 0) = std::polar(1.0, f.angle);
            m(1, 1) = std::polar(1.0, -f.angle);
            return m;
        }
        case Factor::Kind::x_rotation: {
            Su2Matrix m;
            m << complexd(std::cos(f.angle), 0), complexd(0, std::sin(f.angle)),
                 complexd(0, std::sin(f.angle)), complexd(std::cos(f.angle), 0);
            return m;
        }
        case Factor::Kind::y_rotation: {
            Su2Matrix m;
            m << complexd(std::cos(f.angle), 0), complexd(std::sin(f.angle), 0),
                 complexd(-std::sin(f.angle), 0), complexd(std::cos(f.angle), 0);
            return m;
        }
        case Factor::Kind::v_factor:
            return v_matrix(f.gamma);
        case Factor::Kind::mixed:
            return exp_su2(A.scaled(f.drift_coeff) + B.scaled(f.control_coeff));
    }
    return Su2Matrix::Identity();
}

/// Factor sequence in product order (the last element acts first in time).
struct FactorList {
    std::vector<Factor> factors;

    Su2Matrix matrix(const Su2Vector& A = {}, const Su2Vector& B = {}) const {
        Su2Matrix m = Su2Matrix::Identity();
        for (const auto& f : factors) m = m * factor_matrix(f, A, B);
        return m;
    }
};

/// @brief z-V-z split of an SU(2) matrix.
///
/// T(alpha, zeta, mu) = e^{ip sz} V(gamma) e^{i(zeta-p) sz} with
/// gamma = alpha e^{i(zeta+mu-2p-pi/2)} for any p; the canonical choice
/// p = (zeta+mu-pi)/2 makes gamma = i alpha, so the middle factor is a
/// free evolution.
inline std::array<Factor, 3> zvz_split(const CayleyKlein& ck) {
    const double p = 0.5 * (ck.zeta + ck.mu - pi);
    // gamma = alpha e^{i(zeta+mu-2p-pi/2)}; the canonical p makes the phase
    // exactly pi/2, so gamma is constructed purely imaginary.
    const complexd gamma(0.0, ck.alpha);
    return {Factor::z(p), Factor::v(gamma), Factor::z(ck.zeta - p)};
}

/// @brief z rotation as a product of two quarter-turn V factors.
///
/// e^{iL sz} = V(gamma1) V(gamma2) with gamma_k = (pi/2) e^{i theta_k} and
/// theta1 - theta2 = L - pi.  Admissible phases lie strictly inside
/// (-delta, pi - delta), delta = arctan(omega1/omega2), which keeps every
/// derived pulse duration positive.  The default policy centers the pair in
/// the admissible arc; an explicit theta1 fixes theta2 = theta1 - L + pi.
inline std::pair<complexd, complexd> two_v_decomposition(double L, const ThirdOrderSystem& sys,
                                                         std::optional<double> theta1 = {}) {
    if (!(L > 0.0) || !(L < 2.0 * pi))
        throw std::invalid_argument("two_v_decomposition requires L in (0, 2 pi)");
    const double delta = std::atan(sys.omega1 / sys.omega2);
    double t1, t2;
    if (theta1) {
        t1 = *theta1;
        t2 = t1 - (L - pi);
    } else {
        const double mid = pi / 2.0 - delta;  // center of the admissible arc
        t1 = mid + 0.5 * (L - pi);
        t2 = mid - 0.5 * (L - pi);
    }
    auto admissible = [&](double th) { return th > -delta && th < pi - delta; };
    if (!admissible(t1) || !admissible(t2)) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "phases theta1=%.12g, theta2=%.12g leave the admissible arc "
                      "(%.12g, %.12g)",
                      t1, t2, -delta, pi - delta);
        throw synthesis_error(buf);
    }
    return {std::polar(pi / 2.0, t1), std::polar(pi / 2.0, t2)};
}

/// @brief z rotation from two fixed free-evolution factors and one switch-on
/// factor: e^{iL sz} = e^{-i(7pi/4) sy} e^{iL sx} e^{-i(pi/4) sy}.
inline std::array<Factor, 3> bangbang_z(double L) {
    return {Factor::y(-7.0 * pi / 4.0), Factor::x(L), Factor::y(-pi / 4.0)};
}

/// x-y-x Euler angles: target = e^{iD sx} e^{iE sy} e^{iF sx}.
struct EulerAngles {
    double D = 0.0;
    double E = 0.0;
    double F = 0.0;
};

inline Su2Matrix euler_matrix(const EulerAngles& e) {
    return factor_matrix(Factor::x(e.D)) * factor_matrix(Factor::y(e.E))
           * factor_matrix(Factor::x(e.F));
}

/// Reconstruction sign of an explicit Euler branch: +1 if the product
/// equals the target, -1 if it equals the negated target (the other
/// preimage of the same rotation), absent otherwise.
inline std::optional<int> euler_branch_sign(const CayleyKlein& ck, const EulerAngles& e,
                                            double tol = 1e-10) {
    const Su2Matrix target = ck_to_matrix(ck);
    const Su2Matrix m = euler_matrix(e);
    if ((m - target).norm() < tol) return 1;
    if ((m + target).norm() < tol) return -1;
    return std::nullopt;
}

/// @brief x-y-x Euler factorization of an SU(2) matrix.
///
/// |cos E| and |sin E| follow from (alpha, zeta, mu); the remaining signs
/// are fixed by enumerating E in {+-acos}, D-F in {s, pi-s}, D+F in
/// {t, pi-t} and returning the first branch whose product reproduces the
/// target.  Targets with cos E = 0 or sin E = 0 are solved directly.
inline EulerAngles euler_xyx(const CayleyKlein& ck) {
    const double ca = std::cos(ck.alpha), sa = std::sin(ck.alpha);
    const double cz = std::cos(ck.zeta), sz = std::sin(ck.zeta);
    const double cm = std::cos(ck.mu), sm = std::sin(ck.mu);
    const double r = std::sqrt(cz * cz * ca * ca + sm * sm * sa * sa);    // |cos E|
    const double rs = std::sqrt(sz * sz * ca * ca + cm * cm * sa * sa);   // |sin E|

    if (rs < 1e-12) {
        // Pure x rotation: E = 0, D + F determined, split evenly.
        const double sum = std::atan2(sm * sa, cz * ca);
        return {0.5 * sum, 0.0, 0.5 * sum};
    }
    if (r < 1e-12) {
        // E = pi/2; only D - F matters.
        const double diff = std::atan2(-sz * ca, cm * sa);
        return {0.5 * diff, pi / 2.0, -0.5 * diff};
    }

    auto clamp1 = [](double x) { return std::clamp(x, -1.0, 1.0); };
    const Su2Matrix target = ck_to_matrix(ck);
    for (const double e : {std::acos(clamp1(r)), -std::acos(clamp1(r))}) {
        const double se = std::sin(e);
        const double s = std::asin(clamp1(-sz * ca / se));
        const double t = std::asin(clamp1(sm * sa / r));
        for (const double dmf : {s, pi - s}) {
            for (const double dpf : {t, pi - t}) {
                const EulerAngles cand{0.5 * (dpf + dmf), e, 0.5 * (dpf - dmf)};
                if ((euler_matrix(cand) - target).norm() < 1e-10) return cand;
            }
        }
    }
    throw synthesis_error("no Euler x-y-x branch reproduces the target");
}

/// Factorization route for third-order synthesis.
enum class Algorithm { piecewise, bangbang1, bangbang2, fourth };

/// Per-leg overrides: an explicit phase for two-V splits, or an explicit
/// Euler branch (accepted when it reproduces the target up to the double
/// cover's sign, which leaves the rotation unchanged).
struct LegOptions {
    std::optional<double> theta1;
    std::optional<EulerAngles> euler;
};

namespace detail {

inline double wrap_z_angle(double l) {
    l = std::fmod(l, 2.0 * pi);
    if (l < 0.0) l += 2.0 * pi;
    if (l > 2.0 * pi - 1e-12) l = 0.0;
    return l;
}

}  // namespace detail

/// @brief Factor an SU(2) target into switch-realizable factors.
///
/// Pure y rotations become one free-evolution factor and pure x rotations
/// one switch-on factor regardless of algorithm.  Otherwise: piecewise
/// expands the z-V-z split through two_v_decomposition (at most five V
/// factors); bangbang1 expands each z rotation through bangbang_z (at most
/// seven factors, two of them switch-on); bangbang2 uses the three-factor
/// x-y-x Euler product.  When the z-V-z middle factor is the identity the
/// two z rotations merge.
inline FactorList factorize_third(const Su2Matrix& target, const ThirdOrderSystem& sys,
                                  Algorithm alg, const LegOptions& opts = {}) {
    constexpr double tol = 1e-12;
    FactorList out;

    const Su2Vector v = log_su2(target);
    if (std::abs(v.a) < tol && std::abs(v.c) < tol) {
        if (std::abs(v.b) >= tol) out.factors.push_back(Factor::y(-0.5 * v.b));
        return out;
    }
    if (std::abs(v.b) < tol && std::abs(v.c) < tol) {
        out.factors.push_back(Factor::x(-0.5 * v.a));
        return out;
    }

    const CayleyKlein ck = cayley_klein_of(target);

    if (alg == Algorithm::bangbang2) {
        EulerAngles e;
        if (opts.euler) {
            e = *opts.euler;
            if (!euler_branch_sign(ck, e)) {
                throw std::invalid_argument(
                    "explicit Euler angles do not reproduce the target rotation");
            }
        } else {
            e = euler_xyx(ck);
        }
        out.factors = {Factor::x(e.D), Factor::y(e.E), Factor::x(e.F)};
        return out;
    }
    if (alg != Algorithm::piecewise && alg != Algorithm::bangbang1)
        throw std::invalid_argument("factorize_third handles third-order algorithms only");

    const auto split = zvz_split(ck);
    const bool trivial_v = std::abs(split[1].gamma) < tol;
    std::vector<Factor> skeleton;
    if (trivial_v) {
        skeleton.push_back(Factor::z(ck.zeta));  // merge the two z rotations
    } else {
        skeleton = {split[0], split[1], split[2]};
    }

    for (const auto& f : skeleton) {
        if (f.kind == Factor::Kind::z_rotation) {
            const double l = detail::wrap_z_angle(f.angle);
            if (l < tol) continue;
            if (alg == Algorithm::piecewise) {
                const auto [g1, g2] = two_v_decomposition(l, sys, opts.theta1);
                out.factors.push_back(Factor::v(g1));
                out.factors.push_back(Factor::v(g2));
            } else {
                const auto bb = bangbang_z(l);
                out.factors.insert(out.factors.end(), bb.begin(), bb.end());
            }
        } else {
            // Middle factor V(i alpha), a free evolution by -alpha about y.
            if (alg == Algorithm::piecewise) {
                out.factors.push_back(f);
            } else {
                out.factors.push_back(Factor::y(-ck.alpha));
            }
        }
    }
    return out;
}

namespace detail {

/// Coefficients of one three-factor resonant construction
/// exp(c1 A) exp(c2 A + c2b B) exp(c3 A).
struct ResonantCoeffs {
    double c1, c2, c2b, c3;
};

inline FactorList resonant_list(const ResonantCoeffs& c) {
    FactorList l;
    l.factors = {Factor::mixed(c.c1, 0.0), Factor::mixed(c.c2, c.c2b), Factor::mixed(c.c3, 0.0)};
    return l;
}

}  // namespace detail

/// @brief Simultaneous factor lists for a fourth-order target pair.
///
/// Returns (p-list, q-list) over the (A1, B1) and (A2, B2) halves.  Both
/// resonant constructions share one switching signal, so the lists must
/// match coefficient-by-coefficient; that gate and the reconstruction of
/// (p, q) up to a common double-cover sign are checked here.
inline std::pair<FactorList, FactorList> fourth_order_factorize(const FourthOrderTarget& target,
                                                                const FourthOrderSystem& sys) {
    FactorList pl, ql;
    switch (target.mode) {
        case FourthOrderMode::cc1: {
            if (!target.k) throw synthesis_error("cc1 factorization requires a resonance index");
            const double k = *target.k;
            const double m = 2.0 * k + 1.0;
            pl = detail::resonant_list({m * pi / (2.0 * (k + 1.0) * (sys.nu + sys.beta)),
                                        m * pi / (std::sqrt(2.0) * (sys.nu + sys.beta)),
                                        m * pi / (std::sqrt(2.0) * (sys.del + sys.gam)),
                                        m * (6.0 * k + 1.0) * pi / (2.0 * k * (sys.nu + sys.beta))});
            ql = detail::resonant_list({pi / (2.0 * (k + 1.0) * (sys.beta - sys.nu)),
                                        pi / (std::sqrt(2.0) * (sys.beta - sys.nu)),
                                        pi / (std::sqrt(2.0) * (sys.del - sys.gam)),
                                        (6.0 * k + 1.0) * pi / (2.0 * k * (sys.beta - sys.nu))});
            break;
        }
        case FourthOrderMode::cc2: {
            if (!target.k) throw synthesis_error("cc2 factorization requires a resonance index");
            const double k = *target.k;
            const double m = 2.0 * k + 1.0;
            pl = detail::resonant_list({m * 3.0 * pi / (2.0 * (k + 1.0) * (sys.nu + sys.beta)),
                                        m * pi / (std::sqrt(2.0) * (sys.nu + sys.beta)),
                                        m * pi / (std::sqrt(2.0) * (sys.del + sys.gam)),
                                        m * (10.0 * k + 2.0) * pi / (2.0 * k * (sys.nu + sys.beta))});
            ql = detail::resonant_list({3.0 * pi / (2.0 * (k + 1.0) * (sys.beta - sys.nu)),
                                        pi / (std::sqrt(2.0) * (sys.beta - sys.nu)),
                                        pi / (std::sqrt(2.0) * (sys.gam - sys.del)),
                                        (10.0 * k + 2.0) * pi / (2.0 * k * (sys.beta - sys.nu))});
            break;
        }
        case FourthOrderMode::free_evolution: {
            const double t = pi / (2.0 * sys.nu);
            pl.factors = {Factor::mixed(t, 0.0)};
            ql.factors = {Factor::mixed(t, 0.0)};
            break;
        }
    }

    if (pl.factors.size() != ql.factors.size())
        throw synthesis_error("fourth-order factor lists have mismatched lengths");
    for (std::size_t i = 0; i < pl.factors.size(); ++i) {
        const auto& fp = pl.factors[i];
        const auto& fq = ql.factors[i];
        const double scale = std::max({1.0, std::abs(fp.drift_coeff), std::abs(fp.control_coeff)});
        if (std::abs(fp.drift_coeff - fq.drift_coeff) > 1e-10 * scale
            || std::abs(fp.control_coeff - fq.control_coeff) > 1e-10 * scale) {
            char buf[200];
            std::snprintf(buf, sizeof buf,
                          "factor %zu differs between the two subsystems "
                          "((%.12g, %.12g) vs (%.12g, %.12g)); one switching signal "
                          "cannot realize both",
                          i + 1, fp.drift_coeff, fp.control_coeff, fq.drift_coeff,
                          fq.control_coeff);
            throw synthesis_error(buf);
        }
    }

    const Su2Matrix pm = pl.matrix(sys.A1, sys.B1);
    const Su2Matrix qm = ql.matrix(sys.A2, sys.B2);
    const Su2Matrix pt = ck_to_matrix(target.p);
    const Su2Matrix qt = ck_to_matrix(target.q);
    // Either both products match (p, q) or both match (-p, -q); the two
    // cases have the same phi_tilde image.
    const double plus = std::max((pm - pt).norm(), (qm - qt).norm());
    const double minus = std::max((pm + pt).norm(), (qm + qt).norm());
    if (std::min(plus, minus) > 1e-10)
        throw synthesis_error("fourth-order factor lists do not reconstruct the target pair");
    return {pl, ql};
}

}  // namespace switchctl
