#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "switchctl/network.hpp"

namespace switchctl {

/// How the rotation for one transfer leg is chosen: the geodesic (minimal
/// rotation taking x0 to xf) or an explicit generator supplied by the
/// caller, validated against the endpoints.
struct TargetPolicy {
    enum class Kind { geodesic, explicit_generator };
    Kind kind = Kind::geodesic;
    Su2Vector generator;

    static TargetPolicy geodesic() { return {}; }
    static TargetPolicy explicit_generator(const Su2Vector& v) {
        return {Kind::explicit_generator, v};
    }
};

/// Rotation target for one leg: generator in psi coordinates plus its
/// rotation matrix rodrigues(generator).
struct So3Target {
    Su2Vector generator;
    So3Matrix rotation;
};

/// A state-transfer request: initial state, final state, and intermediate
/// waypoints splitting the transfer into legs (waypoints.size() + 1 legs).
struct TransferRequest {
    int dimension = 3;
    Eigen::VectorXd x0;
    Eigen::VectorXd xf;
    std::vector<Eigen::VectorXd> waypoints;

    int leg_count() const { return static_cast<int>(waypoints.size()) + 1; }

    void validate() const {
        if (dimension != 3 && dimension != 4)
            throw std::invalid_argument("transfer dimension must be 3 or 4");
        auto check = [&](const Eigen::VectorXd& x, const char* what) {
            if (x.size() != dimension)
                throw std::invalid_argument(std::string(what) + " has wrong dimension");
            if (std::abs(x.norm() - 1.0) > 1e-9)
                throw std::invalid_argument(std::string(what) + " must have unit norm");
        };
        check(x0, "x0");
        check(xf, "xf");
        for (const auto& w : waypoints) check(w, "waypoint");
    }
};

/// @brief Rotation carrying unit vector x0 to unit vector xf.
///
/// Geodesic policy: axis x0 x xf, angle arccos(x0.xf); antipodal pairs get
/// a deterministic axis orthogonal to x0 (built from the coordinate axis
/// with the smallest |x0| component).  Explicit policy: the supplied
/// generator, rejected unless rodrigues(generator) x0 = xf within 1e-10.
inline So3Target so3_target(const Vec3& x0, const Vec3& xf,
                            const TargetPolicy& policy = TargetPolicy::geodesic()) {
    if (std::abs(x0.norm() - 1.0) > 1e-9 || std::abs(xf.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("so3_target endpoints must have unit norm");
    So3Target t;
    if (policy.kind == TargetPolicy::Kind::explicit_generator) {
        t.generator = policy.generator;
        t.rotation = rodrigues(t.generator);
        const double err = (t.rotation * x0 - xf).norm();
        if (err > 1e-10) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "explicit leg generator does not map x0 to xf (error %.3g)", err);
            throw std::invalid_argument(buf);
        }
        return t;
    }
    const double d = std::clamp(x0.dot(xf), -1.0, 1.0);
    const Vec3 cross = x0.cross(xf);
    const double cn = cross.norm();
    if (cn < 1e-12) {
        if (d > 0.0) {
            t.generator = {0.0, 0.0, 0.0};  // xf == x0
        } else {
            // Antipodal: any axis orthogonal to x0 works; pick the most
            // orthogonal coordinate axis (lowest index on ties) and project.
            int i = 0;
            for (int j = 1; j < 3; ++j)
                if (std::abs(x0[j]) < std::abs(x0[i])) i = j;
            Vec3 axis = Vec3::Unit(i) - x0[i] * x0;
            axis.normalize();
            t.generator = {pi * axis[0], pi * axis[1], pi * axis[2]};
        }
    } else {
        const Vec3 axis = cross / cn;
        const double angle = std::acos(d);
        t.generator = {angle * axis[0], angle * axis[1], angle * axis[2]};
    }
    t.rotation = rodrigues(t.generator);
    return t;
}

/// Both SU(2) preimages (T, -T) of a rotation under phi.
inline std::pair<Su2Matrix, Su2Matrix> su2_preimages(const So3Matrix& s) {
    const Su2Matrix t = exp_su2(so3_log(s));
    return {t, Su2Matrix(-t)};
}

/// Which fourth-order construction applies: the two resonant switching
/// patterns or plain free evolution.
enum class FourthOrderMode { cc1, cc2, free_evolution };

/// SU(2) target pair (p, q) whose phi_tilde image performs the requested
/// fourth-order transfer from (1,0,0,0).
struct FourthOrderTarget {
    FourthOrderMode mode = FourthOrderMode::free_evolution;
    std::optional<int> k;
    CayleyKlein p;
    CayleyKlein q;
    Vec4 x0 = Vec4::Unit(0);
    Vec4 xf = Vec4::Unit(0);
};

namespace detail {

inline bool near_unit_axis(const Vec4& y, int axis) {
    return (y - Vec4::Unit(axis)).norm() < 1e-9;
}

}  // namespace detail

/// @brief Target pair (p, q) for the supported fourth-order transfers.
///
/// From x0 = (1,0,0,0): mode cc1 reaches (0,0,1,0), mode cc2 reaches
/// (0,0,0,1) (each requiring the matching resonance index k), and
/// free_evolution reaches (0,1,0,0) with p = e^{iL sz}, q = e^{i(L-pi/2) sz},
/// L = pi (nu+beta)/(4 nu).  Other targets are rejected.
inline FourthOrderTarget fourth_order_targets(const Vec4& y, const FourthOrderSystem& sys,
                                              FourthOrderMode mode) {
    FourthOrderTarget t;
    t.mode = mode;
    t.xf = y;
    switch (mode) {
        case FourthOrderMode::cc1: {
            if (!detail::near_unit_axis(y, 2))
                throw std::invalid_argument("cc1 construction targets (0,0,1,0) only");
            const auto k = resonance_k(sys.circuit, ResonanceMode::cc1);
            if (!k) throw synthesis_error(resonance_report(sys.circuit, ResonanceMode::cc1));
            t.k = *k;
            const double kk = *k;
            t.p = {pi / 4.0,
                   (2.0 * kk + 1.0) * (2.0 * kk + 1.0) * pi / (4.0 * kk * (kk + 1.0)),
                   -(2.0 * kk + 1.0) * pi / (4.0 * kk * (kk + 1.0))};
            // p q^{-1} must be e^{i(pi/2) sy}; solve q = e^{-i(pi/2) sy} p.
            Su2Matrix uy;
            uy << complexd(0, 0), complexd(-1, 0), complexd(1, 0), complexd(0, 0);
            t.q = cayley_klein_of(Su2Matrix(uy * ck_to_matrix(t.p)));
            break;
        }
        case FourthOrderMode::cc2: {
            if (!detail::near_unit_axis(y, 3))
                throw std::invalid_argument("cc2 construction targets (0,0,0,1) only");
            const auto k = resonance_k(sys.circuit, ResonanceMode::cc2);
            if (!k) throw synthesis_error(resonance_report(sys.circuit, ResonanceMode::cc2));
            t.k = *k;
            const double kk = *k;
            t.p = {pi / 4.0,
                   (2.0 * kk + 1.0) * (5.0 * kk + 2.0) * pi / (4.0 * kk * (kk + 1.0)),
                   (2.0 * kk + 1.0) * (kk - 2.0) * pi / (4.0 * kk * (kk + 1.0))};
            t.q = {t.p.alpha - pi / 2.0, pi / 2.0 - t.p.mu, 5.0 * pi / 2.0 - t.p.zeta};
            break;
        }
        case FourthOrderMode::free_evolution: {
            if (!detail::near_unit_axis(y, 1))
                throw std::invalid_argument("free-evolution construction targets (0,1,0,0) only");
            const double L = pi * (sys.nu + sys.beta) / (4.0 * sys.nu);
            t.p = {0.0, L, 0.0};
            t.q = {0.0, L - pi / 2.0, 0.0};
            break;
        }
    }
    return t;
}

}  // namespace switchctl
