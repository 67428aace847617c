#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace switchctl {

using complexd = std::complex<double>;
using Su2Matrix = Eigen::Matrix2cd;
using So3Matrix = Eigen::Matrix3d;
using So4Matrix = Eigen::Matrix4d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;

inline constexpr double pi = 3.14159265358979323846;

/// Thrown when a synthesis step is infeasible for the given circuit or
/// request (admissibility violations, unmet resonance conditions, ...).
struct synthesis_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Coefficient vector of an su(2) element s = -(i/2)(a sx + b sy + c sz),
/// where sx, sy, sz are the Pauli matrices.  Under psi this is exactly the
/// rotation vector: exp[psi(s)] rotates by |(a,b,c)| about (a,b,c).
struct Su2Vector {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    double norm() const { return std::sqrt(a * a + b * b + c * c); }
    /// Half the coefficient norm; exp_su2 evaluates trig at this angle.
    double lambda() const { return 0.5 * norm(); }
    Su2Vector scaled(double s) const { return {s * a, s * b, s * c}; }
};

inline Su2Vector operator+(const Su2Vector& u, const Su2Vector& v) {
    return {u.a + v.a, u.b + v.b, u.c + v.c};
}

inline Su2Vector operator-(const Su2Vector& u, const Su2Vector& v) {
    return {u.a - v.a, u.b - v.b, u.c - v.c};
}

/// su(2) Lie bracket in coefficient coordinates (the cross product).
inline Su2Vector bracket(const Su2Vector& u, const Su2Vector& v) {
    return {u.b * v.c - u.c * v.b, u.c * v.a - u.a * v.c, u.a * v.b - u.b * v.a};
}

/// Polar parameters of an SU(2) matrix:
///   [ e^{i zeta} cos(alpha)        e^{i mu} sin(alpha)   ]
///   [ e^{i(pi - mu)} sin(alpha)    e^{-i zeta} cos(alpha) ]
/// Canonical extraction keeps alpha in [0, pi/2] and zeta, mu in [0, 2pi);
/// ck_to_matrix accepts arbitrary real parameters.
struct CayleyKlein {
    double alpha = 0.0;
    double zeta = 0.0;
    double mu = 0.0;
};

/// Element of su(2) x su(2), the two halves of an so(4) generator.
struct Su2Pair {
    Su2Vector k1;
    Su2Vector k2;
};

/// Unit quaternion w + x i + y j + z k; left/right multiplication on R^4
/// realizes SO(4) through phi_tilde.
struct Quaternion {
    double w = 1.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline Quaternion quat_mul(const Quaternion& p, const Quaternion& q) {
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y + p.y * q.w + p.z * q.x - p.x * q.z,
            p.w * q.z + p.z * q.w + p.x * q.y - p.y * q.x};
}

inline Quaternion quat_conj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }

inline Su2Matrix pauli_x() {
    Su2Matrix m;
    m << complexd(0, 0), complexd(1, 0), complexd(1, 0), complexd(0, 0);
    return m;
}

inline Su2Matrix pauli_y() {
    Su2Matrix m;
    m << complexd(0, 0), complexd(0, -1), complexd(0, 1), complexd(0, 0);
    return m;
}

inline Su2Matrix pauli_z() {
    Su2Matrix m;
    m << complexd(1, 0), complexd(0, 0), complexd(0, 0), complexd(-1, 0);
    return m;
}

/// @brief Closed-form exponential of s = -(i/2)(a sx + b sy + c sz).
///
/// exp(s) = cos(lambda) I - i sin(lambda)/(2 lambda) (a sx + b sy + c sz)
/// with lambda = |(a,b,c)|/2; the lambda -> 0 limit is handled by series.
inline Su2Matrix exp_su2(const Su2Vector& v) {
    const double lam = v.lambda();
    double k;  // sin(lambda)/(2 lambda)
    if (lam < 1e-8) {
        k = 0.5 - lam * lam / 12.0;
    } else {
        k = std::sin(lam) / (2.0 * lam);
    }
    const double w = std::cos(lam);
    Su2Matrix u;
    u << complexd(w, -k * v.c), complexd(-k * v.b, -k * v.a),
         complexd(k * v.b, -k * v.a), complexd(w, k * v.c);
    return u;
}

/// @brief Principal logarithm on SU(2).
///
/// Returns coefficients with lambda in [0, pi]; exp_su2(log_su2(U)) = U.
/// For U = -I (lambda = pi, axis undetermined) the x axis is chosen,
/// giving (2 pi, 0, 0).
inline Su2Vector log_su2(const Su2Matrix& u) {
    const double w = 0.5 * (u(0, 0).real() + u(1, 1).real());
    // sin(lambda) * unit axis, averaged over the redundant entries.
    const double p = -0.5 * (u(0, 1).imag() + u(1, 0).imag());
    const double q = 0.5 * (u(1, 0).real() - u(0, 1).real());
    const double r = 0.5 * (u(1, 1).imag() - u(0, 0).imag());
    const double s = std::sqrt(p * p + q * q + r * r);
    if (s < 1e-14) {
        if (w < 0.0) return {2.0 * pi, 0.0, 0.0};
        return {0.0, 0.0, 0.0};
    }
    const double lam = std::atan2(s, w);
    const double scale = 2.0 * lam / s;
    return {scale * p, scale * q, scale * r};
}

/// @brief Isomorphism su(2) -> so(3): (a,b,c) to the cross-product matrix.
inline So3Matrix psi(const Su2Vector& v) {
    So3Matrix w;
    w << 0.0, -v.c, v.b,
         v.c, 0.0, -v.a,
         -v.b, v.a, 0.0;
    return w;
}

inline Su2Vector psi_inv(const So3Matrix& w) {
    return {w(2, 1), w(0, 2), w(1, 0)};
}

/// @brief Rotation exp[psi(v)] in closed form (Rodrigues).
///
/// R = I cos(2 lambda) + sin(2 lambda)/(2 lambda) psi(v)
///       + (1 - cos(2 lambda))/(4 lambda^2) v v^T.
inline So3Matrix rodrigues(const Su2Vector& v) {
    const double lam = v.lambda();
    const double t = 2.0 * lam;  // rotation angle
    double f1, f2;               // sin(t)/t, (1 - cos t)/t^2
    if (t < 1e-8) {
        f1 = 1.0 - t * t / 6.0;
        f2 = 0.5 - t * t / 24.0;
    } else {
        f1 = std::sin(t) / t;
        f2 = (1.0 - std::cos(t)) / (t * t);
    }
    Vec3 p(v.a, v.b, v.c);
    So3Matrix r = std::cos(t) * So3Matrix::Identity() + f1 * psi(v)
                  + f2 * (p * p.transpose());
    return r;
}

/// @brief Double cover SU(2) -> SO(3).
///
/// Column j holds the su(2) coefficients of U s_j U^*; phi(exp_su2(v)) =
/// rodrigues(v) and phi(-U) = phi(U).
inline So3Matrix phi(const Su2Matrix& u) {
    const Su2Matrix ud = u.adjoint();
    const Su2Matrix sig[3] = {pauli_x(), pauli_y(), pauli_z()};
    So3Matrix r;
    for (int j = 0; j < 3; ++j) {
        const Su2Matrix m = u * sig[j] * ud;
        r(0, j) = 0.5 * (m(0, 1).real() + m(1, 0).real());
        r(1, j) = 0.5 * (m(1, 0).imag() - m(0, 1).imag());
        r(2, j) = 0.5 * (m(0, 0).real() - m(1, 1).real());
    }
    return r;
}

/// @brief Canonical Cayley-Klein parameters of an SU(2) matrix.
///
/// alpha = atan2(|U01|, |U00|); zeta = arg U00 when cos(alpha) != 0 else 0;
/// mu = arg U01 when sin(alpha) != 0 else 0; angles reduced to [0, 2pi).
inline CayleyKlein cayley_klein_of(const Su2Matrix& u) {
    constexpr double tol = 1e-14;
    auto wrap = [](double x) {
        x = std::fmod(x, 2.0 * pi);
        if (x < 0.0) x += 2.0 * pi;
        return x;
    };
    CayleyKlein ck;
    ck.alpha = std::atan2(std::abs(u(0, 1)), std::abs(u(0, 0)));
    ck.zeta = std::abs(u(0, 0)) > tol ? wrap(std::arg(u(0, 0))) : 0.0;
    ck.mu = std::abs(u(0, 1)) > tol ? wrap(std::arg(u(0, 1))) : 0.0;
    return ck;
}

/// Builds the SU(2) matrix for arbitrary (alpha, zeta, mu); the result is
/// special unitary for every real parameter triple.
inline Su2Matrix ck_to_matrix(const CayleyKlein& ck) {
    const double ca = std::cos(ck.alpha);
    const double sa = std::sin(ck.alpha);
    Su2Matrix u;
    u << std::polar(ca, ck.zeta), std::polar(sa, ck.mu),
         std::polar(sa, pi - ck.mu), std::polar(ca, -ck.zeta);
    return u;
}

/// @brief Isomorphism su(2) x su(2) -> so(4).
///
/// The image has first row (0, -a1, -a2, -a3) and lower-right block the
/// cross-product matrix of (b1, b2, b3); the pair maps back through
/// psi_tilde_inv.
inline So4Matrix psi_tilde(const Su2Pair& k) {
    const double a1 = 0.5 * (k.k2.c - k.k1.c);
    const double a2 = 0.5 * (k.k2.b - k.k1.b);
    const double a3 = 0.5 * (k.k2.a - k.k1.a);
    const double b1 = -0.5 * (k.k1.c + k.k2.c);
    const double b2 = -0.5 * (k.k1.b + k.k2.b);
    const double b3 = -0.5 * (k.k1.a + k.k2.a);
    So4Matrix w;
    w << 0.0, -a1, -a2, -a3,
         a1, 0.0, -b3, b2,
         a2, b3, 0.0, -b1,
         a3, -b2, b1, 0.0;
    return w;
}

inline Su2Pair psi_tilde_inv(const So4Matrix& w) {
    const double a1 = w(1, 0), a2 = w(2, 0), a3 = w(3, 0);
    const double b1 = w(3, 2), b2 = w(1, 3), b3 = w(2, 1);
    Su2Pair k;
    k.k1 = {-(a3 + b3), -(a2 + b2), -(a1 + b1)};
    k.k2 = {a3 - b3, a2 - b2, a1 - b1};
    return k;
}

/// Quaternion of an SU(2) matrix, in the convention that makes
/// phi_tilde(exp K1, exp K2) = exp[psi_tilde(K1, K2)] hold exactly:
/// i corresponds to i sz, j to i sy, k to i sx.
inline Quaternion quaternion_of(const Su2Matrix& u) {
    const double w = 0.5 * (u(0, 0).real() + u(1, 1).real());
    const double p = -0.5 * (u(0, 1).imag() + u(1, 0).imag());
    const double q = 0.5 * (u(1, 0).real() - u(0, 1).real());
    const double r = 0.5 * (u(1, 1).imag() - u(0, 0).imag());
    return {w, -r, -q, -p};
}

inline Su2Matrix su2_of(const Quaternion& t) {
    const double p = -t.z, q = -t.y, r = -t.x;
    Su2Matrix u;
    u << complexd(t.w, -r), complexd(-q, -p), complexd(q, -p), complexd(t.w, r);
    return u;
}

/// @brief Double cover SU(2) x SU(2) -> SO(4).
///
/// Identifying R^4 with quaternions (x1 + x2 i + x3 j + x4 k), the image
/// acts as x -> p x q^{-1} with p, q the quaternions of u1, u2.  The kernel
/// is {(I, I), (-I, -I)}.
inline So4Matrix phi_tilde(const Su2Matrix& u1, const Su2Matrix& u2) {
    const Quaternion p = quaternion_of(u1);
    const Quaternion qc = quat_conj(quaternion_of(u2));
    const Quaternion basis[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    So4Matrix s;
    for (int j = 0; j < 4; ++j) {
        const Quaternion col = quat_mul(quat_mul(p, basis[j]), qc);
        s(0, j) = col.w;
        s(1, j) = col.x;
        s(2, j) = col.y;
        s(3, j) = col.z;
    }
    return s;
}

/// @brief Principal rotation vector of R in psi coordinates.
///
/// rodrigues(so3_log(R)) = R with rotation angle in [0, pi]; the angle-pi
/// case is resolved from the symmetric part with a deterministic sign
/// (first nonzero component positive).
inline Su2Vector so3_log(const So3Matrix& r) {
    // Quaternion extraction: R = (2w^2 - 1) I + 2w psi(s) + 2 s s^T with
    // w = cos(lambda), s = sin(lambda) * axis; the largest of
    // {trace, R00, R11, R22} selects the numerically stable branch.
    const double t = r.trace();
    double w, p, q, s;
    if (t >= r(0, 0) && t >= r(1, 1) && t >= r(2, 2)) {
        w = 0.5 * std::sqrt(std::max(0.0, t + 1.0));
        const double inv = 0.25 / w;
        p = (r(2, 1) - r(1, 2)) * inv;
        q = (r(0, 2) - r(2, 0)) * inv;
        s = (r(1, 0) - r(0, 1)) * inv;
    } else if (r(0, 0) >= r(1, 1) && r(0, 0) >= r(2, 2)) {
        p = 0.5 * std::sqrt(std::max(0.0, 1.0 + 2.0 * r(0, 0) - t));
        const double inv = 0.25 / p;
        w = (r(2, 1) - r(1, 2)) * inv;
        q = (r(0, 1) + r(1, 0)) * inv;
        s = (r(0, 2) + r(2, 0)) * inv;
    } else if (r(1, 1) >= r(2, 2)) {
        q = 0.5 * std::sqrt(std::max(0.0, 1.0 + 2.0 * r(1, 1) - t));
        const double inv = 0.25 / q;
        w = (r(0, 2) - r(2, 0)) * inv;
        p = (r(0, 1) + r(1, 0)) * inv;
        s = (r(1, 2) + r(2, 1)) * inv;
    } else {
        s = 0.5 * std::sqrt(std::max(0.0, 1.0 + 2.0 * r(2, 2) - t));
        const double inv = 0.25 / s;
        w = (r(1, 0) - r(0, 1)) * inv;
        p = (r(0, 2) + r(2, 0)) * inv;
        q = (r(1, 2) + r(2, 1)) * inv;
    }
    if (w < 0.0) {
        w = -w;
        p = -p;
        q = -q;
        s = -s;
    } else if (w == 0.0) {
        if (p < 0.0 || (p == 0.0 && (q < 0.0 || (q == 0.0 && s < 0.0)))) {
            p = -p;
            q = -q;
            s = -s;
        }
    }
    const double sn = std::sqrt(p * p + q * q + s * s);
    if (sn < 1e-14) return {0.0, 0.0, 0.0};
    const double scale = 2.0 * std::atan2(sn, w) / sn;
    return {scale * p, scale * q, scale * s};
}

inline bool is_special_unitary(const Su2Matrix& u, double tol = 1e-10) {
    return (u.adjoint() * u - Su2Matrix::Identity()).norm() < tol
           && std::abs(u.determinant() - complexd(1, 0)) < tol;
}

template <typename Mat>
inline bool is_special_orthogonal(const Mat& r, double tol = 1e-10) {
    return (r.transpose() * r - Mat::Identity()).norm() < tol
           && std::abs(r.determinant() - 1.0) < tol;
}

}  // namespace switchctl
