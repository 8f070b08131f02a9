// SPDX-License-Identifier: Apache-2.0
//
// q-Pochhammer symbols, the theta functions theta_1 / theta_3 (real nome,
// purely imaginary tau) and residuals of the classical q-series identities.
//
// theta_3 comes in two representations,
//
//   nome series      1 + 2 sum_{n>=1} q^{n^2} cos(2 pi n z)
//   modular series   t^{-1/2} sum_n exp(-pi (z+n)^2 / t),   t = Im tau,
//
// which agree by Poisson summation; the nome series converges fast for
// small q, the modular one for q near 1. Every sum carries a certified
// geometric tail bound; exhausting max_terms throws truncation_error.

#pragma once

#include <cfloat>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "gausspulse/params.hpp"
#include "gausspulse/truncation.hpp"

namespace gausspulse {

// (a;q)_n = (1-a)(1-aq)...(1-aq^{n-1}); (a;q)_0 = 1.
inline double q_pochhammer(double a, const Nome& q, int n) {
    if (n < 0)
        throw std::invalid_argument("q_pochhammer: n must be >= 0");
    double prod = 1.0;
    double pw = a;
    for (int k = 0; k < n; ++k) {
        prod *= 1.0 - pw;
        pw *= q.q;
    }
    return prod;
}

// (a;q)_inf. Tail certificate: |log prod_{j>k}(1-a q^j)| is majorized by
// the geometric sum |a| q^{k+1} / ((1-q)(1-|a| q^{k+1})).
inline double q_pochhammer_inf(double a, const Nome& q,
                               const TruncationPolicy& pol = TruncationPolicy::defaults()) {
    double prod = 1.0;
    double pw = a;
    for (int k = 0; k < pol.max_terms; ++k) {
        prod *= 1.0 - pw;
        const double next = std::abs(pw) * q.q;
        if (next < 0.5) {
            const double tail = next / ((1.0 - q.q) * (1.0 - next));
            if (tail < pol.rel_tol)
                return prod;
        }
        pw *= q.q;
    }
    throw truncation_error("q_pochhammer_inf: max_terms exceeded before tail bound met");
}

namespace detail {

// Reduce z by the 1-periodicity of theta_3 to [-1/2, 1/2].
inline double reduce_period1(double z) {
    return z - std::round(z);
}

} // namespace detail

// theta_3, nome series. 1-periodic in z; q in (0,1).
inline double theta3_nome(double z, double q,
                          const TruncationPolicy& pol = TruncationPolicy::defaults()) {
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("theta3_nome: q must lie in (0,1)");
    const double zr = detail::reduce_period1(z);
    double s = 1.0;
    double sum_abs = 1.0;
    double pw = 1.0; // q^{n^2}, updated via q^{2n-1}
    double qodd = q;
    for (int n = 1; n <= pol.max_terms; ++n) {
        pw *= qodd;   // q^{n^2}
        qodd *= q * q;
        s += 2.0 * pw * std::cos(2.0 * std::numbers::pi * n * zr);
        sum_abs += 2.0 * pw;
        // tail: 2 sum_{k>n} q^{k^2} <= 2 q^{(n+1)^2} / (1 - q^{2n+3})
        const double head = pw * qodd; // q^{(n+1)^2}
        const double tail = 2.0 * head / (1.0 - q * q * qodd);
        if (tail <= pol.rel_tol * std::max(std::abs(s), sum_abs * DBL_EPSILON))
            return s;
    }
    throw truncation_error("theta3_nome: max_terms exceeded before tail bound met");
}

// theta_3, modular (Gaussian-sum) representation; tau = i*tau_imag.
inline double theta3_modular(double z, double tau_imag,
                             const TruncationPolicy& pol = TruncationPolicy::defaults()) {
    if (!(tau_imag > 0.0))
        throw std::invalid_argument("theta3_modular: Im tau must be positive");
    const double t = tau_imag;
    const double zr = detail::reduce_period1(z);
    const double c = std::numbers::pi / t;
    double s = std::exp(-c * zr * zr);
    for (int n = 1; n <= pol.max_terms; ++n) {
        const double up = std::exp(-c * (zr + n) * (zr + n));
        const double dn = std::exp(-c * (zr - n) * (zr - n));
        s += up + dn;
        // both wings are majorized by exp(-c (n+1/2)^2) with term ratio
        // <= exp(-c (2n+1)) thereafter
        const double head = std::exp(-c * (n + 0.5) * (n + 0.5));
        const double ratio = std::exp(-c * (2.0 * n + 1.0));
        const double tail = 2.0 * head / (1.0 - ratio);
        if (tail <= pol.rel_tol * s)
            return s / std::sqrt(t);
    }
    throw truncation_error("theta3_modular: max_terms exceeded before tail bound met");
}

enum class Theta3Mode { nome_series, modular_series, auto_select };

// Crossover for auto_select: both nomes equal e^{-pi} at t = 1, i.e.
// q = e^{-pi}; below that the nome series wins.
inline double theta3(double z, const PulseParams& p,
                     Theta3Mode mode = Theta3Mode::auto_select,
                     const TruncationPolicy& pol = TruncationPolicy::defaults()) {
    switch (mode) {
    case Theta3Mode::nome_series:
        return theta3_nome(z, p.q, pol);
    case Theta3Mode::modular_series:
        return theta3_modular(z, p.tau_imag, pol);
    case Theta3Mode::auto_select:
    default:
        if (p.q <= std::exp(-std::numbers::pi))
            return theta3_nome(z, p.q, pol);
        return theta3_modular(z, p.tau_imag, pol);
    }
}

// theta_1(z, tau) = 2 sum_{n>=0} q^{(n+1/2)^2} (-1)^n sin((2n+1) pi z),
// q = exp(-pi tau_imag). Antiperiodic: theta_1(z+1) = -theta_1(z); the
// argument is reduced so that integer z gives exactly 0.
inline double theta1(double z, double tau_imag,
                     const TruncationPolicy& pol = TruncationPolicy::defaults()) {
    if (!(tau_imag > 0.0))
        throw std::invalid_argument("theta1: Im tau must be positive");
    const double m = std::round(z);
    const double d = z - m;
    const double sign = (std::fmod(std::abs(m), 2.0) == 0.0) ? 1.0 : -1.0;
    const double c = std::numbers::pi * tau_imag;
    double s = 0.0;
    double sum_abs = 0.0;
    for (int n = 0; n < pol.max_terms; ++n) {
        const double coef = std::exp(-c * (n + 0.5) * (n + 0.5));
        const double term = coef * ((n % 2 == 0) ? 1.0 : -1.0) *
                            std::sin((2 * n + 1) * std::numbers::pi * d);
        s += term;
        sum_abs += coef;
        const double head = std::exp(-c * (n + 1.5) * (n + 1.5));
        const double ratio = std::exp(-c * (2.0 * n + 4.0));
        const double tail = head / (1.0 - ratio);
        if (tail <= pol.rel_tol * std::max(sum_abs, DBL_MIN))
            return 2.0 * sign * s;
    }
    throw truncation_error("theta1: max_terms exceeded before tail bound met");
}

// d/dz theta_1 at z = 0: 2 pi sum q^{(n+1/2)^2} (-1)^n (2n+1).
inline double theta1_prime_at_zero(double tau_imag,
                                   const TruncationPolicy& pol = TruncationPolicy::defaults()) {
    if (!(tau_imag > 0.0))
        throw std::invalid_argument("theta1_prime_at_zero: Im tau must be positive");
    const double c = std::numbers::pi * tau_imag;
    double s = 0.0;
    for (int n = 0; n < pol.max_terms; ++n) {
        const double coef = std::exp(-c * (n + 0.5) * (n + 0.5));
        s += coef * ((n % 2 == 0) ? 1.0 : -1.0) * (2 * n + 1);
        const double head = std::exp(-c * (n + 1.5) * (n + 1.5)) * (2 * n + 3);
        const double ratio = std::exp(-c * (2.0 * n + 4.0)) * (2.0 * n + 5.0) / (2.0 * n + 3.0);
        if (ratio < 0.5 && head / (1.0 - ratio) <= pol.rel_tol * std::max(std::abs(s), DBL_MIN))
            return 2.0 * std::numbers::pi * s;
    }
    throw truncation_error("theta1_prime_at_zero: max_terms exceeded before tail bound met");
}

namespace detail {

// theta_1 family with the common factor q^{1/4} divided out. These stay
// well inside double range for all lambda*beta >= 0.2, where q' itself
// can underflow. Exponents use n(n+1) = (n+1/2)^2 - 1/4.
inline double theta1_reduced(double d, double tau_imag) {
    const double c = std::numbers::pi * tau_imag;
    double s = 0.0;
    for (int n = 0; n < 64; ++n) {
        const double coef = std::exp(-c * n * (n + 1));
        if (coef == 0.0 || (n > 0 && coef < 1e-18))
            break;
        s += coef * ((n % 2 == 0) ? 1.0 : -1.0) *
             std::sin((2 * n + 1) * std::numbers::pi * d);
    }
    return 2.0 * s;
}

inline double theta1_prime_reduced(double tau_imag) {
    const double c = std::numbers::pi * tau_imag;
    double s = 0.0;
    for (int n = 0; n < 64; ++n) {
        const double coef = std::exp(-c * n * (n + 1));
        if (coef == 0.0 || (n > 0 && coef * (2 * n + 1) < 1e-18))
            break;
        s += coef * ((n % 2 == 0) ? 1.0 : -1.0) * (2 * n + 1);
    }
    return 2.0 * std::numbers::pi * s;
}

// third derivative at 0, reduced by q^{1/4}; used by the Taylor guard band
inline double theta1_ppp_reduced(double tau_imag) {
    const double c = std::numbers::pi * tau_imag;
    double s = 0.0;
    for (int n = 0; n < 64; ++n) {
        const double coef = std::exp(-c * n * (n + 1));
        const double w = (2 * n + 1);
        if (coef == 0.0 || (n > 0 && coef * w * w * w < 1e-18))
            break;
        s += coef * ((n % 2 == 0) ? -1.0 : 1.0) * w * w * w;
    }
    return 2.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi * s;
}

} // namespace detail

// The q-series identities whose truncation residuals the artifact tracks:
//   euler_first        1 + sum q^{n(n-1)/2}/(q;q)_n z^n   = prod (1+z q^n)
//   euler_second       1 + sum z^n/(q;q)_n                = prod (1-z q^n)^{-1}, |z|<1
//   cascade_expansion  1 + sum q^{n^2}/(q^2;q^2)_n z^-n   = prod (1+q^{2n+1} z^-1)
//   cascade_inverse    1 + sum (-q)^n/(q^2;q^2)_n z^-n    = prod (1+q^{2n+1} z^-1)^{-1}
// The last two need |z| >= 1.
enum class QIdentity { euler_first, euler_second, cascade_expansion, cascade_inverse };

// |LHS_N - RHS_N| with both sides truncated at order N. With relative set,
// the residual is divided by max(1, |RHS_N|): near q = 1 the sides grow like
// e^{q/(1-q)} and the absolute residual floor scales with them.
inline double q_identity_residual(QIdentity kind, std::complex<double> z, const Nome& nome,
                                  int N, bool relative = false) {
    const double q = nome.q;
    if (N < 0)
        throw std::invalid_argument("q_identity_residual: N must be >= 0");
    std::complex<double> lhs = 1.0, rhs = 1.0;
    switch (kind) {
    case QIdentity::euler_first: {
        double poch = 1.0;
        std::complex<double> zn = 1.0;
        for (int n = 1; n <= N; ++n) {
            poch *= 1.0 - std::pow(q, n);
            zn *= z;
            lhs += std::pow(q, 0.5 * n * (n - 1)) / poch * zn;
        }
        for (int n = 0; n < N; ++n)
            rhs *= 1.0 + z * std::pow(q, n);
        break;
    }
    case QIdentity::euler_second: {
        if (!(std::abs(z) < 1.0))
            throw std::domain_error("q_identity_residual: euler_second needs |z| < 1");
        double poch = 1.0;
        std::complex<double> zn = 1.0;
        for (int n = 1; n <= N; ++n) {
            poch *= 1.0 - std::pow(q, n);
            zn *= z;
            lhs += zn / poch;
        }
        for (int n = 0; n < N; ++n)
            rhs /= 1.0 - z * std::pow(q, n);
        break;
    }
    case QIdentity::cascade_expansion:
    case QIdentity::cascade_inverse: {
        if (std::abs(z) < 1.0 - 1e-12) // fp slack for points on the circle itself
            throw std::domain_error("q_identity_residual: cascade identities need |z| >= 1");
        const std::complex<double> zi = 1.0 / z;
        double poch = 1.0;
        std::complex<double> zn = 1.0;
        for (int n = 1; n <= N; ++n) {
            poch *= 1.0 - std::pow(q, 2 * n);
            zn *= zi;
            if (kind == QIdentity::cascade_expansion)
                lhs += std::pow(q, double(n) * n) / poch * zn;
            else
                lhs += std::pow(-q, n) / poch * zn;
        }
        for (int n = 0; n < N; ++n) {
            const std::complex<double> f = 1.0 + std::pow(q, 2 * n + 1) * zi;
            if (kind == QIdentity::cascade_expansion)
                rhs *= f;
            else
                rhs /= f;
        }
        break;
    }
    }
    if (!std::isfinite(lhs.real()) || !std::isfinite(rhs.real()))
        throw truncation_error("q_identity_residual: non-finite intermediate");
    const double res = std::abs(lhs - rhs);
    return relative ? res / std::max(1.0, std::abs(rhs)) : res;
}

// | sum_{|n|<=N} q^{n^2} z^n  -  prod_{n<=N} (1-q^{2n})(1+q^{2n-1}/z)(1+q^{2n-1}z) |
inline double jacobi_triple_product_residual(std::complex<double> z, const Nome& nome, int N) {
    if (z == std::complex<double>(0.0, 0.0))
        throw std::domain_error("jacobi_triple_product_residual: z must be nonzero");
    const double q = nome.q;
    std::complex<double> lhs = 1.0;
    std::complex<double> zp = 1.0, zm = 1.0;
    double pw = 1.0, qodd = q;
    for (int n = 1; n <= N; ++n) {
        pw *= qodd; // q^{n^2}
        qodd *= q * q;
        zp *= z;
        zm /= z;
        lhs += pw * (zp + zm);
    }
    std::complex<double> rhs = 1.0;
    for (int n = 1; n <= N; ++n) {
        const double q2n = std::pow(q, 2 * n);
        const double qo = std::pow(q, 2 * n - 1);
        rhs *= (1.0 - q2n) * (1.0 + qo / z) * (1.0 + qo * z);
    }
    return std::abs(lhs - rhs);
}

} // namespace gausspulse
