// SPDX-License-Identifier: Apache-2.0
//
// The pulse shapes: Gaussian generator phi and its unit-energy twin, the
// autocorrelation Phi, the ISI-free interpolating pulse Phi_int (time and
// frequency domain), its sinh-quotient approximation S0, the Walter-type
// interpolant varphi_int (tau -> 2 tau), the orthonormal root pulse
// phi_ortho, and the offset interpolant phi_{int,a} in frequency domain.
//
// Time-domain Phi_int / S0 / varphi_int have removable 0/0 points at the
// sampling instants; they are evaluated by explicit case split: exact
// delta at x = n*lambda, second-order Taylor quotient inside a guard band
// |x - n*lambda| < 1e-8*lambda, plain formula elsewhere.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "gausspulse/params.hpp"
#include "gausspulse/special_functions.hpp"

namespace gausspulse {

inline constexpr double guard_band = 1e-8; // in units of lambda

// Generator pair: phi integrates to 1, phi_hat(0) = 1/sqrt(2 pi).
inline double gaussian_phi(double x, const PulseParams& p) {
    const double b = p.beta;
    return b / std::sqrt(2.0 * std::numbers::pi) * std::exp(-0.5 * b * b * x * x);
}

inline double gaussian_phi_hat(double omega, const PulseParams& p) {
    const double b = p.beta;
    return std::exp(-0.5 * omega * omega / (b * b)) / std::sqrt(2.0 * std::numbers::pi);
}

// Unit-energy Gaussian: integral of |phi|^2 equals 1.
inline double unit_energy_phi(double x, const PulseParams& p) {
    const double b = p.beta;
    return std::sqrt(b) / std::pow(std::numbers::pi, 0.25) * std::exp(-0.5 * b * b * x * x);
}

inline double unit_energy_phi_hat(double omega, const PulseParams& p) {
    const double b = p.beta;
    return std::exp(-0.5 * omega * omega / (b * b)) /
           (std::sqrt(b) * std::pow(std::numbers::pi, 0.25));
}

// Autocorrelation of the generator; again a Gaussian.
inline double capital_phi(double x, const PulseParams& p) {
    const double b = p.beta;
    return b / (2.0 * std::sqrt(std::numbers::pi)) * std::exp(-0.25 * b * b * x * x);
}

inline double capital_phi_hat(double omega, const PulseParams& p) {
    const double h = gaussian_phi_hat(omega, p);
    return std::sqrt(2.0 * std::numbers::pi) * h * h;
}

// Interpolating pulse in frequency domain,
//   Phi_int_hat(w) = (lambda/sqrt(2 pi)) exp(-pi (w/Lambda)^2 / t)
//                    / (sqrt(t) theta_3(w/Lambda, tau)),  t = Im tau.
// Real and positive for real w.
inline double phi_int_freq(double omega, const PulseParams& p,
                           const TruncationPolicy& pol = TruncationPolicy::defaults()) {
    const double t = p.tau_imag;
    const double z = omega / p.Lambda;
    const double th3 = theta3(z, p, Theta3Mode::auto_select, pol);
    return p.lambda / std::sqrt(2.0 * std::numbers::pi) *
           std::exp(-std::numbers::pi / t * z * z) / (std::sqrt(t) * th3);
}

namespace detail {

// Shared kernel for Phi_int (scale = 1) and varphi_int (scale = 2):
//   pi*t * theta1(u, i/t) / (theta1'(0, i/t) * sinh(pi t u)),  u = x/lambda,
// evaluated through the q'^{1/4}-reduced theta series.
inline double interpolant_time(double x, double lambda, double t) {
    const double u = x / lambda;
    const double n = std::round(u);
    const double d = u - n;
    const double tprime = 1.0 / t;
    const double sign = (std::fmod(std::abs(n), 2.0) == 0.0) ? 1.0 : -1.0;
    const double r1p = theta1_prime_reduced(tprime);
    const double pt = std::numbers::pi * t;
    if (d == 0.0)
        return (n == 0.0) ? 1.0 : 0.0;
    if (std::abs(d) < guard_band) {
        // numerator theta1(n+d) = sign * (theta1'(0) d + theta1'''(0) d^3/6)
        const double num = r1p * d + theta1_ppp_reduced(tprime) * d * d * d / 6.0;
        if (n == 0.0) {
            // denominator sinh(pi t d) = pi t d (1 + (pi t d)^2/6)
            const double den = pt * d * (1.0 + pt * pt * d * d / 6.0);
            return pt * num / (r1p * den);
        }
        return pt * sign * num / (r1p * std::sinh(pt * u));
    }
    return pt * sign * theta1_reduced(d, tprime) / (r1p * std::sinh(pt * u));
}

} // namespace detail

// Time-domain interpolating pulse; Phi_int(n lambda) = delta_n.
inline double phi_int_time(double x, const PulseParams& p) {
    return detail::interpolant_time(x, p.lambda, p.tau_imag);
}

// Walter-type interpolant for V_lambda(phi): same formula with tau -> 2 tau.
inline double varphi_int_time(double x, const PulseParams& p) {
    return detail::interpolant_time(x, p.lambda, 2.0 * p.tau_imag);
}

// S0(x) = t sin(pi u) / sinh(pi t u), the elementary approximation of
// Phi_int. sin(pi u) is computed as (-1)^n sin(pi d) so that sample
// instants come out exact.
inline double s0_time(double x, const PulseParams& p) {
    const double t = p.tau_imag;
    const double u = x / p.lambda;
    const double n = std::round(u);
    const double d = u - n;
    const double sign = (std::fmod(std::abs(n), 2.0) == 0.0) ? 1.0 : -1.0;
    if (d == 0.0)
        return (n == 0.0) ? 1.0 : 0.0;
    const double pt = std::numbers::pi * t;
    if (n == 0.0 && std::abs(d) < guard_band) {
        const double num = std::numbers::pi * d * (1.0 - std::numbers::pi * std::numbers::pi * d * d / 6.0);
        const double den = pt * d * (1.0 + pt * pt * d * d / 6.0);
        return t * num / den;
    }
    return t * sign * std::sin(std::numbers::pi * d) / std::sinh(pt * u);
}

// S0_hat(w) = (lambda/sqrt(2 pi)) sinh(pi/t) / (cosh(pi/t) + cosh(lambda w / t)),
// computed with the largest exponent factored out so pi/t ~ 1000 cannot
// overflow.
inline double s0_freq(double omega, const PulseParams& p) {
    const double t = p.tau_imag;
    const double A = std::numbers::pi / t;
    const double B = std::abs(p.lambda * omega / t);
    const double M = std::max(A, B);
    const double num = std::exp(A - M) - std::exp(-A - M);
    const double den = std::exp(A - M) + std::exp(-A - M) + std::exp(B - M) + std::exp(-B - M);
    return p.lambda / std::sqrt(2.0 * std::numbers::pi) * num / den;
}

// Orthonormal pulse, time domain:
//   Q0^{-1/2} sum_{n>=0} (-q)^n/(q^2;q^2)_n  phi_u(x - n lambda).
// |a_n| <= q^n / Q0 eventually; the stop rule uses that majorant with a
// safety factor of 10 because the first few coefficients grow (|a_1| ~ 2).
inline double phi_ortho_time(double x, const PulseParams& p,
                             const TruncationPolicy& pol = TruncationPolicy::defaults()) {
    const double q = p.q;
    double sum = 0.0;
    double poch = 1.0;   // (q^2;q^2)_n
    double sgnq = 1.0;   // (-q)^n
    double q2n = q * q;
    double qpow = q;     // q^{n+1}
    for (int n = 0; n <= pol.max_terms; ++n) {
        const double an = sgnq / poch;
        sum += an * unit_energy_phi(x - n * p.lambda, p);
        if (10.0 * qpow / (p.Q0 * (1.0 - q)) <= pol.rel_tol)
            return sum / std::sqrt(p.Q0);
        sgnq *= -q;
        poch *= 1.0 - q2n;
        q2n *= q * q;
        qpow *= q;
    }
    throw truncation_error("phi_ortho_time: max_terms exceeded");
}

// P(z) = prod_{n>=1} (1 + q^{2n-1} z^{-1}) on the unit circle.
inline std::complex<double> spectral_factor_P(std::complex<double> z_inv, double q,
                                              const TruncationPolicy& pol = TruncationPolicy::defaults()) {
    std::complex<double> prod = 1.0;
    double pw = q;
    for (int n = 1; n <= pol.max_terms; ++n) {
        prod *= 1.0 + pw * z_inv;
        const double next = pw * q * q;
        const double tail = next * std::abs(z_inv) / ((1.0 - q * q) * (1.0 - next));
        if (tail < pol.rel_tol)
            return prod;
        pw = next;
    }
    throw truncation_error("spectral_factor_P: max_terms exceeded");
}

// Orthonormal pulse, frequency domain:
//   phi_ortho_hat(w) = sqrt(lambda) phi_hat(w)
//                      / (t^{1/4} sqrt(Q0) P(e^{2 pi i w / Lambda})).
inline std::complex<double> phi_ortho_freq(double omega, const PulseParams& p,
                                           const TruncationPolicy& pol = TruncationPolicy::defaults()) {
    const double z = omega / p.Lambda;
    const std::complex<double> z_inv =
        std::polar(1.0, -2.0 * std::numbers::pi * z);
    const std::complex<double> P = spectral_factor_P(z_inv, p.q, pol);
    return std::sqrt(p.lambda) * gaussian_phi_hat(omega, p) /
           (std::pow(p.tau_imag, 0.25) * std::sqrt(p.Q0) * P);
}

// Offset interpolant in frequency domain,
//   phi_int_a_hat(w) = phi_hat(w) / sum_n phi(a + n lambda) e^{-i n lambda w}.
// Throws singular_offset_error when the denominator modulus falls below
// 1e-12 (happens at a = lambda/2, w = Lambda/2 where the sum cancels).
inline std::complex<double> phi_int_offset_freq(double omega, double a, const PulseParams& p,
                                                const TruncationPolicy& pol = TruncationPolicy::defaults()) {
    std::complex<double> den = 0.0;
    // Gaussian decay of phi(a + n lambda): include all n with
    // |a + n lambda| <= width, width^2 = 2 ln(1/eps) / beta^2
    const double eps = std::min(pol.rel_tol, 1e-16);
    const double width = std::sqrt(-2.0 * std::log(eps)) / p.beta;
    const int n_lo = int(std::floor((-width - a) / p.lambda));
    const int n_hi = int(std::ceil((width - a) / p.lambda));
    for (int n = n_lo; n <= n_hi; ++n) {
        den += gaussian_phi(a + n * p.lambda, p) *
               std::polar(1.0, -double(n) * p.lambda * omega);
    }
    if (std::abs(den) < 1e-12)
        throw singular_offset_error("phi_int_offset_freq: denominator below 1e-12");
    return gaussian_phi_hat(omega, p) / den;
}

} // namespace gausspulse
