// SPDX-License-Identifier: Apache-2.0
//
// Pulse-design parameters. Everything downstream is a function of the
// time-frequency product lambda*beta; the constants derived here are:
//
//   Lambda = 2*pi/lambda            frequency period
//   tau    = i*(lambda*beta)^2/(4*pi)  (purely imaginary; stored as Im tau)
//   q      = exp(i*pi*tau) = exp(-(lambda*beta)^2/4)      theta-series nome
//   q'     = exp(-4*pi^2/(lambda*beta)^2)                 nome of -1/tau
//   Q0     = (q^2;q^2)_inf
//
// Supported region: lambda*beta in [0.2, 5]. Construction succeeds outside
// it, but accuracy is only vouched for inside. Note q' underflows double
// precision for lambda*beta < ~0.2302; evaluators that need theta_1 work
// with exponents directly and never materialize q'.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "gausspulse/truncation.hpp"

namespace gausspulse {

// Nome of a theta/q-series, q = exp(i*pi*tau) with tau purely imaginary,
// Im tau > 0, hence q real in (0,1).
struct Nome {
    double q;
    double tau_imag; // tau = i*tau_imag

    explicit Nome(double q_) : q(q_), tau_imag(-std::log(q_) / std::numbers::pi) {
        if (!(q > 0.0) || !(q < 1.0) || !std::isfinite(q))
            throw std::invalid_argument("Nome: q must lie in (0,1)");
    }

    static Nome from_tau_imag(double tau_imag_) {
        if (!(tau_imag_ > 0.0) || !std::isfinite(tau_imag_))
            throw std::invalid_argument("Nome: Im tau must be positive and finite");
        Nome n(std::exp(-std::numbers::pi * tau_imag_));
        n.tau_imag = tau_imag_;
        return n;
    }

    std::complex<double> tau() const { return {0.0, tau_imag}; }
};

namespace detail {
// (q^2;q^2)_inf with a certified geometric tail: the neglected log-factors
// satisfy |log prod_{j>k}(1-q^{2j})| <= q^{2(k+1)}/((1-q^2)(1-q^{2(k+1)})).
inline double q2_pochhammer_inf(double q, const TruncationPolicy& pol) {
    const double q2 = q * q;
    double prod = 1.0;
    double pw = q2;
    for (int k = 1; k <= pol.max_terms; ++k) {
        prod *= 1.0 - pw;
        const double next = pw * q2;
        const double tail = next / ((1.0 - q2) * (1.0 - next));
        if (tail < pol.rel_tol)
            return prod;
        pw = next;
    }
    throw truncation_error("q2_pochhammer_inf: max_terms exceeded");
}
} // namespace detail

struct PulseParams {
    double beta;        // bandwidth parameter, > 0
    double lambda;      // sampling interval, > 0
    double Lambda;      // 2*pi/lambda
    double tau_imag;    // Im tau = (lambda*beta)^2/(4*pi)
    double q;           // exp(-(lambda*beta)^2/4)
    double q_prime;     // exp(-4*pi^2/(lambda*beta)^2); may underflow to 0
    double Q0;          // (q^2;q^2)_inf

    PulseParams(double beta_, double lambda_,
                const TruncationPolicy& pol = TruncationPolicy::defaults())
        : beta(beta_), lambda(lambda_) {
        if (!(beta > 0.0) || !std::isfinite(beta))
            throw std::invalid_argument("PulseParams: beta must be positive and finite");
        if (!(lambda > 0.0) || !std::isfinite(lambda))
            throw std::invalid_argument("PulseParams: lambda must be positive and finite");
        const double lb = lambda * beta;
        Lambda = 2.0 * std::numbers::pi / lambda;
        tau_imag = lb * lb / (4.0 * std::numbers::pi);
        q = std::exp(-lb * lb / 4.0);
        q_prime = std::exp(-4.0 * std::numbers::pi * std::numbers::pi / (lb * lb));
        // Q0 is a one-time constant everything else divides by; compute it
        // tighter than the caller's policy asks for.
        TruncationPolicy tight = pol;
        tight.rel_tol = std::min(pol.rel_tol, 1e-16);
        tight.max_terms = std::max(pol.max_terms, 1 << 16);
        Q0 = detail::q2_pochhammer_inf(q, tight);
        validate();
    }

    // Test hook: construct with an externally supplied q so that invariant
    // enforcement can be exercised. Rejects anything a genuine (beta,
    // lambda) pair could not have produced.
    static PulseParams with_injected_q(double beta_, double lambda_, double q_injected) {
        PulseParams p(beta_, lambda_);
        p.q = q_injected;
        p.validate();
        return p;
    }

    double lambda_beta() const { return lambda * beta; }
    std::complex<double> tau() const { return {0.0, tau_imag}; }

    bool in_supported_region() const {
        const double lb = lambda_beta();
        return lb >= 0.2 && lb <= 5.0;
    }

    void validate() const {
        if (!(q > 0.0) || !(q < 1.0))
            throw std::invalid_argument("PulseParams: nome q must lie in (0,1)");
        if (!(Q0 > 0.0) || !(Q0 < 1.0))
            throw std::invalid_argument("PulseParams: Q0 must lie in (0,1)");
        // q' underflows below lambda*beta ~ 0.2302; accept 0 only there.
        const bool qp_ok = (q_prime > 0.0 && q_prime < 1.0) ||
                           (q_prime == 0.0 && lambda_beta() < 0.24);
        if (!qp_ok)
            throw std::invalid_argument("PulseParams: q' must lie in (0,1)");
        if (!(std::abs(Lambda * lambda - 2.0 * std::numbers::pi) <=
              1e-15 * 2.0 * std::numbers::pi))
            throw std::invalid_argument("PulseParams: Lambda*lambda != 2*pi");
    }

    Nome nome() const {
        Nome n(q);
        n.tau_imag = tau_imag;
        return n;
    }
};

} // namespace gausspulse
