// SPDX-License-Identifier: Apache-2.0
//
// Digital filters built from the nome q: the exact coefficient sequence
// a_n = (-q)^n/(q^2;q^2)_n and the four realizations
//
//   H1^N  all-pole IIR, denominator 1 + sum q^{n^2}/(q^2;q^2)_n z^{-n}
//   H2^N  cascade of N order-1 sections, poles -q^{2n+1}
//   H3^N  FIR with taps a_0..a_N
//   H4^N  H2^N(z) H2^N(1/z), zero-phase; anticausal half realized by a
//         backward pass per stage
//
// plus application of a filter to a sample sequence and the direct
// computation of phi_ortho(m lambda) as a filtered Gaussian.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "gausspulse/params.hpp"
#include "gausspulse/pulse_shapes.hpp"
#include "gausspulse/signal.hpp"

namespace gausspulse {

enum class Realization { fir, iir_direct, cascade_order1, zero_phase_cascade };
enum class Boundary { zero_pad, mirror };

struct RationalFilter {
    std::vector<double> numerator{1.0};   // z^{-n} coefficients
    std::vector<double> denominator{1.0}; // z^{-n} coefficients, leading 1
    std::vector<double> poles;            // factored form; for zero_phase_cascade
                                          // the first half are the causal stages,
                                          // the second half their mirrors
    double gain = 1.0;
    Realization realization = Realization::fir;

    std::size_t stage_count() const {
        return realization == Realization::zero_phase_cascade ? poles.size() / 2
                                                              : poles.size();
    }

    void validate() const {
        if (denominator.empty() || denominator.front() != 1.0)
            throw std::invalid_argument("RationalFilter: denominator[0] must be 1");
        if (realization == Realization::cascade_order1 ||
            realization == Realization::zero_phase_cascade) {
            for (std::size_t i = 0; i < stage_count(); ++i)
                if (!(std::abs(poles[i]) < 1.0))
                    throw std::domain_error("RationalFilter: causal stage pole outside unit circle");
        }
        for (double v : numerator)
            if (!std::isfinite(v)) throw std::invalid_argument("RationalFilter: non-finite numerator");
        for (double v : denominator)
            if (!std::isfinite(v)) throw std::invalid_argument("RationalFilter: non-finite denominator");
    }
};

struct CoefficientSequence {
    std::vector<double> values; // a_0..a_n
    Nome q;
};

// a_n = (-q)^n / (q^2;q^2)_n, n = 0..n_max (a_n = 0 for n < 0 by causality).
inline CoefficientSequence coefficients_a(const PulseParams& p, int n_max) {
    if (n_max < 0)
        throw std::invalid_argument("coefficients_a: n_max must be >= 0");
    std::vector<double> a(std::size_t(n_max) + 1);
    double poch = 1.0, sgnq = 1.0, q2n = p.q * p.q;
    for (int n = 0; n <= n_max; ++n) {
        a[std::size_t(n)] = sgnq / poch;
        sgnq *= -p.q;
        poch *= 1.0 - q2n;
        q2n *= p.q * p.q;
    }
    return {std::move(a), p.nome()};
}

namespace detail {
// prod_i (1 - pole_i z^{-1}) expanded into z^{-n} coefficients.
inline std::vector<double> expand_poles(const std::vector<double>& poles) {
    std::vector<double> c{1.0};
    for (double pl : poles) {
        std::vector<double> next(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i] += c[i];
            next[i + 1] -= pl * c[i];
        }
        c = std::move(next);
    }
    return c;
}
} // namespace detail

inline RationalFilter build_H1(const PulseParams& p, int N) {
    if (N < 0)
        throw std::invalid_argument("build_H1: N must be >= 0");
    RationalFilter f;
    f.realization = Realization::iir_direct;
    f.numerator = {1.0};
    f.denominator.assign(std::size_t(N) + 1, 0.0);
    double poch = 1.0, pw = 1.0, qodd = p.q, q2n = p.q * p.q;
    f.denominator[0] = 1.0;
    for (int n = 1; n <= N; ++n) {
        pw *= qodd; // q^{n^2}
        qodd *= p.q * p.q;
        poch *= 1.0 - q2n;
        q2n *= p.q * p.q;
        f.denominator[std::size_t(n)] = pw / poch;
    }
    f.validate();
    return f;
}

inline RationalFilter build_H2(const PulseParams& p, int N) {
    if (N < 0)
        throw std::invalid_argument("build_H2: N must be >= 0");
    RationalFilter f;
    f.realization = Realization::cascade_order1;
    f.numerator = {1.0};
    f.poles.resize(std::size_t(N));
    for (int n = 0; n < N; ++n)
        f.poles[std::size_t(n)] = -std::pow(p.q, 2 * n + 1);
    f.denominator = detail::expand_poles(f.poles);
    f.validate();
    return f;
}

inline RationalFilter build_H3(const PulseParams& p, int N) {
    if (N < 0)
        throw std::invalid_argument("build_H3: N must be >= 0");
    RationalFilter f;
    f.realization = Realization::fir;
    f.numerator = coefficients_a(p, N).values;
    f.denominator = {1.0};
    f.validate();
    return f;
}

inline SampledSignal apply_filter(const RationalFilter& f, const SampledSignal& input,
                                  Boundary boundary = Boundary::zero_pad);

// H4 = H2(z) H2(1/z). The paper leaves the overall constant open; the gain
// is normalized so that filtering the autocorrelation samples Phi(k lambda)
// yields exactly 1 at k = 0 (ISI-kernel normalization). The infinite-order
// limit of that gain is 2 sqrt(pi)/(beta Q0).
inline RationalFilter build_H4(const PulseParams& p, int N) {
    if (N < 0)
        throw std::invalid_argument("build_H4: N must be >= 0");
    RationalFilter f;
    f.realization = Realization::zero_phase_cascade;
    f.numerator = {1.0};
    f.poles.resize(std::size_t(2 * N));
    for (int n = 0; n < N; ++n) {
        f.poles[std::size_t(n)] = -std::pow(p.q, 2 * n + 1);
        f.poles[std::size_t(N + n)] = -std::pow(p.q, -(2 * n + 1));
    }
    std::vector<double> causal(f.poles.begin(), f.poles.begin() + N);
    f.denominator = detail::expand_poles(causal);
    f.validate();
    if (N > 0) {
        const double lb = p.lambda_beta();
        const int K = int(std::ceil(166.0 / (lb * lb) + 13.0 / lb)) + 8;
        std::vector<std::complex<double>> u(std::size_t(2 * K) + 1);
        for (int k = -K; k <= K; ++k)
            u[std::size_t(k + K)] = capital_phi(k * p.lambda, p);
        const SampledSignal out =
            apply_filter(f, SampledSignal(-K * p.lambda, p.lambda, std::move(u)));
        f.gain = 1.0 / out.values[std::size_t(K)].real();
    }
    return f;
}

namespace detail {

inline std::size_t reflect_index(std::ptrdiff_t i, std::size_t n) {
    const std::ptrdiff_t m = std::ptrdiff_t(n);
    while (i < 0 || i >= m) {
        if (i < 0) i = -i;
        if (i >= m) i = 2 * (m - 1) - i;
    }
    return std::size_t(i);
}

// Mirror-extend by L samples on each side (whole-point reflection).
inline std::vector<std::complex<double>> extend(const std::vector<std::complex<double>>& x,
                                                std::size_t L, Boundary boundary) {
    std::vector<std::complex<double>> e(x.size() + 2 * L, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        e[L + i] = x[i];
    if (boundary == Boundary::mirror) {
        for (std::size_t j = 1; j <= L; ++j) {
            e[L - j] = x[reflect_index(-std::ptrdiff_t(j), x.size())];
            e[L + x.size() - 1 + j] =
                x[reflect_index(std::ptrdiff_t(x.size()) - 1 + std::ptrdiff_t(j), x.size())];
        }
    }
    return e;
}

inline void one_pole_forward(std::vector<std::complex<double>>& y, double c) {
    std::complex<double> prev = 0.0;
    for (auto& v : y) {
        prev = v - c * prev;
        v = prev;
    }
}

inline void one_pole_backward(std::vector<std::complex<double>>& y, double c) {
    std::complex<double> prev = 0.0;
    for (std::size_t i = y.size(); i-- > 0;) {
        prev = y[i] - c * prev;
        y[i] = prev;
    }
}

} // namespace detail

inline SampledSignal apply_filter(const RationalFilter& f, const SampledSignal& input,
                                  Boundary boundary) {
    f.validate();
    const std::size_t n = input.size();
    const std::size_t L = (boundary == Boundary::mirror && n > 1) ? n - 1 : 0;
    std::vector<std::complex<double>> work = detail::extend(input.values, L, boundary);

    switch (f.realization) {
    case Realization::fir: {
        std::vector<std::complex<double>> y(work.size(), 0.0);
        for (std::size_t k = 0; k < work.size(); ++k) {
            std::complex<double> acc = 0.0;
            const std::size_t jmax = std::min(k + 1, f.numerator.size());
            for (std::size_t j = 0; j < jmax; ++j)
                acc += f.numerator[j] * work[k - j];
            y[k] = acc;
        }
        work = std::move(y);
        break;
    }
    case Realization::iir_direct: {
        std::vector<std::complex<double>> y(work.size(), 0.0);
        for (std::size_t k = 0; k < work.size(); ++k) {
            std::complex<double> acc = 0.0;
            const std::size_t jmax = std::min(k + 1, f.numerator.size());
            for (std::size_t j = 0; j < jmax; ++j)
                acc += f.numerator[j] * work[k - j];
            const std::size_t dmax = std::min(k + 1, f.denominator.size());
            for (std::size_t j = 1; j < dmax; ++j)
                acc -= f.denominator[j] * y[k - j];
            y[k] = acc;
        }
        work = std::move(y);
        break;
    }
    case Realization::cascade_order1: {
        for (std::size_t s = 0; s < f.stage_count(); ++s)
            detail::one_pole_forward(work, -f.poles[s]);
        break;
    }
    case Realization::zero_phase_cascade: {
        for (std::size_t s = 0; s < f.stage_count(); ++s) {
            const double c = -f.poles[s];
            detail::one_pole_forward(work, c);
            detail::one_pole_backward(work, c);
        }
        break;
    }
    }

    std::vector<std::complex<double>> out(work.begin() + std::ptrdiff_t(L),
                                          work.begin() + std::ptrdiff_t(L + n));
    if (f.gain != 1.0)
        for (auto& v : out)
            v *= f.gain;
    return SampledSignal(input.start, input.step, std::move(out), input.domain);
}

// Frequency response at z = e^{i theta}; uses the factored form when the
// pole list is present.
inline std::complex<double> freq_response(const RationalFilter& f, double theta) {
    const std::complex<double> zi = std::polar(1.0, -theta);
    std::complex<double> num = 0.0, zp = 1.0;
    for (double c : f.numerator) {
        num += c * zp;
        zp *= zi;
    }
    switch (f.realization) {
    case Realization::fir:
        return f.gain * num;
    case Realization::iir_direct: {
        std::complex<double> den = 0.0;
        zp = 1.0;
        for (double c : f.denominator) {
            den += c * zp;
            zp *= zi;
        }
        return f.gain * num / den;
    }
    case Realization::cascade_order1: {
        std::complex<double> h = num;
        for (std::size_t s = 0; s < f.stage_count(); ++s)
            h /= 1.0 - f.poles[s] * zi;
        return f.gain * h;
    }
    case Realization::zero_phase_cascade: {
        std::complex<double> h = num;
        const std::complex<double> z = std::polar(1.0, theta);
        for (std::size_t s = 0; s < f.stage_count(); ++s)
            h /= (1.0 - f.poles[s] * zi) * (1.0 - f.poles[s] * z);
        return f.gain * h;
    }
    }
    return f.gain * num;
}

// First n samples of the impulse response.
inline std::vector<double> impulse_response(const RationalFilter& f, std::size_t n) {
    std::vector<std::complex<double>> delta(n, 0.0);
    delta[0] = 1.0;
    const SampledSignal out = apply_filter(f, SampledSignal(0.0, 1.0, std::move(delta)));
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i)
        h[i] = out.values[i].real();
    return h;
}

// phi_ortho(m lambda) = Q0^{-1/2} sum_{n>=0} a_n phi_u((m-n) lambda).
// Only a few coefficients matter thanks to the Gaussian decay of phi_u;
// the sum is truncated jointly on the coefficient majorant 10 q^n/(Q0(1-q))
// and the Gaussian factor.
inline SampledSignal phi_ortho_samples(const PulseParams& p, int m_lo, int m_hi,
                                       const TruncationPolicy& pol = TruncationPolicy::defaults()) {
    if (m_hi < m_lo)
        throw std::invalid_argument("phi_ortho_samples: empty index range");
    const double lb = p.lambda_beta();
    const double tol = std::min(pol.rel_tol, 1e-15);
    // e^{-(lb k)^2/4} * 10/(Q0 (1-q)) <= tol
    const double amp = 10.0 / (p.Q0 * (1.0 - p.q));
    const int k_gauss = int(std::ceil(2.0 * std::sqrt(std::log(amp / tol)) / lb)) + 1;
    std::vector<std::complex<double>> vals(std::size_t(m_hi - m_lo) + 1, 0.0);
    for (int m = m_lo; m <= m_hi; ++m) {
        const int n_lo = std::max(0, m - k_gauss);
        double sum = 0.0;
        double poch = 1.0, sgnq = 1.0, q2n = p.q * p.q, qpow = p.q;
        // advance the coefficient recurrences to n_lo
        for (int n = 0; n < n_lo; ++n) {
            sgnq *= -p.q;
            poch *= 1.0 - q2n;
            q2n *= p.q * p.q;
            qpow *= p.q;
        }
        bool converged = false;
        for (int n = n_lo; n <= n_lo + pol.max_terms; ++n) {
            sum += sgnq / poch * unit_energy_phi((m - n) * p.lambda, p);
            if (10.0 * qpow / (p.Q0 * (1.0 - p.q)) <= tol || n - m >= k_gauss) {
                converged = true;
                break;
            }
            sgnq *= -p.q;
            poch *= 1.0 - q2n;
            q2n *= p.q * p.q;
            qpow *= p.q;
        }
        if (!converged)
            throw truncation_error("phi_ortho_samples: max_terms exceeded");
        vals[std::size_t(m - m_lo)] = sum / std::sqrt(p.Q0);
    }
    return SampledSignal(m_lo * p.lambda, p.lambda, std::move(vals));
}

enum class FilterKind { all_pole, fir_taps, cascade_stage };

// Smallest order whose neglected-coefficient bound falls below tol:
// q^{N^2} (all-pole), q^N (FIR taps), q^{2N+1} (cascade stages).
inline int order_for_tail(FilterKind kind, double q, double tol) {
    if (!(q > 0.0 && q < 1.0) || !(tol > 0.0))
        throw std::invalid_argument("order_for_tail: need q in (0,1), tol > 0");
    const double lq = -std::log(q);
    const double target = -std::log(tol);
    switch (kind) {
    case FilterKind::all_pole:
        return int(std::ceil(std::sqrt(target / lq)));
    case FilterKind::fir_taps:
        return int(std::ceil(target / lq));
    case FilterKind::cascade_stage:
        return std::max(0, int(std::ceil((target / lq - 1.0) / 2.0)));
    }
    return 0;
}

} // namespace gausspulse
