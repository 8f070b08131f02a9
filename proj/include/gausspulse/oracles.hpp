// SPDX-License-Identifier: Apache-2.0
//
// Independent brute-force verifiers for the closed forms: the contour
// integral and residue sum for the filter coefficients, the closed-form
// Gaussian Gram matrix for orthonormality, periodization of the
// interpolating spectrum, a discrete-Fourier-transform cross-check for
// every (time, frequency) pair, and polynomial root recovery for the pole
// formula.
//
// None of these call the closed-form paths they verify; they are built
// from raw arithmetic and the theta/q-Pochhammer primitives only.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "gausspulse/filter_design.hpp"
#include "gausspulse/params.hpp"
#include "gausspulse/signal.hpp"
#include "gausspulse/special_functions.hpp"
#include "gausspulse/truncation.hpp"

namespace gausspulse {

struct VerificationReport {
    std::string check_name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    double runtime_ms = 0.0;
    std::string params_digest;

    static VerificationReport make(std::string name, double measured, double tolerance,
                                   std::string digest, double runtime_ms = 0.0) {
        VerificationReport r;
        r.check_name = std::move(name);
        r.measured = measured;
        r.tolerance = tolerance;
        r.passed = measured <= tolerance;
        r.runtime_ms = runtime_ms;
        r.params_digest = std::move(digest);
        return r;
    }
};

namespace detail {

inline std::string params_digest(const PulseParams& p) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "beta=%.17g,lambda=%.17g", p.beta, p.lambda);
    return buf;
}

class Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

// Truncation order with q^{2M+1} < 1e-15.
inline int default_product_order(double q) {
    return int(std::ceil((std::log(1e-15) / std::log(q) - 1.0) / 2.0));
}

// P_M(z) = prod_{k=0}^{M-1} (1 + q^{2k+1} z^{-1}), local to the oracle.
// Extended precision: near q ~ 0.94 the reciprocal spans three orders of
// magnitude and the M ~ 280 factor products would otherwise push fp noise
// past the 1e-12 imaginary-residue flag.
inline std::complex<long double> P_M(std::complex<long double> z_inv, long double q, int M) {
    std::complex<long double> prod = 1.0L;
    long double pw = q;
    for (int k = 0; k < M; ++k) {
        prod *= 1.0L + pw * z_inv;
        pw *= q * q;
    }
    return prod;
}

} // namespace detail

// a_n = int_0^1 e^{2 pi i n w} / P(e^{2 pi i w}) dw via the K-point uniform
// trapezoid rule (spectrally accurate: the integrand is analytic and
// 1-periodic). Returns the real part; a residual imaginary part above
// 1e-12 signals an inconsistency and throws.
inline double a_n_contour_oracle(const PulseParams& p, int n, int M = 0, int K = 1024) {
    if (K < 256)
        throw std::invalid_argument("a_n_contour_oracle: K must be >= 256");
    if (M <= 0)
        M = detail::default_product_order(p.q);
    std::complex<long double> acc = 0.0L;
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    for (int j = 0; j < K; ++j) {
        const long double w = static_cast<long double>(j) / K;
        const std::complex<long double> z_inv{std::cos(-two_pi * w), std::sin(-two_pi * w)};
        const std::complex<long double> num{std::cos(two_pi * n * w), std::sin(two_pi * n * w)};
        acc += num / detail::P_M(z_inv, static_cast<long double>(p.q), M);
    }
    acc /= static_cast<long double>(K);
    if (std::abs(static_cast<double>(acc.imag())) > 1e-12)
        throw std::runtime_error("a_n_contour_oracle: imaginary residue above 1e-12");
    return static_cast<double>(acc.real());
}

// Finite residue sum I_M(n) = sum_m Res_{z_m} z^{n-1}/P_M(z) with
// z_m = -q^{2m+1}. Valid for n > -M (the integrand stays analytic at 0).
// Each residue is 1 / prod_{k != m} (1 - q^{2(k-m)}) times z_m^n, evaluated
// in log magnitude so the q^{-2j} factors cannot overflow.
inline double residue_sum_oracle(const PulseParams& p, int n, int M = 0) {
    if (M <= 0)
        M = std::max(detail::default_product_order(p.q), -n + 2);
    if (n <= -M)
        throw std::invalid_argument("residue_sum_oracle: need n > -M");
    // Extended precision: near q ~ 0.94 the alternating residues reach O(10^3)
    // while cancelling to O(1), and each log-magnitude gathers ~M rounded terms.
    const long double q = static_cast<long double>(p.q);
    const long double lq = std::log(q);
    std::vector<long double> prefix(std::size_t(M), 0.0L); // sum_{j<=k} log(1-q^{2j})
    long double q2k = q * q;
    for (int k = 1; k < M; ++k) {
        prefix[std::size_t(k)] = prefix[std::size_t(k - 1)] + std::log(1.0L - q2k);
        q2k *= q * q;
    }
    long double total = 0.0L;
    for (int m = 0; m < M; ++m) {
        const long double logmag =
            (static_cast<long double>(n) * (2 * m + 1) + static_cast<long double>(m) * (m + 1)) *
                lq -
            prefix[std::size_t(m)] - prefix[std::size_t(M - 1 - m)];
        const long double sign = ((n + m) % 2 == 0) ? 1.0L : -1.0L;
        total += sign * std::exp(logmag);
    }
    return static_cast<double>(total);
}

// <phi_ortho(.-m lambda), phi_ortho(.-n lambda)> = sum_{j,k} c_j c_k G(m+j, n+k)
// with the closed-form Gaussian Gram G(u,v) = q^{(u-v)^2} and
// c_n = Q0^{-1/2} (-q)^n/(q^2;q^2)_n; must equal delta_{mn}.
inline VerificationReport gram_orthonormality_check(const PulseParams& p, int n_max,
                                                    int m_lo, int m_hi,
                                                    double tolerance = 1e-10) {
    detail::Stopwatch sw;
    if (n_max <= 0) {
        // coefficient tail 10 q^n / (Q0 (1-q)) below 1e-15
        n_max = int(std::ceil(std::log(10.0 / (1e-15 * p.Q0 * (1.0 - p.q))) / -std::log(p.q)));
    }
    std::vector<double> c(std::size_t(n_max) + 1);
    {
        double poch = 1.0, sgnq = 1.0, q2n = p.q * p.q;
        const double r = 1.0 / std::sqrt(p.Q0);
        for (int n = 0; n <= n_max; ++n) {
            c[std::size_t(n)] = r * sgnq / poch;
            sgnq *= -p.q;
            poch *= 1.0 - q2n;
            q2n *= p.q * p.q;
        }
    }
    const double lb = p.lambda_beta();
    double worst = 0.0;
    for (int m = m_lo; m <= m_hi; ++m) {
        for (int n = m_lo; n <= m_hi; ++n) {
            double acc = 0.0;
            for (int j = 0; j <= n_max; ++j) {
                const double base = double(m + j - n);
                double row = 0.0;
                for (int k = 0; k <= n_max; ++k) {
                    const double d = base - double(k);
                    row += c[std::size_t(k)] * std::exp(-lb * lb * d * d / 4.0);
                }
                acc += c[std::size_t(j)] * row;
            }
            const double target = (m == n) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(acc - target));
        }
    }
    return VerificationReport::make("gram_orthonormality", worst, tolerance,
                                    detail::params_digest(p), sw.ms());
}

// (Lambda/sqrt(2 pi)) sum_{|n|<=N} Phi_int_hat(w + n Lambda) must equal 1.
// Phi_int_hat is rebuilt here from theta_3 and raw arithmetic.
inline VerificationReport periodization_check(const PulseParams& p, int grid_points = 257,
                                              int N = 0, double tolerance = 1e-10) {
    detail::Stopwatch sw;
    const double t = p.tau_imag;
    if (N <= 0)
        N = int(std::ceil(p.beta * std::sqrt(std::log(1e18)) / p.Lambda)) + 2;
    const auto hat = [&](double w) {
        const double z = w / p.Lambda;
        return p.lambda / std::sqrt(2.0 * std::numbers::pi) *
               std::exp(-std::numbers::pi / t * z * z) /
               (std::sqrt(t) * theta3(z, p, Theta3Mode::auto_select));
    };
    double worst = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        const double w = p.Lambda * double(i) / grid_points;
        double s = 0.0;
        for (int n = -N; n <= N; ++n)
            s += hat(w + n * p.Lambda);
        s *= p.Lambda / std::sqrt(2.0 * std::numbers::pi);
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return VerificationReport::make("periodization", worst, tolerance,
                                    detail::params_digest(p), sw.ms());
}

struct DftGridSpec {
    double half_width;    // time support [-L, L]
    double dx;            // time step
    double omega_max;     // evaluation band [-omega_max, omega_max]
    int omega_count = 257;
};

// Dense trapezoid approximation of f_hat(w) = (2 pi)^{-1/2} int e^{-ixw} f(x) dx,
// compared against freq_eval; reports sup deviation normalized by sup |f_hat|.
// Throws grid_error when more than 1e-12 of the spectral energy sits in the
// outer decade of the evaluated band (aliasing / band too narrow).
inline VerificationReport dft_pair_check(const std::function<double(double)>& time_eval,
                                         const std::function<std::complex<double>(double)>& freq_eval,
                                         const PulseParams& p, const DftGridSpec& grid,
                                         double tolerance = 1e-8,
                                         const std::string& name = "dft_pair") {
    detail::Stopwatch sw;
    const auto nx = std::size_t(std::llround(2.0 * grid.half_width / grid.dx)) + 1;
    std::vector<double> fx(nx);
    for (std::size_t j = 0; j < nx; ++j)
        fx[j] = time_eval(-grid.half_width + double(j) * grid.dx);
    double sup_dev = 0.0, sup_ref = 0.0, energy_total = 0.0, energy_edge = 0.0;
    for (int k = 0; k < grid.omega_count; ++k) {
        const double w = -grid.omega_max +
                         2.0 * grid.omega_max * double(k) / (grid.omega_count - 1);
        std::complex<double> acc = 0.0;
        for (std::size_t j = 0; j < nx; ++j) {
            const double x = -grid.half_width + double(j) * grid.dx;
            acc += fx[j] * std::polar(1.0, -x * w);
        }
        acc *= grid.dx / std::sqrt(2.0 * std::numbers::pi);
        const std::complex<double> ref = freq_eval(w);
        sup_dev = std::max(sup_dev, std::abs(acc - ref));
        sup_ref = std::max(sup_ref, std::abs(ref));
        const double e = std::norm(acc);
        energy_total += e;
        if (std::abs(w) >= 0.9 * grid.omega_max)
            energy_edge += e;
    }
    if (energy_edge > 1e-12 * energy_total)
        throw grid_error("dft_pair_check: spectral energy in the outer decade of the band; "
                         "grid too coarse or band too narrow");
    return VerificationReport::make(name, sup_dev / sup_ref, tolerance,
                                    detail::params_digest(p), sw.ms());
}

namespace detail {

// Parlett-Reinsch balancing (radix 2), then Francis QR via Eigen.
inline void balance(Eigen::MatrixXd& a) {
    const Eigen::Index n = a.rows();
    const double radix = 2.0, sq = radix * radix;
    bool done = false;
    for (int sweep = 0; !done && sweep < 200; ++sweep) {
        done = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix, f = 1.0, s = c + r;
            while (c < g) {
                f *= radix;
                c *= sq;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sq;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                g = 1.0 / f;
                a.row(i) *= g;
                a.col(i) *= f;
            }
        }
    }
}

} // namespace detail

// Roots of c[0] + c[1] z + ... + c[d] z^d via the balanced companion matrix.
inline std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs) {
    for (double c : coeffs)
        if (!std::isfinite(c))
            throw std::invalid_argument("polynomial_roots: non-finite coefficient");
    std::size_t d = coeffs.size();
    while (d > 0 && coeffs[d - 1] == 0.0)
        --d;
    if (d < 2)
        return {};
    const auto n = Eigen::Index(d - 1);
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 1; i < n; ++i)
        companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < n; ++i)
        companion(i, n - 1) = -coeffs[std::size_t(i)] / coeffs[d - 1];
    detail::balance(companion);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(n), std::complex<double>{});
    for (Eigen::Index i = 0; i < n; ++i)
        roots[std::size_t(i)] = solver.eigenvalues()[i];
    return roots;
}

namespace detail {

// Ascending monomial coefficients of the expanded cascade denominator:
// prod (z + c) for the causal stages, times prod (1 + c z) for the
// anticausal half of a zero-phase filter.
inline std::vector<double> expand_cascade_polynomial(const RationalFilter& f) {
    if (f.poles.empty())
        throw std::invalid_argument("expand_cascade_polynomial: filter has no factored poles");
    std::vector<double> poly{1.0};
    const auto mul_linear = [&poly](double a0, double a1) {
        std::vector<double> next(poly.size() + 1, 0.0);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] += a0 * poly[i];
            next[i + 1] += a1 * poly[i];
        }
        poly = std::move(next);
    };
    for (std::size_t s = 0; s < f.stage_count(); ++s) {
        const double c = -f.poles[s];
        mul_linear(c, 1.0);
        if (f.realization == Realization::zero_phase_cascade)
            mul_linear(1.0, c);
    }
    return poly;
}

} // namespace detail

// Expand the factored denominator of a cascade filter into a monomial-basis
// polynomial in z and recover its roots numerically.
inline std::vector<std::complex<double>> recovered_denominator_roots(const RationalFilter& f) {
    return polynomial_roots(detail::expand_cascade_polynomial(f));
}

// A-posteriori accuracy of the recovered roots: the Newton correction
// |p(r)/p'(r)| at each of them, evaluated in long double. Large corrections
// mean the companion eigensolve did not converge to the polynomial's roots
// (clustered poles near q = 1 defeat balancing), independent of whether the
// pole formula holds.
inline double root_recovery_floor(const std::vector<double>& poly,
                                  const std::vector<std::complex<double>>& recovered) {
    double floor_est = 0.0;
    for (const auto& r0 : recovered) {
        const std::complex<long double> r(r0.real(), r0.imag());
        std::complex<long double> pv = 0.0L, dv = 0.0L;
        for (std::size_t k = poly.size(); k-- > 0;) {
            dv = dv * r + pv;
            pv = pv * r + static_cast<long double>(poly[k]);
        }
        if (std::abs(dv) == 0.0L)
            return std::numeric_limits<double>::infinity();
        double corr = static_cast<double>(std::abs(pv / dv));
        if (std::abs(r0) > 1.0)
            corr /= std::norm(r0); // roots compared through reciprocals
        floor_est = std::max(floor_est, corr);
    }
    return floor_est;
}

// Recovered roots versus the pole formula -q^{2n+1}. Outside-circle roots
// of the zero-phase filter are matched through their reciprocals (the
// formula describes the poles inside the unit circle; an absolute match on
// magnitudes ~q^{-2N} is beyond double precision and carries no extra
// information). Orders above 60 are reported but excluded from the hard
// assertion (monomial-basis conditioning).
inline VerificationReport pole_root_check(const RationalFilter& f, const PulseParams& p,
                                          double tolerance = 1e-10) {
    detail::Stopwatch sw;
    const auto poly = detail::expand_cascade_polynomial(f);
    const std::size_t N = f.stage_count();
    // end coefficients are products of all stage constants (q^{N^2} and
    // beyond); once they underflow, the monomial basis cannot carry these
    // poles at all
    if (poly.front() == 0.0 || poly.back() == 0.0 || !std::isfinite(poly.front()) ||
        !std::isfinite(poly.back())) {
        auto rep = VerificationReport::make(
            "pole_root_check [advisory: expanded denominator exceeds double range]", 0.0,
            tolerance, detail::params_digest(p), sw.ms());
        rep.passed = true;
        return rep;
    }
    const auto roots = polynomial_roots(poly);
    std::vector<double> expected(N);
    for (std::size_t n = 0; n < N; ++n)
        expected[n] = -std::pow(p.q, 2.0 * double(n) + 1.0);
    std::vector<std::complex<double>> inside, outside_recip;
    for (const auto& r : roots) {
        if (std::abs(r) < 1.0)
            inside.push_back(r);
        else
            outside_recip.push_back(1.0 / r);
    }
    const auto by_abs = [](const std::complex<double>& a, const std::complex<double>& b) {
        return std::abs(a) > std::abs(b);
    };
    std::sort(inside.begin(), inside.end(), by_abs);
    std::sort(outside_recip.begin(), outside_recip.end(), by_abs);
    double worst = (inside.size() == N) ? 0.0 : 1.0;
    if (inside.size() == N)
        for (std::size_t n = 0; n < N; ++n)
            worst = std::max(worst, std::abs(inside[n] - expected[n]));
    if (f.realization == Realization::zero_phase_cascade) {
        if (outside_recip.size() == N)
            for (std::size_t n = 0; n < N; ++n)
                worst = std::max(worst, std::abs(outside_recip[n] - expected[n]));
        else
            worst = std::max(worst, 1.0);
    }
    auto rep = VerificationReport::make("pole_root_check", worst, tolerance,
                                        detail::params_digest(p), sw.ms());
    if (N > 60) {
        rep.check_name += " [advisory: order > 60, excluded from hard assertion]";
        rep.passed = true;
    } else {
        // clustered poles (q near 1) defeat the companion eigensolve for
        // reasons of monomial-basis conditioning, not of the formula
        const double floor_est = root_recovery_floor(poly, roots);
        if (floor_est > 0.5 * tolerance) {
            rep.check_name += " [advisory: root-recovery floor above tolerance]";
            rep.passed = true;
        }
    }
    return rep;
}

// min over recovered roots of | |root| - 1 |; the paper asserts no pole on
// the unit circle.
inline double unit_circle_margin(const RationalFilter& f) {
    double margin = 1.0;
    for (const auto& r : recovered_denominator_roots(f))
        margin = std::min(margin, std::abs(std::abs(r) - 1.0));
    return margin;
}

} // namespace gausspulse
