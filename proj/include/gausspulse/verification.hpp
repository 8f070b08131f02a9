// SPDX-License-Identifier: Apache-2.0
//
// Named verification suites (identities / pulses / filters / sampling)
// assembling VerificationReport lists for the CLI and the test harness.
// Check names are stable identifiers; lower-bound style conditions are
// reported as violation amounts (0 when satisfied) so that the uniform
// rule passed <=> measured <= tolerance applies everywhere.

#pragma once

#include <cfloat>
#include <complex>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gausspulse/filter_design.hpp"
#include "gausspulse/oracles.hpp"
#include "gausspulse/params.hpp"
#include "gausspulse/pulse_shapes.hpp"
#include "gausspulse/quadrature.hpp"
#include "gausspulse/sampling.hpp"
#include "gausspulse/special_functions.hpp"

namespace gausspulse {

enum class Suite { identities, pulses, filters, sampling, all };

namespace detail {

// Peak coefficient of the phi_ortho series, max_n q^n/(q^2;q^2)_n; its
// growth toward 1/Q0 as q -> 1 is what limits the time-domain evaluation.
inline double phi_ortho_peak_coefficient(const PulseParams& p) {
    double peak = 1.0, poch = 1.0, qn = 1.0, q2n = p.q * p.q;
    for (int n = 1; n <= 4000; ++n) {
        qn *= p.q;
        poch *= 1.0 - q2n;
        q2n *= p.q * p.q;
        const double c = qn / poch;
        peak = std::max(peak, c);
        if (n > 20 && c < 1.0)
            break;
    }
    return peak;
}

// fp noise estimate of a pointwise phi_ortho_time evaluation.
inline double phi_ortho_series_noise(const PulseParams& p) {
    return DBL_EPSILON * phi_ortho_peak_coefficient(p) * unit_energy_phi(0.0, p) /
           std::sqrt(p.Q0);
}

// terms the series stop rule needs: 10 q^{n+1}/(Q0 (1-q)) <= rel_tol
inline int phi_ortho_series_terms(const PulseParams& p) {
    const TruncationPolicy pol;
    return int(std::ceil(std::log(pol.rel_tol * p.Q0 * (1.0 - p.q) / 10.0) / std::log(p.q)));
}

inline std::vector<std::complex<double>> unit_circle_points(unsigned seed, int fixed = 8,
                                                            int random = 4) {
    std::vector<std::complex<double>> zs;
    for (int k = 0; k < fixed; ++k)
        zs.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / fixed));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    for (int k = 0; k < random; ++k)
        zs.push_back(std::polar(1.0, ang(rng)));
    return zs;
}

template <typename F>
inline VerificationReport timed_check(const std::string& name, const PulseParams& p,
                                      double tolerance, F&& measure) {
    Stopwatch sw;
    const double m = measure();
    return VerificationReport::make(name, m, tolerance, params_digest(p), sw.ms());
}

} // namespace detail

inline std::vector<VerificationReport> run_identities_suite(const PulseParams& p,
                                                            unsigned seed = 0) {
    std::vector<VerificationReport> out;
    const Nome q = p.nome();
    const auto zs = detail::unit_circle_points(seed);

    out.push_back(detail::timed_check("identities/qpoch_cauchy", p, 1e-12, [&] {
        // Cauchy consistency at the order the tail bound demands and twice it
        const double inf = q_pochhammer_inf(q.q * q.q, q);
        const int nc = order_for_tail(FilterKind::fir_taps, q.q, 1e-13 * (1.0 - q.q)) + 1;
        return (std::abs(q_pochhammer(q.q * q.q, q, nc) - inf) +
                std::abs(q_pochhammer(q.q * q.q, q, 2 * nc) - inf)) /
               std::abs(inf);
    }));
    out.push_back(detail::timed_check("identities/theta3_dual_representation", p, 1e-12, [&] {
        double worst = 0.0;
        for (int i = 0; i < 101; ++i) {
            const double z = double(i) / 101.0;
            worst = std::max(worst,
                             std::abs(theta3_nome(z, p.q) - theta3_modular(z, p.tau_imag)));
        }
        return worst;
    }));
    out.push_back(detail::timed_check("identities/theta3_lower_bound", p, 0.0, [&] {
        const double floor_val = theta3(0.5, p);
        if (!(floor_val > 0.0))
            return 1.0;
        double violation = 0.0;
        for (int i = 0; i < 101; ++i) {
            const double z = double(i) / 101.0;
            violation = std::max(violation, floor_val - theta3(z, p) - 1e-13 * floor_val);
        }
        return std::max(violation, 0.0);
    }));
    out.push_back(detail::timed_check("identities/theta3_periodicity", p, 1e-13, [&] {
        double worst = 0.0;
        for (int i = 0; i < 32; ++i) {
            const double z = double(i) / 32.0;
            worst = std::max(worst, std::abs(theta3(z, p) - theta3(z + 1.0, p)));
        }
        return worst;
    }));
    out.push_back(detail::timed_check("identities/theta1_odd_and_integer_zero", p, 0.0, [&] {
        const double ti = 1.0 / p.tau_imag;
        double worst = std::abs(theta1(0.0, ti)) + std::abs(theta1(3.0, ti));
        for (int i = 1; i < 16; ++i) {
            const double z = double(i) / 16.0;
            worst = std::max(worst, std::abs(theta1(z, ti) + theta1(-z, ti)));
        }
        return worst;
    }));
    out.push_back(detail::timed_check("identities/theta1_prime_fd", p, 1e-9, [&] {
        const double ti = 1.0 / p.tau_imag;
        const double h = 1e-6;
        const double fd = (theta1(h, ti) - theta1(-h, ti)) / (2.0 * h);
        return std::abs(theta1_prime_at_zero(ti) - fd);
    }));
    out.push_back(detail::timed_check("identities/jacobi_converged", p, 1e-12, [&] {
        // both sides of the triple product are free of small denominators,
        // so this stays live at every q; tail is the q^{2N+1} product law
        const int n = order_for_tail(FilterKind::cascade_stage, q.q,
                                     1e-13 * (1.0 - q.q) / 8.0) + 1;
        double worst = 0.0;
        for (const auto& z : zs)
            worst = std::max(worst, jacobi_triple_product_residual(z, q, n) /
                                        theta3_nome(0.0, q.q));
        return worst;
    }));
    out.push_back(detail::timed_check("identities/jacobi_z_symmetry", p, 1e-13, [&] {
        double worst = 0.0;
        for (const auto& z : zs) {
            const double a = jacobi_triple_product_residual(z, q, 40);
            const double b = jacobi_triple_product_residual(1.0 / z, q, 40);
            worst = std::max(worst, std::abs(a - b) / (1.0 + a + b));
        }
        return worst;
    }));

    // The remaining z-identity checks are gated on their own computability:
    // their series sides carry 1/(q;q)_n-type denominators, so beyond
    // q ~ 0.95 the alternating terms peak near eps^{-1} and no double
    // precision sum can express the cancellation.
    double id_peak = 1.0;
    {
        double poch = 1.0, num = 1.0;
        for (int n = 1; n <= 400; ++n) {
            num *= std::pow(q.q, n - 1);
            poch *= 1.0 - std::pow(q.q, n);
            const double term = num / std::abs(poch);
            id_peak = std::max(id_peak, term);
            if (n > 40 && term < 1.0)
                break;
        }
    }
    if (DBL_EPSILON * id_peak > 1e-10)
        return out;

    // orders at which each truncation tail provably drops below 1e-12; the
    // euler product magnitude e^{q/(1-q)} (~34 at q = e^{-1/4}) scales its tail
    const double euler_mag = std::exp(q.q / (1.0 - q.q));
    const int n_e1 = order_for_tail(FilterKind::fir_taps, q.q,
                                    1e-13 * (1.0 - q.q) / euler_mag) + 1;
    const int n_casc = order_for_tail(FilterKind::cascade_stage, q.q, 1e-13 * (1.0 - q.q * q.q)) + 1;
    const int n_inv = order_for_tail(FilterKind::fir_taps, q.q, 1e-13 * p.Q0 * (1.0 - q.q)) + 1;

    // residuals measured relative to the side magnitudes: near q = 1 the
    // euler/cascade products grow like e^{q/(1-q)} and drag the fp floor along
    out.push_back(detail::timed_check("identities/euler_first_converged", p, 1e-10, [&] {
        double worst = 0.0;
        for (const auto& z : zs)
            worst = std::max(worst,
                             q_identity_residual(QIdentity::euler_first, z, q, n_e1, true));
        return worst;
    }));
    out.push_back(detail::timed_check("identities/euler_second_converged", p, 1e-10, [&] {
        // both tails matter: the series is |z|-geometric, the product side
        // q-geometric
        const double r = 0.6;
        const int n_series = int(std::ceil(std::log(1e-13 * p.Q0 * (1.0 - r)) / std::log(r)));
        const int n_product = order_for_tail(FilterKind::fir_taps, q.q,
                                             1e-13 * (1.0 - q.q) / r);
        const int n = std::max(n_series, n_product) + 1;
        double worst = 0.0;
        for (const auto& z : zs)
            worst = std::max(worst,
                             q_identity_residual(QIdentity::euler_second, r * z, q, n, true));
        return worst;
    }));
    out.push_back(detail::timed_check("identities/cascade_expansion_converged", p, 1e-10, [&] {
        double worst = 0.0;
        for (const auto& z : zs)
            worst = std::max(worst, q_identity_residual(QIdentity::cascade_expansion, z, q,
                                                        n_casc, true));
        return worst;
    }));
    out.push_back(detail::timed_check("identities/cascade_inverse_converged", p, 1e-10, [&] {
        double worst = 0.0;
        for (const auto& z : zs)
            worst = std::max(worst,
                             q_identity_residual(QIdentity::cascade_inverse, z, q, n_inv, true));
        return worst;
    }));
    out.push_back(detail::timed_check("identities/cascade_inverse_tail_law_at_40", p,
                                      std::max(2.0 * std::pow(q.q, 41) / (p.Q0 * (1.0 - q.q)),
                                               1e-14), [&] {
        double worst = 0.0;
        for (const auto& z : zs)
            worst = std::max(worst, q_identity_residual(QIdentity::cascade_inverse, z, q, 40));
        return worst;
    }));
    out.push_back(detail::timed_check("identities/euler_substitution_audit", p, 1e-12, [&] {
        // euler_first with q -> q^2, z -> q/z must reproduce cascade_expansion;
        // agreement measured relative to the residuals' own size
        const Nome q2(q.q * q.q);
        double worst = 0.0;
        for (const auto& z : zs) {
            const double r1 = q_identity_residual(QIdentity::euler_first, q.q / z, q2, 40);
            const double r2 = q_identity_residual(QIdentity::cascade_expansion, z, q, 40);
            worst = std::max(worst, std::abs(r1 - r2) / (1.0 + r1 + r2));
        }
        return worst;
    }));
    return out;
}

inline std::vector<VerificationReport> run_pulses_suite(const PulseParams& p,
                                                        unsigned /*seed*/ = 0) {
    std::vector<VerificationReport> out;

    out.push_back(detail::timed_check("pulses/isi_freeness", p, 1e-10, [&] {
        double worst = 0.0;
        for (double lb : {0.5, 1.0, 1.5}) {
            const PulseParams pp(p.beta, lb / p.beta);
            for (int n = -10; n <= 10; ++n) {
                const double target = (n == 0) ? 1.0 : 0.0;
                worst = std::max(worst, std::abs(phi_int_time(n * pp.lambda, pp) - target));
            }
        }
        return worst;
    }));
    out.push_back(detail::timed_check("pulses/interpolant_guard_band", p, 1e-8, [&] {
        double worst = 0.0;
        for (int n : {0, 1, 5}) {
            const double lo = phi_int_time((n + 0.99e-8) * p.lambda, p);
            const double hi = phi_int_time((n + 1.01e-8) * p.lambda, p);
            worst = std::max(worst, std::abs(hi - lo));
        }
        return worst;
    }));
    // The relative identity is probed where |phi_ortho_hat|^2 stays inside
    // normal double range: e^{-w^2/beta^2} underflows beyond |w| ~ 26 beta
    // (reached inside [-3 Lambda, 3 Lambda] once lambda*beta < 0.73).
    const double w_fact = std::min(3.0 * p.Lambda, 26.0 * p.beta);
    out.push_back(detail::timed_check("pulses/factorization_relative", p, 1e-9, [&] {
        double worst = 0.0;
        for (int i = 0; i < 513; ++i) {
            const double w = -w_fact + 2.0 * w_fact * i / 512.0;
            const double lhs =
                std::sqrt(2.0 * std::numbers::pi) * std::norm(phi_ortho_freq(w, p));
            const double rhs = phi_int_freq(w, p);
            worst = std::max(worst, std::abs(lhs - rhs) / rhs);
        }
        return worst;
    }));
    out.push_back(detail::timed_check("pulses/factorization_absolute", p, 1e-10, [&] {
        const double peak = phi_int_freq(0.0, p);
        double worst = 0.0;
        for (int i = 0; i < 513; ++i) {
            const double w = -w_fact + 2.0 * w_fact * i / 512.0;
            const double lhs =
                std::sqrt(2.0 * std::numbers::pi) * std::norm(phi_ortho_freq(w, p));
            worst = std::max(worst, std::abs(lhs - phi_int_freq(w, p)));
        }
        return worst / peak;
    }));

    // Fourier pairs under the DFT oracle. Slowly decaying pulses need the
    // wide grid: Phi_int and phi_ortho decay like e^{-pi t |x|/lambda}. The
    // band covers whichever is wider, the periodization range or the
    // Gaussian bandwidth.
    const double slow_L = std::ceil(46.0 / (std::numbers::pi * p.tau_imag)) * p.lambda;
    const double band = std::max(3.0 * p.Lambda, 8.0 * p.beta);
    const DftGridSpec narrow{14.0 / p.beta, p.lambda / 64.0, band, 161};
    const DftGridSpec wide{slow_L, p.lambda / 16.0, band, 161};
    const auto cplx = [](std::function<double(double)> f) {
        return [f = std::move(f)](double w) { return std::complex<double>(f(w), 0.0); };
    };
    out.push_back(dft_pair_check([&](double x) { return gaussian_phi(x, p); },
                                 cplx([&](double w) { return gaussian_phi_hat(w, p); }), p,
                                 narrow, 1e-8, "pulses/dft_phi"));
    out.push_back(dft_pair_check([&](double x) { return capital_phi(x, p); },
                                 cplx([&](double w) { return capital_phi_hat(w, p); }), p,
                                 narrow, 1e-8, "pulses/dft_capital_phi"));
    out.push_back(dft_pair_check([&](double x) { return phi_int_time(x, p); },
                                 cplx([&](double w) { return phi_int_freq(w, p); }), p, wide,
                                 1e-8, "pulses/dft_phi_int"));
    out.push_back(dft_pair_check([&](double x) { return s0_time(x, p); },
                                 cplx([&](double w) { return s0_freq(w, p); }), p, wide, 1e-8,
                                 "pulses/dft_s0"));
    // The phi_ortho time series cancels coefficients that peak near
    // max_n q^n/(q^2;q^2)_n ~ 1/Q0; once its fp noise crosses the pair
    // tolerance (q ~ 0.95) the time-domain series is not representable in
    // double and the check is withheld (the frequency-domain spectral
    // factor remains live in the factorization checks at every q).
    if (detail::phi_ortho_series_noise(p) <= 1e-8 &&
        detail::phi_ortho_series_terms(p) <= TruncationPolicy().max_terms) {
        out.push_back(dft_pair_check([&](double x) { return phi_ortho_time(x, p); },
                                     [&](double w) { return phi_ortho_freq(w, p); }, p, wide,
                                     1e-8, "pulses/dft_phi_ortho"));
    }

    out.push_back(periodization_check(p));
    out.back().check_name = "pulses/periodization";

    out.push_back(detail::timed_check("pulses/s0_matches_phi_int", p,
                                      std::max(1e-13, 5.0 * p.q_prime * p.q_prime), [&] {
        // the true deviation is O(q'^2): ~1e-34 at lambda*beta = 1 (float
        // noise only; 1e-13 is the frozen regression bound there) but a
        // genuine 8e-9 by lambda*beta = 2
        double worst = 0.0;
        for (int i = -256; i <= 256; ++i) {
            const double x = 8.0 * p.lambda * i / 256.0;
            worst = std::max(worst, std::abs(phi_int_time(x, p) - s0_time(x, p)));
        }
        return worst;
    }));
    out.push_back(detail::timed_check("pulses/evenness", p, 1e-14, [&] {
        double worst = 0.0;
        for (int i = 1; i <= 64; ++i) {
            const double x = 8.0 * p.lambda * i / 64.0 + 0.37 * p.lambda / 64.0;
            worst = std::max(worst, std::abs(phi_int_time(x, p) - phi_int_time(-x, p)));
            worst = std::max(worst, std::abs(s0_time(x, p) - s0_time(-x, p)));
            worst = std::max(worst, std::abs(capital_phi(x, p) - capital_phi(-x, p)));
            worst = std::max(worst, std::abs(varphi_int_time(x, p) - varphi_int_time(-x, p)));
        }
        return worst;
    }));
    out.push_back(detail::timed_check("pulses/approximate_puc", p, 8e-15, [&] {
        // |sum_n phi_lb(x+n) - 1| <= 3 e^{-2 pi^2/lb^2}; the tolerance is the
        // float64 summation floor on top of the analytic bound
        double worst = -1.0;
        for (double lb : {0.5, 1.0, 1.5, 2.0}) {
            const PulseParams pp(lb, 1.0);
            const double bound = 3.0 * std::exp(-2.0 * std::numbers::pi * std::numbers::pi /
                                                (lb * lb));
            for (int i = 0; i <= 40; ++i) {
                const double x = double(i) / 40.0;
                double s = 0.0;
                for (int n = -64; n <= 64; ++n)
                    s += gaussian_phi(x + n, pp); // phi_lambda(x) = lb phi(lb x) at beta=lb
                worst = std::max(worst, std::abs(s - 1.0) - bound);
            }
        }
        return std::max(worst, 0.0);
    }));
    out.push_back(detail::timed_check("pulses/varphi_int_reconstruction", p, 1e-8, [&] {
        // f = phi(. - 3 lambda) lies in V_lambda(phi); the Walter interpolant
        // must reproduce it
        double worst = 0.0;
        const int n_win = int(std::ceil(46.0 / (2.0 * std::numbers::pi * p.tau_imag))) + 8;
        for (int i = -32; i <= 32; ++i) {
            const double x = 4.0 * p.lambda * i / 16.0;
            double acc = 0.0;
            for (int n = -n_win; n <= n_win + 3; ++n)
                acc += gaussian_phi((double(n) - 3.0) * p.lambda, p) *
                       varphi_int_time(x - n * p.lambda, p);
            worst = std::max(worst, std::abs(acc - gaussian_phi(x - 3.0 * p.lambda, p)));
        }
        return worst;
    }));
    // The offset denominator min over the period scales like
    // e^{-pi^2/(2 (lambda beta)^2)}; below lambda*beta ~ 0.45 it crosses the
    // 1e-12 singularity guard and phi_{int,a} rightly refuses to evaluate
    // (that rejection path has its own unit test), so the reconstruction
    // demo only runs where the offset problem is well posed.
    if (p.lambda_beta() >= 0.45)
    out.push_back(detail::timed_check("pulses/offset_reconstruction", p, 1e-6, [&] {
        // f = phi(. - 2 lambda) from samples at 0.3 lambda + n lambda through
        // the offset interpolant, rebuilt in time by quadrature
        const double a = 0.3 * p.lambda;
        const double W = 12.0 * p.beta;
        const int nw = 2400;
        const auto phi_int_a = [&](double x) {
            std::complex<double> acc = 0.0;
            for (int j = 0; j <= nw; ++j) {
                const double w = -W + 2.0 * W * j / nw;
                const double trap = (j == 0 || j == nw) ? 0.5 : 1.0;
                acc += trap * phi_int_offset_freq(w, a, p) * std::polar(1.0, w * x);
            }
            return acc.real() * (2.0 * W / nw) / std::sqrt(2.0 * std::numbers::pi);
        };
        double worst = 0.0;
        const int nw9 = int(std::ceil(10.0 / p.lambda_beta())) + 2; // covers 10/beta of support
        for (int i = -8; i <= 12; ++i) {
            const double x = p.lambda * i / 2.0;
            double acc = 0.0;
            for (int n = 2 - nw9; n <= 2 + nw9; ++n)
                acc += gaussian_phi(a + (n - 2.0) * p.lambda, p) * phi_int_a(x - n * p.lambda);
            worst = std::max(worst, std::abs(acc - gaussian_phi(x - 2.0 * p.lambda, p)));
        }
        return worst;
    }));
    out.push_back(detail::timed_check("pulses/spectral_factor_lower_bound", p, 0.0, [&] {
        // |P| >= sqrt(theta_3(1/2)/Q0) on the circle; assert half of that floor
        double mn = 1e300;
        for (int i = 0; i < 257; ++i) {
            const double w = p.Lambda * i / 257.0;
            mn = std::min(mn, std::abs(spectral_factor_P(
                                  std::polar(1.0, -2.0 * std::numbers::pi * w / p.Lambda), p.q)));
        }
        const double floor_theory = std::sqrt(theta3(0.5, p) / p.Q0);
        return std::max(0.0, 0.5 * floor_theory - mn); // violation amount
    }));
    return out;
}

inline std::vector<VerificationReport> run_filters_suite(const PulseParams& p,
                                                         unsigned /*seed*/ = 0) {
    std::vector<VerificationReport> out;
    const auto a = coefficients_a(p, 130).values;
    // the recursions cancel terms of size max|a_n| against each other; their
    // fp floor scales with the square of that mass (|a_n| ~ q^n/Q0 blows up
    // as q -> 1)
    double a_mass = 1.0;
    for (std::size_t k = 0; k <= 20; ++k)
        a_mass = std::max(a_mass, std::abs(a[k]));
    const double recursion_scale = a_mass * a_mass;

    out.push_back(detail::timed_check("filters/a0_exact", p, 0.0,
                                      [&] { return std::abs(a[0] - 1.0); }));
    out.push_back(detail::timed_check("filters/a_sign_pattern", p, 0.0, [&] {
        for (std::size_t n = 0; n < a.size(); ++n) {
            if (a[n] == 0.0)
                break; // (-q)^n underflowed; sign is no longer represented
            const double want = (n % 2 == 0) ? 1.0 : -1.0;
            if (a[n] * want <= 0.0)
                return 1.0;
        }
        return 0.0;
    }));
    // The contour integrand 1/P peaks at 1/prod(1-q^{2k+1}) ~ e^{pi^2/(8|ln q|)}
    // at z = -1; once that spike outgrows what extended precision can cancel
    // (q ~ 0.96) the coefficient oracles are withheld at these params. The
    // fixed-range two-oracle agreement check below stays live regardless.
    double contour_peak = 1.0;
    {
        double pw = p.q;
        for (int k = 0; k < 4000 && pw > 1e-18; ++k) {
            contour_peak /= 1.0 - pw;
            pw *= p.q * p.q;
        }
    }
    if (contour_peak <= 1e8) {
    out.push_back(detail::timed_check("filters/coefficients_vs_contour", p, 1e-10, [&] {
        // relative to the coefficient size: |a_n| itself grows like 1/Q0
        double worst = 0.0;
        for (int n = -3; n <= 10; ++n) {
            const double closed = (n >= 0) ? a[std::size_t(n)] : 0.0;
            worst = std::max(worst, std::abs(a_n_contour_oracle(p, n) - closed) /
                                        std::max(1.0, std::abs(closed)));
        }
        return worst;
    }));
    // the alternating residues peak near q^{m^2+m}/((q^2;q^2)_m (q^2;q^2)_inf);
    // once that mass exceeds what extended precision can cancel the residue
    // comparison is withheld like the contour one
    double residue_peak = 1.0;
    {
        double poch = 1.0, num = 1.0, q2n = p.q * p.q;
        for (int m = 1; m <= 400; ++m) {
            num *= std::pow(p.q, 2 * m); // q^{m(m+1)}
            poch *= 1.0 - q2n;
            q2n *= p.q * p.q;
            residue_peak = std::max(residue_peak, num / (poch * p.Q0));
            if (m > 20 && num / (poch * p.Q0) < 1.0)
                break;
        }
    }
    if (residue_peak <= 5e6)
    out.push_back(detail::timed_check("filters/coefficients_vs_residue", p, 1e-10, [&] {
        // for n < 0 the residues cancel exactly but peak at q^{n-(1+2n)^2/4};
        // at small q (large lambda*beta) that mass exceeds what extended
        // precision can cancel, so the negative side is skipped there
        const int n_lo = (std::pow(p.q, -9.25) < 5e7) ? -3 : 0;
        double worst = 0.0;
        for (int n = n_lo; n <= 10; ++n) {
            const double closed = (n >= 0) ? a[std::size_t(n)] : 0.0;
            worst = std::max(worst, std::abs(residue_sum_oracle(p, n) - closed) /
                                        std::max(1.0, std::abs(closed)));
        }
        return worst;
    }));
    } // contour_peak gate
    out.push_back(detail::timed_check("filters/contour_vs_residue", p, 1e-10, [&] {
        double worst = 0.0;
        for (double lb : {0.5, 1.0, 1.5}) {
            const PulseParams pp(p.beta, lb / p.beta);
            for (int n = 0; n <= 10; ++n)
                worst = std::max(worst, std::abs(a_n_contour_oracle(pp, n) -
                                                 residue_sum_oracle(pp, n)));
        }
        return worst;
    }));

    out.push_back(detail::timed_check("filters/h1_h3_impulse_agreement", p, 1e-10, [&] {
        const auto h1 = impulse_response(build_H1(p, 40), 21);
        const auto h3 = impulse_response(build_H3(p, 40), 21);
        double worst = 0.0;
        for (std::size_t k = 0; k < 21; ++k)
            worst = std::max(worst, std::abs(h1[k] - h3[k]));
        return worst / recursion_scale;
    }));
    out.push_back(detail::timed_check(
        "filters/h2_truncation_law_at_40", p,
        std::max(20.0 * std::pow(p.q, 81) / (1.0 - p.q * p.q) * a_mass, 1e-14), [&] {
        const auto h2 = impulse_response(build_H2(p, 40), 21);
        double worst = 0.0;
        for (std::size_t k = 0; k < 21; ++k)
            worst = std::max(worst, std::abs(h2[k] - a[k]));
        return worst;
    }));
    out.push_back(detail::timed_check("filters/equalized_order_agreement", p, 1e-10, [&] {
        // orders chosen by the neglected-coefficient rule at 1e-12: the three
        // realizations then really are interchangeable
        const int n1 = order_for_tail(FilterKind::all_pole, p.q, 1e-12);
        const int n2 = order_for_tail(FilterKind::cascade_stage, p.q, 1e-13 * (1.0 - p.q * p.q));
        const int n3 = order_for_tail(FilterKind::fir_taps, p.q, 1e-13 * p.Q0 * (1.0 - p.q));
        const auto h1 = impulse_response(build_H1(p, n1), 21);
        const auto h2 = impulse_response(build_H2(p, n2), 21);
        const auto h3 = impulse_response(build_H3(p, std::max(n3, 21)), 21);
        double worst = 0.0;
        for (std::size_t k = 0; k < 21; ++k) {
            worst = std::max(worst, std::abs(h1[k] - h2[k]));
            worst = std::max(worst, std::abs(h2[k] - h3[k]));
            worst = std::max(worst, std::abs(h1[k] - h3[k]));
        }
        return worst / recursion_scale;
    }));
    out.push_back(detail::timed_check("filters/h2_denominator_expansion", p, 1e-13, [&] {
        // independent elementary-symmetric accumulation, reversed pole order
        const auto f = build_H2(p, 12);
        std::vector<double> es{1.0};
        for (auto it = f.poles.rbegin(); it != f.poles.rend(); ++it) {
            std::vector<double> nx(es.size() + 1, 0.0);
            for (std::size_t i = 0; i < es.size(); ++i) {
                nx[i] += es[i];
                nx[i + 1] -= *it * es[i];
            }
            es = std::move(nx);
        }
        double worst = 0.0;
        for (std::size_t i = 0; i < es.size(); ++i)
            worst = std::max(worst, std::abs(es[i] - f.denominator[i]));
        return worst;
    }));

    {
        // largest order <= 20 whose end coefficients (q^{N^2}, q^{2N^2}) stay
        // inside double range
        const double lq = -std::log(p.q);
        const int n2 = std::min(20, int(std::floor(std::sqrt(600.0 / lq))));
        const int n4 = std::min(20, int(std::floor(std::sqrt(300.0 / lq))));
        auto r2 = pole_root_check(build_H2(p, n2), p);
        const bool hard2 = r2.check_name.find("advisory") == std::string::npos;
        r2.check_name = "filters/pole_formula_h2" +
                        r2.check_name.substr(std::strlen("pole_root_check"));
        out.push_back(r2);
        auto r4 = pole_root_check(build_H4(p, n4), p);
        const bool hard4 = r4.check_name.find("advisory") == std::string::npos;
        r4.check_name = "filters/pole_formula_h4" +
                        r4.check_name.substr(std::strlen("pole_root_check"));
        out.push_back(r4);
        // circle margin is only measurable when the roots themselves are
        out.push_back(detail::timed_check("filters/unit_circle_margin", p, 0.0, [&] {
            double mn = 1.0 - p.q; // formula margin as the fallback
            if (hard2)
                mn = std::min(mn, unit_circle_margin(build_H2(p, n2)));
            if (hard4)
                mn = std::min(mn, unit_circle_margin(build_H4(p, n4)));
            return std::max(0.0, 1e-9 - mn); // violation amount
        }));
    }

    out.push_back(detail::timed_check("filters/h4_isi_delta", p,
                                      std::max(10.0 * std::pow(p.q, 81) / (1.0 - p.q * p.q),
                                               1e-13), [&] {
        const auto f = build_H4(p, 40);
        const int K = 60;
        std::vector<std::complex<double>> u(2 * K + 1);
        for (int k = -K; k <= K; ++k)
            u[std::size_t(k + K)] = capital_phi(k * p.lambda, p);
        const auto y = apply_filter(f, SampledSignal(-K * p.lambda, p.lambda, std::move(u)));
        double worst = 0.0;
        for (int k = -10; k <= 10; ++k) {
            const double target = (k == 0) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(y.values[std::size_t(k + K)].real() - target));
        }
        return worst;
    }));
    // the closed-form gain is the infinite-order limit; the comparison only
    // means something while the stage-tail law is in its linear regime
    if (std::pow(p.q, 81) / (1.0 - p.q * p.q) <= 0.06) {
        out.push_back(detail::timed_check("filters/h4_gain_closed_form", p,
                                          std::max(1e-12, 5.0 * std::pow(p.q, 81) /
                                                              (1.0 - p.q * p.q)), [&] {
            const auto f = build_H4(p, 40);
            const double closed = 2.0 * std::sqrt(std::numbers::pi) / (p.beta * p.Q0);
            return std::abs(f.gain / closed - 1.0);
        }));
    }
    if (detail::phi_ortho_series_noise(p) <= 1e-8)
    out.push_back(detail::timed_check("filters/h3_freq_matches_inv_P", p, 1e-10, [&] {
        const int n3 = order_for_tail(FilterKind::fir_taps, p.q, 1e-12 * p.Q0 * (1.0 - p.q));
        const auto f = build_H3(p, n3);
        double worst = 0.0;
        for (int k = 0; k < 64; ++k) {
            const double theta = 2.0 * std::numbers::pi * k / 64.0;
            const auto lhs = freq_response(f, theta);
            const auto rhs = 1.0 / spectral_factor_P(std::polar(1.0, -theta), p.q);
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        }
        return worst;
    }));
    out.push_back(detail::timed_check("filters/h2_impulse_matches_a", p, 1e-10, [&] {
        const int n2 = order_for_tail(FilterKind::cascade_stage, p.q, 1e-13 * (1.0 - p.q * p.q));
        const auto h2 = impulse_response(build_H2(p, n2), 21);
        double worst = 0.0;
        for (std::size_t k = 0; k < 21; ++k)
            worst = std::max(worst, std::abs(h2[k] - a[k]));
        return worst / recursion_scale;
    }));
    out.push_back(detail::timed_check("filters/h3_impulse_is_taps", p, 0.0, [&] {
        const auto f = build_H3(p, 12);
        const auto h = impulse_response(f, 13);
        double worst = 0.0;
        for (std::size_t k = 0; k < h.size(); ++k)
            worst = std::max(worst, std::abs(h[k] - f.numerator[k]));
        return worst;
    }));
    out.push_back(detail::timed_check("filters/order_economy", p, 0.0, [&] {
        const PulseParams pp(p.beta, 0.5 / p.beta); // q ~ 0.9394
        const int n1 = order_for_tail(FilterKind::all_pole, pp.q, 1e-12);
        const int n3 = order_for_tail(FilterKind::fir_taps, pp.q, 1e-12);
        return (n1 < n3) ? 0.0 : 1.0;
    }));
    if (detail::phi_ortho_series_noise(p) <= 1e-8 &&
        detail::phi_ortho_series_terms(p) <= TruncationPolicy().max_terms) {
        out.push_back(detail::timed_check("filters/phi_ortho_samples_vs_dense", p, 1e-12, [&] {
            const auto s = phi_ortho_samples(p, -10, 30);
            double worst = 0.0;
            for (int m = -10; m <= 30; ++m)
                worst = std::max(worst, std::abs(s.values[std::size_t(m + 10)].real() -
                                                 phi_ortho_time(m * p.lambda, p)));
            return worst;
        }));
    }
    out.push_back(detail::timed_check("filters/phi_ortho_far_left", p, 1e-15, [&] {
        // the pulse is supported to the right; far enough left the Gaussian
        // tail kills even the Q0^{-1/2} sized coefficients
        const int m_far = -std::max(12, int(std::ceil(16.0 / p.lambda_beta())));
        const auto s = phi_ortho_samples(p, m_far, m_far);
        return std::abs(s.values[0].real());
    }));

    // Orthonormality. The Gram double sum cancels terms of size (sum|c_n|)^2,
    // which outgrows any fixed tolerance as q -> 1; run it only where it is
    // conditioned and always add the periodized-spectrum criterion, which is
    // a positive-term sum at every q.
    {
        double c_mass = 0.0, poch = 1.0, qn = 1.0;
        for (int n = 0; n < 400 && qn / poch > 1e-18; ++n) {
            c_mass += qn / poch;
            qn *= p.q;
            poch *= 1.0 - std::pow(p.q, 2.0 * (n + 1));
        }
        c_mass /= std::sqrt(p.Q0);
        if (c_mass * c_mass * 64.0 * DBL_EPSILON <= 1e-10) {
            out.push_back(gram_orthonormality_check(p, 0, -5, 5));
            out.back().check_name = "filters/gram_orthonormality";
        }
    }
    out.push_back(detail::timed_check("filters/orthonormality_spectrum", p, 1e-10, [&] {
        // Lambda sum_n |phi_ortho_hat(w + n Lambda)|^2 = 1 a.e.
        const int N = int(std::ceil(p.beta * std::sqrt(std::log(1e18)) / p.Lambda)) + 2;
        double worst = 0.0;
        for (int i = 0; i < 129; ++i) {
            const double w = p.Lambda * i / 129.0;
            double s = 0.0;
            for (int n = -N; n <= N; ++n)
                s += std::norm(phi_ortho_freq(w + n * p.Lambda, p));
            worst = std::max(worst, std::abs(p.Lambda * s - 1.0));
        }
        return worst;
    }));
    return out;
}

inline std::vector<VerificationReport> run_sampling_suite(const PulseParams& p,
                                                          unsigned /*seed*/ = 0) {
    std::vector<VerificationReport> out;
    const GaussianMixture mix{{{0.7, -1.3 * p.lambda, 0.9 / p.beta},
                               {1.1, 0.4 * p.lambda, 1.7 / p.beta},
                               {-0.5, 2.2 * p.lambda, 0.6 / p.beta}}};
    const auto grid = [&](double half, int n) {
        return SampledSignal::real(-half, 2.0 * half / n,
                                   std::vector<double>(std::size_t(n) + 1, 0.0));
    };

    out.push_back(detail::timed_check("sampling/prefilter_phi_is_autocorrelation", p, 1e-14, [&] {
        const auto g = prefilter(GaussianMixture::generator(p), p);
        double worst = 0.0;
        for (int i = -16; i <= 16; ++i) {
            const double x = 0.5 * p.lambda * i;
            worst = std::max(worst, std::abs(g(x) - capital_phi(x, p)));
        }
        return worst;
    }));
    out.push_back(detail::timed_check("sampling/prefilter_quadrature_agreement", p, 1e-10, [&] {
        const GaussianMixture f{{{0.8, 0.7 / p.beta, 1.9 / p.beta}}};
        const auto closed = prefilter(f, p);
        const auto quad = prefilter_quadrature([f](double x) { return f(x); }, p);
        double worst = 0.0;
        for (int i = -6; i <= 6; ++i) {
            const double x = 0.7 * p.lambda * i;
            worst = std::max(worst, std::abs(closed(x) - quad(x)));
        }
        return worst;
    }));
    out.push_back(detail::timed_check("sampling/interpolation_exactness", p, 1e-10, [&] {
        const auto g = prefilter(mix, p);
        std::vector<std::complex<double>> vals(33);
        for (int n = -16; n <= 16; ++n)
            vals[std::size_t(n + 16)] = g(n * p.lambda);
        const SampledSignal samples(-16.0 * p.lambda, p.lambda, std::move(vals));
        const auto gt = reconstruct(samples, p, samples);
        double worst = 0.0;
        for (std::size_t i = 0; i < gt.size(); ++i)
            worst = std::max(worst, std::abs(gt.values[i] - samples.values[i]));
        return worst;
    }));
    // once the analytic bound drops under the reconstruction's own fp floor
    // (eps times the summed kernel mass) only the floor is observable
    const auto fp_floor = [&](const ReconstructionResult& r) {
        double gmax = 0.0;
        for (const auto& v : r.g_samples.values)
            gmax = std::max(gmax, std::abs(v));
        return 64.0 * DBL_EPSILON * gmax *
               (1.0 + 2.0 / (std::numbers::pi * p.tau_imag));
    };
    out.push_back(detail::timed_check("sampling/bound_generator", p, 1.0, [&] {
        const auto r = run_pipeline(GaussianMixture::generator(p), p, grid(8.0 * p.lambda, 256));
        const double e = std::max(0.0, r.error_sup - fp_floor(r));
        return e * e / r.bound;
    }));
    out.push_back(detail::timed_check("sampling/bound_mixture", p, 1.0, [&] {
        const auto r = run_pipeline(mix, p, grid(8.0 * p.lambda, 256));
        const double e = std::max(0.0, r.error_sup - fp_floor(r));
        return e * e / r.bound;
    }));
    out.push_back(detail::timed_check("sampling/bound_halving_law", p, 1e-12, [&] {
        const PulseParams ph(p.beta, 0.5 * p.lambda);
        const double e = std::numbers::pi / p.lambda;
        const double want = std::exp(-3.0 * e * e / (2.0 * p.beta * p.beta));
        return std::abs(error_bound(ph, 1.0) / error_bound(p, 1.0) / want - 1.0);
    }));
    out.push_back(detail::timed_check("sampling/zero_input", p, 0.0, [&] {
        const auto r = run_pipeline(GaussianMixture{}, p, grid(4.0 * p.lambda, 64));
        double worst = r.error_sup;
        for (const auto& v : r.g_tilde.values)
            worst = std::max(worst, std::abs(v));
        return worst;
    }));
    out.push_back(detail::timed_check("sampling/translation_robustness", p, 1e-10, [&] {
        const double a = 0.3 * p.lambda;
        const auto g = prefilter(mix, p);
        const auto r = run_pipeline(mix, p, grid(6.0 * p.lambda, 192), a);
        // interpolation at the shifted instants a + n lambda
        double worst = 0.0;
        for (int n = -4; n <= 4; ++n) {
            const double x = a + n * p.lambda;
            const auto gt = reconstruct(r.g_samples, p,
                                        SampledSignal::real(x, p.lambda, {0.0}));
            worst = std::max(worst, std::abs(gt.values[0].real() - g(x)));
        }
        return worst;
    }));
    out.push_back(detail::timed_check("sampling/offset_bound_still_holds", p, 1.0, [&] {
        const auto r = run_pipeline(mix, p, grid(6.0 * p.lambda, 192), 0.3 * p.lambda);
        const double e = std::max(0.0, r.error_sup - fp_floor(r));
        return e * e / r.bound;
    }));
    out.push_back(detail::timed_check("sampling/coarse_lambda_coherent", p, 0.0, [&] {
        const PulseParams pc(p.beta, 2.0 / p.beta);
        const auto r = run_pipeline(mix, pc, grid(8.0 * pc.lambda, 128));
        return std::isfinite(r.error_sup) && std::isfinite(r.bound) ? 0.0 : 1.0;
    }));
    return out;
}

inline std::vector<VerificationReport> run_suite(Suite s, const PulseParams& p,
                                                 unsigned seed = 0) {
    std::vector<VerificationReport> out;
    const auto append = [&out](std::vector<VerificationReport> v) {
        out.insert(out.end(), v.begin(), v.end());
    };
    switch (s) {
    case Suite::identities: append(run_identities_suite(p, seed)); break;
    case Suite::pulses: append(run_pulses_suite(p, seed)); break;
    case Suite::filters: append(run_filters_suite(p, seed)); break;
    case Suite::sampling: append(run_sampling_suite(p, seed)); break;
    case Suite::all:
        append(run_identities_suite(p, seed));
        append(run_pulses_suite(p, seed));
        append(run_filters_suite(p, seed));
        append(run_sampling_suite(p, seed));
        break;
    }
    return out;
}

} // namespace gausspulse
