// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one check per numbered criterion, each printed as a
// single PASS/FAIL line with the measured value and the pinned tolerance.
// Usage: acceptance [criterion-number]. Exit code = number of failures.
//
// Every tolerance below is pinned in code; nothing is deferred to later
// calibration. Criteria that cannot be met in double precision (or at all,
// where a truncation tail is larger than the stated tolerance) are still
// run verbatim and allowed to fail; the verify suites carry the honest
// law-based versions of those checks.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "gausspulse/gausspulse.hpp"

using namespace gausspulse;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool ok, double measured, double tol) {
    std::printf("%s  criterion-%02d  %-34s  measured %.6g  tolerance %.6g\n",
                ok ? "PASS" : "FAIL", idx, name, measured, tol);
    if (!ok)
        ++g_failures;
}

// 1. ISI-freeness: max |Phi_int(n lambda) - delta_n| < 1e-10, |n| <= 10,
//    for lambda*beta in {0.5, 1.0, 1.5}.
void criterion1() {
    const double tol = 1e-10;
    double worst = 0.0;
    for (double lb : {0.5, 1.0, 1.5}) {
        const PulseParams p(1.0, lb);
        for (int n = -10; n <= 10; ++n)
            worst = std::max(worst, std::abs(phi_int_time(n * p.lambda, p) -
                                             (n == 0 ? 1.0 : 0.0)));
    }
    report(1, "isi_freeness", worst < tol, worst, tol);
}

// 2. Spectral factorization: sup relative deviation of sqrt(2 pi)|phi_ortho_hat|^2
//    from Phi_int_hat over a 513-point grid on [-3 Lambda, 3 Lambda] < 1e-9.
void criterion2() {
    const double tol = 1e-9;
    const PulseParams p(1.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 513; ++i) {
        const double w = -3.0 * p.Lambda + 6.0 * p.Lambda * i / 512.0;
        const double lhs = std::sqrt(2.0 * std::numbers::pi) * std::norm(phi_ortho_freq(w, p));
        const double rhs = phi_int_freq(w, p);
        worst = std::max(worst, std::abs(lhs - rhs) / rhs);
    }
    report(2, "spectral_factorization", worst < tol, worst, tol);
}

// 3. Coefficient closed form: both oracles match a_n for n = -3..10 within
//    1e-10; a_0 = 1 exactly; negative-n oracle values are 0 within 1e-12.
void criterion3() {
    const PulseParams p(1.0, 1.0);
    const auto a = coefficients_a(p, 10).values;
    bool ok = (a[0] == 1.0);
    double worst = 0.0;
    for (int n = -3; n <= 10; ++n) {
        const double closed = (n >= 0) ? a[std::size_t(n)] : 0.0;
        worst = std::max(worst, std::abs(a_n_contour_oracle(p, n) - closed));
        worst = std::max(worst, std::abs(residue_sum_oracle(p, n) - closed));
    }
    ok = ok && worst < 1e-10;
    double neg = 0.0;
    for (int n = -3; n <= -1; ++n) {
        neg = std::max(neg, std::abs(a_n_contour_oracle(p, n)));
        neg = std::max(neg, std::abs(residue_sum_oracle(p, n)));
    }
    ok = ok && neg < 1e-12;
    report(3, "coefficient_closed_form", ok, std::max(worst, neg), 1e-10);
}

// 4. Orthonormality via the Gram oracle, m,n in [-5,5], 1e-10.
void criterion4() {
    const PulseParams p(1.0, 1.0);
    const auto r = gram_orthonormality_check(p, 0, -5, 5, 1e-10);
    report(4, "gram_orthonormality", r.passed, r.measured, r.tolerance);
}

// 5. Filter equivalence: impulse responses of H1^40, H2^40, H3^40 agree
//    pairwise within 1e-10 on samples 0..20. (The H2 cascade's truncation
//    tail is q^{2N+1}/(1-q^2) ~ 4e-9 at N=40, so the H2 pairs exceed the
//    stated tolerance; see the filters suite for the law-based check.)
void criterion5() {
    const double tol = 1e-10;
    const PulseParams p(1.0, 1.0);
    const auto h1 = impulse_response(build_H1(p, 40), 21);
    const auto h2 = impulse_response(build_H2(p, 40), 21);
    const auto h3 = impulse_response(build_H3(p, 40), 21);
    double worst = 0.0;
    for (std::size_t k = 0; k <= 20; ++k) {
        worst = std::max(worst, std::abs(h1[k] - h2[k]));
        worst = std::max(worst, std::abs(h2[k] - h3[k]));
        worst = std::max(worst, std::abs(h1[k] - h3[k]));
    }
    report(5, "filter_equivalence_N40", worst < tol, worst, tol);
}

// 6. Pole formula: recovered roots of the H2^N / H4^N denominators match
//    -q^{2n+1} within 1e-10 for N <= 20; no pole within 1e-9 of the circle.
void criterion6() {
    const PulseParams p(1.0, 1.0);
    double worst = 0.0, margin = 1.0;
    for (int N : {1, 5, 12, 20}) {
        const auto f2 = build_H2(p, N);
        const auto f4 = build_H4(p, N);
        worst = std::max(worst, pole_root_check(f2, p).measured);
        worst = std::max(worst, pole_root_check(f4, p).measured);
        margin = std::min(margin, unit_circle_margin(f2));
        margin = std::min(margin, unit_circle_margin(f4));
    }
    const bool ok = worst < 1e-10 && margin > 1e-9;
    report(6, "pole_formula", ok, worst, 1e-10);
}

// 7. Identity residuals at N=40, q=e^{-1/4}, z on the unit circle, plus the
//    theta_3 dual-representation agreement over z in [0,1). (The product /
//    geometric-series tails decay like q^{2N+1} and q^N/Q0 -- about 2e-8 and
//    1e-3 at N=40 -- so the first clause exceeds 1e-12 by construction; the
//    identities suite carries the converged-order versions.)
void criterion7() {
    const double tol = 1e-12;
    const PulseParams p(1.0, 1.0);
    const Nome q = p.nome();
    double worst = 0.0;
    for (int k = 0; k < 12; ++k) {
        const std::complex<double> z = std::polar(1.0, 2.0 * std::numbers::pi * k / 12.0);
        worst = std::max(worst, q_identity_residual(QIdentity::cascade_expansion, z, q, 40));
        worst = std::max(worst, q_identity_residual(QIdentity::cascade_inverse, z, q, 40));
        worst = std::max(worst, jacobi_triple_product_residual(z, q, 40));
    }
    double theta_dev = 0.0;
    for (int i = 0; i < 101; ++i) {
        const double z = double(i) / 101.0;
        theta_dev = std::max(theta_dev,
                             std::abs(theta3_nome(z, p.q) - theta3_modular(z, p.tau_imag)));
    }
    const bool ok = worst < tol && theta_dev < 1e-12;
    report(7, "identity_residuals_N40", ok, std::max(worst, theta_dev), tol);
}

// 8. Reconstruction bound at lambda = 1/beta for f = phi and a 3-component
//    mixture; the bound itself must evaluate to ~0.0459 beta ||f||^2.
void criterion8() {
    const PulseParams p(1.0, 1.0);
    const auto grid = SampledSignal::real(-8.0, 1.0 / 16.0,
                                          std::vector<double>(257, 0.0));
    const auto r1 = run_pipeline(GaussianMixture::generator(p), p, grid);
    const GaussianMixture mix{{{0.7, -1.3, 0.9}, {1.1, 0.4, 1.7}, {-0.5, 2.2, 0.6}}};
    const auto r2 = run_pipeline(mix, p, grid);
    const bool b1 = r1.error_sup * r1.error_sup <= r1.bound;
    const bool b2 = r2.error_sup * r2.error_sup <= r2.bound;
    const double coeff1 = r1.bound / (p.beta * r1.energy_f);
    const double coeff2 = r2.bound / (p.beta * r2.energy_f);
    const bool b3 = std::abs(coeff1 - 0.0459) < 1e-4 && std::abs(coeff2 - 0.0459) < 1e-4;
    const double worst = std::max(r1.error_sup * r1.error_sup / r1.bound,
                                  r2.error_sup * r2.error_sup / r2.bound);
    report(8, "reconstruction_bound", b1 && b2 && b3, worst, 1.0);
}

// 9. Periodization: sup |(Lambda/sqrt(2 pi)) sum Phi_int_hat(w+n Lambda) - 1|
//    over a 257-point period grid < 1e-10.
void criterion9() {
    const PulseParams p(1.0, 1.0);
    const auto r = periodization_check(p, 257, 0, 1e-10);
    report(9, "periodization", r.passed, r.measured, r.tolerance);
}

// 10. Fourier-pair consistency under the DFT oracle, 1e-8 relative.
void criterion10() {
    const PulseParams p(1.0, 1.0);
    const double slow_L = std::ceil(46.0 / (std::numbers::pi * p.tau_imag)) * p.lambda;
    const DftGridSpec narrow{14.0 / p.beta, p.lambda / 64.0, 3.0 * p.Lambda, 161};
    const DftGridSpec wide{slow_L, p.lambda / 16.0, 3.0 * p.Lambda, 161};
    const auto re = [](std::function<double(double)> f) {
        return [f = std::move(f)](double w) { return std::complex<double>(f(w), 0.0); };
    };
    double worst = 0.0;
    worst = std::max(worst, dft_pair_check([&](double x) { return gaussian_phi(x, p); },
                                           re([&](double w) { return gaussian_phi_hat(w, p); }),
                                           p, narrow, 1e-8).measured);
    worst = std::max(worst, dft_pair_check([&](double x) { return capital_phi(x, p); },
                                           re([&](double w) { return capital_phi_hat(w, p); }),
                                           p, narrow, 1e-8).measured);
    worst = std::max(worst, dft_pair_check([&](double x) { return phi_int_time(x, p); },
                                           re([&](double w) { return phi_int_freq(w, p); }), p,
                                           wide, 1e-8).measured);
    worst = std::max(worst, dft_pair_check([&](double x) { return s0_time(x, p); },
                                           re([&](double w) { return s0_freq(w, p); }), p, wide,
                                           1e-8).measured);
    worst = std::max(worst, dft_pair_check([&](double x) { return phi_ortho_time(x, p); },
                                           [&](double w) { return phi_ortho_freq(w, p); }, p,
                                           wide, 1e-8).measured);
    report(10, "fourier_pairs", worst < 1e-8, worst, 1e-8);
}

// 11. Determinism and serialization: repeated verify runs serialize to
//     identical bytes; filter JSON round-trips with frequency-response
//     deviation < 1e-14.
void criterion11() {
    const PulseParams p(1.0, 1.0);
    const auto ra = run_suite(Suite::filters, p, 17);
    const auto rb = run_suite(Suite::filters, p, 17);
    const bool bytes_equal = reports_to_json(ra, p).dump() == reports_to_json(rb, p).dump();
    double worst = 0.0;
    for (auto build : {build_H1, build_H2, build_H3, build_H4}) {
        const auto f = build(p, 8);
        const auto g = filter_from_json(nlohmann::json::parse(filter_to_json(f, p).dump()));
        for (int k = 0; k < 64; ++k) {
            const double th = 2.0 * std::numbers::pi * k / 64.0;
            worst = std::max(worst, std::abs(freq_response(f, th) - freq_response(g, th)));
        }
    }
    report(11, "determinism_serialization", bytes_equal && worst < 1e-14, worst, 1e-14);
}

} // namespace

int main(int argc, char** argv) {
    const int which = (argc > 1) ? std::atoi(argv[1]) : 0;
    const std::vector<std::function<void()>> criteria = {
        criterion1, criterion2, criterion3, criterion4, criterion5, criterion6,
        criterion7, criterion8, criterion9, criterion10, criterion11};
    const auto run = [](const std::function<void()>& c, int idx) {
        try {
            c();
        } catch (const std::exception& e) {
            std::printf("FAIL  criterion-%02d  %-34s  exception: %s\n", idx, "", e.what());
            ++g_failures;
        }
    };
    if (which >= 1 && which <= int(criteria.size())) {
        run(criteria[std::size_t(which - 1)], which);
    } else {
        for (std::size_t i = 0; i < criteria.size(); ++i)
            run(criteria[i], int(i) + 1);
    }
    if (g_failures > 0)
        std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures;
}
