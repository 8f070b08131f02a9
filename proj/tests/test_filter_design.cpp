// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "gausspulse/filter_design.hpp"

using namespace gausspulse;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const PulseParams ref(1.0, 1.0);
}

TEST_CASE("coefficient sequence closed form") {
    const auto c = coefficients_a(ref, 10);
    CHECK(c.values[0] == 1.0);
    CHECK_THAT(c.values[1], WithinAbs(-1.9793175816510002, 1e-13));
    for (std::size_t n = 0; n < c.values.size(); ++n) {
        const double want = (n % 2 == 0) ? 1.0 : -1.0;
        CHECK(c.values[n] * want > 0.0);
    }
}

TEST_CASE("H1: degenerate order and first denominator coefficient") {
    const auto f0 = build_H1(ref, 0);
    CHECK(f0.denominator == std::vector<double>{1.0});
    const auto h = impulse_response(f0, 8);
    CHECK(h[0] == 1.0);
    for (std::size_t k = 1; k < h.size(); ++k)
        CHECK(h[k] == 0.0);

    const auto f = build_H1(ref, 4);
    CHECK_THAT(f.denominator[1], WithinAbs(1.9793175816510002, 1e-13));
}

TEST_CASE("H1 impulse response reproduces the coefficients") {
    const auto f = build_H1(ref, 40);
    const auto h = impulse_response(f, 21);
    const auto a = coefficients_a(ref, 20).values;
    for (std::size_t k = 0; k <= 20; ++k)
        CHECK_THAT(h[k], WithinAbs(a[k], 1e-13));
}

TEST_CASE("H2: poles, stability, expansion") {
    const auto f = build_H2(ref, 2);
    REQUIRE(f.poles.size() == 2);
    CHECK_THAT(f.poles[0], WithinAbs(-0.7788007830714049, 1e-15));
    CHECK_THAT(f.poles[1], WithinAbs(-0.4723665527410147, 1e-15));
    for (double pl : f.poles)
        CHECK(std::abs(pl) < 1.0);
    // denominator equals the elementary-symmetric expansion
    CHECK_THAT(f.denominator[0], WithinAbs(1.0, 0.0));
    CHECK_THAT(f.denominator[1], WithinAbs(-(f.poles[0] + f.poles[1]), 1e-16));
    CHECK_THAT(f.denominator[2], WithinAbs(f.poles[0] * f.poles[1], 1e-16));
}

TEST_CASE("H2 cascade impulse response converges to the coefficients") {
    const auto a = coefficients_a(ref, 20).values;
    const auto h40 = impulse_response(build_H2(ref, 40), 21);
    double dev40 = 0.0;
    for (std::size_t k = 0; k <= 20; ++k)
        dev40 = std::max(dev40, std::abs(h40[k] - a[k]));
    // truncation law: first omitted stage factor contributes q^{2N+1}/(1-q^2)
    const double law = std::pow(ref.q, 81) / (1.0 - ref.q * ref.q);
    CHECK(dev40 < 5.0 * law);
    CHECK(dev40 > 0.1 * law);
    // at the order the stage-tail rule demands, agreement reaches 1e-10
    const int n2 = order_for_tail(FilterKind::cascade_stage, ref.q,
                                  1e-13 * (1.0 - ref.q * ref.q));
    const auto h = impulse_response(build_H2(ref, n2), 21);
    for (std::size_t k = 0; k <= 20; ++k)
        CHECK_THAT(h[k], WithinAbs(a[k], 1e-10));
}

TEST_CASE("H3 is the truncated coefficient sequence") {
    const auto f = build_H3(ref, 12);
    const auto a = coefficients_a(ref, 12).values;
    CHECK(f.numerator == a);
    const auto h = impulse_response(f, 13);
    for (std::size_t k = 0; k < h.size(); ++k)
        CHECK(h[k] == a[k]);
}

TEST_CASE("H3 times the H1 denominator telescopes to the unit impulse") {
    // convolution of the two tap lists approaches delta as N grows
    for (int N : {20, 40, 80}) {
        const auto a = build_H3(ref, N).numerator;
        const auto b = build_H1(ref, N).denominator;
        std::vector<double> conv(a.size() + b.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                conv[i + j] += a[i] * b[j];
        double worst = 0.0;
        for (std::size_t k = 1; k <= std::size_t(N); ++k)
            worst = std::max(worst, std::abs(conv[k]));
        CHECK_THAT(conv[0], WithinAbs(1.0, 1e-15));
        // tail of the product of the two series: q^{N+1}-scale decay
        const double law = std::pow(ref.q, N + 1) / (ref.Q0 * ref.Q0);
        CHECK(worst < law);
        if (N >= 80)
            CHECK(worst < 1e-8);
    }
}

TEST_CASE("H3 frequency response approaches 1/P") {
    const int N = order_for_tail(FilterKind::fir_taps, ref.q,
                                 1e-12 * ref.Q0 * (1.0 - ref.q));
    const auto f = build_H3(ref, N);
    for (int k = 0; k < 64; ++k) {
        const double th = 2.0 * std::numbers::pi * k / 64.0;
        const auto lhs = freq_response(f, th);
        const auto rhs = 1.0 / spectral_factor_P(std::polar(1.0, -th), ref.q);
        CHECK_THAT(std::abs(lhs - rhs), WithinAbs(0.0, 1e-10));
    }
}

TEST_CASE("H4: real even response, pole set, ISI normalization") {
    const auto f = build_H4(ref, 12);
    REQUIRE(f.poles.size() == 24);
    for (int n = 0; n < 12; ++n) {
        CHECK_THAT(f.poles[std::size_t(n)], WithinAbs(-std::pow(ref.q, 2 * n + 1), 1e-15));
        CHECK_THAT(f.poles[std::size_t(12 + n)],
                   WithinRel(-std::pow(ref.q, -(2 * n + 1)), 1e-13));
    }
    for (double th : {0.0, 0.3, 1.2, 2.9}) {
        const auto h = freq_response(f, th);
        CHECK_THAT(h.imag(), WithinAbs(0.0, 1e-12 * std::abs(h)));
        CHECK_THAT(std::abs(freq_response(f, -th)), WithinRel(std::abs(h), 1e-12));
        CHECK(h.real() > 0.0);
    }
    // the closed-form gain is the infinite-order limit; at finite N the
    // normalization deviates by the stage-tail law q^{2N+1}/(1-q^2)
    const double closed = 2.0 * std::sqrt(std::numbers::pi) / (ref.beta * ref.Q0);
    CHECK(std::abs(f.gain / closed - 1.0) < 5.0 * std::pow(ref.q, 25) / (1.0 - ref.q * ref.q));
    CHECK_THAT(build_H4(ref, 40).gain, WithinRel(closed, 1e-10));
}

TEST_CASE("H4 applied to the autocorrelation samples produces the ISI-free kernel") {
    const auto f = build_H4(ref, 40);
    const int K = 60;
    std::vector<std::complex<double>> u(2 * K + 1);
    for (int k = -K; k <= K; ++k)
        u[std::size_t(k + K)] = capital_phi(k * ref.lambda, ref);
    const auto y = apply_filter(f, SampledSignal(-K * ref.lambda, ref.lambda, std::move(u)));
    CHECK_THAT(y.values[std::size_t(K)].real(), WithinAbs(1.0, 1e-14));
    for (int k = -10; k <= 10; ++k) {
        if (k == 0) continue;
        CHECK_THAT(y.values[std::size_t(k + K)].real(),
                   WithinAbs(0.0, 10.0 * std::pow(ref.q, 81) / (1.0 - ref.q * ref.q)));
    }
}

TEST_CASE("apply_filter basics") {
    std::vector<std::complex<double>> x{0.3, -1.2, 2.0, 0.7, -0.1};
    const SampledSignal sig(0.0, 1.0, x);
    RationalFilter identity;
    const auto y = apply_filter(identity, sig);
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(y.values[i] == x[i]);

    // unit impulse through a FIR filter returns the tap list
    const auto f3 = build_H3(ref, 6);
    const auto h = impulse_response(f3, 7);
    for (std::size_t k = 0; k < 7; ++k)
        CHECK(h[k] == f3.numerator[k]);
}

TEST_CASE("apply_filter mirror boundary leaves the interior untouched") {
    const int n = 64;
    std::vector<std::complex<double>> x(n);
    for (int i = 0; i < n; ++i)
        x[std::size_t(i)] = capital_phi((i - n / 2) * ref.lambda, ref);
    const auto f = build_H4(ref, 12);
    const auto y0 = apply_filter(f, SampledSignal(0.0, 1.0, x), Boundary::zero_pad);
    const auto y1 = apply_filter(f, SampledSignal(0.0, 1.0, x), Boundary::mirror);
    for (int i = n / 2 - 8; i <= n / 2 + 8; ++i)
        CHECK_THAT(y1.values[std::size_t(i)].real(),
                   WithinAbs(y0.values[std::size_t(i)].real(), 1e-10));
}

TEST_CASE("unstable causal stage is rejected at construction") {
    RationalFilter f;
    f.realization = Realization::cascade_order1;
    f.poles = {0.5, -1.2};
    CHECK_THROWS_AS(f.validate(), std::domain_error);
    RationalFilter g;
    g.denominator = {2.0, 0.5};
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}

TEST_CASE("phi_ortho sample path matches dense evaluation") {
    const auto s = phi_ortho_samples(ref, -10, 30);
    for (int m = -10; m <= 30; ++m)
        CHECK_THAT(s.values[std::size_t(m + 10)].real(),
                   WithinAbs(phi_ortho_time(m * ref.lambda, ref), 1e-12));
    const auto far = phi_ortho_samples(ref, -12, -12);
    CHECK(std::abs(far.values[0].real()) < 1e-15);
}

TEST_CASE("order selection helper") {
    // at lambda*beta = 0.5 the quadratic exponent wins by a wide margin
    const PulseParams p(1.0, 0.5);
    const int n1 = order_for_tail(FilterKind::all_pole, p.q, 1e-12);
    const int n3 = order_for_tail(FilterKind::fir_taps, p.q, 1e-12);
    const int n2 = order_for_tail(FilterKind::cascade_stage, p.q, 1e-12);
    CHECK(n1 < n3);
    CHECK(n2 < n3);
    CHECK(std::pow(p.q, double(n1) * n1) <= 1e-12);
    CHECK(std::pow(p.q, n3) <= 1e-12);
    CHECK(std::pow(p.q, 2 * n2 + 1) <= 1e-12);
}

TEST_CASE("realization equivalence at matched accuracy") {
    const int n1 = order_for_tail(FilterKind::all_pole, ref.q, 1e-12);
    const int n2 = order_for_tail(FilterKind::cascade_stage, ref.q,
                                  1e-13 * (1.0 - ref.q * ref.q));
    const int n3 = std::max(21, order_for_tail(FilterKind::fir_taps, ref.q,
                                               1e-13 * ref.Q0 * (1.0 - ref.q)));
    const auto h1 = impulse_response(build_H1(ref, n1), 21);
    const auto h2 = impulse_response(build_H2(ref, n2), 21);
    const auto h3 = impulse_response(build_H3(ref, n3), 21);
    for (std::size_t k = 0; k <= 20; ++k) {
        CHECK_THAT(h1[k], WithinAbs(h2[k], 1e-10));
        CHECK_THAT(h2[k], WithinAbs(h3[k], 1e-10));
        CHECK_THAT(h1[k], WithinAbs(h3[k], 1e-10));
    }
}
