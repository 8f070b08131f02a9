// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: pulse grids, filter export, the verification
// suites and the reconstruction demo. JSON (default) or CSV output.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/validation error,
// 3 numeric failure (truncation/quadrature/singular offset).

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gausspulse/gausspulse.hpp"

namespace {

using namespace gausspulse;

struct CommonOpts {
    double beta = 1.0;
    double lambda = 1.0;
    double rel_tol = 1e-14;
    unsigned seed = 0;
    std::string format = "json";
    std::string output = "-";
    double inject_q = 0.0; // test hook; 0 = unused
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--beta", o.beta, "bandwidth parameter beta > 0");
    cmd->add_option("--lambda", o.lambda, "sampling interval lambda > 0");
    cmd->add_option("--rel-tol", o.rel_tol, "relative series truncation tolerance");
    cmd->add_option("--seed", o.seed, "seed for randomized test vectors");
    cmd->add_option("--format", o.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--output,-o", o.output, "output file path ('-' = stdout)");
    cmd->add_option("--test-inject-q", o.inject_q, "test hook: override the nome q")
        ->group(""); // hidden
}

PulseParams make_params(const CommonOpts& o) {
    TruncationPolicy pol;
    pol.rel_tol = o.rel_tol;
    if (o.inject_q != 0.0)
        return PulseParams::with_injected_q(o.beta, o.lambda, o.inject_q);
    return PulseParams(o.beta, o.lambda, pol);
}

void emit(const CommonOpts& o, const std::string& text) {
    if (o.output == "-")
        std::cout << text;
    else
        write_text_file(o.output, text);
}

bool check_region(const PulseParams& p, bool hard) {
    if (p.in_supported_region())
        return true;
    std::fprintf(stderr, "%s: lambda*beta = %g outside supported region [0.2, 5]\n",
                 hard ? "error" : "warning", p.lambda_beta());
    return !hard;
}

int run_pulse(const CommonOpts& o, const std::string& which, double grid_start,
              double grid_step, long grid_count) {
    const PulseParams p = make_params(o);
    if (!check_region(p, /*hard=*/true))
        return 2;
    if (grid_count <= 0) {
        std::fprintf(stderr, "error: --grid-count must be >= 1\n");
        return 2;
    }
    const double start = std::isnan(grid_start) ? -8.0 * p.lambda : grid_start;
    const double step = std::isnan(grid_step) ? p.lambda / 32.0 : grid_step;
    TruncationPolicy pol;
    pol.rel_tol = o.rel_tol;

    std::vector<std::complex<double>> vals(static_cast<std::size_t>(grid_count),
                                           std::complex<double>{});
    int trunc_order = 0;
    for (long i = 0; i < grid_count; ++i) {
        const double x = start + step * double(i);
        double v = 0.0;
        if (which == "phi") v = gaussian_phi(x, p);
        else if (which == "capital_phi") v = capital_phi(x, p);
        else if (which == "phi_int") v = phi_int_time(x, p);
        else if (which == "s0") v = s0_time(x, p);
        else if (which == "phi_ortho") v = phi_ortho_time(x, p, pol);
        else if (which == "varphi_int") v = varphi_int_time(x, p);
        vals[std::size_t(i)] = v;
    }
    if (which == "phi_ortho")
        trunc_order = order_for_tail(FilterKind::fir_taps, p.q,
                                     pol.rel_tol * p.Q0 * (1.0 - p.q) / 10.0);
    else if (which == "phi_int" || which == "s0" || which == "varphi_int")
        trunc_order = order_for_tail(FilterKind::all_pole, p.q, pol.rel_tol);

    const SampledSignal sig(start, step, std::move(vals), Domain::time);
    if (o.format == "csv") {
        emit(o, signal_to_csv(sig));
    } else {
        nlohmann::ordered_json extra{{"pulse", which},
                                     {"rel_tol", pol.rel_tol},
                                     {"truncation_order", trunc_order}};
        emit(o, signal_to_json(sig, p, extra).dump(2) + "\n");
    }
    return 0;
}

int run_filter(const CommonOpts& o, const std::string& which, int order) {
    const PulseParams p = make_params(o);
    check_region(p, /*hard=*/false);
    if (which == "coefficients") {
        const auto c = coefficients_a(p, order);
        emit(o, o.format == "csv" ? coefficients_to_csv(c)
                                  : coefficients_to_json(c, p).dump(2) + "\n");
        return 0;
    }
    RationalFilter f;
    if (which == "H1") f = build_H1(p, order);
    else if (which == "H2") f = build_H2(p, order);
    else if (which == "H3") f = build_H3(p, order);
    else if (which == "H4") f = build_H4(p, order);
    emit(o, o.format == "csv" ? filter_to_csv(f) : filter_to_json(f, p).dump(2) + "\n");
    return 0;
}

int run_verify(const CommonOpts& o, const std::string& suite_name) {
    const PulseParams p = make_params(o);
    check_region(p, /*hard=*/false);
    Suite s = Suite::all;
    if (suite_name == "identities") s = Suite::identities;
    else if (suite_name == "pulses") s = Suite::pulses;
    else if (suite_name == "filters") s = Suite::filters;
    else if (suite_name == "sampling") s = Suite::sampling;
    const auto reports = run_suite(s, p, o.seed);
    emit(o, o.format == "csv" ? reports_to_csv(reports)
                              : reports_to_json(reports, p).dump(2) + "\n");
    int failures = 0;
    for (const auto& r : reports) {
        if (!r.passed) {
            ++failures;
            std::fprintf(stderr, "FAILED %s: measured %.6g > tolerance %.6g\n",
                         r.check_name.c_str(), r.measured, r.tolerance);
        }
    }
    std::fprintf(stderr, "%zu checks, %d failed\n", reports.size(), failures);
    return failures == 0 ? 0 : 1;
}

int run_reconstruct(const CommonOpts& o, const std::string& fkind,
                    const std::vector<std::string>& comps, double offset,
                    double grid_start, double grid_step, long grid_count) {
    const PulseParams p = make_params(o);
    check_region(p, /*hard=*/false);
    if (grid_count <= 0) {
        std::fprintf(stderr, "error: --grid-count must be >= 1\n");
        return 2;
    }
    GaussianMixture f;
    if (fkind == "phi") {
        f = GaussianMixture::generator(p);
    } else if (fkind == "mixture") {
        for (const auto& c : comps) {
            GaussianComponent gc;
            if (std::sscanf(c.c_str(), "%lf,%lf,%lf", &gc.amplitude, &gc.center, &gc.sigma) != 3 ||
                !(gc.sigma > 0.0)) {
                std::fprintf(stderr, "error: --component expects A,mu,sigma with sigma > 0\n");
                return 2;
            }
            f.components.push_back(gc);
        }
    } // "zero": empty mixture

    // Offset sanity: probe the phi_{int,a} denominator over one period; a
    // vanishing denominator is a numeric failure (exit 3 via the throw).
    if (offset != 0.0)
        for (int i = 0; i <= 32; ++i)
            (void)phi_int_offset_freq(p.Lambda * i / 32.0, offset, p);

    const double start = std::isnan(grid_start) ? -8.0 * p.lambda : grid_start;
    const double step = std::isnan(grid_step) ? p.lambda / 16.0 : grid_step;
    const SampledSignal grid(start, step,
                             std::vector<std::complex<double>>(std::size_t(grid_count), 0.0));
    const auto r = run_pipeline(f, p, grid, offset);
    const GaussianMixture g = prefilter(f, p);

    if (o.format == "csv") {
        std::ostringstream os;
        os << "x,g,g_tilde\n";
        for (std::size_t i = 0; i < r.g_tilde.size(); ++i) {
            const double x = r.g_tilde.position(i);
            char buf[96];
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", x, g(x),
                          r.g_tilde.values[i].real());
            os << buf;
        }
        emit(o, os.str());
    } else {
        nlohmann::ordered_json j;
        j["meta"] = meta_json(p);
        j["meta"]["offset"] = offset;
        auto rows = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < r.g_samples.size(); ++i)
            rows.push_back({{"x", r.g_samples.position(i)},
                            {"value", r.g_samples.values[i].real()}});
        j["g_samples"] = rows;
        auto rec = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < r.g_tilde.size(); ++i)
            rec.push_back({{"x", r.g_tilde.position(i)},
                           {"value", r.g_tilde.values[i].real()}});
        j["g_tilde"] = rec;
        j["error_sup"] = r.error_sup;
        j["bound"] = r.bound;
        j["passed"] = r.passed();
        emit(o, j.dump(2) + "\n");
    }
    std::fprintf(stderr, "error_sup = %.6g, bound on |g-g~|^2 = %.6g, %s\n", r.error_sup,
                 r.bound, r.passed() ? "pass" : "FAIL");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian pulse shapes and their digital filters"};
    app.require_subcommand(1);

    CommonOpts o;

    std::string pulse_which = "phi_int";
    double grid_start = NAN, grid_step = NAN;
    long grid_count = 513;
    auto* pulse = app.add_subcommand("pulse", "evaluate a pulse shape on a grid");
    add_common(pulse, o);
    pulse->add_option("--which", pulse_which, "pulse to evaluate")
        ->check(CLI::IsMember({"phi", "capital_phi", "phi_int", "s0", "phi_ortho",
                               "varphi_int"}));
    pulse->add_option("--grid-start", grid_start, "grid start (default -8 lambda)");
    pulse->add_option("--grid-step", grid_step, "grid step (default lambda/32)");
    pulse->add_option("--grid-count", grid_count, "number of grid points");

    std::string filter_which = "H3";
    int filter_order = 40;
    auto* filter = app.add_subcommand("filter", "export a digital filter");
    add_common(filter, o);
    filter->add_option("--which", filter_which, "filter to export")
        ->check(CLI::IsMember({"H1", "H2", "H3", "H4", "coefficients"}));
    filter->add_option("--order,-N", filter_order, "filter order N")
        ->check(CLI::NonNegativeNumber);

    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    add_common(verify, o);
    verify->add_option("--suite", suite, "suite to run")
        ->check(CLI::IsMember({"identities", "pulses", "filters", "sampling", "all"}));

    std::string fkind = "phi";
    std::vector<std::string> comps;
    double offset = 0.0;
    double rgrid_start = NAN, rgrid_step = NAN;
    long rgrid_count = 257;
    auto* rec = app.add_subcommand("reconstruct", "prefilter, sample and reconstruct");
    add_common(rec, o);
    rec->add_option("--f", fkind, "input signal: phi, zero or mixture")
        ->check(CLI::IsMember({"phi", "zero", "mixture"}));
    rec->add_option("--component", comps, "mixture component A,mu,sigma (repeatable)");
    rec->add_option("--offset", offset, "sampling offset a");
    rec->add_option("--grid-start", rgrid_start, "evaluation grid start");
    rec->add_option("--grid-step", rgrid_step, "evaluation grid step");
    rec->add_option("--grid-count", rgrid_count, "evaluation grid points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (pulse->parsed())
            return run_pulse(o, pulse_which, grid_start, grid_step, grid_count);
        if (filter->parsed())
            return run_filter(o, filter_which, filter_order);
        if (verify->parsed())
            return run_verify(o, suite);
        if (rec->parsed())
            return run_reconstruct(o, fkind, comps, offset, rgrid_start, rgrid_step,
                                   rgrid_count);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const truncation_error& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 3;
    } catch (const quadrature_error& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 3;
    } catch (const singular_offset_error& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 3;
    } catch (const grid_error& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 2;
}
