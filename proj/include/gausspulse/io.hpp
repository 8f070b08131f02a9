// SPDX-License-Identifier: Apache-2.0
//
// JSON / CSV serialization. JSON schema:
//   { "meta": {beta, lambda, q, Q0, tool_version}, "data": [...] }
// Pulse grids serialize as {x, value} rows, coefficient lists as
// {n, coefficient}, filters as a single object carrying realization, gain
// and the coefficient/pole lists. Doubles go through nlohmann's
// shortest-round-trip printer, so identical inputs give identical bytes
// and parsing restores the exact binary values.
//
// Verification reports omit runtime_ms on purpose: report files must be
// byte-identical across repeated runs.

#pragma once

#include <complex>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gausspulse/filter_design.hpp"
#include "gausspulse/oracles.hpp"
#include "gausspulse/params.hpp"
#include "gausspulse/signal.hpp"

namespace gausspulse {

inline constexpr const char* tool_version = "0.1.0";

inline nlohmann::ordered_json meta_json(const PulseParams& p) {
    return {{"beta", p.beta},
            {"lambda", p.lambda},
            {"q", p.q},
            {"Q0", p.Q0},
            {"tool_version", tool_version}};
}

inline std::string realization_name(Realization r) {
    switch (r) {
    case Realization::fir: return "fir";
    case Realization::iir_direct: return "iir_direct";
    case Realization::cascade_order1: return "cascade_order1";
    case Realization::zero_phase_cascade: return "zero_phase_cascade";
    }
    return "fir";
}

inline Realization realization_from_name(const std::string& s) {
    if (s == "fir") return Realization::fir;
    if (s == "iir_direct") return Realization::iir_direct;
    if (s == "cascade_order1") return Realization::cascade_order1;
    if (s == "zero_phase_cascade") return Realization::zero_phase_cascade;
    throw std::invalid_argument("unknown realization tag: " + s);
}

// Pulse grids are real-valued; a nonzero imaginary part is a defect.
inline nlohmann::ordered_json signal_to_json(const SampledSignal& s, const PulseParams& p,
                                             nlohmann::ordered_json extra_meta = {}) {
    nlohmann::ordered_json j;
    j["meta"] = meta_json(p);
    for (auto& [k, v] : extra_meta.items())
        j["meta"][k] = v;
    auto& data = j["data"];
    data = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (std::abs(s.values[i].imag()) > 1e-12)
            throw std::invalid_argument("signal_to_json: signal is not real-valued");
        data.push_back({{"x", s.position(i)}, {"value", s.values[i].real()}});
    }
    return j;
}

inline nlohmann::ordered_json coefficients_to_json(const CoefficientSequence& c,
                                                   const PulseParams& p) {
    nlohmann::ordered_json j;
    j["meta"] = meta_json(p);
    auto& data = j["data"];
    data = nlohmann::ordered_json::array();
    for (std::size_t n = 0; n < c.values.size(); ++n)
        data.push_back({{"n", n}, {"coefficient", c.values[n]}});
    return j;
}

inline nlohmann::ordered_json filter_to_json(const RationalFilter& f, const PulseParams& p) {
    nlohmann::ordered_json j;
    j["meta"] = meta_json(p);
    nlohmann::ordered_json obj;
    obj["realization"] = realization_name(f.realization);
    obj["gain"] = f.gain;
    obj["numerator"] = f.numerator;
    obj["denominator"] = f.denominator;
    obj["poles"] = f.poles;
    j["data"] = nlohmann::ordered_json::array({obj});
    return j;
}

inline RationalFilter filter_from_json(const nlohmann::json& j) {
    const auto& obj = j.at("data").at(0);
    RationalFilter f;
    f.realization = realization_from_name(obj.at("realization").get<std::string>());
    f.gain = obj.at("gain").get<double>();
    f.numerator = obj.at("numerator").get<std::vector<double>>();
    f.denominator = obj.at("denominator").get<std::vector<double>>();
    f.poles = obj.at("poles").get<std::vector<double>>();
    f.validate();
    return f;
}

inline nlohmann::ordered_json reports_to_json(const std::vector<VerificationReport>& reports,
                                              const PulseParams& p) {
    nlohmann::ordered_json j;
    j["meta"] = meta_json(p);
    auto& data = j["data"];
    data = nlohmann::ordered_json::array();
    for (const auto& r : reports)
        data.push_back({{"check", r.check_name},
                        {"measured", r.measured},
                        {"tolerance", r.tolerance},
                        {"passed", r.passed},
                        {"params", r.params_digest}});
    return j;
}

namespace detail {
inline std::string csv_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
} // namespace detail

inline std::string signal_to_csv(const SampledSignal& s) {
    std::ostringstream os;
    os << "x,value\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (std::abs(s.values[i].imag()) > 1e-12)
            throw std::invalid_argument("signal_to_csv: signal is not real-valued");
        os << detail::csv_num(s.position(i)) << ',' << detail::csv_num(s.values[i].real())
           << '\n';
    }
    return os.str();
}

inline std::string coefficients_to_csv(const CoefficientSequence& c) {
    std::ostringstream os;
    os << "n,coefficient\n";
    for (std::size_t n = 0; n < c.values.size(); ++n)
        os << n << ',' << detail::csv_num(c.values[n]) << '\n';
    return os.str();
}

// Filters in CSV: padded coefficient columns (poles are JSON-only).
inline std::string filter_to_csv(const RationalFilter& f) {
    std::ostringstream os;
    os << "n,numerator,denominator\n";
    const std::size_t rows = std::max(f.numerator.size(), f.denominator.size());
    for (std::size_t n = 0; n < rows; ++n) {
        const double num = n < f.numerator.size() ? f.numerator[n] : 0.0;
        const double den = n < f.denominator.size() ? f.denominator[n] : 0.0;
        os << n << ',' << detail::csv_num(num) << ',' << detail::csv_num(den) << '\n';
    }
    return os.str();
}

inline std::string reports_to_csv(const std::vector<VerificationReport>& reports) {
    std::ostringstream os;
    os << "check,measured,tolerance,passed,params\n";
    for (const auto& r : reports)
        os << r.check_name << ',' << detail::csv_num(r.measured) << ','
           << detail::csv_num(r.tolerance) << ',' << (r.passed ? "true" : "false") << ",\""
           << r.params_digest << "\"\n";
    return os.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open for writing: " + path);
    os << content;
}

} // namespace gausspulse
