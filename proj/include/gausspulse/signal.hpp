// SPDX-License-Identifier: Apache-2.0
//
// Uniformly sampled signal, time- or frequency-domain.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace gausspulse {

enum class Domain { time, frequency };

struct SampledSignal {
    double start = 0.0;
    double step = 1.0;
    std::vector<std::complex<double>> values;
    Domain domain = Domain::time;

    SampledSignal() = default;
    SampledSignal(double start_, double step_, std::vector<std::complex<double>> values_,
                  Domain domain_ = Domain::time)
        : start(start_), step(step_), values(std::move(values_)), domain(domain_) {
        validate();
    }

    static SampledSignal real(double start_, double step_, const std::vector<double>& v,
                              Domain domain_ = Domain::time) {
        std::vector<std::complex<double>> cv(v.begin(), v.end());
        return SampledSignal(start_, step_, std::move(cv), domain_);
    }

    std::size_t size() const { return values.size(); }
    double position(std::size_t i) const { return start + step * double(i); }

    void validate() const {
        if (values.empty())
            throw std::invalid_argument("SampledSignal: need at least one sample");
        if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(start))
            throw std::invalid_argument("SampledSignal: start/step must be finite, step > 0");
        for (const auto& v : values)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw std::invalid_argument("SampledSignal: non-finite sample");
    }
};

} // namespace gausspulse
