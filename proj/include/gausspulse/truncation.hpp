// SPDX-License-Identifier: Apache-2.0
//
// Truncation control shared by every infinite series/product evaluator.
// An evaluator terminates only once a certified tail bound drops below
// rel_tol times the accumulated value; running out of max_terms first is
// an error, never a silent truncation.

#pragma once

#include <stdexcept>
#include <string>

namespace gausspulse {

class truncation_error : public std::runtime_error {
public:
    explicit truncation_error(const std::string& what) : std::runtime_error(what) {}
};

class grid_error : public std::runtime_error {
public:
    explicit grid_error(const std::string& what) : std::runtime_error(what) {}
};

class singular_offset_error : public std::runtime_error {
public:
    explicit singular_offset_error(const std::string& what) : std::runtime_error(what) {}
};

struct TruncationPolicy {
    double rel_tol = 1e-14;
    int max_terms = 4096;

    static TruncationPolicy defaults() { return {}; }

    void validate() const {
        if (!(rel_tol > 0.0))
            throw std::invalid_argument("TruncationPolicy: rel_tol must be > 0");
        if (max_terms < 1)
            throw std::invalid_argument("TruncationPolicy: max_terms must be >= 1");
    }
};

} // namespace gausspulse
