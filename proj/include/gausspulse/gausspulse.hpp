// SPDX-License-Identifier: Apache-2.0
//
// Umbrella header.

#pragma once

#include "gausspulse/filter_design.hpp"
#include "gausspulse/io.hpp"
#include "gausspulse/oracles.hpp"
#include "gausspulse/params.hpp"
#include "gausspulse/pulse_shapes.hpp"
#include "gausspulse/quadrature.hpp"
#include "gausspulse/sampling.hpp"
#include "gausspulse/signal.hpp"
#include "gausspulse/special_functions.hpp"
#include "gausspulse/truncation.hpp"
#include "gausspulse/verification.hpp"
