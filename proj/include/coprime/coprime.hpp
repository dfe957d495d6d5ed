#pragma once

#include "coprime/bias_spectra.hpp"
#include "coprime/core_sets.hpp"
#include "coprime/error.hpp"
#include "coprime/estimator.hpp"
#include "coprime/metrics.hpp"
#include "coprime/random.hpp"
#include "coprime/spectrum.hpp"
#include "coprime/weights.hpp"
