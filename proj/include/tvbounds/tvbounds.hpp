#pragma once

// Umbrella header: deterministic and stochastic total variation machinery
// for univariate mixture models.

#include "tvbounds/component.hpp"
#include "tvbounds/crossings.hpp"
#include "tvbounds/envelope.hpp"
#include "tvbounds/envelope_bounds.hpp"
#include "tvbounds/estimators.hpp"
#include "tvbounds/exact_tv.hpp"
#include "tvbounds/io.hpp"
#include "tvbounds/mixture.hpp"
#include "tvbounds/quantization.hpp"
#include "tvbounds/random_mixtures.hpp"
#include "tvbounds/special_functions.hpp"
