#pragma once

// Umbrella header: series jets and Bell polynomials, the conformal map
// catalog, equation transformation and solving, coefficient recovery,
// and the oscillation / zero-counting toolkit.

#include "analytic.hpp"
#include "basis.hpp"
#include "bell.hpp"
#include "conformal.hpp"
#include "core.hpp"
#include "domain.hpp"
#include "jet.hpp"
#include "lde.hpp"
#include "oscillation.hpp"
#include "presets.hpp"
#include "recover.hpp"
#include "report.hpp"
#include "serialize.hpp"
#include "taylor.hpp"
#include "transform.hpp"
