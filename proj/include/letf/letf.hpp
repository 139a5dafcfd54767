#pragma once

// Umbrella header: robust growth rates, leverage optimization, and the
// Monte-Carlo cross-check for leveraged funds under parameter uncertainty.

#include <letf/core.hpp>
#include <letf/grid.hpp>
#include <letf/gbm.hpp>
#include <letf/cir.hpp>
#include <letf/three_halves.hpp>
#include <letf/heston.hpp>
#include <letf/sv32.hpp>
#include <letf/vasicek.hpp>
#include <letf/inv_garch.hpp>
#include <letf/growth.hpp>
#include <letf/optimize.hpp>
#include <letf/scan.hpp>
#include <letf/philox.hpp>
#include <letf/mc.hpp>
