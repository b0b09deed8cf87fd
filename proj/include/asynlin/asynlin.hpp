// Umbrella header.
#pragma once

#include <asynlin/numeric.hpp>
#include <asynlin/timescale.hpp>
#include <asynlin/stepmat.hpp>
#include <asynlin/evolution.hpp>
#include <asynlin/simulate.hpp>
#include <asynlin/spectral.hpp>
#include <asynlin/interp.hpp>
#include <asynlin/equivalence.hpp>
