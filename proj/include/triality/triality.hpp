// triality.hpp — Umbrella header.

#pragma once

#include "triality/experiment.hpp"
#include "triality/io.hpp"
#include "triality/linalg.hpp"
#include "triality/metrics.hpp"
#include "triality/optics.hpp"
#include "triality/rng.hpp"
#include "triality/states.hpp"
#include "triality/targets.hpp"
#include "triality/tomography.hpp"
