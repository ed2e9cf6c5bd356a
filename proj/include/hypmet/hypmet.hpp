#pragma once

// Umbrella header: the whole library in one include.

#include "hypmet/audit.hpp"
#include "hypmet/builders.hpp"
#include "hypmet/counterexample.hpp"
#include "hypmet/errors.hpp"
#include "hypmet/experiments.hpp"
#include "hypmet/format.hpp"
#include "hypmet/geometry.hpp"
#include "hypmet/gromov.hpp"
#include "hypmet/metrics.hpp"
#include "hypmet/obstacle.hpp"
#include "hypmet/parallel.hpp"
#include "hypmet/qc.hpp"
#include "hypmet/rng.hpp"
#include "hypmet/space.hpp"
#include "hypmet/spec_io.hpp"
#include "hypmet/version.hpp"
