#pragma once

/// Umbrella header for the mixnorm library: anisotropic (mixed) norms on
/// discretized product measure spaces, Rosenthal-type constants, random
/// field models with analytic moments, and the Monte Carlo verification lab.

#include "mixnorm/axis.hpp"
#include "mixnorm/clt_lab.hpp"
#include "mixnorm/config.hpp"
#include "mixnorm/csv.hpp"
#include "mixnorm/errors.hpp"
#include "mixnorm/exponent.hpp"
#include "mixnorm/field.hpp"
#include "mixnorm/grid.hpp"
#include "mixnorm/mixingale.hpp"
#include "mixnorm/models.hpp"
#include "mixnorm/norms.hpp"
#include "mixnorm/operators.hpp"
#include "mixnorm/parallel.hpp"
#include "mixnorm/rng.hpp"
#include "mixnorm/rosenthal.hpp"
#include "mixnorm/sampling.hpp"
#include "mixnorm/selfcheck.hpp"
#include "mixnorm/stats.hpp"
#include "mixnorm/version.hpp"
