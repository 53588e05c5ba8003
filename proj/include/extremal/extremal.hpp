#pragma once

#include "extremal/analytic.hpp"
#include "extremal/commands.hpp"
#include "extremal/cassels.hpp"
#include "extremal/configuration.hpp"
#include "extremal/errors.hpp"
#include "extremal/monotonicity.hpp"
#include "extremal/numeric.hpp"
#include "extremal/parallel.hpp"
#include "extremal/polynomial.hpp"
#include "extremal/quadrature.hpp"
#include "extremal/report.hpp"
#include "extremal/rng.hpp"
#include "extremal/search.hpp"
#include "extremal/verification.hpp"
#include "extremal/version.hpp"
