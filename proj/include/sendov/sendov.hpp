#pragma once

#include "sendov/complex.hpp"
#include "sendov/precision.hpp"
#include "sendov/polynomial.hpp"
#include "sendov/roots.hpp"
#include "sendov/metrics.hpp"
#include "sendov/line_case.hpp"
#include "sendov/quartic.hpp"
#include "sendov/sampling.hpp"
#include "sendov/search.hpp"
#include "sendov/io.hpp"
#include "sendov/claims.hpp"
