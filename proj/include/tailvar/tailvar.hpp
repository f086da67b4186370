#pragma once

// Umbrella header.

#include "tailvar/catalog.hpp"
#include "tailvar/classify.hpp"
#include "tailvar/cli.hpp"
#include "tailvar/csv.hpp"
#include "tailvar/distribution.hpp"
#include "tailvar/errors.hpp"
#include "tailvar/evt.hpp"
#include "tailvar/hazard.hpp"
#include "tailvar/inverses.hpp"
#include "tailvar/limits.hpp"
#include "tailvar/probe_grid.hpp"
#include "tailvar/quadrature.hpp"
#include "tailvar/represent.hpp"
#include "tailvar/rng.hpp"
#include "tailvar/spec_file.hpp"
#include "tailvar/special_functions.hpp"
#include "tailvar/tail_class.hpp"
#include "tailvar/tail_function.hpp"
