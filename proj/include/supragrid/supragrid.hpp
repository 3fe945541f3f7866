#pragma once

#include "supragrid/adapt.hpp"
#include "supragrid/analysis.hpp"
#include "supragrid/csv.hpp"
#include "supragrid/equidist.hpp"
#include "supragrid/errors.hpp"
#include "supragrid/experiments.hpp"
#include "supragrid/grid.hpp"
#include "supragrid/linalg.hpp"
#include "supragrid/problem.hpp"
#include "supragrid/solver.hpp"
