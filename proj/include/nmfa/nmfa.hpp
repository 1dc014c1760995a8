#pragma once

// Noisy mean-field annealing for Ising problems.

#include "nmfa/config.hpp"
#include "nmfa/error.hpp"
#include "nmfa/generators.hpp"
#include "nmfa/gset.hpp"
#include "nmfa/ising.hpp"
#include "nmfa/metrics.hpp"
#include "nmfa/random.hpp"
#include "nmfa/schedule.hpp"
#include "nmfa/solver.hpp"
