#pragma once

#include "autoeq_lattice.hpp"
#include "descent.hpp"
#include "graded_dims.hpp"
#include "hilb_lift.hpp"
#include "lattice_core.hpp"
#include "series.hpp"
#include "twist_dynamics.hpp"
#include "verdict.hpp"
