#pragma once

// Umbrella header: the full solver stack plus I/O helpers.

#include "circular_domain.hpp"
#include "geometry.hpp"
#include "grid_guess.hpp"
#include "minkowski.hpp"
#include "mst_topology.hpp"
#include "oracle.hpp"
#include "serialize.hpp"
#include "solver.hpp"
