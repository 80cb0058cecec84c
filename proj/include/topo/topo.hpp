#pragma once

// Convenience header pulling in the whole library.

#include "topo/continuity.hpp"
#include "topo/enumerate.hpp"
#include "topo/errors.hpp"
#include "topo/extension.hpp"
#include "topo/io.hpp"
#include "topo/maps.hpp"
#include "topo/point_set.hpp"
#include "topo/space.hpp"
#include "topo/sweep.hpp"
#include "topo/theta.hpp"
