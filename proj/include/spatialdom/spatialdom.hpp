#pragma once

#include "spatialdom/dataset.hpp"
#include "spatialdom/domination.hpp"
#include "spatialdom/entry.hpp"
#include "spatialdom/geometry.hpp"
#include "spatialdom/halfspace.hpp"
#include "spatialdom/prng.hpp"
#include "spatialdom/rtree.hpp"
