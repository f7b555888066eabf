#pragma once

// Umbrella header: topological centrality and impact hierarchies for
// directed weighted networks via Dowker sink filtrations.

#include "bottleneck.hpp"
#include "centrality.hpp"
#include "errors.hpp"
#include "filtration.hpp"
#include "format.hpp"
#include "hierarchy.hpp"
#include "network.hpp"
#include "parallel.hpp"
#include "persistence.hpp"
#include "serialize.hpp"
#include "svg.hpp"
#include "union_find.hpp"
