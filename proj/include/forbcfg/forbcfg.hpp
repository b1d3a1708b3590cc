#pragma once

// Umbrella header: the full library surface.

#include "analysis.hpp"
#include "bitmatrix.hpp"
#include "bounds.hpp"
#include "cache.hpp"
#include "constructions.hpp"
#include "designs.hpp"
#include "detect.hpp"
#include "pattern.hpp"
#include "search.hpp"
