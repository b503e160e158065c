#pragma once

// Umbrella header for the whole library.

#include "equihom/error.hpp"
#include "equihom/graph.hpp"
#include "equihom/simplicial.hpp"
#include "equihom/homcomplex.hpp"
#include "equihom/degrees.hpp"
#include "equihom/slices.hpp"
#include "equihom/smith.hpp"
#include "equihom/zz2.hpp"
#include "equihom/json_io.hpp"
#include "equihom/acceptance.hpp"
