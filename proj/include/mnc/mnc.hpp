#pragma once

#include "field.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "matrix.hpp"
#include "matroid.hpp"
#include "matroidal.hpp"
#include "network.hpp"
#include "solver.hpp"
#include "util.hpp"
