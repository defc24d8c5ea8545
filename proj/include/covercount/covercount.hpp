#pragma once

// Exact enumeration and counting of small covers over cubes and products
// of simplices: GF(2) characteristic matrices, their digraph bijections,
// and the associated class counts.

#include "covercount/bigcount.hpp"
#include "covercount/counts.hpp"
#include "covercount/cover.hpp"
#include "covercount/digraph.hpp"
#include "covercount/errors.hpp"
#include "covercount/gf2.hpp"
#include "covercount/partition.hpp"
#include "covercount/polytope.hpp"
#include "covercount/symmetry.hpp"
