#ifndef VMLAB_VMLAB_HPP
#define VMLAB_VMLAB_HPP

#include "bipartite.hpp"
#include "canon.hpp"
#include "dyadic.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "f2.hpp"
#include "graph.hpp"
#include "graph6.hpp"
#include "json_io.hpp"
#include "matroid.hpp"
#include "minor_search.hpp"
#include "ops.hpp"
#include "pairs.hpp"
#include "ramsey.hpp"
#include "reorder.hpp"
#include "rng.hpp"
#include "stats.hpp"
#include "walks.hpp"

#endif  // VMLAB_VMLAB_HPP
