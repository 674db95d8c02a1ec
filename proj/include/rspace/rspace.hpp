#ifndef RSPACE_RSPACE_HPP
#define RSPACE_RSPACE_HPP

#include "rspace/audit.hpp"
#include "rspace/core.hpp"
#include "rspace/ellentuck.hpp"
#include "rspace/error.hpp"
#include "rspace/forcing.hpp"
#include "rspace/gf.hpp"
#include "rspace/hypergraph.hpp"
#include "rspace/io.hpp"
#include "rspace/matrix_space.hpp"
#include "rspace/partition_space.hpp"
#include "rspace/ramsey.hpp"
#include "rspace/verify.hpp"

#endif
