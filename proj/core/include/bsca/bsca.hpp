#pragma once

// Umbrella header.

#include "bsca/baselines.hpp"
#include "bsca/bounds.hpp"
#include "bsca/bsca_policy.hpp"
#include "bsca/experiment.hpp"
#include "bsca/graph_reduction.hpp"
#include "bsca/metrics.hpp"
#include "bsca/projection.hpp"
#include "bsca/routing.hpp"
#include "bsca/topology.hpp"
#include "bsca/types.hpp"
#include "bsca/utility_model.hpp"
#include "bsca/workloads.hpp"
