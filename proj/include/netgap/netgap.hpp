#pragma once

/// @file netgap.hpp
/// @brief Umbrella header.

#include "netgap/field.hpp"
#include "netgap/matrix.hpp"
#include "netgap/rank_metric.hpp"
#include "netgap/subspace.hpp"
#include "netgap/network.hpp"
#include "netgap/coding.hpp"
#include "netgap/gap.hpp"
#include "netgap/io.hpp"
#include "netgap/experiment.hpp"
