#pragma once

#include "itsp/backend.hpp"
#include "itsp/clustering.hpp"
#include "itsp/command_backend.hpp"
#include "itsp/edge_index.hpp"
#include "itsp/engine.hpp"
#include "itsp/errors.hpp"
#include "itsp/generate.hpp"
#include "itsp/heuristics.hpp"
#include "itsp/instance.hpp"
#include "itsp/lp_format.hpp"
#include "itsp/metrics.hpp"
#include "itsp/model.hpp"
#include "itsp/reference_backend.hpp"
#include "itsp/report_io.hpp"
#include "itsp/rng.hpp"
#include "itsp/subtours.hpp"
#include "itsp/tsplib.hpp"
