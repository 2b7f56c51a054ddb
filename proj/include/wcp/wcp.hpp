#pragma once

// Weak conjunctive predicate detection over vector-clock traces.

#include "wcp/bench.hpp"
#include "wcp/jls_detect.hpp"
#include "wcp/metrics.hpp"
#include "wcp/model.hpp"
#include "wcp/opt_detect.hpp"
#include "wcp/oracle.hpp"
#include "wcp/parallel.hpp"
#include "wcp/reachability.hpp"
#include "wcp/rejection_graph.hpp"
#include "wcp/trace_io.hpp"
