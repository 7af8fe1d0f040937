#pragma once

#include "dimapf/graph.hpp"
#include "dimapf/mapf.hpp"
#include "dimapf/solver.hpp"
#include "dimapf/reduction.hpp"
#include "dimapf/io.hpp"
#include "dimapf/probe.hpp"
#include "dimapf/equivcheck.hpp"
