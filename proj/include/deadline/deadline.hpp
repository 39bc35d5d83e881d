#ifndef DEADLINE_DEADLINE_HPP
#define DEADLINE_DEADLINE_HPP

#include "error.hpp"
#include "pmf.hpp"
#include "approx.hpp"
#include "task_tree.hpp"
#include "network.hpp"
#include "baselines.hpp"
#include "gen.hpp"
#include "plan_io.hpp"
#include "report.hpp"
#include "bench.hpp"

#endif
