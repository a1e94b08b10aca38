#pragma once

#include "spot/cli.hpp"
#include "spot/config.hpp"
#include "spot/dataset.hpp"
#include "spot/designs.hpp"
#include "spot/engine.hpp"
#include "spot/error.hpp"
#include "spot/fileio.hpp"
#include "spot/metamodels.hpp"
#include "spot/models/forest.hpp"
#include "spot/models/gp.hpp"
#include "spot/models/linear.hpp"
#include "spot/models/tree.hpp"
#include "spot/param_space.hpp"
#include "spot/process.hpp"
#include "spot/project.hpp"
#include "spot/report.hpp"
#include "spot/rng.hpp"
#include "spot/rsm.hpp"
#include "spot/tables.hpp"
#include "spot/targets.hpp"
