#pragma once

#include "chaosbench/align.hpp"
#include "chaosbench/characterize.hpp"
#include "chaosbench/core.hpp"
#include "chaosbench/datagen.hpp"
#include "chaosbench/forecast.hpp"
#include "chaosbench/importance.hpp"
#include "chaosbench/inference.hpp"
#include "chaosbench/integrate.hpp"
#include "chaosbench/metrics.hpp"
#include "chaosbench/parallel.hpp"
#include "chaosbench/registry.hpp"
#include "chaosbench/system_spec.hpp"
#include "chaosbench/systems.hpp"
