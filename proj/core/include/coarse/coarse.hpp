#pragma once

#include <coarse/action.hpp>
#include <coarse/cache.hpp>
#include <coarse/coloring.hpp>
#include <coarse/corpus.hpp>
#include <coarse/dimension.hpp>
#include <coarse/families.hpp>
#include <coarse/io.hpp>
#include <coarse/map_analysis.hpp>
#include <coarse/metric_ops.hpp>
#include <coarse/metric_space.hpp>
#include <coarse/openness.hpp>
#include <coarse/report.hpp>
#include <coarse/tower.hpp>
#include <coarse/types.hpp>
#include <coarse/verdict.hpp>
