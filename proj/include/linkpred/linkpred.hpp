#pragma once

#include "linkpred/errors.hpp"
#include "linkpred/graph.hpp"
#include "linkpred/io.hpp"
#include "linkpred/metrics.hpp"
#include "linkpred/pipeline.hpp"
#include "linkpred/predictors.hpp"
#include "linkpred/rank_correlation.hpp"
#include "linkpred/ranking.hpp"
#include "linkpred/rng.hpp"
#include "linkpred/toy_model.hpp"
#include "linkpred/version.hpp"
