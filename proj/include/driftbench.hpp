#pragma once

#include "driftbench/corpus.hpp"
#include "driftbench/count_model.hpp"
#include "driftbench/digest.hpp"
#include "driftbench/error.hpp"
#include "driftbench/graph.hpp"
#include "driftbench/linalg.hpp"
#include "driftbench/manifest.hpp"
#include "driftbench/parallel.hpp"
#include "driftbench/random.hpp"
#include "driftbench/space.hpp"
#include "driftbench/stability.hpp"
#include "driftbench/synthetic.hpp"
#include "driftbench/trainer.hpp"
#include "driftbench/utf8.hpp"
#include "driftbench/vector_space.hpp"
