#pragma once

#include "wsc/bench.hpp"
#include "wsc/catalog.hpp"
#include "wsc/count_result.hpp"
#include "wsc/counting.hpp"
#include "wsc/engine.hpp"
#include "wsc/error.hpp"
#include "wsc/formulas.hpp"
#include "wsc/graph.hpp"
#include "wsc/io.hpp"
#include "wsc/kernels.hpp"
#include "wsc/matrix.hpp"
#include "wsc/oracle.hpp"
#include "wsc/partition.hpp"
#include "wsc/pattern.hpp"
#include "wsc/slice.hpp"
