#pragma once

#include "bkm/chromatic.hpp"
#include "bkm/errors.hpp"
#include "bkm/graph.hpp"
#include "bkm/graph_json.hpp"
#include "bkm/hilbert.hpp"
#include "bkm/linalg.hpp"
#include "bkm/lyndon.hpp"
#include "bkm/multiplicity.hpp"
#include "bkm/numeric.hpp"
#include "bkm/polynomial.hpp"
#include "bkm/trace.hpp"
