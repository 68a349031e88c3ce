#pragma once

// Umbrella header. json_io.hpp is left out so the core library does not
// require the JSON dependency.

#include "minexp/core.hpp"
#include "minexp/counting.hpp"
#include "minexp/embedding.hpp"
#include "minexp/expansion.hpp"
#include "minexp/generators.hpp"
#include "minexp/graph.hpp"
#include "minexp/minor_model.hpp"
