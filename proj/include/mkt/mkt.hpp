#pragma once

// Umbrella header: near-stable common independent sets of two weakly
// ordered matroids, via deferred acceptance on tie-free parallel-copy
// extensions, with verifiers and exhaustive reference solvers.

#include "element_set.hpp"   // IWYU pragma: export
#include "errors.hpp"        // IWYU pragma: export
#include "extend.hpp"        // IWYU pragma: export
#include "generate.hpp"      // IWYU pragma: export
#include "io.hpp"            // IWYU pragma: export
#include "kernel.hpp"        // IWYU pragma: export
#include "matroid.hpp"       // IWYU pragma: export
#include "ordered.hpp"       // IWYU pragma: export
#include "rational.hpp"      // IWYU pragma: export
#include "stability.hpp"     // IWYU pragma: export
