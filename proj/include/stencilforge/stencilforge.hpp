#pragma once

#include "stencilforge/bench.hpp"
#include "stencilforge/codegen.hpp"
#include "stencilforge/demos.hpp"
#include "stencilforge/dse.hpp"
#include "stencilforge/errors.hpp"
#include "stencilforge/execute.hpp"
#include "stencilforge/expr.hpp"
#include "stencilforge/fd.hpp"
#include "stencilforge/field_io.hpp"
#include "stencilforge/grid.hpp"
#include "stencilforge/operator.hpp"
#include "stencilforge/schedule.hpp"
#include "stencilforge/simplify.hpp"
#include "stencilforge/solve.hpp"
#include "stencilforge/sparse.hpp"
