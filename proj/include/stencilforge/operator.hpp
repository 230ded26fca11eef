#pragma once

// The user-facing pipeline: discretize, bind spacings, optimize, schedule,
// apply loop-level transformations, and run or emit the result.

#include <optional>
#include <string>
#include <vector>

#include "stencilforge/codegen.hpp"
#include "stencilforge/dse.hpp"
#include "stencilforge/execute.hpp"
#include "stencilforge/fd.hpp"
#include "stencilforge/schedule.hpp"
#include "stencilforge/sparse.hpp"

namespace sf {

// basic: plain loops with a parallel outer loop. advanced: blocking of all
// but the innermost space loop, SIMD on the innermost, aligned data.
enum class DleLevel { basic, advanced };

inline std::string_view to_string(DleLevel level) { return level == DleLevel::basic ? "basic" : "advanced"; }

inline DleLevel parse_dle_level(std::string_view text) {
  if (text == "basic") return DleLevel::basic;
  if (text == "advanced") return DleLevel::advanced;
  throw Error(ErrorCode::InvalidArgument, "unknown dle level '" + std::string(text) + "'");
}

struct OperatorOptions {
  DseLevel dse = DseLevel::advanced;
  DleLevel dle = DleLevel::advanced;
  TimeAxis axis = TimeAxis::Forward;
  Substitutions subs;                   // values for h and s
  int block = 16;                       // advanced default block size
  std::optional<BlockingSpec> blocking;  // overrides the default when set
  std::string name = "kernel";
};

// Default advanced blocking: every stencil dimension except the innermost.
inline BlockingSpec default_blocking(const LoopNest& nest, int size) {
  BlockingSpec spec;
  for (const auto& item : nest.body) {
    if (item.kind != BodyItem::Kind::stencil || item.loops.size() < 2) continue;
    for (std::size_t l = 0; l + 1 < item.loops.size(); ++l) spec.sizes[item.loops[l].dim] = size;
  }
  return spec;
}

inline LoopNest apply_dle(LoopNest nest, DleLevel level, const std::optional<BlockingSpec>& blocking, int block) {
  if (level == DleLevel::basic) return nest;
  BlockingSpec spec = blocking ? *blocking : default_blocking(nest, block);
  return apply_simd(apply_blocking(std::move(nest), spec));
}

// Discretized equations with spacing symbols replaced by numbers.
inline std::vector<Equation> lower_equations(const std::vector<Equation>& equations, const Substitutions& subs) {
  std::vector<Equation> out;
  out.reserve(equations.size());
  for (const auto& eq : equations) {
    Expr rhs = expand_derivatives(eq.rhs);
    out.push_back({eq.lhs, subs.empty() ? rhs : substitute(rhs, subs)});
  }
  return out;
}

template <class T = double>
class Operator {
 public:
  Operator(const std::vector<Equation>& equations, std::vector<SparseOp> sparse = {}, OperatorOptions options = {})
      : options_(std::move(options)),
        sparse_(std::move(sparse)),
        optimized_(optimize(lower_equations(equations, options_.subs), options_.dse)),
        kernel_(apply_dle(schedule(optimized_, sparse_, options_.subs, options_.axis), options_.dle, options_.blocking,
                          options_.block)) {}

  RunSummary apply(DataBinding<T>& binding, const RunOptions& run = {}) { return kernel_.run(binding, run); }

  const OperatorOptions& options() const { return options_; }
  const OptimizedExprSet& optimized() const { return optimized_; }
  const LoopNest& nest() const { return kernel_.nest(); }
  FlopReport flops() const { return flop_count(optimized_, static_cast<int>(sizeof(T))); }

  std::string ccode() const {
    CodegenOptions c;
    c.name = options_.name;
    c.real = sizeof(T) == sizeof(float) ? "float" : "double";
    c.aligned = options_.dle == DleLevel::advanced;
    return emit_c(nest(), c);
  }

 private:
  OperatorOptions options_;
  std::vector<SparseOp> sparse_;
  OptimizedExprSet optimized_;
  Kernel<T> kernel_;
};

}  // namespace sf
