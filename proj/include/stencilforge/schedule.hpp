#pragma once

// Lowering of optimized equation sets to an explicit loop-nest IR, loop
// blocking, and block-size auto-tuning.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "stencilforge/dse.hpp"
#include "stencilforge/errors.hpp"
#include "stencilforge/expr.hpp"
#include "stencilforge/simplify.hpp"
#include "stencilforge/sparse.hpp"

namespace sf {

enum class TimeAxis { Forward, Backward };

inline std::string_view to_string(TimeAxis axis) { return axis == TimeAxis::Forward ? "Forward" : "Backward"; }

struct Loop {
  std::string dim;
  int lo = 0;
  int hi = 0;      // exclusive
  int block = 0;   // 0 = unblocked
  bool parallel = false;
  bool simd = false;

  int extent() const { return std::max(0, hi - lo); }
};

struct BodyItem {
  enum class Kind { stencil, hoisted, sparse };
  Kind kind = Kind::stencil;
  std::string label;
  std::vector<Loop> loops;           // outermost first; empty for scalar items
  std::vector<Equation> equations;   // evaluated in order at every point
  bool independent = true;           // points may run in any order
};

struct LoopNest {
  bool time_loop = false;
  TimeAxis axis = TimeAxis::Forward;
  std::vector<BodyItem> prologue;   // hoisted precomputations
  std::vector<BodyItem> body;       // once per time step (or once if no time loop)
  std::vector<FunctionRef> functions;  // every array, sorted by name
  std::vector<FunctionRef> scratch;    // arrays owned by the kernel
  std::vector<std::string> scalars;    // scalar inputs bound at run time
  std::vector<std::string> temporaries;

  const FunctionRef& function(const std::string& name) const {
    for (const auto& f : functions) {
      if (f->name == name) return f;
    }
    throw Error(ErrorCode::InvalidArgument, "kernel has no array '" + name + "'");
  }
};

namespace detail {

inline void collect_accesses(const Expr& e, std::vector<const Access*>& out) {
  visit_preorder(e, [&](const Expr& n) {
    if (n.is<Access>()) out.push_back(&n.as<Access>());
  });
}

inline Expr bind_spacing(const Expr& e, const Substitutions& subs) {
  bool needed = false;
  visit_preorder(e, [&](const Expr& n) { needed = needed || (n.is<Symbol>() && subs.count(n.as<Symbol>().name)); });
  return needed ? substitute(e, subs) : e;
}

// Loop nest for equations whose targets share the relative dimensions of
// the first target.
inline BodyItem lower_cluster(const std::vector<Equation>& equations, BodyItem::Kind kind, std::string label) {
  BodyItem item;
  item.kind = kind;
  item.label = std::move(label);
  item.equations = equations;
  const Access* target = nullptr;
  for (const auto& eq : equations) {
    if (eq.lhs.is<Access>()) {
      target = &eq.lhs.as<Access>();
      break;
    }
  }
  if (target == nullptr) return item;

  const auto& decl = *target->function;
  std::size_t first = decl.time_varying() ? 1 : 0;
  std::map<std::string, int> extents;
  for (std::size_t i = first; i < target->indices.size(); ++i) {
    if (const auto* r = std::get_if<Relative>(&target->indices[i])) {
      item.loops.push_back({r->dim, 0, 0});
      extents[r->dim] = decl.shape[i - first];
    }
  }
  std::map<std::string, int> left;
  std::map<std::string, int> right;
  std::vector<const Access*> accesses;
  for (const auto& eq : equations) {
    collect_accesses(eq.lhs, accesses);
    collect_accesses(eq.rhs, accesses);
  }
  for (const Access* a : accesses) {
    const auto& f = *a->function;
    std::size_t base = f.time_varying() ? 1 : 0;
    for (std::size_t i = base; i < a->indices.size(); ++i) {
      int extent = f.shape[i - base];
      if (const auto* abs = std::get_if<Absolute>(&a->indices[i])) {
        if (abs->value < 0 || abs->value >= extent) {
          throw Error(ErrorCode::OutOfDomain, a->name() + " index " + std::to_string(abs->value) + " outside [0, " +
                                                  std::to_string(extent) + ")");
        }
        continue;
      }
      const auto& r = std::get<Relative>(a->indices[i]);
      auto it = extents.find(r.dim);
      if (it == extents.end()) {
        throw Error(ErrorCode::InvalidArgument,
                    a->name() + " is indexed by '" + r.dim + "', which the target " + decl.name + " does not loop over");
      }
      if (extent != it->second) {
        throw Error(ErrorCode::ShapeMismatch, a->name() + " and " + decl.name + " differ in extent along " + r.dim);
      }
      if (f.time != TimeStorage::full && std::abs(r.offset) > f.halo()) {
        throw Error(ErrorCode::HaloExceeded, "offset " + std::to_string(r.offset) + " on " + a->name() +
                                                 " exceeds halo " + std::to_string(f.halo()));
      }
      left[r.dim] = std::max(left[r.dim], -r.offset);
      right[r.dim] = std::max(right[r.dim], r.offset);
    }
    if (f.time == TimeStorage::cyclic) {
      int offset = std::get<Relative>(a->indices.front()).offset;
      if (std::abs(offset) > f.time_order) {
        throw Error(ErrorCode::HaloExceeded, "time offset " + std::to_string(offset) + " on " + a->name() +
                                                 " exceeds time_order " + std::to_string(f.time_order));
      }
    }
  }
  for (auto& loop : item.loops) {
    loop.lo = left[loop.dim];
    loop.hi = extents[loop.dim] - right[loop.dim];
  }

  // Reading a written array anywhere but at the written point makes the
  // iteration order observable.
  for (const auto& eq : equations) {
    if (!eq.lhs.is<Access>()) continue;
    std::vector<const Access*> reads;
    for (const auto& other : equations) collect_accesses(other.rhs, reads);
    for (const Access* r : reads) {
      if (r->name() == eq.lhs.as<Access>().name() && !(access(r->function, r->indices) == eq.lhs)) {
        bool same_level = !r->function->time_varying() || r->indices.front() == eq.lhs.as<Access>().indices.front();
        if (same_level) item.independent = false;
      }
    }
  }
  if (!item.loops.empty()) item.loops.front().parallel = item.independent;
  return item;
}

inline void check_bound(const Expr& e) {
  visit_preorder(e, [](const Expr& n) {
    if (!n.is<Symbol>()) return;
    const auto& name = n.as<Symbol>().name;
    if (name == kSpaceSpacing || name == kTimeSpacing) {
      throw Error(ErrorCode::UnboundSpacing, "spacing symbol '" + name + "' has no numeric value");
    }
  });
}

}  // namespace detail

// Lowers an optimized set plus sparse operations to a loop nest. Spacing
// symbols are replaced from `subs`; any left over raise UnboundSpacing.
inline LoopNest schedule(const OptimizedExprSet& set, const std::vector<SparseOp>& sparse, const Substitutions& subs,
                         TimeAxis axis = TimeAxis::Forward) {
  LoopNest nest;
  nest.axis = axis;
  auto bind = [&](std::vector<Equation> eqs) {
    for (auto& eq : eqs) {
      eq.rhs = detail::bind_spacing(eq.rhs, subs);
      detail::check_bound(eq.rhs);
    }
    return eqs;
  };

  for (const auto& eq : set.hoisted) {
    nest.prologue.push_back(detail::lower_cluster(bind({eq}), BodyItem::Kind::hoisted, "hoisted"));
    if (eq.lhs.is<Symbol>()) nest.temporaries.push_back(eq.lhs.as<Symbol>().name);
  }
  for (const auto& c : set.clusters) {
    std::string label;
    for (const auto& eq : c.equations) {
      if (eq.lhs.is<Symbol>()) nest.temporaries.push_back(eq.lhs.as<Symbol>().name);
      if (eq.lhs.is<Access>()) label = "update " + eq.lhs.as<Access>().name();
    }
    nest.body.push_back(detail::lower_cluster(bind(c.equations), BodyItem::Kind::stencil, label));
  }
  // Injections run before interpolations within a step.
  for (auto kind : {SparseOp::Kind::inject, SparseOp::Kind::interpolate}) {
    for (const auto& op : sparse) {
      if (op.kind != kind) continue;
      BodyItem item;
      item.kind = BodyItem::Kind::sparse;
      item.label = op.label;
      item.equations = bind(op.equations);
      item.independent = false;
      nest.body.push_back(std::move(item));
    }
  }

  std::map<std::string, FunctionRef> functions;
  std::set<std::string> scalars;
  std::set<std::string> temps(nest.temporaries.begin(), nest.temporaries.end());
  for (const auto& f : set.scratch) nest.scratch.push_back(f);
  for (const auto* items : {&nest.prologue, &nest.body}) {
    for (const auto& item : *items) {
      for (const auto& eq : item.equations) {
        for (const Expr* side : {&eq.lhs, &eq.rhs}) {
          visit_preorder(*side, [&](const Expr& n) {
            if (n.is<Access>()) {
              const auto& decl = n.as<Access>().function;
              auto [it, inserted] = functions.emplace(decl->name, decl);
              if (!inserted && (it->second->shape != decl->shape || it->second->time != decl->time)) {
                throw Error(ErrorCode::ShapeMismatch, "two different arrays are named '" + decl->name + "'");
              }
              nest.time_loop = nest.time_loop || decl->time_varying();
            } else if (n.is<Symbol>() && !temps.count(n.as<Symbol>().name)) {
              scalars.insert(n.as<Symbol>().name);
            }
          });
        }
      }
    }
  }
  for (const auto& [name, f] : functions) nest.functions.push_back(f);
  nest.scalars.assign(scalars.begin(), scalars.end());
  return nest;
}

// Per-dimension block sizes; dimensions not listed stay unblocked.
struct BlockingSpec {
  std::map<std::string, int> sizes;

  static BlockingSpec uniform(const std::vector<std::string>& dims, int size) {
    BlockingSpec spec;
    for (const auto& d : dims) spec.sizes[d] = size;
    return spec;
  }

  bool unblocked() const {
    return std::all_of(sizes.begin(), sizes.end(), [](const auto& kv) { return kv.second <= 0; });
  }

  std::string to_string() const {
    if (unblocked()) return "unblocked";
    std::string out;
    for (const auto& [dim, size] : sizes) {
      if (!out.empty()) out += ",";
      out += dim + "=" + std::to_string(size);
    }
    return out;
  }

  bool operator==(const BlockingSpec&) const = default;
};

// Splits stencil loops (in items with two or more loops) into blocks. A
// block covering the whole range degenerates to an unblocked loop.
inline LoopNest apply_blocking(LoopNest nest, const BlockingSpec& spec) {
  for (auto& item : nest.body) {
    if (item.kind != BodyItem::Kind::stencil || item.loops.size() < 2) continue;
    for (auto& loop : item.loops) {
      auto it = spec.sizes.find(loop.dim);
      int size = it == spec.sizes.end() ? 0 : it->second;
      loop.block = size > 0 && size < loop.extent() ? size : 0;
    }
  }
  return nest;
}

// Marks innermost stencil loops of independent items for vectorization.
inline LoopNest apply_simd(LoopNest nest) {
  for (auto* items : {&nest.prologue, &nest.body}) {
    for (auto& item : *items) {
      if (!item.loops.empty() && item.independent) item.loops.back().simd = true;
    }
  }
  return nest;
}

inline BlockingSpec blocking_of(const LoopNest& nest) {
  BlockingSpec spec;
  for (const auto& item : nest.body) {
    for (const auto& loop : item.loops) {
      if (loop.block > 0) spec.sizes[loop.dim] = loop.block;
    }
  }
  return spec;
}

// ---------------------------------------------------------------------------
// Iteration order.

struct Range {
  int lo = 0;
  int hi = 0;
};

inline std::vector<Range> tiles(const Loop& loop) {
  std::vector<Range> out;
  if (loop.extent() == 0) return out;
  if (loop.block <= 0) return {{loop.lo, loop.hi}};
  for (int b = loop.lo; b < loop.hi; b += loop.block) out.push_back({b, std::min(b + loop.block, loop.hi)});
  return out;
}

// Units of parallel work: blocks of the outermost loop, or single
// iterations of it when unblocked. Scalar items have a single chunk.
inline std::vector<Range> chunks(const BodyItem& item) {
  if (item.loops.empty()) return {{0, 1}};
  const Loop& outer = item.loops.front();
  if (item.loops.size() == 1 || outer.block > 0) return tiles(outer);
  std::vector<Range> out;
  for (int i = outer.lo; i < outer.hi; ++i) out.push_back({i, i + 1});
  return out;
}

// Visits the points of one chunk as contiguous segments of the innermost
// loop: fn(index, lo, hi) where index holds the outer loop indices (the
// innermost entry is unspecified).
template <class Fn>
void for_each_segment(const BodyItem& item, const Range& chunk, Fn&& fn) {
  const std::size_t n = item.loops.size();
  std::vector<int> index(n, 0);
  if (n == 0) {
    fn(index, 0, 1);
    return;
  }
  if (n == 1) {
    fn(index, chunk.lo, chunk.hi);
    return;
  }
  std::vector<std::vector<Range>> inner_tiles(n);
  for (std::size_t d = 1; d < n; ++d) inner_tiles[d] = tiles(item.loops[d]);
  std::vector<Range> tile(n);
  tile[0] = chunk;
  auto points = [&](std::size_t d, auto&& self) -> void {
    if (d + 1 == n) {
      fn(index, tile[d].lo, tile[d].hi);
      return;
    }
    for (int i = tile[d].lo; i < tile[d].hi; ++i) {
      index[d] = i;
      self(d + 1, self);
    }
  };
  auto blocks = [&](std::size_t d, auto&& self) -> void {
    if (d == n) {
      points(0, points);
      return;
    }
    for (const auto& r : inner_tiles[d]) {
      tile[d] = r;
      self(d + 1, self);
    }
  };
  blocks(1, blocks);
}

// ---------------------------------------------------------------------------
// Auto-tuning.

inline std::vector<BlockingSpec> default_block_candidates(const LoopNest& nest) {
  std::vector<std::string> dims;
  std::map<std::string, int> extent;
  for (const auto& item : nest.body) {
    if (item.kind != BodyItem::Kind::stencil || item.loops.size() < 2) continue;
    for (const auto& loop : item.loops) {
      if (!extent.count(loop.dim)) dims.push_back(loop.dim);
      extent[loop.dim] = std::max(extent[loop.dim], loop.extent());
    }
  }
  std::vector<BlockingSpec> out{BlockingSpec{}};
  std::vector<BlockingSpec> effective{blocking_of(apply_blocking(nest, BlockingSpec{}))};
  for (int size : {8, 16, 32, 64}) {
    BlockingSpec spec;
    for (const auto& d : dims) spec.sizes[d] = std::min(size, extent[d]);
    BlockingSpec applied = blocking_of(apply_blocking(nest, spec));
    if (std::find(effective.begin(), effective.end(), applied) != effective.end()) continue;
    effective.push_back(applied);
    out.push_back(spec);
  }
  return out;
}

struct TuneResult {
  BlockingSpec best;
  std::vector<std::pair<BlockingSpec, double>> medians;  // seconds per candidate
};

// Times each candidate with `run` (one warm-up, then `repeats` timed calls)
// and returns the one with the smallest median.
inline TuneResult autotune_blocks(const LoopNest& nest, const std::function<double(const LoopNest&)>& run,
                                  std::vector<BlockingSpec> candidates = {}, int repeats = 3) {
  if (candidates.empty()) candidates = default_block_candidates(nest);
  TuneResult result;
  double best = 0.0;
  for (const auto& spec : candidates) {
    LoopNest blocked = apply_blocking(nest, spec);
    run(blocked);
    std::vector<double> times;
    for (int r = 0; r < std::max(1, repeats); ++r) times.push_back(run(blocked));
    std::sort(times.begin(), times.end());
    double median = times[times.size() / 2];
    result.medians.emplace_back(spec, median);
    if (result.medians.size() == 1 || median < best) {
      best = median;
      result.best = spec;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Printing.

inline std::string to_string(const LoopNest& nest) {
  std::ostringstream out;
  std::string indent;
  auto line = [&](const std::string& text) { out << indent << text << '\n'; };
  auto print_item = [&](const BodyItem& item) {
    std::string saved = indent;
    if (!item.label.empty()) line("# " + item.label);
    for (const auto& loop : item.loops) {
      if (loop.block > 0) {
        line("for " + loop.dim + "_blk in [" + std::to_string(loop.lo) + ", " + std::to_string(loop.hi) + ") step " +
             std::to_string(loop.block) + (loop.parallel ? " parallel" : ""));
        indent += "  ";
      }
    }
    for (const auto& loop : item.loops) {
      std::string range = loop.block > 0
                              ? "[" + loop.dim + "_blk, min(" + loop.dim + "_blk + " + std::to_string(loop.block) +
                                    ", " + std::to_string(loop.hi) + "))"
                              : "[" + std::to_string(loop.lo) + ", " + std::to_string(loop.hi) + ")";
      std::string flags;
      if (loop.parallel && loop.block == 0) flags += " parallel";
      if (loop.simd) flags += " simd";
      line("for " + loop.dim + " in " + range + flags);
      indent += "  ";
    }
    for (const auto& eq : item.equations) line(to_string(eq.lhs) + " = " + to_string(eq.rhs));
    indent = saved;
  };
  for (const auto& item : nest.prologue) print_item(item);
  if (nest.time_loop) {
    std::string moduli;
    for (const auto& f : nest.functions) {
      if (f->time == TimeStorage::cyclic) moduli += (moduli.empty() ? "" : ", ") + f->name + " % " + std::to_string(f->buffers());
    }
    line("for t in time range " + std::string(to_string(nest.axis)) + (moduli.empty() ? "" : " (" + moduli + ")"));
    indent += "  ";
  }
  for (const auto& item : nest.body) print_item(item);
  return out.str();
}

inline std::ostream& operator<<(std::ostream& out, const LoopNest& nest) { return out << to_string(nest); }

}  // namespace sf
