#pragma once

// Kernel execution. A LoopNest is compiled into flat instruction tapes with
// precomputed linear offsets; a tree-walking interpreter over the same loop
// order serves as the reference (and bounds-checked) path. Both evaluate
// operations in the same order, so their results agree bit for bit.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "stencilforge/errors.hpp"
#include "stencilforge/expr.hpp"
#include "stencilforge/grid.hpp"
#include "stencilforge/schedule.hpp"
#include "stencilforge/simplify.hpp"
#include "stencilforge/sparse.hpp"

namespace sf {

// Worker count: STENCILFORGE_THREADS if set and positive, else the OpenMP
// default.
inline int configured_threads() {
  if (const char* env = std::getenv("STENCILFORGE_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

template <class T>
struct DataBinding {
  std::map<std::string, std::span<T>> arrays;
  std::map<std::string, double> scalars;
  int time_start = 0;
  int time_end = 0;  // exclusive

  DataBinding& bind(const std::string& name, std::span<T> data) {
    arrays[name] = data;
    return *this;
  }
  DataBinding& bind(GridFunction<T>& f) { return bind(f.name(), f.data()); }
  DataBinding& bind(const std::string& name, GridFunction<T>& f) { return bind(name, f.data()); }
  DataBinding& bind(SparsePointSet<T>& pts) { return bind(pts.name(), pts.data()); }
  DataBinding& set(const std::string& name, double value) {
    scalars[name] = value;
    return *this;
  }
  DataBinding& time(int start, int end) {
    time_start = start;
    time_end = end;
    return *this;
  }
};

enum class ExecMode { tape, tree };

struct RunOptions {
  ExecMode mode = ExecMode::tape;
  bool parallel = true;
  bool check_bounds = false;               // tree mode only
  std::function<void(int)> on_time_step;   // called before each step
};

struct RunSummary {
  double seconds = 0.0;
  int steps = 0;
};

namespace tape {

enum class Op : std::uint8_t { constant, scalar, temp, grid, add, mul, div, pow };

struct Instr {
  Op op;
  int arg = 0;       // scalar / temp / slot index, or exponent
  double value = 0;  // constant
};

struct Program {
  std::vector<Instr> code;
  int depth = 0;
  // Exactly one target is set.
  int store_temp = -1;
  int store_slot = -1;
};

// A grid access: element at base(array, time level) + delta + sum over loops
// of index * stride.
struct Slot {
  int array = 0;
  int time_offset = 0;
  std::ptrdiff_t delta = 0;
  std::vector<std::ptrdiff_t> stride;  // per loop of the item
};

struct CompiledItem {
  const BodyItem* item = nullptr;
  std::vector<Slot> slots;
  std::vector<Program> programs;
  int temps = 0;
  int depth = 0;
};

}  // namespace tape

template <class T>
class Kernel {
 public:
  static constexpr int kDefaultStackBound = 64;

  explicit Kernel(LoopNest nest, int stack_bound = kDefaultStackBound)
      : nest_(std::move(nest)), stack_bound_(stack_bound) {
    for (std::size_t i = 0; i < nest_.functions.size(); ++i) array_index_[nest_.functions[i]->name] = static_cast<int>(i);
    for (const auto& name : nest_.scalars) scalar_index_.emplace(name, static_cast<int>(scalar_index_.size()));
    for (const auto& item : nest_.prologue) {
      for (const auto& eq : item.equations) {
        if (eq.lhs.is<Symbol>()) scalar_index_.emplace(eq.lhs.as<Symbol>().name, static_cast<int>(scalar_index_.size()));
      }
    }
    for (const auto& item : nest_.prologue) prologue_.push_back(compile(item));
    for (const auto& item : nest_.body) body_.push_back(compile(item));
    for (const auto& f : nest_.scratch) scratch_[f->name].assign(f->points(), T(0));
  }

  // Compiled items point into nest_.
  Kernel(const Kernel&) = delete;
  Kernel& operator=(const Kernel&) = delete;
  Kernel(Kernel&&) = default;
  Kernel& operator=(Kernel&&) = default;

  const LoopNest& nest() const { return nest_; }

  RunSummary run(DataBinding<T>& binding, const RunOptions& options = {}) {
    auto started = std::chrono::steady_clock::now();
    Frame frame = bind(binding);
    for (const auto& item : prologue_) execute(item, frame, 0, options);
    RunSummary summary;
    if (nest_.time_loop) {
      int start = binding.time_start;
      int end = binding.time_end;
      check_time_range(frame, start, end);
      for (int k = 0; k < end - start; ++k) {
        int t = nest_.axis == TimeAxis::Forward ? start + k : end - 1 - k;
        if (options.on_time_step) options.on_time_step(t);
        for (const auto& item : body_) execute(item, frame, t, options);
        ++summary.steps;
      }
    } else {
      for (const auto& item : body_) execute(item, frame, 0, options);
      summary.steps = 1;
    }
    summary.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return summary;
  }

  // Scratch buffers written by the hoisted precomputations.
  std::span<const T> scratch(const std::string& name) const { return scratch_.at(name); }

  const std::vector<tape::CompiledItem>& compiled_body() const { return body_; }

 private:
  struct Frame {
    std::vector<T*> arrays;
    std::vector<std::size_t> sizes;
    std::vector<T> scalars;
  };

  static std::vector<std::ptrdiff_t> strides_of(const FunctionDecl& f) {
    std::vector<std::ptrdiff_t> out(f.shape.size(), 1);
    for (std::size_t d = f.shape.size(); d-- > 1;) out[d - 1] = out[d] * f.shape[d];
    return out;
  }

  tape::CompiledItem compile(const BodyItem& item) const {
    tape::CompiledItem out;
    out.item = &item;
    std::map<Expr, int, TermLess> slot_ids;
    std::map<std::string, int> temp_ids;
    auto slot_of = [&](const Expr& e) {
      auto it = slot_ids.find(e);
      if (it != slot_ids.end()) return it->second;
      const auto& a = e.as<Access>();
      const auto& f = *a.function;
      tape::Slot slot;
      slot.array = array_index_.at(f.name);
      slot.stride.assign(item.loops.size(), 0);
      auto strides = strides_of(f);
      std::size_t first = f.time_varying() ? 1 : 0;
      if (first) slot.time_offset = std::get<Relative>(a.indices.front()).offset;
      for (std::size_t i = first; i < a.indices.size(); ++i) {
        std::ptrdiff_t stride = strides[i - first];
        if (const auto* abs = std::get_if<Absolute>(&a.indices[i])) {
          slot.delta += abs->value * stride;
          continue;
        }
        const auto& r = std::get<Relative>(a.indices[i]);
        slot.delta += r.offset * stride;
        for (std::size_t l = 0; l < item.loops.size(); ++l) {
          if (item.loops[l].dim == r.dim) slot.stride[l] = stride;
        }
      }
      int id = static_cast<int>(out.slots.size());
      out.slots.push_back(std::move(slot));
      slot_ids.emplace(e, id);
      return id;
    };
    for (const auto& eq : item.equations) {
      tape::Program program;
      int depth = 0;
      auto push = [&](tape::Instr instr, int delta) {
        program.code.push_back(instr);
        depth += delta;
        program.depth = std::max(program.depth, depth);
      };
      auto emit = [&](const Expr& e, auto&& self) -> void {
        std::visit(
            [&](const auto& v) {
              using N = std::decay_t<decltype(v)>;
              if constexpr (std::is_same_v<N, Const>) {
                push({tape::Op::constant, 0, v.value}, 1);
              } else if constexpr (std::is_same_v<N, Symbol>) {
                auto t = temp_ids.find(v.name);
                if (t != temp_ids.end()) {
                  push({tape::Op::temp, t->second, 0}, 1);
                } else {
                  push({tape::Op::scalar, scalar_index_.at(v.name), 0}, 1);
                }
              } else if constexpr (std::is_same_v<N, Access>) {
                push({tape::Op::grid, slot_of(e), 0}, 1);
              } else if constexpr (std::is_same_v<N, Derivative>) {
                throw Error(ErrorCode::InvalidArgument, "cannot compile an undiscretized derivative");
              } else if constexpr (std::is_same_v<N, Add> || std::is_same_v<N, Mul>) {
                self(v.operands.front(), self);
                for (std::size_t i = 1; i < v.operands.size(); ++i) {
                  self(v.operands[i], self);
                  push({std::is_same_v<N, Add> ? tape::Op::add : tape::Op::mul, 0, 0}, -1);
                }
              } else if constexpr (std::is_same_v<N, Div>) {
                self(v.numerator, self);
                self(v.denominator, self);
                push({tape::Op::div, 0, 0}, -1);
              } else {
                if (v.exponent == 0) {
                  push({tape::Op::constant, 0, 1.0}, 1);
                } else {
                  self(v.base, self);
                  if (v.exponent > 1) push({tape::Op::pow, v.exponent, 0}, 0);
                }
              }
            },
            e.node().data);
      };
      emit(eq.rhs, emit);
      if (program.depth > stack_bound_) {
        throw Error(ErrorCode::StackOverflowBound, "expression for " + to_string(eq.lhs) + " needs stack depth " +
                                                       std::to_string(program.depth) + " > bound " +
                                                       std::to_string(stack_bound_));
      }
      if (eq.lhs.is<Symbol>()) {
        const auto& name = eq.lhs.as<Symbol>().name;
        if (scalar_index_.count(name) && item.kind == BodyItem::Kind::hoisted) {
          program.store_temp = -2 - scalar_index_.at(name);  // scalar result of a hoisted item
        } else {
          auto [it, inserted] = temp_ids.emplace(name, static_cast<int>(temp_ids.size()));
          program.store_temp = it->second;
        }
      } else {
        program.store_slot = slot_of(eq.lhs);
      }
      out.depth = std::max(out.depth, program.depth);
      out.programs.push_back(std::move(program));
    }
    out.temps = static_cast<int>(temp_ids.size());
    return out;
  }

  Frame bind(DataBinding<T>& binding) {
    Frame frame;
    for (const auto& f : nest_.functions) {
      auto s = scratch_.find(f->name);
      if (s != scratch_.end()) {
        frame.arrays.push_back(s->second.data());
        frame.sizes.push_back(s->second.size());
        continue;
      }
      auto it = binding.arrays.find(f->name);
      if (it == binding.arrays.end()) throw Error(ErrorCode::MissingBinding, "no data bound for '" + f->name + "'");
      std::size_t points = f->points();
      std::size_t size = it->second.size();
      bool ok = f->time == TimeStorage::full ? size % points == 0 && size > 0
                                             : size == points * static_cast<std::size_t>(f->buffers());
      if (!ok) {
        throw Error(ErrorCode::ShapeMismatch, "'" + f->name + "' has " + std::to_string(size) + " elements, expected " +
                                                  (f->time == TimeStorage::full ? "a multiple of " : "") +
                                                  std::to_string(points * f->buffers()));
      }
      frame.arrays.push_back(it->second.data());
      frame.sizes.push_back(size);
    }
    frame.scalars.assign(scalar_index_.size(), T(0));
    for (const auto& name : nest_.scalars) {
      auto it = binding.scalars.find(name);
      if (it == binding.scalars.end()) throw Error(ErrorCode::MissingBinding, "no value bound for scalar '" + name + "'");
      frame.scalars[scalar_index_.at(name)] = static_cast<T>(it->second);
    }
    return frame;
  }

  // Full-storage arrays (sparse values) must hold every row the loop touches.
  void check_time_range(const Frame& frame, int start, int end) const {
    if (end < start) throw Error(ErrorCode::InvalidArgument, "time range end precedes start");
    if (end == start) return;
    for (const auto& item : body_) {
      for (const auto& slot : item.slots) {
        const auto& f = *nest_.functions[slot.array];
        if (f.time != TimeStorage::full) continue;
        std::size_t rows = frame.sizes[slot.array] / f.points();
        if (start + slot.time_offset < 0 || end - 1 + slot.time_offset >= static_cast<int>(rows)) {
          throw Error(ErrorCode::ShapeMismatch, "'" + f.name + "' has " + std::to_string(rows) +
                                                    " time rows; the run needs rows " +
                                                    std::to_string(start + slot.time_offset) + " to " +
                                                    std::to_string(end - 1 + slot.time_offset));
        }
      }
    }
  }

  std::ptrdiff_t level_offset(const FunctionDecl& f, int t, int offset) const {
    switch (f.time) {
      case TimeStorage::none: return 0;
      case TimeStorage::cyclic: return static_cast<std::ptrdiff_t>(positive_mod(t + offset, f.buffers())) * f.points();
      case TimeStorage::full: return static_cast<std::ptrdiff_t>(t + offset) * f.points();
    }
    return 0;
  }

  // Per-thread evaluation state.
  struct Workspace {
    std::vector<T> stack;
    std::vector<T> temps;
    std::vector<T*> rows;
    std::vector<T> lanes;       // row mode: depth x width
    std::vector<T> temp_lanes;  // row mode: temps x width
  };
  static constexpr int kLanes = 128;

  void execute(const tape::CompiledItem& ci, Frame& frame, int t, const RunOptions& options) {
    const BodyItem& item = *ci.item;
    auto ranges = chunks(item);
    bool row_mode = options.mode == ExecMode::tape && !item.loops.empty() && item.loops.back().simd && item.independent;
    auto work = [&](Workspace& ws, const Range& chunk) {
      if (options.mode == ExecMode::tree) {
        run_tree(ci, frame, t, chunk, options.check_bounds);
      } else if (row_mode) {
        run_rows(ci, frame, t, chunk, ws);
      } else {
        run_points(ci, frame, t, chunk, ws);
      }
    };
    bool parallel = options.parallel && options.mode == ExecMode::tape && !item.loops.empty() &&
                    item.loops.front().parallel && ranges.size() > 1;
#ifdef _OPENMP
    if (parallel) {
      const long n = static_cast<long>(ranges.size());
#pragma omp parallel num_threads(configured_threads())
      {
        Workspace ws;
#pragma omp for schedule(static)
        for (long c = 0; c < n; ++c) work(ws, ranges[c]);
      }
      return;
    }
#else
    (void)parallel;
#endif
    Workspace ws;
    for (const auto& chunk : ranges) work(ws, chunk);
  }

  void row_pointers(const tape::CompiledItem& ci, const Frame& frame, int t, const std::vector<int>& index,
                    std::vector<T*>& rows) const {
    rows.resize(ci.slots.size());
    const std::size_t n = ci.item->loops.size();
    for (std::size_t s = 0; s < ci.slots.size(); ++s) {
      const auto& slot = ci.slots[s];
      const auto& f = *nest_.functions[slot.array];
      std::ptrdiff_t offset = level_offset(f, t, slot.time_offset) + slot.delta;
      for (std::size_t l = 0; l + 1 < n; ++l) offset += index[l] * slot.stride[l];
      rows[s] = frame.arrays[slot.array] + offset;
    }
  }

  void run_points(const tape::CompiledItem& ci, Frame& frame, int t, const Range& chunk, Workspace& ws) const {
    ws.stack.resize(static_cast<std::size_t>(std::max(ci.depth, 1)));
    ws.temps.resize(static_cast<std::size_t>(ci.temps));
    const std::size_t n = ci.item->loops.size();
    for_each_segment(*ci.item, chunk, [&](const std::vector<int>& index, int lo, int hi) {
      row_pointers(ci, frame, t, index, ws.rows);
      for (int i = lo; i < hi; ++i) {
        for (const auto& program : ci.programs) {
          T* sp = ws.stack.data();
          for (const auto& in : program.code) {
            switch (in.op) {
              case tape::Op::constant: *sp++ = static_cast<T>(in.value); break;
              case tape::Op::scalar: *sp++ = frame.scalars[in.arg]; break;
              case tape::Op::temp: *sp++ = ws.temps[in.arg]; break;
              case tape::Op::grid: {
                std::ptrdiff_t inner = n > 0 ? ci.slots[in.arg].stride[n - 1] * i : 0;
                *sp++ = ws.rows[in.arg][inner];
                break;
              }
              case tape::Op::add: --sp; sp[-1] = sp[-1] + sp[0]; break;
              case tape::Op::mul: --sp; sp[-1] = sp[-1] * sp[0]; break;
              case tape::Op::div: --sp; sp[-1] = sp[-1] / sp[0]; break;
              case tape::Op::pow: {
                T base = sp[-1];
                T acc = base;
                for (int k = 1; k < in.arg; ++k) acc = acc * base;
                sp[-1] = acc;
                break;
              }
            }
          }
          T value = sp[-1];
          if (program.store_slot >= 0) {
            std::ptrdiff_t inner = n > 0 ? ci.slots[program.store_slot].stride[n - 1] * i : 0;
            ws.rows[program.store_slot][inner] = value;
          } else if (program.store_temp >= 0) {
            ws.temps[program.store_temp] = value;
          } else {
            frame.scalars[-2 - program.store_temp] = value;
          }
        }
      }
    });
  }

  // Evaluates each program over up to kLanes consecutive points at once.
  void run_rows(const tape::CompiledItem& ci, Frame& frame, int t, const Range& chunk, Workspace& ws) const {
    const std::size_t depth = static_cast<std::size_t>(std::max(ci.depth, 1));
    ws.lanes.resize(depth * kLanes);
    ws.temp_lanes.resize(static_cast<std::size_t>(std::max(ci.temps, 1)) * kLanes);
    const std::size_t n = ci.item->loops.size();
    for_each_segment(*ci.item, chunk, [&](const std::vector<int>& index, int lo, int hi) {
      row_pointers(ci, frame, t, index, ws.rows);
      for (int start = lo; start < hi; start += kLanes) {
        const int width = std::min(kLanes, hi - start);
        for (const auto& program : ci.programs) {
          T* base = ws.lanes.data();
          int top = 0;  // number of live stack rows
          for (const auto& in : program.code) {
            T* out = base + static_cast<std::size_t>(top) * kLanes;
            switch (in.op) {
              case tape::Op::constant: {
                T c = static_cast<T>(in.value);
                for (int k = 0; k < width; ++k) out[k] = c;
                ++top;
                break;
              }
              case tape::Op::scalar: {
                T c = frame.scalars[in.arg];
                for (int k = 0; k < width; ++k) out[k] = c;
                ++top;
                break;
              }
              case tape::Op::temp: {
                const T* src = ws.temp_lanes.data() + static_cast<std::size_t>(in.arg) * kLanes;
                for (int k = 0; k < width; ++k) out[k] = src[k];
                ++top;
                break;
              }
              case tape::Op::grid: {
                std::ptrdiff_t stride = ci.slots[in.arg].stride[n - 1];
                const T* src = ws.rows[in.arg] + stride * start;
                if (stride == 1) {
                  for (int k = 0; k < width; ++k) out[k] = src[k];
                } else {
                  for (int k = 0; k < width; ++k) out[k] = src[stride * k];
                }
                ++top;
                break;
              }
              case tape::Op::add:
              case tape::Op::mul:
              case tape::Op::div: {
                T* a = out - 2 * kLanes;
                const T* b = out - kLanes;
                if (in.op == tape::Op::add) {
#pragma omp simd
                  for (int k = 0; k < width; ++k) a[k] = a[k] + b[k];
                } else if (in.op == tape::Op::mul) {
#pragma omp simd
                  for (int k = 0; k < width; ++k) a[k] = a[k] * b[k];
                } else {
#pragma omp simd
                  for (int k = 0; k < width; ++k) a[k] = a[k] / b[k];
                }
                --top;
                break;
              }
              case tape::Op::pow: {
                T* a = out - kLanes;
                for (int k = 0; k < width; ++k) {
                  T b = a[k];
                  T acc = b;
                  for (int e = 1; e < in.arg; ++e) acc = acc * b;
                  a[k] = acc;
                }
                break;
              }
            }
          }
          const T* result = base + static_cast<std::size_t>(top - 1) * kLanes;
          if (program.store_slot >= 0) {
            std::ptrdiff_t stride = ci.slots[program.store_slot].stride[n - 1];
            T* dst = ws.rows[program.store_slot] + stride * start;
            for (int k = 0; k < width; ++k) dst[stride * k] = result[k];
          } else {
            T* dst = ws.temp_lanes.data() + static_cast<std::size_t>(program.store_temp) * kLanes;
            for (int k = 0; k < width; ++k) dst[k] = result[k];
          }
        }
      }
    });
  }

  // Reference path: every index is recomputed from the loop indices.
  void run_tree(const tape::CompiledItem& ci, Frame& frame, int t, const Range& chunk, bool check) const {
    const BodyItem& item = *ci.item;
    const std::size_t n = item.loops.size();
    std::map<std::string, T> temps;
    std::map<std::string, int> at;
    auto address = [&](const Expr& e) -> T* {
      const auto& a = e.as<Access>();
      const auto& f = *a.function;
      int array = array_index_.at(f.name);
      std::size_t first = f.time_varying() ? 1 : 0;
      std::ptrdiff_t linear = 0;
      for (std::size_t i = first; i < a.indices.size(); ++i) {
        int value = 0;
        if (const auto* abs = std::get_if<Absolute>(&a.indices[i])) {
          value = abs->value;
        } else {
          const auto& r = std::get<Relative>(a.indices[i]);
          value = at.at(r.dim) + r.offset;
        }
        int extent = f.shape[i - first];
        if (check && (value < 0 || value >= extent)) {
          throw Error(ErrorCode::OutOfDomain, "access " + to_string(e) + " reads index " + std::to_string(value) +
                                                  " outside [0, " + std::to_string(extent) + ")");
        }
        linear = linear * extent + value;
      }
      if (first) linear += level_offset(f, t, std::get<Relative>(a.indices.front()).offset);
      if (check && (linear < 0 || static_cast<std::size_t>(linear) >= frame.sizes[array])) {
        throw Error(ErrorCode::OutOfDomain, "access " + to_string(e) + " falls outside its buffer");
      }
      return frame.arrays[array] + linear;
    };
    auto leaf = [&](const Expr& e) -> T {
      if (e.is<Access>()) return *address(e);
      const auto& name = e.as<Symbol>().name;
      auto it = temps.find(name);
      if (it != temps.end()) return it->second;
      return frame.scalars[scalar_index_.at(name)];
    };
    for_each_segment(item, chunk, [&](const std::vector<int>& index, int lo, int hi) {
      for (std::size_t l = 0; l + 1 < n; ++l) at[item.loops[l].dim] = index[l];
      for (int i = lo; i < hi; ++i) {
        if (n > 0) at[item.loops[n - 1].dim] = i;
        for (const auto& eq : item.equations) {
          T value = evaluate<T>(eq.rhs, leaf);
          if (eq.lhs.is<Access>()) {
            *address(eq.lhs) = value;
          } else if (item.kind == BodyItem::Kind::hoisted) {
            frame.scalars[scalar_index_.at(eq.lhs.as<Symbol>().name)] = value;
          } else {
            temps[eq.lhs.as<Symbol>().name] = value;
          }
        }
      }
    });
  }

  LoopNest nest_;
  int stack_bound_;
  std::map<std::string, int> array_index_;
  std::map<std::string, int> scalar_index_;
  std::vector<tape::CompiledItem> prologue_;
  std::vector<tape::CompiledItem> body_;
  std::map<std::string, AlignedVector<T>> scratch_;
};

}  // namespace sf
