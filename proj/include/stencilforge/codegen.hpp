#pragma once

// C source emission for scheduled loop nests. Output is deterministic: the
// same nest and options always produce the same bytes.

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "stencilforge/expr.hpp"
#include "stencilforge/schedule.hpp"

namespace sf {

struct CodegenOptions {
  std::string name = "kernel";
  std::string real = "double";  // or "float"
  bool aligned = false;         // annotate 64-byte aligned data (advanced loop level)
};

namespace detail {

class CWriter {
 public:
  CWriter(const LoopNest& nest, const CodegenOptions& options) : nest_(nest), options_(options) {
    for (const auto& f : nest.scratch) scratch_.insert(f->name);
    for (const auto& f : nest.functions) {
      if (f->time != TimeStorage::cyclic) continue;
      for (const auto* items : {&nest.prologue, &nest.body}) {
        for (const auto& item : *items) {
          for (const auto& eq : item.equations) {
            for (const Expr* side : {&eq.lhs, &eq.rhs}) {
              visit_preorder(*side, [&](const Expr& n) {
                if (n.is<Access>() && n.as<Access>().name() == f->name) {
                  levels_[f->name].insert(std::get<Relative>(n.as<Access>().indices.front()).offset);
                }
              });
            }
          }
        }
      }
    }
  }

  std::string write() {
    out_ << "#include <math.h>\n#include <stdlib.h>\n\n";
    out_ << "#define MIN(a, b) ((a) < (b) ? (a) : (b))\n\n";
    out_ << "int " << options_.name << "(" << parameters() << ")\n{\n";
    indent_ = "  ";
    for (const auto& f : nest_.functions) declare(*f);
    if (options_.aligned) line("/* arrays are allocated with 64-byte alignment */");
    if (!nest_.prologue.empty()) {
      line("");
      line("/* time-invariant precomputation */");
      for (const auto& item : nest_.prologue) write_item(item);
    }
    line("");
    std::string saved = indent_;
    if (nest_.time_loop) {
      if (nest_.axis == TimeAxis::Forward) {
        line("for (int time = time_m; time < time_M; time += 1)");
      } else {
        line("for (int time = time_M - 1; time >= time_m; time -= 1)");
      }
      line("{");
      indent_ += "  ";
      for (const auto& [name, offsets] : levels_) {
        int modulus = nest_.function(name)->buffers();
        for (int o : offsets) {
          std::string shifted = o == 0 ? "time" : o > 0 ? "time + " + std::to_string(o) : "time - " + std::to_string(-o);
          line("const int " + level_name(name, o) + " = ((" + shifted + ") % " + std::to_string(modulus) + " + " +
               std::to_string(modulus) + ") % " + std::to_string(modulus) + ";");
        }
      }
    }
    for (const auto& item : nest_.body) write_item(item);
    if (nest_.time_loop) {
      indent_ = saved;
      line("}");
    }
    for (const auto& f : nest_.scratch) line("free(" + f->name + ");");
    line("return 0;");
    out_ << "}\n";
    return out_.str();
  }

 private:
  std::string parameters() const {
    std::vector<std::string> params;
    for (const auto& f : nest_.functions) {
      if (!scratch_.count(f->name)) params.push_back(options_.real + " *restrict " + f->name + "_vec");
    }
    for (const auto& s : nest_.scalars) params.push_back("const " + options_.real + " " + s);
    if (nest_.time_loop) {
      params.push_back("const int time_m");
      params.push_back("const int time_M");
    }
    std::string out;
    for (std::size_t i = 0; i < params.size(); ++i) out += (i ? ", " : "") + params[i];
    return out;
  }

  static std::string level_name(const std::string& function, int offset) {
    if (offset == 0) return function + "_t0";
    return function + (offset > 0 ? "_tp" : "_tm") + std::to_string(std::abs(offset));
  }

  std::string extents(const FunctionDecl& f, bool skip_first) const {
    std::string out;
    for (std::size_t i = skip_first ? 1 : 0; i < f.shape.size(); ++i) out += "[" + std::to_string(f.shape[i]) + "]";
    return out;
  }

  // Array views: time-varying arrays get a leading time index.
  void declare(const FunctionDecl& f) {
    const std::string& real = options_.real;
    bool time = f.time_varying();
    std::string trailing = time ? extents(f, false) : extents(f, true);
    if (scratch_.count(f.name)) {
      line(real + " (*" + f.name + ")" + extents(f, true) + " = malloc(sizeof(" + real + extents(f, false) + "));");
      return;
    }
    if (trailing.empty()) {
      line(real + " *restrict " + f.name + " = " + f.name + "_vec;");
    } else {
      line(real + " (*restrict " + f.name + ")" + trailing + " = (" + real + " (*)" + trailing + ") " + f.name + "_vec;");
    }
  }

  std::string literal(double value) const {
    std::string text = format_real(value);
    if (text.find_first_of(".eEn") == std::string::npos) text += ".0";
    if (options_.real == "float") text += "F";
    return value < 0 ? "(" + text + ")" : text;
  }

  std::string index_text(const Access& a) const {
    const auto& f = *a.function;
    std::string out;
    for (std::size_t i = 0; i < a.indices.size(); ++i) {
      const auto& index = a.indices[i];
      if (const auto* abs = std::get_if<Absolute>(&index)) {
        out += "[" + std::to_string(abs->value) + "]";
        continue;
      }
      const auto& r = std::get<Relative>(index);
      if (i == 0 && f.time == TimeStorage::cyclic) {
        out += "[" + level_name(f.name, r.offset) + "]";
        continue;
      }
      std::string var = r.dim == kTimeDim ? "time" : r.dim;
      if (r.offset == 0) {
        out += "[" + var + "]";
      } else {
        out += "[" + var + (r.offset > 0 ? " + " : " - ") + std::to_string(std::abs(r.offset)) + "]";
      }
    }
    return out;
  }

  // precedence: 1 sum, 2 product/quotient, 3 atom
  std::string expr(const Expr& e, int context) const {
    return std::visit(
        [&](const auto& v) -> std::string {
          using N = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<N, Const>) {
            return literal(v.value);
          } else if constexpr (std::is_same_v<N, Symbol>) {
            return v.name;
          } else if constexpr (std::is_same_v<N, Access>) {
            return v.name() + index_text(v);
          } else if constexpr (std::is_same_v<N, Derivative>) {
            throw Error(ErrorCode::InvalidArgument, "cannot emit an undiscretized derivative");
          } else if constexpr (std::is_same_v<N, Add>) {
            std::string out;
            for (std::size_t i = 0; i < v.operands.size(); ++i) out += (i ? " + " : "") + expr(v.operands[i], 1);
            return context > 1 ? "(" + out + ")" : out;
          } else if constexpr (std::is_same_v<N, Mul>) {
            std::string out;
            for (std::size_t i = 0; i < v.operands.size(); ++i) out += (i ? " * " : "") + expr(v.operands[i], 2);
            return context > 2 ? "(" + out + ")" : out;
          } else if constexpr (std::is_same_v<N, Div>) {
            std::string out = expr(v.numerator, 2) + " / " + expr(v.denominator, 3);
            return context > 1 ? "(" + out + ")" : out;
          } else {
            if (v.exponent == 0) return literal(1.0);
            std::string base = expr(v.base, 3);
            std::string out = base;
            for (int k = 1; k < v.exponent; ++k) out += " * " + base;
            return v.exponent > 1 ? "(" + out + ")" : out;
          }
        },
        e.node().data);
  }

  std::string target(const Expr& lhs) const {
    if (lhs.is<Symbol>()) return "const " + options_.real + " " + lhs.as<Symbol>().name;
    return expr(lhs, 3);
  }

  void write_item(const BodyItem& item) {
    std::string saved = indent_;
    if (!item.label.empty() && item.kind != BodyItem::Kind::hoisted) line("/* " + item.label + " */");
    bool scoped = item.loops.empty() && item.kind == BodyItem::Kind::sparse;
    if (scoped) {
      line("{");
      indent_ += "  ";
    }
    for (const auto& loop : item.loops) {
      if (loop.block <= 0) continue;
      if (loop.parallel) line("#pragma omp parallel for");
      std::string var = loop.dim + "_blk";
      line("for (int " + var + " = " + std::to_string(loop.lo) + "; " + var + " < " + std::to_string(loop.hi) + "; " +
           var + " += " + std::to_string(loop.block) + ")");
      line("{");
      indent_ += "  ";
    }
    for (const auto& loop : item.loops) {
      bool parallel = loop.parallel && loop.block <= 0;
      if (parallel && loop.simd) {
        line("#pragma omp parallel for simd");
      } else if (parallel) {
        line("#pragma omp parallel for");
      } else if (loop.simd) {
        line("#pragma omp simd");
      }
      std::string lo = loop.block > 0 ? loop.dim + "_blk" : std::to_string(loop.lo);
      std::string hi = loop.block > 0
                           ? "MIN(" + loop.dim + "_blk + " + std::to_string(loop.block) + ", " + std::to_string(loop.hi) + ")"
                           : std::to_string(loop.hi);
      line("for (int " + loop.dim + " = " + lo + "; " + loop.dim + " < " + hi + "; " + loop.dim + " += 1)");
      line("{");
      indent_ += "  ";
    }
    for (const auto& eq : item.equations) line(target(eq.lhs) + " = " + expr(eq.rhs, 0) + ";");
    std::size_t opened = item.loops.size() + static_cast<std::size_t>(scoped);
    for (const auto& loop : item.loops) opened += loop.block > 0;
    for (std::size_t k = 0; k < opened; ++k) {
      indent_.resize(indent_.size() - 2);
      line("}");
    }
    indent_ = saved;
  }

  void line(const std::string& text) {
    if (text.empty()) {
      out_ << '\n';
      return;
    }
    out_ << indent_ << text << '\n';
  }

  const LoopNest& nest_;
  const CodegenOptions& options_;
  std::set<std::string> scratch_;
  std::map<std::string, std::set<int>> levels_;
  std::ostringstream out_;
  std::string indent_;
};

}  // namespace detail

// Emits a C function taking one pointer per array (name_vec), the scalar
// inputs, and the time range [time_m, time_M) when the nest has a time loop.
inline std::string emit_c(const LoopNest& nest, const CodegenOptions& options = {}) {
  return detail::CWriter(nest, options).write();
}

}  // namespace sf
