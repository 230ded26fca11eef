#pragma once

// Symbolic optimization of discretized update equations: common
// subexpression elimination, hoisting of time-invariant subexpressions,
// factorization of shared finite-difference weights, and flop accounting.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "stencilforge/errors.hpp"
#include "stencilforge/expr.hpp"
#include "stencilforge/simplify.hpp"

namespace sf {

enum class DseLevel { basic, advanced };

inline std::string_view to_string(DseLevel level) { return level == DseLevel::basic ? "basic" : "advanced"; }

inline DseLevel parse_dse_level(std::string_view text) {
  if (text == "basic") return DseLevel::basic;
  if (text == "advanced") return DseLevel::advanced;
  throw Error(ErrorCode::InvalidArgument, "unknown dse level '" + std::string(text) + "'");
}

struct OpCount {
  long adds = 0;
  long muls = 0;
  long divs = 0;

  long total() const { return adds + muls + divs; }
  OpCount& operator+=(const OpCount& o) {
    adds += o.adds;
    muls += o.muls;
    divs += o.divs;
    return *this;
  }
};

// n-ary sums cost n-1 adds (subtraction is an add of a negated term), n-ary
// products n-1 muls, x**k costs k-1 muls.
inline OpCount count_ops(const Expr& e) {
  OpCount out;
  visit_preorder(e, [&](const Expr& n) {
    if (n.is<Add>()) out.adds += static_cast<long>(n.as<Add>().operands.size()) - 1;
    if (n.is<Mul>()) out.muls += static_cast<long>(n.as<Mul>().operands.size()) - 1;
    if (n.is<Div>()) out.divs += 1;
    if (n.is<Pow>()) out.muls += std::max(0, n.as<Pow>().exponent - 1);
  });
  return out;
}

// Consecutive equations evaluated together at each point of one loop nest.
// Temporaries have a Symbol on the left; outputs a grid access.
struct Cluster {
  std::vector<Equation> equations;
};

struct OptimizedExprSet {
  std::vector<Equation> hoisted;       // evaluated once before the time loop
  std::vector<FunctionRef> scratch;    // buffers holding hoisted grid expressions
  std::vector<Cluster> clusters;

  std::vector<Equation> temporaries() const {
    std::vector<Equation> out;
    for (const auto& c : clusters) {
      for (const auto& eq : c.equations) {
        if (eq.lhs.is<Symbol>()) out.push_back(eq);
      }
    }
    return out;
  }

  std::vector<Equation> assignments() const {
    std::vector<Equation> out;
    for (const auto& c : clusters) {
      for (const auto& eq : c.equations) {
        if (eq.lhs.is<Access>()) out.push_back(eq);
      }
    }
    return out;
  }
};

// One cluster per equation; the equations must be fully discretized.
inline OptimizedExprSet make_set(const std::vector<Equation>& equations) {
  OptimizedExprSet out;
  for (const auto& eq : equations) {
    if (!eq.lhs.is<Access>()) throw Error(ErrorCode::InvalidArgument, "update targets must be grid accesses");
    visit_preorder(eq.rhs, [](const Expr& n) {
      if (n.is<Derivative>()) throw Error(ErrorCode::InvalidArgument, "expand derivatives before optimizing");
    });
    out.clusters.push_back({{eq}});
  }
  return out;
}

namespace detail {

inline int count_symbol(const Expr& e, const std::string& name) {
  int n = 0;
  visit_preorder(e, [&](const Expr& node) { n += node.is<Symbol>() && node.as<Symbol>().name == name; });
  return n;
}

// Renames temporaries t<k> in order of first definition across clusters.
inline void renumber_temporaries(OptimizedExprSet& set) {
  std::map<Expr, Expr, TermLess> rename;
  int next = 0;
  for (auto& c : set.clusters) {
    for (auto& eq : c.equations) {
      eq.rhs = replace(eq.rhs, rename);
      if (eq.lhs.is<Symbol>()) {
        Expr fresh = symbol("t" + std::to_string(next++));
        rename.emplace(eq.lhs, fresh);
        eq.lhs = fresh;
      }
    }
  }
}

inline void cse_cluster(Cluster& cluster, int& counter) {
  while (true) {
    std::unordered_map<Expr, int, ExprHash> counts;
    for (const auto& eq : cluster.equations) {
      visit_preorder(eq.rhs, [&](const Expr& n) {
        if (n.is<Add>() || n.is<Mul>() || n.is<Div>() || (n.is<Pow>() && n.as<Pow>().exponent > 1)) ++counts[n];
      });
    }
    const Expr* best = nullptr;
    for (const auto& [e, k] : counts) {
      if (k < 2 || count_ops(e).total() < 1) continue;
      if (best == nullptr || e.height() < best->height() ||
          (e.height() == best->height() && compare_term(e, *best) < 0)) {
        best = &e;
      }
    }
    if (best == nullptr) break;
    Expr candidate = *best;
    Expr temp = symbol("t" + std::to_string(counter++) + "_");  // renamed at the end
    std::map<Expr, Expr, TermLess> map{{candidate, temp}};
    std::size_t first_use = cluster.equations.size();
    for (std::size_t i = 0; i < cluster.equations.size(); ++i) {
      auto& eq = cluster.equations[i];
      Expr rewritten = replace(eq.rhs, map);
      if (!(rewritten == eq.rhs) && first_use == cluster.equations.size()) first_use = i;
      eq.rhs = rewritten;
    }
    cluster.equations.insert(cluster.equations.begin() + static_cast<std::ptrdiff_t>(first_use), {temp, candidate});
  }
  // A temporary used once after larger matches were bound is inlined again.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < cluster.equations.size(); ++i) {
      const auto& eq = cluster.equations[i];
      if (!eq.lhs.is<Symbol>()) continue;
      const std::string& name = eq.lhs.as<Symbol>().name;
      if (name.empty() || name.back() != '_') continue;
      int uses = 0;
      for (const auto& other : cluster.equations) uses += count_symbol(other.rhs, name);
      if (uses != 1) continue;
      std::map<Expr, Expr, TermLess> map{{eq.lhs, eq.rhs}};
      for (auto& other : cluster.equations) other.rhs = replace(other.rhs, map);
      cluster.equations.erase(cluster.equations.begin() + static_cast<std::ptrdiff_t>(i));
      changed = true;
      break;
    }
  }
}

}  // namespace detail

// Binds every composite subexpression that occurs at least twice within a
// cluster to a temporary, smallest first.
inline OptimizedExprSet eliminate_common_subexpressions(OptimizedExprSet set) {
  int counter = 0;
  for (auto& cluster : set.clusters) detail::cse_cluster(cluster, counter);
  detail::renumber_temporaries(set);
  return set;
}

namespace detail {

class Hoister {
 public:
  Hoister(OptimizedExprSet& set) : set_(set) {
    for (const auto& c : set.clusters) {
      for (const auto& eq : c.equations) {
        if (eq.lhs.is<Access>()) written_.insert(eq.lhs.as<Access>().name());
        if (eq.lhs.is<Symbol>()) temporaries_.insert(eq.lhs.as<Symbol>().name);
      }
    }
    for (const auto& eq : set.hoisted) {
      ++next_;
      known_.emplace(eq.rhs, eq.lhs);
    }
  }

  void run() {
    for (auto& c : set_.clusters) {
      for (auto& eq : c.equations) {
        dims_ = output_dims(c);
        eq.rhs = hoist(eq.rhs);
      }
    }
  }

 private:
  static std::vector<std::string> output_dims(const Cluster& c) {
    for (const auto& eq : c.equations) {
      if (eq.lhs.is<Access>()) return eq.lhs.as<Access>().function->dims;
    }
    return {};
  }

  bool invariant(const Expr& e) const {
    bool ok = true;
    visit_preorder(e, [&](const Expr& n) {
      if (!ok) return;
      if (n.is<Symbol>()) {
        ok = !temporaries_.count(n.as<Symbol>().name);
      } else if (n.is<Access>()) {
        const auto& a = n.as<Access>();
        ok = !a.function->time_varying() && !written_.count(a.name()) && a.function->dims == dims_;
        for (const auto& index : a.indices) {
          const auto* r = std::get_if<Relative>(&index);
          ok = ok && r != nullptr && r->offset == 0;
        }
      }
    });
    return ok;
  }

  Expr bind(const Expr& e) {
    auto it = known_.find(e);
    if (it != known_.end()) return it->second;
    std::string name = "q" + std::to_string(next_++);
    const Access* grid_access = nullptr;
    visit_preorder(e, [&](const Expr& n) {
      if (grid_access == nullptr && n.is<Access>()) grid_access = &n.as<Access>();
    });
    Expr lhs;
    if (grid_access == nullptr) {
      lhs = symbol(name);
    } else {
      auto decl = std::make_shared<FunctionDecl>();
      decl->name = name;
      decl->dims = grid_access->function->dims;
      decl->shape = grid_access->function->shape;
      decl->space_order = grid_access->function->space_order;
      std::vector<Index> indices;
      for (const auto& dim : decl->dims) indices.push_back(Relative{dim, 0});
      set_.scratch.push_back(decl);
      lhs = access(decl, std::move(indices));
    }
    set_.hoisted.push_back({lhs, e});
    known_.emplace(e, lhs);
    return lhs;
  }

  Expr hoist(const Expr& e) {
    if (e.is<Const>() || e.is<Symbol>() || e.is<Access>()) return e;
    if (invariant(e)) return count_ops(e).total() >= 1 ? bind(e) : e;
    if (e.is<Add>() || e.is<Mul>()) {
      const auto& ops = e.is<Add>() ? e.as<Add>().operands : e.as<Mul>().operands;
      std::vector<Expr> fixed;
      std::vector<Expr> varying;
      for (const auto& op : ops) (invariant(op) ? fixed : varying).push_back(op);
      for (auto& op : varying) op = hoist(op);
      if (fixed.size() >= 2) {
        Expr group = e.is<Add>() ? add(fixed) : mul(fixed);
        fixed = {bind(group)};
      } else {
        for (auto& op : fixed) op = hoist(op);
      }
      fixed.insert(fixed.end(), varying.begin(), varying.end());
      return e.is<Add>() ? add(std::move(fixed)) : mul(std::move(fixed));
    }
    if (e.is<Div>()) {
      const auto& d = e.as<Div>();
      Expr num = hoist(d.numerator);
      if (invariant(d.denominator) && count_ops(d.denominator).total() >= 1) {
        return mul({num, bind(div(constant(1.0), d.denominator))});
      }
      return div(num, hoist(d.denominator));
    }
    if (e.is<Pow>()) return pow(hoist(e.as<Pow>().base), e.as<Pow>().exponent);
    return e;
  }

  OptimizedExprSet& set_;
  std::set<std::string> written_;
  std::set<std::string> temporaries_;
  std::vector<std::string> dims_;
  std::map<Expr, Expr, TermLess> known_;
  int next_ = 0;
};

}  // namespace detail

inline bool has_time_varying_access(const OptimizedExprSet& set) {
  bool found = false;
  for (const auto& c : set.clusters) {
    for (const auto& eq : c.equations) {
      for (const Expr* side : {&eq.lhs, &eq.rhs}) {
        visit_preorder(*side, [&](const Expr& n) {
          found = found || (n.is<Access>() && n.as<Access>().function->time_varying());
        });
      }
    }
  }
  return found;
}

// Moves maximal subexpressions that depend only on time-invariant data (and
// cost at least one flop) into precomputations evaluated before the time
// loop. Grid-dependent ones become scratch buffers q<k>(x, ...), the others
// scalars. A no-op for kernels without a time dimension.
inline OptimizedExprSet hoist_time_invariants(OptimizedExprSet set) {
  if (!has_time_varying_access(set)) return set;
  detail::Hoister(set).run();
  return set;
}

namespace detail {

// Splits a product into its coefficient part (constants and scalar symbols)
// and the remaining factors.
inline std::pair<std::vector<Expr>, std::vector<Expr>> split_weight(const Expr& term) {
  std::vector<Expr> weight;
  std::vector<Expr> rest;
  const std::vector<Expr> single{term};
  const auto& ops = term.is<Mul>() ? term.as<Mul>().operands : single;
  for (const auto& op : ops) {
    auto [base, exponent] = split_power(op);
    (base.is<Const>() || base.is<Symbol>() ? weight : rest).push_back(op);
  }
  return {weight, rest};
}

inline Expr factorize_add(const Add& a) {
  std::vector<std::pair<Expr, std::vector<Expr>>> groups;  // weight, remaining terms
  std::vector<Expr> loose;
  std::vector<int> order;  // >= 0: group index, < 0: loose index encoded as -1 - i
  for (const auto& term : a.operands) {
    auto [weight, rest] = split_weight(term);
    bool trivial = weight.empty() || rest.empty() || (weight.size() == 1 && is_const(weight.front(), 1.0));
    if (trivial) {
      order.push_back(-1 - static_cast<int>(loose.size()));
      loose.push_back(term);
      continue;
    }
    Expr w = mul(weight);
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == w; });
    if (it == groups.end()) {
      order.push_back(static_cast<int>(groups.size()));
      groups.push_back({w, {mul(rest)}});
    } else {
      it->second.push_back(mul(rest));
    }
  }
  std::vector<Expr> out;
  for (int k : order) {
    if (k < 0) {
      out.push_back(loose[-1 - k]);
      continue;
    }
    const auto& [w, terms] = groups[k];
    out.push_back(terms.size() == 1 ? mul({w, terms.front()}) : mul({w, add(terms)}));
  }
  return add(std::move(out));
}

}  // namespace detail

// Within each sum, terms whose coefficients (numbers and scalar symbols)
// agree are grouped: w*a + w*b -> w*(a + b).
inline Expr factorize(const Expr& e) {
  Expr out = transform(e, [](const Expr& n) -> Expr {
    if (!n.is<Add>()) return n;
    return detail::factorize_add(n.as<Add>());
  });
  // Re-sort without redistributing: the grouped sums survive simplify.
  Expr simplified = simplify(out);
  return count_ops(simplified).total() <= count_ops(out).total() ? simplified : out;
}

inline OptimizedExprSet factorize_weights(OptimizedExprSet set) {
  for (auto& c : set.clusters) {
    for (auto& eq : c.equations) {
      Expr grouped = factorize(eq.rhs);
      if (count_ops(grouped).muls <= count_ops(eq.rhs).muls) eq.rhs = grouped;
    }
  }
  return set;
}

inline OptimizedExprSet optimize(const std::vector<Equation>& equations, DseLevel level) {
  OptimizedExprSet set = make_set(equations);
  if (level == DseLevel::advanced) set = hoist_time_invariants(factorize_weights(std::move(set)));
  return eliminate_common_subexpressions(std::move(set));
}

// Expands temporaries and hoisted values back into the outputs.
inline std::vector<Equation> inline_all(const OptimizedExprSet& set) {
  std::map<Expr, Expr, TermLess> values;
  for (const auto& eq : set.hoisted) values.emplace(eq.lhs, replace(eq.rhs, values));
  std::vector<Equation> out;
  for (const auto& c : set.clusters) {
    std::map<Expr, Expr, TermLess> local = values;
    for (const auto& eq : c.equations) {
      Expr rhs = replace(eq.rhs, local);
      if (eq.lhs.is<Symbol>()) {
        local[eq.lhs] = rhs;
      } else {
        out.push_back({eq.lhs, rhs});
      }
    }
  }
  return out;
}

struct FlopReport {
  long adds = 0;
  long muls = 0;
  long divs = 0;
  long flops = 0;
  long hoisted_flops = 0;  // per point, paid once before the time loop
  long bytes = 0;
  double oi = 0.0;
  int element_size = 8;
};

inline void to_json(nlohmann::json& j, const FlopReport& r) {
  j = nlohmann::json{{"adds", r.adds},   {"muls", r.muls},           {"divs", r.divs},
                     {"flops", r.flops}, {"hoisted_flops", r.hoisted_flops}, {"bytes", r.bytes},
                     {"oi", r.oi}};
}

// Per-point operation counts over the cluster equations. Bytes assume every
// distinct array (function and time level) is moved once per point.
inline FlopReport flop_count(const OptimizedExprSet& set, int element_size = 8) {
  FlopReport r;
  r.element_size = element_size;
  OpCount ops;
  std::set<std::pair<std::string, int>> arrays;
  auto note_arrays = [&](const Expr& e) {
    visit_preorder(e, [&](const Expr& n) {
      if (!n.is<Access>()) return;
      const auto& a = n.as<Access>();
      int level = 0;
      if (a.function->time_varying()) {
        if (const auto* r0 = std::get_if<Relative>(&a.indices.front())) level = r0->offset;
      }
      arrays.emplace(a.name(), level);
    });
  };
  for (const auto& c : set.clusters) {
    for (const auto& eq : c.equations) {
      ops += count_ops(eq.rhs);
      note_arrays(eq.lhs);
      note_arrays(eq.rhs);
    }
  }
  for (const auto& eq : set.hoisted) r.hoisted_flops += count_ops(eq.rhs).total();
  r.adds = ops.adds;
  r.muls = ops.muls;
  r.divs = ops.divs;
  r.flops = ops.total();
  r.bytes = static_cast<long>(arrays.size()) * element_size;
  r.oi = r.bytes > 0 ? static_cast<double>(r.flops) / static_cast<double>(r.bytes) : 0.0;
  return r;
}

}  // namespace sf
