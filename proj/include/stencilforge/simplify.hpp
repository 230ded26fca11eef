#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "stencilforge/expr.hpp"

namespace sf {

using Substitutions = std::map<std::string, double>;

Expr simplify(const Expr& e);

namespace detail {

inline double product_sorted(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double result = 1.0;
  for (double v : values) result *= v;
  return result;
}

inline double sum_sorted(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double result = 0.0;
  for (double v : values) result += v;
  return result;
}

inline double int_power(double base, int exponent) {
  double result = 1.0;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

inline Expr make_term(double coefficient, std::vector<Expr> factors) {
  if (coefficient == 0.0) return constant(0.0);
  if (factors.empty()) return constant(coefficient);
  if (coefficient != 1.0) factors.insert(factors.begin(), constant(coefficient));
  return mul(std::move(factors));
}

inline Expr simplify_mul(const Mul& m) {
  std::vector<double> coefficients;
  std::vector<Expr> factors;
  auto absorb = [&](const Expr& op, auto&& self) -> void {
    if (op.is<Const>()) {
      coefficients.push_back(op.as<Const>().value);
    } else if (op.is<Mul>()) {
      for (const auto& inner : op.as<Mul>().operands) self(inner, self);
    } else {
      factors.push_back(op);
    }
  };
  for (const auto& op : m.operands) absorb(simplify(op), absorb);

  double coefficient = product_sorted(std::move(coefficients));
  if (coefficient == 0.0) return constant(0.0);

  std::sort(factors.begin(), factors.end(), [](const Expr& a, const Expr& b) {
    auto [ba, ea] = split_power(a);
    auto [bb, eb] = split_power(b);
    auto c = compare_base(ba, bb);
    return c != 0 ? c < 0 : ea < eb;
  });
  std::vector<Expr> merged;
  for (std::size_t i = 0; i < factors.size();) {
    auto [base, exponent] = split_power(factors[i]);
    std::size_t j = i + 1;
    for (; j < factors.size(); ++j) {
      auto [other, other_exponent] = split_power(factors[j]);
      if (!(other == base)) break;
      exponent += other_exponent;
    }
    merged.push_back(exponent == 1 ? base : pow(base, exponent));
    i = j;
  }
  std::sort(merged.begin(), merged.end(), [](const Expr& a, const Expr& b) { return compare_factor(a, b) < 0; });
  return make_term(coefficient, std::move(merged));
}

inline Expr simplify_add(const Add& a) {
  std::vector<double> constants;
  std::vector<Expr> terms;
  auto absorb = [&](const Expr& op, auto&& self) -> void {
    if (op.is<Const>()) {
      constants.push_back(op.as<Const>().value);
    } else if (op.is<Add>()) {
      for (const auto& inner : op.as<Add>().operands) self(inner, self);
    } else {
      terms.push_back(op);
    }
  };
  for (const auto& op : a.operands) absorb(simplify(op), absorb);

  std::sort(terms.begin(), terms.end(), TermLess{});
  std::vector<Expr> combined;
  for (std::size_t i = 0; i < terms.size();) {
    auto [coefficient, factors] = split_coefficient(terms[i]);
    std::vector<double> coefficients{coefficient};
    std::size_t j = i + 1;
    for (; j < terms.size(); ++j) {
      auto [c, f] = split_coefficient(terms[j]);
      if (f != factors) break;
      coefficients.push_back(c);
    }
    double total = coefficients.size() == 1 ? coefficient : sum_sorted(std::move(coefficients));
    Expr term = make_term(total, std::move(factors));
    if (!is_const(term, 0.0)) combined.push_back(std::move(term));
    i = j;
  }
  double offset = sum_sorted(std::move(constants));
  if (offset != 0.0) combined.insert(combined.begin(), constant(offset));
  if (combined.empty()) return constant(0.0);
  // A merged coefficient of 1 can expose a nested sum; flatten it again.
  bool nested = std::any_of(combined.begin(), combined.end(), [](const Expr& t) { return t.is<Add>(); });
  if (nested) return simplify_add(Add{std::move(combined)});
  return add(std::move(combined));
}

}  // namespace detail

// Folds constants, flattens nested sums and products, merges equal factors
// into integer powers and like terms into a single coefficient, drops 0 and 1
// identities, and sorts operands canonically. Idempotent.
inline Expr simplify(const Expr& e) {
  return std::visit(
      [&](const auto& v) -> Expr {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Const> || std::is_same_v<T, Symbol> || std::is_same_v<T, Access>) {
          return e;
        } else if constexpr (std::is_same_v<T, Derivative>) {
          return derivative(simplify(v.target), v.dim, v.order, v.side, v.accuracy);
        } else if constexpr (std::is_same_v<T, Add>) {
          return detail::simplify_add(v);
        } else if constexpr (std::is_same_v<T, Mul>) {
          return detail::simplify_mul(v);
        } else if constexpr (std::is_same_v<T, Div>) {
          Expr num = simplify(v.numerator);
          Expr den = simplify(v.denominator);
          if (is_const(num, 0.0)) return constant(0.0);
          if (den.is<Const>() && den.as<Const>().value != 0.0) {
            return simplify(mul({constant(1.0 / den.as<Const>().value), num}));
          }
          return div(num, den);
        } else {
          Expr base = simplify(v.base);
          if (v.exponent == 0) return constant(1.0);
          if (v.exponent == 1) return base;
          if (base.is<Const>()) return constant(detail::int_power(base.as<Const>().value, v.exponent));
          if (base.is<Pow>()) return pow(base.as<Pow>().base, base.as<Pow>().exponent * v.exponent);
          return pow(base, v.exponent);
        }
      },
      e.node().data);
}

inline Equation simplify(const Equation& eq) { return {simplify(eq.lhs), simplify(eq.rhs)}; }

// Replaces mapped scalar symbols by constants, then simplifies. Unmapped
// symbols pass through.
inline Expr substitute(const Expr& e, const Substitutions& map) {
  if (map.empty()) return simplify(e);
  Expr replaced = transform(e, [&](const Expr& node) -> Expr {
    if (node.is<Symbol>()) {
      auto it = map.find(node.as<Symbol>().name);
      if (it != map.end()) return constant(it->second);
    }
    return node;
  });
  return simplify(replaced);
}

// Replaces whole subexpressions (matched structurally).
inline Expr replace(const Expr& e, const std::map<Expr, Expr, TermLess>& map) {
  return transform(e, [&](const Expr& node) -> Expr {
    auto it = map.find(node);
    return it == map.end() ? node : it->second;
  });
}

struct FreeSymbols {
  std::set<std::string> scalars;
  std::set<std::string> functions;

  std::set<std::string> all() const {
    std::set<std::string> out = scalars;
    out.insert(functions.begin(), functions.end());
    return out;
  }
  bool empty() const { return scalars.empty() && functions.empty(); }
};

inline void collect_free_symbols(const Expr& e, FreeSymbols& out) {
  visit_preorder(e, [&](const Expr& node) {
    if (node.is<Symbol>()) out.scalars.insert(node.as<Symbol>().name);
    if (node.is<Access>()) out.functions.insert(node.as<Access>().name());
  });
}

inline FreeSymbols free_symbols(const Expr& e) {
  FreeSymbols out;
  collect_free_symbols(e, out);
  return out;
}

// Evaluates `e` in element type T. `leaf(node)` is called for every Symbol and
// Access node. Sums and products fold left to right and powers multiply
// repeatedly; compiled tapes use the same order so results match bit for bit.
template <class T, class Leaf>
T evaluate(const Expr& e, Leaf&& leaf) {
  return std::visit(
      [&](const auto& v) -> T {
        using N = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<N, Const>) {
          return static_cast<T>(v.value);
        } else if constexpr (std::is_same_v<N, Symbol> || std::is_same_v<N, Access>) {
          return static_cast<T>(leaf(e));
        } else if constexpr (std::is_same_v<N, Derivative>) {
          throw Error(ErrorCode::InvalidArgument, "cannot evaluate an undiscretized derivative");
        } else if constexpr (std::is_same_v<N, Add>) {
          T acc = evaluate<T>(v.operands.front(), leaf);
          for (std::size_t i = 1; i < v.operands.size(); ++i) acc = acc + evaluate<T>(v.operands[i], leaf);
          return acc;
        } else if constexpr (std::is_same_v<N, Mul>) {
          T acc = evaluate<T>(v.operands.front(), leaf);
          for (std::size_t i = 1; i < v.operands.size(); ++i) acc = acc * evaluate<T>(v.operands[i], leaf);
          return acc;
        } else if constexpr (std::is_same_v<N, Div>) {
          T num = evaluate<T>(v.numerator, leaf);
          T den = evaluate<T>(v.denominator, leaf);
          return num / den;
        } else {
          if (v.exponent == 0) return T(1);
          T base = evaluate<T>(v.base, leaf);
          T acc = base;
          for (int i = 1; i < v.exponent; ++i) acc = acc * base;
          return acc;
        }
      },
      e.node().data);
}

}  // namespace sf
