#pragma once

// Linear solve for a single stencil point.
//
// Expressions are expanded into sums of Laurent monomials (products of atoms
// raised to signed integer powers). Atoms are scalar symbols, grid accesses,
// or opaque denominators that are not monomials. The target's coefficient and
// the remainder are then combined over common monomial denominators.

#include <map>
#include <utility>
#include <vector>

#include "stencilforge/expr.hpp"
#include "stencilforge/simplify.hpp"

namespace sf {

namespace poly {

struct Monomial {
  std::vector<std::pair<Expr, int>> factors;  // sorted by atom, powers != 0

  bool empty() const { return factors.empty(); }
};

inline std::strong_ordering compare(const Monomial& a, const Monomial& b) {
  std::size_t n = std::min(a.factors.size(), b.factors.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = detail::compare_base(a.factors[i].first, b.factors[i].first); c != 0) return c;
    if (auto c = a.factors[i].second <=> b.factors[i].second; c != 0) return c;
  }
  return a.factors.size() <=> b.factors.size();
}

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
};

using Poly = std::map<Monomial, double, MonomialLess>;

inline Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.factors.size() || j < b.factors.size()) {
    if (j == b.factors.size() ||
        (i < a.factors.size() && detail::compare_base(a.factors[i].first, b.factors[j].first) < 0)) {
      out.factors.push_back(a.factors[i++]);
    } else if (i == a.factors.size() || detail::compare_base(b.factors[j].first, a.factors[i].first) < 0) {
      out.factors.push_back(b.factors[j++]);
    } else {
      int power = a.factors[i].second + b.factors[j].second;
      if (power != 0) out.factors.emplace_back(a.factors[i].first, power);
      ++i;
      ++j;
    }
  }
  return out;
}

inline Monomial inverse(const Monomial& m) {
  Monomial out = m;
  for (auto& f : out.factors) f.second = -f.second;
  return out;
}

inline void accumulate(Poly& p, const Monomial& m, double c) {
  if (c == 0.0) return;
  auto [it, inserted] = p.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) p.erase(it);
  }
}

inline Poly sum(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [m, c] : b) accumulate(out, m, c);
  return out;
}

inline Poly product(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) accumulate(out, multiply(ma, mb), ca * cb);
  }
  return out;
}

inline Poly scale(const Poly& a, const Monomial& m, double c) {
  Poly out;
  for (const auto& [ma, ca] : a) accumulate(out, multiply(ma, m), ca * c);
  return out;
}

inline Poly atom(const Expr& e) { return Poly{{Monomial{{{e, 1}}}, 1.0}}; }

inline Poly one() { return Poly{{Monomial{}, 1.0}}; }

Expr to_expr(const Poly& p);

inline Poly expand(const Expr& e) {
  return std::visit(
      [&](const auto& v) -> Poly {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Const>) {
          return v.value == 0.0 ? Poly{} : Poly{{Monomial{}, v.value}};
        } else if constexpr (std::is_same_v<T, Symbol> || std::is_same_v<T, Access>) {
          return atom(e);
        } else if constexpr (std::is_same_v<T, Derivative>) {
          throw Error(ErrorCode::InvalidArgument, "expand derivatives before solving: " + to_string(e));
        } else if constexpr (std::is_same_v<T, Add>) {
          Poly out;
          for (const auto& op : v.operands) out = sum(out, expand(op));
          return out;
        } else if constexpr (std::is_same_v<T, Mul>) {
          Poly out = one();
          for (const auto& op : v.operands) out = product(out, expand(op));
          return out;
        } else if constexpr (std::is_same_v<T, Div>) {
          Poly den = expand(v.denominator);
          if (den.empty()) throw Error(ErrorCode::InvalidArgument, "division by zero in " + to_string(e));
          Poly num = expand(v.numerator);
          if (den.size() == 1) {
            const auto& [m, c] = *den.begin();
            return scale(num, inverse(m), 1.0 / c);
          }
          return product(num, Poly{{Monomial{{{to_expr(den), -1}}}, 1.0}});
        } else {
          Poly out = one();
          Poly base = expand(v.base);
          for (int i = 0; i < v.exponent; ++i) out = product(out, base);
          return out;
        }
      },
      e.node().data);
}

// Least common monomial denominator of all terms.
inline Monomial common_denominator(const Poly& p) {
  std::map<Expr, int, TermLess> powers;
  for (const auto& [m, c] : p) {
    for (const auto& [a, k] : m.factors) {
      if (k < 0) powers[a] = std::max(powers[a], -k);
    }
  }
  Monomial out;
  for (const auto& [a, k] : powers) out.factors.emplace_back(a, k);
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& x, const auto& y) { return detail::compare_base(x.first, y.first) < 0; });
  return out;
}

inline Expr monomial_expr(const Monomial& m, double coefficient) {
  std::vector<Expr> factors;
  for (const auto& [a, k] : m.factors) factors.push_back(k == 1 ? a : pow(a, k));
  return detail::make_term(coefficient, std::move(factors));
}

// Numerator (non-negative powers only) and monomial denominator.
inline std::pair<Poly, Monomial> together(const Poly& p) {
  Monomial den = common_denominator(p);
  return {scale(p, den, 1.0), den};
}

// Builds numerator/denominator form. A coefficient shared by every numerator
// term is pulled out in front of the sum.
inline Expr to_expr(const Poly& p) {
  if (p.empty()) return constant(0.0);
  auto [num, den] = together(p);
  double shared = num.begin()->second;
  bool all_equal = num.size() > 1 &&
                   std::all_of(num.begin(), num.end(), [&](const auto& t) { return t.second == shared; });
  std::vector<Expr> terms;
  for (const auto& [m, c] : num) terms.push_back(monomial_expr(m, all_equal ? 1.0 : c));
  Expr numerator = add(std::move(terms));
  if (all_equal && shared != 1.0) numerator = mul({constant(shared), numerator});
  if (den.empty()) return simplify(numerator);
  return simplify(div(numerator, monomial_expr(den, 1.0)));
}

}  // namespace poly

// Canonical rational form: expands products, cancels monomials and collects
// every term over a common monomial denominator.
inline Expr expand_rational(const Expr& e) { return poly::to_expr(poly::expand(e)); }

// Fully distributed form: one term per monomial, each over its own monomial
// denominator, e.g. -u(t, x, y)/s + u(t + s, x, y)/s.
inline Expr expand_terms(const Expr& e) {
  std::vector<Expr> terms;
  for (const auto& [m, c] : poly::expand(e)) {
    poly::Monomial up;
    poly::Monomial down;
    for (const auto& [a, k] : m.factors) (k > 0 ? up : down).factors.emplace_back(a, std::abs(k));
    Expr numerator = poly::monomial_expr(up, c);
    terms.push_back(down.empty() ? numerator : div(numerator, poly::monomial_expr(down, 1.0)));
  }
  if (terms.empty()) return constant(0.0);
  return simplify(add(std::move(terms)));
}

// Solves lhs == rhs for `target` (a Symbol or Access) when the residual is
// affine in the target.
inline Expr solve_linear(const Equation& eq, const Expr& target) {
  if (!target.is<Symbol>() && !target.is<Access>()) {
    throw Error(ErrorCode::InvalidArgument, "solve target must be a symbol or grid access");
  }
  poly::Poly residual = poly::expand(eq.lhs - eq.rhs);
  poly::Poly coefficient;
  poly::Poly rest;
  for (const auto& [m, c] : residual) {
    int power = 0;
    poly::Monomial others;
    for (const auto& [a, k] : m.factors) {
      if (a == target) {
        power = k;
      } else {
        if (contains(a, target)) {
          throw Error(ErrorCode::NonLinearTarget, to_string(target) + " occurs inside " + to_string(a));
        }
        others.factors.emplace_back(a, k);
      }
    }
    if (power == 0) {
      poly::accumulate(rest, m, c);
    } else if (power == 1) {
      poly::accumulate(coefficient, others, c);
    } else {
      throw Error(ErrorCode::NonLinearTarget,
                  to_string(target) + " occurs with power " + std::to_string(power));
    }
  }
  if (coefficient.empty()) {
    throw Error(ErrorCode::TargetAbsent, to_string(target) + " has a zero coefficient");
  }
  if (rest.empty()) return constant(0.0);

  if (coefficient.size() == 1) {
    const auto& [m, c] = *coefficient.begin();
    poly::Poly solution;
    for (const auto& [mr, cr] : rest) poly::accumulate(solution, poly::multiply(mr, poly::inverse(m)), -cr / c);
    return poly::to_expr(solution);
  }

  auto [coef_num, coef_den] = poly::together(coefficient);
  auto [rest_num, rest_den] = poly::together(rest);
  poly::Monomial ratio = poly::multiply(coef_den, poly::inverse(rest_den));
  poly::Monomial up;
  poly::Monomial down;
  for (const auto& [a, k] : ratio.factors) (k > 0 ? up : down).factors.emplace_back(a, std::abs(k));

  double sign = std::all_of(coef_num.begin(), coef_num.end(), [](const auto& t) { return t.second < 0; }) ? 1.0
                                                                                                           : -1.0;
  poly::Poly numerator = poly::scale(rest_num, up, sign);
  poly::Poly denominator = poly::scale(coef_num, poly::Monomial{}, -sign);
  Expr den = poly::to_expr(denominator);
  if (!down.empty()) den = mul({poly::monomial_expr(down, 1.0), den});
  return simplify(div(poly::to_expr(numerator), den));
}

}  // namespace sf
