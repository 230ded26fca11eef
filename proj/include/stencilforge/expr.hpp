#pragma once

// Immutable symbolic expression trees.
//
// An Expr is a cheap handle to a shared, immutable node. Nodes carry a
// precomputed structural hash and height, so equality and canonical ordering
// are structural and safe to evaluate from any thread.

#include <algorithm>
#include <array>
#include <charconv>
#include <compare>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "stencilforge/errors.hpp"

namespace sf {

inline constexpr std::string_view kTimeDim = "t";
inline constexpr std::string_view kSpaceSpacing = "h";
inline constexpr std::string_view kTimeSpacing = "s";

// How the time axis of a function is stored.
//   none:   not time-varying, one buffer
//   cyclic: time_order + 1 buffers indexed modulo the buffer count
//   full:   one row per time step (sparse point values)
enum class TimeStorage { none, cyclic, full };

struct FunctionDecl {
  std::string name;
  std::vector<std::string> dims;  // non-time dimensions, outermost first
  std::vector<int> shape;         // extent of each entry of dims
  TimeStorage time = TimeStorage::none;
  int time_order = 0;
  int space_order = 2;

  bool time_varying() const { return time != TimeStorage::none; }
  int halo() const { return space_order / 2; }
  int buffers() const { return time == TimeStorage::cyclic ? time_order + 1 : 1; }
  std::size_t rank() const { return dims.size() + (time_varying() ? 1 : 0); }
  std::size_t points() const {
    std::size_t n = 1;
    for (int e : shape) n *= static_cast<std::size_t>(e);
    return n;
  }
};

using FunctionRef = std::shared_ptr<const FunctionDecl>;

struct Relative {
  std::string dim;
  int offset = 0;
  bool operator==(const Relative&) const = default;
};

struct Absolute {
  int value = 0;
  bool operator==(const Absolute&) const = default;
};

using Index = std::variant<Relative, Absolute>;

enum class Side { left, right, centered };

inline std::string_view to_string(Side side) {
  switch (side) {
    case Side::left: return "left";
    case Side::right: return "right";
    case Side::centered: return "centered";
  }
  return "?";
}

struct Node;

class Expr {
 public:
  Expr();
  Expr(double value);  // NOLINT: implicit numeric promotion is the point
  Expr(int value) : Expr(static_cast<double>(value)) {}  // NOLINT

  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  const Node& node() const { return *node_; }
  std::size_t hash() const;
  int height() const;

  template <class T>
  bool is() const;
  template <class T>
  const T& as() const;

  bool identical(const Expr& other) const { return node_ == other.node_; }

 private:
  std::shared_ptr<const Node> node_;
};

struct Const {
  double value = 0.0;
};
struct Symbol {
  std::string name;
};
struct Access {
  FunctionRef function;
  std::vector<Index> indices;

  const std::string& name() const { return function->name; }
};
struct Derivative {
  Expr target;
  std::string dim;
  int order = 1;
  Side side = Side::centered;
  int accuracy = 2;
};
struct Add {
  std::vector<Expr> operands;
};
struct Mul {
  std::vector<Expr> operands;
};
struct Div {
  Expr numerator;
  Expr denominator;
};
struct Pow {
  Expr base;
  int exponent = 1;
};

using NodeData = std::variant<Const, Symbol, Access, Derivative, Add, Mul, Div, Pow>;

struct Node {
  NodeData data;
  std::size_t hash = 0;
  int height = 0;
};

namespace detail {

inline void hash_combine(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

inline std::size_t hash_index(const Index& index) {
  std::size_t h = index.index();
  if (const auto* rel = std::get_if<Relative>(&index)) {
    hash_combine(h, std::hash<std::string>{}(rel->dim));
    hash_combine(h, std::hash<int>{}(rel->offset));
  } else {
    hash_combine(h, std::hash<int>{}(std::get<Absolute>(index).value));
  }
  return h;
}

inline std::shared_ptr<const Node> make_node(NodeData data) {
  auto node = std::make_shared<Node>();
  std::size_t h = data.index() * 0x51ed27ULL;
  int height = 0;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Const>) {
          double value = v.value == 0.0 ? 0.0 : v.value;  // +0 and -0 hash alike
          hash_combine(h, std::hash<double>{}(value));
        } else if constexpr (std::is_same_v<T, Symbol>) {
          hash_combine(h, std::hash<std::string>{}(v.name));
        } else if constexpr (std::is_same_v<T, Access>) {
          hash_combine(h, std::hash<std::string>{}(v.function->name));
          for (const auto& index : v.indices) hash_combine(h, hash_index(index));
        } else if constexpr (std::is_same_v<T, Derivative>) {
          hash_combine(h, v.target.hash());
          hash_combine(h, std::hash<std::string>{}(v.dim));
          hash_combine(h, std::hash<int>{}(v.order));
          hash_combine(h, std::hash<int>{}(static_cast<int>(v.side)));
          hash_combine(h, std::hash<int>{}(v.accuracy));
          height = v.target.height() + 1;
        } else if constexpr (std::is_same_v<T, Add> || std::is_same_v<T, Mul>) {
          for (const auto& op : v.operands) {
            hash_combine(h, op.hash());
            height = std::max(height, op.height() + 1);
          }
        } else if constexpr (std::is_same_v<T, Div>) {
          hash_combine(h, v.numerator.hash());
          hash_combine(h, v.denominator.hash());
          height = std::max(v.numerator.height(), v.denominator.height()) + 1;
        } else if constexpr (std::is_same_v<T, Pow>) {
          hash_combine(h, v.base.hash());
          hash_combine(h, std::hash<int>{}(v.exponent));
          height = v.base.height() + 1;
        }
      },
      data);
  node->data = std::move(data);
  node->hash = h;
  node->height = height;
  return node;
}

}  // namespace detail

inline Expr::Expr() : Expr(0.0) {}
inline Expr::Expr(double value) : node_(detail::make_node(Const{value})) {}
inline std::size_t Expr::hash() const { return node_->hash; }
inline int Expr::height() const { return node_->height; }

template <class T>
bool Expr::is() const {
  return std::holds_alternative<T>(node_->data);
}

template <class T>
const T& Expr::as() const {
  return std::get<T>(node_->data);
}

// ---------------------------------------------------------------------------
// Raw constructors. These never simplify; degenerate Add/Mul collapse to their
// single operand so the "at least two operands" invariant always holds.

inline Expr constant(double value) { return Expr(value); }
inline Expr symbol(std::string name) { return Expr(detail::make_node(Symbol{std::move(name)})); }

inline Expr access(FunctionRef function, std::vector<Index> indices) {
  if (indices.size() != function->rank()) {
    throw Error(ErrorCode::InvalidArgument,
                "access to '" + function->name + "' needs " + std::to_string(function->rank()) +
                    " indices, got " + std::to_string(indices.size()));
  }
  return Expr(detail::make_node(Access{std::move(function), std::move(indices)}));
}

inline Expr derivative(Expr target, std::string dim, int order, Side side, int accuracy) {
  if (order < 1 || accuracy < 1) {
    throw Error(ErrorCode::InvalidArgument, "derivative order and accuracy must be >= 1");
  }
  if (side == Side::centered && accuracy % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument, "centered derivatives require an even accuracy order");
  }
  return Expr(detail::make_node(Derivative{std::move(target), std::move(dim), order, side, accuracy}));
}

inline Expr add(std::vector<Expr> operands) {
  if (operands.empty()) return constant(0.0);
  if (operands.size() == 1) return operands.front();
  return Expr(detail::make_node(Add{std::move(operands)}));
}

inline Expr mul(std::vector<Expr> operands) {
  if (operands.empty()) return constant(1.0);
  if (operands.size() == 1) return operands.front();
  return Expr(detail::make_node(Mul{std::move(operands)}));
}

inline Expr div(Expr numerator, Expr denominator) {
  return Expr(detail::make_node(Div{std::move(numerator), std::move(denominator)}));
}

inline Expr pow(Expr base, int exponent) {
  if (exponent < 0) throw Error(ErrorCode::InvalidArgument, "integer powers must be non-negative");
  return Expr(detail::make_node(Pow{std::move(base), exponent}));
}

inline Expr operator+(const Expr& a, const Expr& b) { return add({a, b}); }
inline Expr operator*(const Expr& a, const Expr& b) { return mul({a, b}); }
inline Expr operator/(const Expr& a, const Expr& b) { return div(a, b); }
inline Expr operator-(const Expr& a) { return mul({constant(-1.0), a}); }
inline Expr operator-(const Expr& a, const Expr& b) { return add({a, -b}); }

inline bool is_const(const Expr& e, double value) {
  return e.is<Const>() && e.as<Const>().value == value;
}

// ---------------------------------------------------------------------------
// Structural equality.

bool operator==(const Expr& a, const Expr& b);

namespace detail {

inline bool equal_nodes(const NodeData& a, const NodeData& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b);
        if constexpr (std::is_same_v<T, Const>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, Symbol>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, Access>) {
          return x.function->name == y.function->name && x.indices == y.indices;
        } else if constexpr (std::is_same_v<T, Derivative>) {
          return x.dim == y.dim && x.order == y.order && x.side == y.side &&
                 x.accuracy == y.accuracy && x.target == y.target;
        } else if constexpr (std::is_same_v<T, Add> || std::is_same_v<T, Mul>) {
          return x.operands == y.operands;
        } else if constexpr (std::is_same_v<T, Div>) {
          return x.numerator == y.numerator && x.denominator == y.denominator;
        } else {
          return x.exponent == y.exponent && x.base == y.base;
        }
      },
      a);
}

}  // namespace detail

inline bool operator==(const Expr& a, const Expr& b) {
  if (a.identical(b)) return true;
  if (a.hash() != b.hash() || a.height() != b.height()) return false;
  return detail::equal_nodes(a.node().data, b.node().data);
}

struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e.hash(); }
};

// ---------------------------------------------------------------------------
// Canonical ordering.
//
// Constants come first, then named leaves ordered by (name, index tuple),
// then composite nodes. Powers sort next to their base so that h and h**2
// stay adjacent. Sum terms are ordered by their non-numeric factors so that
// printing and CSE naming are deterministic.

std::strong_ordering compare_factor(const Expr& a, const Expr& b);
std::strong_ordering compare_term(const Expr& a, const Expr& b);

namespace detail {

inline std::strong_ordering compare_index(const Index& a, const Index& b) {
  if (a.index() != b.index()) return a.index() <=> b.index();
  if (const auto* ra = std::get_if<Relative>(&a)) {
    const auto& rb = std::get<Relative>(b);
    if (auto c = ra->dim <=> rb.dim; c != 0) return c;
    if (auto c = std::abs(ra->offset) <=> std::abs(rb.offset); c != 0) return c;
    return (ra->offset > 0) <=> (rb.offset > 0);
  }
  return std::get<Absolute>(a).value <=> std::get<Absolute>(b).value;
}

inline std::strong_ordering compare_double(double a, double b) {
  if (a < b) return std::strong_ordering::less;
  if (a > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// Rank of the base of a factor (Pow is unwrapped by the caller).
inline int leaf_rank(const Expr& e) {
  if (e.is<Const>()) return 0;
  if (e.is<Symbol>() || e.is<Access>()) return 1;
  if (e.is<Add>()) return 2;
  if (e.is<Mul>()) return 3;
  if (e.is<Div>()) return 4;
  if (e.is<Derivative>()) return 5;
  return 6;
}

inline std::strong_ordering compare_lists(const std::vector<Expr>& a, const std::vector<Expr>& b,
                                          std::strong_ordering (*cmp)(const Expr&, const Expr&)) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = cmp(a[i], b[i]); c != 0) return c;
  }
  return a.size() <=> b.size();
}

inline std::strong_ordering compare_base(const Expr& a, const Expr& b) {
  int ra = leaf_rank(a);
  int rb = leaf_rank(b);
  if (ra != rb) return ra <=> rb;
  if (a.is<Const>()) return compare_double(a.as<Const>().value, b.as<Const>().value);
  if (ra == 1) {
    const std::string& na = a.is<Symbol>() ? a.as<Symbol>().name : a.as<Access>().name();
    const std::string& nb = b.is<Symbol>() ? b.as<Symbol>().name : b.as<Access>().name();
    if (auto c = na <=> nb; c != 0) return c;
    if (a.is<Symbol>() != b.is<Symbol>()) return a.is<Symbol>() ? std::strong_ordering::less
                                                                : std::strong_ordering::greater;
    if (a.is<Symbol>()) return std::strong_ordering::equal;
    const auto& ia = a.as<Access>().indices;
    const auto& ib = b.as<Access>().indices;
    std::size_t n = std::min(ia.size(), ib.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (auto c = compare_index(ia[i], ib[i]); c != 0) return c;
    }
    return ia.size() <=> ib.size();
  }
  if (a.is<Add>()) return compare_lists(a.as<Add>().operands, b.as<Add>().operands, &compare_term);
  if (a.is<Mul>()) return compare_lists(a.as<Mul>().operands, b.as<Mul>().operands, &compare_factor);
  if (a.is<Div>()) {
    const auto& da = a.as<Div>();
    const auto& db = b.as<Div>();
    if (auto c = compare_term(da.denominator, db.denominator); c != 0) return c;
    return compare_term(da.numerator, db.numerator);
  }
  if (a.is<Derivative>()) {
    const auto& da = a.as<Derivative>();
    const auto& db = b.as<Derivative>();
    if (auto c = da.dim <=> db.dim; c != 0) return c;
    if (auto c = da.order <=> db.order; c != 0) return c;
    if (auto c = static_cast<int>(da.side) <=> static_cast<int>(db.side); c != 0) return c;
    if (auto c = da.accuracy <=> db.accuracy; c != 0) return c;
    return compare_term(da.target, db.target);
  }
  // Nested powers only occur in unsimplified trees.
  const auto& pa = a.as<Pow>();
  const auto& pb = b.as<Pow>();
  if (auto c = compare_factor(pa.base, pb.base); c != 0) return c;
  return pa.exponent <=> pb.exponent;
}

inline std::pair<Expr, int> split_power(const Expr& e) {
  if (e.is<Pow>()) return {e.as<Pow>().base, e.as<Pow>().exponent};
  return {e, 1};
}

// Splits a term into its numeric coefficient and remaining factors.
inline std::pair<double, std::vector<Expr>> split_coefficient(const Expr& e) {
  if (e.is<Const>()) return {e.as<Const>().value, {}};
  if (e.is<Mul>()) {
    const auto& ops = e.as<Mul>().operands;
    if (!ops.empty() && ops.front().is<Const>()) {
      return {ops.front().as<Const>().value, std::vector<Expr>(ops.begin() + 1, ops.end())};
    }
    return {1.0, ops};
  }
  return {1.0, {e}};
}

}  // namespace detail

inline std::strong_ordering compare_factor(const Expr& a, const Expr& b) {
  auto [ba, ea] = detail::split_power(a);
  auto [bb, eb] = detail::split_power(b);
  if (auto c = detail::compare_base(ba, bb); c != 0) return c;
  if (auto c = ea <=> eb; c != 0) return c;
  // Pow(x, 1) never survives simplification; keep the order total anyway.
  return a.is<Pow>() <=> b.is<Pow>();
}

inline std::strong_ordering compare_term(const Expr& a, const Expr& b) {
  auto [ca, fa] = detail::split_coefficient(a);
  auto [cb, fb] = detail::split_coefficient(b);
  if (auto c = detail::compare_lists(fa, fb, &compare_factor); c != 0) return c;
  if (auto c = detail::compare_double(ca, cb); c != 0) return c;
  // Mul(1, x) vs x only differ in unsimplified trees.
  return a.is<Mul>() <=> b.is<Mul>();
}

struct TermLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare_term(a, b) < 0; }
};

// ---------------------------------------------------------------------------
// Printing. Output follows Python/SymPy conventions (x**2, u(t + s, x - h)).

inline std::string format_real(double value) {
  if (std::isfinite(value) && value == std::trunc(value) && std::abs(value) < 1e16) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(1);
    out << value;
    return out.str();
  }
  std::array<char, 64> buffer{};
  auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), result.ptr);
}

inline std::string format_index(const Index& index) {
  if (const auto* abs = std::get_if<Absolute>(&index)) return std::to_string(abs->value);
  const auto& rel = std::get<Relative>(index);
  if (rel.offset == 0) return rel.dim;
  std::string spacing(rel.dim == kTimeDim ? kTimeSpacing : kSpaceSpacing);
  int magnitude = std::abs(rel.offset);
  std::string step = magnitude == 1 ? spacing : std::to_string(magnitude) + "*" + spacing;
  return rel.dim + (rel.offset > 0 ? " + " : " - ") + step;
}

std::string to_string(const Expr& e);

namespace detail {

inline int precedence(const Expr& e) {
  if (e.is<Add>()) return 1;
  if (e.is<Mul>() || e.is<Div>()) return 2;
  if (e.is<Const>() && e.as<Const>().value < 0) return 1;
  if (e.is<Pow>()) return 3;
  return 4;
}

inline std::string wrap(const Expr& e, int min_precedence) {
  std::string text = to_string(e);
  return precedence(e) < min_precedence ? "(" + text + ")" : text;
}

inline bool is_negative_term(const Expr& e) {
  if (e.is<Const>()) return e.as<Const>().value < 0;
  if (e.is<Mul>()) return is_negative_term(e.as<Mul>().operands.front());
  if (e.is<Div>()) return is_negative_term(e.as<Div>().numerator);
  return false;
}

inline Expr negate_term(const Expr& e) {
  if (e.is<Const>()) return constant(-e.as<Const>().value);
  if (e.is<Mul>()) {
    auto ops = e.as<Mul>().operands;
    ops.front() = negate_term(ops.front());
    if (is_const(ops.front(), 1.0)) ops.erase(ops.begin());
    return mul(std::move(ops));
  }
  if (e.is<Div>()) return div(negate_term(e.as<Div>().numerator), e.as<Div>().denominator);
  return e;
}

inline std::string print_mul(const Mul& m) {
  std::string out;
  std::size_t start = 0;
  if (m.operands.front().is<Const>()) {
    double c = m.operands.front().as<Const>().value;
    start = 1;
    if (c == -1.0) {
      out = "-";
    } else if (c != 1.0) {
      out = format_real(c) + "*";
    }
  }
  for (std::size_t i = start; i < m.operands.size(); ++i) {
    if (i > start) out += "*";
    out += wrap(m.operands[i], 2);
  }
  return out;
}

}  // namespace detail

inline std::string to_string(const Expr& e) {
  return std::visit(
      [&](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Const>) {
          return format_real(v.value);
        } else if constexpr (std::is_same_v<T, Symbol>) {
          return v.name;
        } else if constexpr (std::is_same_v<T, Access>) {
          std::string out = v.function->name + "(";
          for (std::size_t i = 0; i < v.indices.size(); ++i) {
            if (i) out += ", ";
            out += format_index(v.indices[i]);
          }
          return out + ")";
        } else if constexpr (std::is_same_v<T, Derivative>) {
          return "Derivative(" + to_string(v.target) + ", " + v.dim + ", " + std::to_string(v.order) +
                 ", " + std::string(to_string(v.side)) + ", " + std::to_string(v.accuracy) + ")";
        } else if constexpr (std::is_same_v<T, Add>) {
          std::string out = to_string(v.operands.front());
          for (std::size_t i = 1; i < v.operands.size(); ++i) {
            const Expr& term = v.operands[i];
            if (detail::is_negative_term(term)) {
              out += " - " + detail::wrap(detail::negate_term(term), 2);
            } else {
              out += " + " + detail::wrap(term, 2);
            }
          }
          return out;
        } else if constexpr (std::is_same_v<T, Mul>) {
          return detail::print_mul(v);
        } else if constexpr (std::is_same_v<T, Div>) {
          return detail::wrap(v.numerator, 2) + "/" + detail::wrap(v.denominator, 3);
        } else {
          return detail::wrap(v.base, 4) + "**" + std::to_string(v.exponent);
        }
      },
      e.node().data);
}

inline std::ostream& operator<<(std::ostream& out, const Expr& e) { return out << to_string(e); }

// ---------------------------------------------------------------------------
// Equations.

struct Equation {
  Expr lhs;
  Expr rhs;
};

inline bool operator==(const Equation& a, const Equation& b) { return a.lhs == b.lhs && a.rhs == b.rhs; }

inline std::string to_string(const Equation& eq) {
  return "Eq(" + to_string(eq.lhs) + ", " + to_string(eq.rhs) + ")";
}

inline std::ostream& operator<<(std::ostream& out, const Equation& eq) { return out << to_string(eq); }

// ---------------------------------------------------------------------------
// Traversal helpers.

template <class Fn>
void visit_preorder(const Expr& e, Fn&& fn) {
  fn(e);
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Derivative>) {
          visit_preorder(v.target, fn);
        } else if constexpr (std::is_same_v<T, Add> || std::is_same_v<T, Mul>) {
          for (const auto& op : v.operands) visit_preorder(op, fn);
        } else if constexpr (std::is_same_v<T, Div>) {
          visit_preorder(v.numerator, fn);
          visit_preorder(v.denominator, fn);
        } else if constexpr (std::is_same_v<T, Pow>) {
          visit_preorder(v.base, fn);
        }
      },
      e.node().data);
}

// Rebuilds `e` bottom-up, replacing each node by fn(rebuilt node). `fn` may
// return its argument unchanged.
template <class Fn>
Expr transform(const Expr& e, Fn&& fn) {
  Expr rebuilt = std::visit(
      [&](const auto& v) -> Expr {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Derivative>) {
          return derivative(transform(v.target, fn), v.dim, v.order, v.side, v.accuracy);
        } else if constexpr (std::is_same_v<T, Add>) {
          std::vector<Expr> ops;
          ops.reserve(v.operands.size());
          for (const auto& op : v.operands) ops.push_back(transform(op, fn));
          return add(std::move(ops));
        } else if constexpr (std::is_same_v<T, Mul>) {
          std::vector<Expr> ops;
          ops.reserve(v.operands.size());
          for (const auto& op : v.operands) ops.push_back(transform(op, fn));
          return mul(std::move(ops));
        } else if constexpr (std::is_same_v<T, Div>) {
          return div(transform(v.numerator, fn), transform(v.denominator, fn));
        } else if constexpr (std::is_same_v<T, Pow>) {
          return pow(transform(v.base, fn), v.exponent);
        } else {
          return e;
        }
      },
      e.node().data);
  return fn(rebuilt);
}

inline bool contains(const Expr& haystack, const Expr& needle) {
  bool found = false;
  visit_preorder(haystack, [&](const Expr& e) {
    if (!found && e == needle) found = true;
  });
  return found;
}

}  // namespace sf

template <>
struct std::hash<sf::Expr> {
  std::size_t operator()(const sf::Expr& e) const { return e.hash(); }
};
