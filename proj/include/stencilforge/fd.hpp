#pragma once

// Finite-difference weights and expansion of derivative nodes into explicit
// stencils.

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "stencilforge/errors.hpp"
#include "stencilforge/expr.hpp"
#include "stencilforge/simplify.hpp"

namespace sf {

using Rational = boost::multiprecision::cpp_rational;

struct FdWeights {
  int derivative_order = 1;
  std::vector<int> offsets;
  std::vector<Rational> exact;
  std::vector<double> coefficients;  // exact weights rounded to double

  // Multiply the stencil sum by spacing^-spacing_power.
  int spacing_power() const { return derivative_order; }
};

// Weights of the `order`-th derivative at offset 0 on the given integer
// offsets, computed in exact arithmetic with Fornberg's recurrence.
inline FdWeights fd_weights(int order, const std::vector<int>& offsets) {
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "derivative order must be >= 1");
  if (offsets.size() < static_cast<std::size_t>(order) + 1) {
    throw Error(ErrorCode::InvalidArgument, "need at least order + 1 offsets");
  }
  const std::size_t n = offsets.size();
  const int m = order;
  std::vector<std::vector<Rational>> c(n, std::vector<Rational>(m + 1, Rational(0)));
  Rational c1 = 1;
  Rational c4 = offsets[0];
  c[0][0] = 1;
  for (std::size_t i = 1; i < n; ++i) {
    int mn = std::min<int>(static_cast<int>(i), m);
    Rational c2 = 1;
    Rational c5 = c4;
    c4 = offsets[i];
    for (std::size_t j = 0; j < i; ++j) {
      Rational c3 = Rational(offsets[i] - offsets[j]);
      if (c3 == 0) {
        throw Error(ErrorCode::SingularSystem, "repeated offset " + std::to_string(offsets[i]));
      }
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (Rational(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - Rational(k) * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  FdWeights out;
  out.derivative_order = order;
  out.offsets = offsets;
  for (std::size_t j = 0; j < n; ++j) {
    out.exact.push_back(c[j][m]);
    out.coefficients.push_back(c[j][m].convert_to<double>());
  }
  return out;
}

// Offsets used for a derivative of the given order, side and accuracy.
inline std::vector<int> stencil_offsets(int order, Side side, int accuracy) {
  std::vector<int> out;
  switch (side) {
    case Side::left:
      for (int o = -(accuracy + order - 1); o <= 0; ++o) out.push_back(o);
      break;
    case Side::right:
      for (int o = 0; o <= accuracy + order - 1; ++o) out.push_back(o);
      break;
    case Side::centered: {
      int width = accuracy + order - (order % 2 == 0 ? 1 : 0);
      int reach = width / 2;
      for (int o = -reach; o <= reach; ++o) out.push_back(o);
      break;
    }
  }
  return out;
}

namespace detail {

inline const FdWeights& cached_weights(int order, Side side, int accuracy) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int>, FdWeights> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_tuple(order, static_cast<int>(side), accuracy);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, fd_weights(order, stencil_offsets(order, side, accuracy))).first;
  return it->second;
}

inline void check_reach(const Access& a) {
  const auto& f = *a.function;
  for (const auto& index : a.indices) {
    const auto* r = std::get_if<Relative>(&index);
    if (r == nullptr) continue;
    if (r->dim == kTimeDim) {
      if (f.time == TimeStorage::cyclic && std::abs(r->offset) > f.time_order) {
        throw Error(ErrorCode::HaloExceeded, "time offset " + std::to_string(r->offset) + " on " + f.name +
                                                 " exceeds time_order " + std::to_string(f.time_order));
      }
    } else if (f.time != TimeStorage::full && std::abs(r->offset) > f.halo()) {
      throw Error(ErrorCode::HaloExceeded, "offset " + std::to_string(r->offset) + " in " + r->dim + " on " + f.name +
                                               " exceeds halo " + std::to_string(f.halo()));
    }
  }
}

}  // namespace detail

// Shifts every relative index in `dim` by `steps`.
inline Expr shift(const Expr& e, const std::string& dim, int steps) {
  return transform(e, [&](const Expr& node) -> Expr {
    if (!node.is<Access>()) return node;
    const auto& a = node.as<Access>();
    auto indices = a.indices;
    bool changed = false;
    for (auto& index : indices) {
      if (auto* r = std::get_if<Relative>(&index); r != nullptr && r->dim == dim) {
        r->offset += steps;
        changed = true;
      }
    }
    return changed ? access(a.function, std::move(indices)) : node;
  });
}

// Replaces every Derivative node by its weighted stencil divided by the
// symbolic spacing (h in space, s in time) raised to the derivative order.
inline Expr expand_derivatives(const Expr& e) {
  return transform(e, [](const Expr& node) -> Expr {
    if (!node.is<Derivative>()) return node;
    const auto& d = node.as<Derivative>();
    const FdWeights& w = detail::cached_weights(d.order, d.side, d.accuracy);
    if (d.dim == kTimeDim) {
      // A time stencil spanning more levels than there are buffers would alias.
      int span = w.offsets.back() - w.offsets.front();
      visit_preorder(d.target, [&](const Expr& leaf) {
        if (!leaf.is<Access>()) return;
        const auto& f = *leaf.as<Access>().function;
        if (f.time == TimeStorage::cyclic && span > f.time_order) {
          throw Error(ErrorCode::HaloExceeded, "time stencil of width " + std::to_string(span + 1) + " on " + f.name +
                                                   " needs time_order >= " + std::to_string(span));
        }
      });
    }
    std::vector<Expr> terms;
    for (std::size_t j = 0; j < w.offsets.size(); ++j) {
      if (w.coefficients[j] == 0.0) continue;
      Expr shifted = shift(d.target, d.dim, w.offsets[j]);
      visit_preorder(shifted, [](const Expr& leaf) {
        if (leaf.is<Access>()) detail::check_reach(leaf.as<Access>());
      });
      terms.push_back(mul({constant(w.coefficients[j]), shifted}));
    }
    Expr spacing = symbol(std::string(d.dim == kTimeDim ? kTimeSpacing : kSpaceSpacing));
    return div(add(std::move(terms)), d.order == 1 ? spacing : pow(spacing, d.order));
  });
}

inline Equation expand_derivatives(const Equation& eq) {
  return {expand_derivatives(eq.lhs), expand_derivatives(eq.rhs)};
}

inline bool has_derivatives(const Expr& e) {
  bool found = false;
  visit_preorder(e, [&](const Expr& node) { found = found || node.is<Derivative>(); });
  return found;
}

}  // namespace sf
