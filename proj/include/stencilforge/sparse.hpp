#pragma once

// Off-grid point sets: multilinear interpolation from the grid and injection
// (scatter-add) into it, generated as scalar equations with absolute indices.

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "stencilforge/errors.hpp"
#include "stencilforge/expr.hpp"
#include "stencilforge/grid.hpp"
#include "stencilforge/simplify.hpp"

namespace sf {

inline constexpr std::string_view kPointDim = "p";

struct InterpStencil {
  std::vector<int> base;        // lower corner of the containing cell
  std::vector<double> weights;  // 2^ndim entries; bit d of the corner id (MSB first) selects base[d] + 1

  std::vector<int> corner(std::size_t id) const {
    std::vector<int> out = base;
    const std::size_t n = base.size();
    for (std::size_t d = 0; d < n; ++d) out[d] += static_cast<int>((id >> (n - 1 - d)) & 1U);
    return out;
  }
};

inline InterpStencil interp_weights(const std::vector<double>& coord, const Grid& grid) {
  if (coord.size() != grid.ndim()) throw Error(ErrorCode::InvalidArgument, "coordinate rank does not match grid");
  InterpStencil out;
  std::vector<double> xi(coord.size());
  for (std::size_t d = 0; d < coord.size(); ++d) {
    double u = coord[d] / grid.spacing()[d];
    int last = grid.shape()[d] - 1;
    if (!(u >= 0.0) || u > static_cast<double>(last)) {
      throw Error(ErrorCode::OutOfDomain, "coordinate " + std::to_string(coord[d]) + " outside dimension " +
                                              grid.dims()[d]);
    }
    int base = std::min(static_cast<int>(std::floor(u)), last - 1);
    out.base.push_back(base);
    xi[d] = u - base;
  }
  const std::size_t corners = std::size_t{1} << coord.size();
  for (std::size_t id = 0; id < corners; ++id) {
    double w = 1.0;
    for (std::size_t d = 0; d < coord.size(); ++d) {
      bool upper = (id >> (coord.size() - 1 - d)) & 1U;
      w *= upper ? xi[d] : 1.0 - xi[d];
    }
    out.weights.push_back(w);
  }
  return out;
}

// Moves an expression written at the generic point (x, y, ...) to an
// absolute grid node, and binds the point dimension to `point`.
inline Expr relocate(const Expr& e, const Grid& grid, const std::vector<int>& node, int point) {
  return transform(e, [&](const Expr& n) -> Expr {
    if (!n.is<Access>()) return n;
    const auto& a = n.as<Access>();
    auto indices = a.indices;
    for (std::size_t i = 0; i < indices.size(); ++i) {
      auto* r = std::get_if<Relative>(&indices[i]);
      if (r == nullptr || r->dim == kTimeDim) continue;
      if (r->dim == kPointDim) {
        indices[i] = Absolute{point};
        continue;
      }
      int value = node[grid.dim_index(r->dim)] + r->offset;
      std::size_t dim_pos = i - (a.function->time_varying() ? 1 : 0);
      if (value < 0 || value >= a.function->shape[dim_pos]) {
        throw Error(ErrorCode::OutOfDomain, a.name() + " index " + std::to_string(value) + " in " + r->dim +
                                                " is outside the grid");
      }
      indices[i] = Absolute{value};
    }
    return access(a.function, std::move(indices));
  });
}

// Point coordinates plus one value per (time step, point), stored row-major
// by time.
template <class T>
class SparsePointSet {
 public:
  SparsePointSet() = default;

  SparsePointSet(std::string name, const Grid& grid, std::vector<std::vector<double>> coordinates, int ntime)
      : grid_(grid), coordinates_(std::move(coordinates)), ntime_(ntime) {
    if (ntime < 1) throw Error(ErrorCode::InvalidArgument, "sparse point set needs ntime >= 1");
    for (const auto& c : coordinates_) {
      if (c.size() != grid.ndim()) throw Error(ErrorCode::InvalidArgument, "coordinate rank does not match grid");
    }
    auto decl = std::make_shared<FunctionDecl>();
    decl->name = std::move(name);
    decl->dims = {std::string(kPointDim)};
    decl->shape = {static_cast<int>(coordinates_.size())};
    decl->time = TimeStorage::full;
    decl->time_order = 0;
    decl_ = std::move(decl);
    values_.assign(static_cast<std::size_t>(ntime) * coordinates_.size(), T(0));
  }

  const std::string& name() const { return decl_->name; }
  const FunctionRef& decl() const { return decl_; }
  const Grid& grid() const { return grid_; }
  int npoint() const { return static_cast<int>(coordinates_.size()); }
  int ntime() const { return ntime_; }
  const std::vector<std::vector<double>>& coordinates() const { return coordinates_; }

  // Symbolic value of the current point at time t (or t + offset).
  Expr value(int time_offset = 0) const {
    return access(decl_, {Relative{std::string(kTimeDim), time_offset}, Relative{std::string(kPointDim), 0}});
  }

  std::span<T> data() { return values_; }
  std::span<const T> data() const { return values_; }
  T& at(int t, int p) { return values_[static_cast<std::size_t>(t) * coordinates_.size() + p]; }
  T at(int t, int p) const { return values_[static_cast<std::size_t>(t) * coordinates_.size() + p]; }

  std::vector<InterpStencil> stencils() const {
    std::vector<InterpStencil> out;
    for (const auto& c : coordinates_) out.push_back(interp_weights(c, grid_));
    return out;
  }

 private:
  Grid grid_;
  std::vector<std::vector<double>> coordinates_;
  int ntime_ = 0;
  FunctionRef decl_;
  AlignedVector<T> values_;
};

// Scalar equations for one sparse operation, executed in order once per
// time step.
struct SparseOp {
  enum class Kind { interpolate, inject };
  Kind kind = Kind::interpolate;
  std::string label;
  std::vector<Equation> equations;
};

// values[t, p] = sum over cell corners of weight * expr(corner).
template <class T>
SparseOp interpolate(const SparsePointSet<T>& pts, const Expr& expr) {
  SparseOp op{SparseOp::Kind::interpolate, "interpolate into " + pts.name(), {}};
  auto stencils = pts.stencils();
  for (int p = 0; p < pts.npoint(); ++p) {
    std::vector<Expr> terms;
    const auto& st = stencils[p];
    for (std::size_t id = 0; id < st.weights.size(); ++id) {
      if (st.weights[id] == 0.0) continue;
      terms.push_back(mul({constant(st.weights[id]), relocate(expr, pts.grid(), st.corner(id), p)}));
    }
    Expr lhs = relocate(pts.value(), pts.grid(), st.base, p);
    op.equations.push_back({lhs, simplify(add(std::move(terms)))});
  }
  return op;
}

// target(corner) += weight * expr(corner) for every point and cell corner.
// `target` is an access at the generic point, e.g. u.forward().
template <class T>
SparseOp inject(const SparsePointSet<T>& pts, const Expr& target, const Expr& expr) {
  if (!target.is<Access>()) throw Error(ErrorCode::InvalidArgument, "injection target must be a grid access");
  SparseOp op{SparseOp::Kind::inject, "inject " + pts.name() + " into " + target.as<Access>().name(), {}};
  auto stencils = pts.stencils();
  for (int p = 0; p < pts.npoint(); ++p) {
    const auto& st = stencils[p];
    for (std::size_t id = 0; id < st.weights.size(); ++id) {
      if (st.weights[id] == 0.0) continue;
      auto node = st.corner(id);
      Expr lhs = relocate(target, pts.grid(), node, p);
      Expr increment = simplify(mul({constant(st.weights[id]), relocate(expr, pts.grid(), node, p)}));
      op.equations.push_back({lhs, add({lhs, increment})});
    }
  }
  return op;
}

// CSV layout: header row, then one row per point with the coordinates
// followed by one column per time step.
template <class T>
void save_points_csv(const std::string& path, const SparsePointSet<T>& pts) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
  out.precision(17);
  for (const auto& dim : pts.grid().dims()) out << dim << ',';
  for (int t = 0; t < pts.ntime(); ++t) out << 't' << t << (t + 1 < pts.ntime() ? "," : "\n");
  for (int p = 0; p < pts.npoint(); ++p) {
    for (double c : pts.coordinates()[p]) out << c << ',';
    for (int t = 0; t < pts.ntime(); ++t) out << pts.at(t, p) << (t + 1 < pts.ntime() ? "," : "\n");
  }
}

template <class T>
SparsePointSet<T> load_points_csv(const std::string& path, std::string name, const Grid& grid) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::Io, path + " is empty");
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  const std::size_t ndim = grid.ndim();
  if (rows.empty() || rows.front().size() <= ndim) throw Error(ErrorCode::Io, path + " has no time columns");
  int ntime = static_cast<int>(rows.front().size() - ndim);
  std::vector<std::vector<double>> coords;
  for (const auto& row : rows) {
    if (row.size() != ndim + static_cast<std::size_t>(ntime)) throw Error(ErrorCode::Io, "ragged rows in " + path);
    coords.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(ndim));
  }
  SparsePointSet<T> pts(std::move(name), grid, std::move(coords), ntime);
  for (int p = 0; p < pts.npoint(); ++p) {
    for (int t = 0; t < ntime; ++t) pts.at(t, p) = static_cast<T>(rows[p][ndim + t]);
  }
  return pts;
}

}  // namespace sf
