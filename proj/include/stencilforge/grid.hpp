#pragma once

// Cartesian grids, symbolic functions defined on them, and the data buffers
// that back those functions at run time.

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <memory>
#include <new>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "stencilforge/errors.hpp"
#include "stencilforge/expr.hpp"

namespace sf {

class Grid {
 public:
  Grid() = default;

  Grid(std::vector<int> shape, std::vector<double> spacing, std::vector<std::string> dims = {})
      : shape_(std::move(shape)), spacing_(std::move(spacing)), dims_(std::move(dims)) {
    if (dims_.empty()) {
      static const char* kNames[] = {"x", "y", "z", "w"};
      if (shape_.size() > 4) throw Error(ErrorCode::InvalidArgument, "default dimension names cover 4 dims");
      for (std::size_t i = 0; i < shape_.size(); ++i) dims_.emplace_back(kNames[i]);
    }
    if (shape_.empty() || shape_.size() != spacing_.size() || shape_.size() != dims_.size()) {
      throw Error(ErrorCode::InvalidArgument, "grid shape, spacing and dims must have equal, non-zero length");
    }
    for (std::size_t i = 0; i < shape_.size(); ++i) {
      if (shape_[i] < 3) throw Error(ErrorCode::InvalidArgument, "grid extents must be >= 3");
      if (!(spacing_[i] > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid spacing must be > 0");
      if (dims_[i] == kTimeDim) throw Error(ErrorCode::InvalidArgument, "'t' is reserved for time");
    }
  }

  std::size_t ndim() const { return shape_.size(); }
  const std::vector<int>& shape() const { return shape_; }
  const std::vector<double>& spacing() const { return spacing_; }
  const std::vector<std::string>& dims() const { return dims_; }

  std::size_t points() const {
    return std::accumulate(shape_.begin(), shape_.end(), std::size_t{1},
                           [](std::size_t a, int b) { return a * static_cast<std::size_t>(b); });
  }

  int dim_index(const std::string& dim) const {
    auto it = std::find(dims_.begin(), dims_.end(), dim);
    if (it == dims_.end()) throw Error(ErrorCode::InvalidArgument, "grid has no dimension '" + dim + "'");
    return static_cast<int>(it - dims_.begin());
  }
  bool has_dim(const std::string& dim) const { return std::find(dims_.begin(), dims_.end(), dim) != dims_.end(); }
  int extent(const std::string& dim) const { return shape_[dim_index(dim)]; }
  double spacing(const std::string& dim) const { return spacing_[dim_index(dim)]; }

  bool operator==(const Grid&) const = default;

 private:
  std::vector<int> shape_;
  std::vector<double> spacing_;
  std::vector<std::string> dims_;
};

inline Index rel(std::string dim, int offset = 0) { return Relative{std::move(dim), offset}; }
inline Index abs_index(int value) { return Absolute{value}; }

// Symbolic handle for a named field on a grid. Produces grid accesses and
// derivative shorthands; carries no data.
class Function {
 public:
  Function() = default;

  static Function dense(std::string name, const Grid& grid, int space_order = 2, std::vector<std::string> dims = {}) {
    return Function(std::move(name), grid, TimeStorage::none, 0, space_order, std::move(dims));
  }

  static Function time(std::string name, const Grid& grid, int time_order = 1, int space_order = 2) {
    if (time_order < 1) throw Error(ErrorCode::InvalidArgument, "time_order must be >= 1");
    return Function(std::move(name), grid, TimeStorage::cyclic, time_order, space_order, {});
  }

  const FunctionRef& decl() const { return decl_; }
  const std::string& name() const { return decl_->name; }
  const Grid& grid() const { return grid_; }
  bool time_varying() const { return decl_->time_varying(); }
  int time_order() const { return decl_->time_order; }
  int space_order() const { return decl_->space_order; }
  int halo() const { return decl_->halo(); }
  const std::vector<std::string>& dims() const { return decl_->dims; }

  // Extents of the non-time dimensions.
  std::vector<int> shape() const {
    std::vector<int> out;
    for (const auto& d : decl_->dims) out.push_back(grid_.extent(d));
    return out;
  }

  // Access at the current point: u(t, x, y).
  Expr operator()() const { return shifted(0); }

  // Indexed access with explicit per-dimension indices; time-varying
  // functions get the current time index prepended.
  Expr indexed(std::vector<Index> space) const {
    if (time_varying()) space.insert(space.begin(), rel(std::string(kTimeDim), 0));
    return access(decl_, std::move(space));
  }

  Expr indexed_at(int time_offset, std::vector<Index> space) const {
    if (!time_varying()) throw Error(ErrorCode::NotTimeVarying, name() + " has no time dimension");
    space.insert(space.begin(), rel(std::string(kTimeDim), time_offset));
    return access(decl_, std::move(space));
  }

  Expr forward() const;
  Expr backward() const;

  Expr d(const std::string& dim, int order, Side side, int accuracy) const {
    return derivative((*this)(), dim, order, side, accuracy);
  }

  // First derivative in time, one-sided forward with accuracy 1.
  Expr dt() const { return d(std::string(kTimeDim), 1, Side::right, 1); }
  // First derivative in time, one-sided backward with accuracy 1.
  Expr dtl() const { return d(std::string(kTimeDim), 1, Side::left, 1); }
  Expr dt2() const { return d(std::string(kTimeDim), 2, Side::centered, 2); }

  Expr dl(const std::string& dim) const { return d(dim, 1, Side::left, 1); }
  Expr dr(const std::string& dim) const { return d(dim, 1, Side::right, 1); }
  Expr dc(const std::string& dim) const { return d(dim, 1, Side::centered, space_order()); }
  Expr d2(const std::string& dim) const { return d(dim, 2, Side::centered, space_order()); }

  Expr dxl() const { return dl("x"); }
  Expr dyl() const { return dl("y"); }
  Expr dzl() const { return dl("z"); }
  Expr dxr() const { return dr("x"); }
  Expr dyr() const { return dr("y"); }
  Expr dzr() const { return dr("z"); }
  Expr dx() const { return dc("x"); }
  Expr dy() const { return dc("y"); }
  Expr dz() const { return dc("z"); }
  Expr dx2() const { return d2("x"); }
  Expr dy2() const { return d2("y"); }
  Expr dz2() const { return d2("z"); }

  Expr laplace() const {
    std::vector<Expr> terms;
    for (const auto& dim : dims()) terms.push_back(d2(dim));
    return add(std::move(terms));
  }

 protected:
  Function(std::string name, const Grid& grid, TimeStorage time, int time_order, int space_order,
           std::vector<std::string> dims)
      : grid_(grid) {
    if (space_order < 2 || space_order % 2 != 0) {
      throw Error(ErrorCode::InvalidArgument, "space_order must be even and >= 2");
    }
    if (dims.empty()) dims = grid.dims();
    for (const auto& dim : dims) grid.dim_index(dim);
    auto decl = std::make_shared<FunctionDecl>();
    decl->name = std::move(name);
    for (const auto& dim : dims) decl->shape.push_back(grid.extent(dim));
    decl->dims = std::move(dims);
    decl->time = time;
    decl->time_order = time_order;
    decl->space_order = space_order;
    decl_ = std::move(decl);
  }

 private:
  Expr shifted(int time_offset) const {
    std::vector<Index> indices;
    if (time_varying()) indices.push_back(rel(std::string(kTimeDim), time_offset));
    for (const auto& dim : dims()) indices.push_back(rel(dim, 0));
    return access(decl_, std::move(indices));
  }

  FunctionRef decl_;
  Grid grid_;
};

// Shifts the time index of a grid access by `steps`.
inline Expr time_shift(const Expr& target, int steps) {
  if (!target.is<Access>()) throw Error(ErrorCode::InvalidArgument, "time_shift needs a grid access");
  const auto& a = target.as<Access>();
  if (!a.function->time_varying()) throw Error(ErrorCode::NotTimeVarying, a.name() + " has no time dimension");
  if (a.function->time == TimeStorage::cyclic && std::abs(steps) > a.function->time_order) {
    throw Error(ErrorCode::HaloExceeded, "time shift " + std::to_string(steps) + " exceeds time_order of " + a.name());
  }
  auto indices = a.indices;
  auto* time = std::get_if<Relative>(&indices.front());
  if (time == nullptr) throw Error(ErrorCode::InvalidArgument, "time index of " + a.name() + " is absolute");
  time->offset += steps;
  return access(a.function, std::move(indices));
}

inline Expr time_shift(const Function& f, int steps) { return time_shift(f(), steps); }

inline Expr Function::forward() const { return time_shift(*this, 1); }
inline Expr Function::backward() const { return time_shift(*this, -1); }

// ---------------------------------------------------------------------------
// Storage.

template <class T, std::size_t Alignment = 64>
struct AlignedAllocator {
  using value_type = T;

  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U, Alignment>&) {}  // NOLINT

  template <class U>
  struct rebind {
    using other = AlignedAllocator<U, Alignment>;
  };

  T* allocate(std::size_t n) {
    std::size_t bytes = ((n * sizeof(T) + Alignment - 1) / Alignment) * Alignment;
    void* p = ::operator new(bytes, std::align_val_t(Alignment));
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t) { ::operator delete(p, std::align_val_t(Alignment)); }

  bool operator==(const AlignedAllocator&) const { return true; }
};

template <class T>
using AlignedVector = std::vector<T, AlignedAllocator<T>>;

inline int positive_mod(int value, int modulus) {
  int r = value % modulus;
  return r < 0 ? r + modulus : r;
}

// A function together with its data. Time-varying functions own
// time_order + 1 cyclic buffers of the function's shape; row-major layout
// with the last dimension contiguous.
template <class T>
class GridFunction : public Function {
 public:
  using value_type = T;

  GridFunction() = default;

  explicit GridFunction(Function symbol) : Function(std::move(symbol)) {
    points_ = 1;
    for (int n : shape()) points_ *= static_cast<std::size_t>(n);
    data_.assign(points_ * static_cast<std::size_t>(decl()->buffers()), T(0));
  }

  static GridFunction dense(std::string name, const Grid& grid, int space_order = 2,
                            std::vector<std::string> dims = {}) {
    return GridFunction(Function::dense(std::move(name), grid, space_order, std::move(dims)));
  }

  static GridFunction time(std::string name, const Grid& grid, int time_order = 1, int space_order = 2) {
    return GridFunction(Function::time(std::move(name), grid, time_order, space_order));
  }

  const Function& symbol() const { return *this; }

  std::size_t points() const { return points_; }
  int buffers() const { return decl()->buffers(); }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  // Buffer for time level `level` (taken modulo the buffer count).
  std::span<T> buffer(int level = 0) {
    return std::span<T>(data_).subspan(static_cast<std::size_t>(positive_mod(level, buffers())) * points_, points_);
  }
  std::span<const T> buffer(int level = 0) const {
    return std::span<const T>(data_).subspan(static_cast<std::size_t>(positive_mod(level, buffers())) * points_,
                                             points_);
  }

  std::size_t linear_index(std::span<const int> index) const {
    auto extents = shape();
    std::size_t linear = 0;
    for (std::size_t d = 0; d < extents.size(); ++d) linear = linear * extents[d] + static_cast<std::size_t>(index[d]);
    return linear;
  }

  T& at(int level, std::initializer_list<int> index) {
    return buffer(level)[linear_index(std::span<const int>(index.begin(), index.size()))];
  }
  T at(int level, std::initializer_list<int> index) const {
    return buffer(level)[linear_index(std::span<const int>(index.begin(), index.size()))];
  }

  void fill(T value) { std::fill(data_.begin(), data_.end(), value); }

 private:
  std::size_t points_ = 0;
  AlignedVector<T> data_;
};

}  // namespace sf
