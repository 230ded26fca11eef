#pragma once

// The three worked examples: linear convection, Laplace with boundary
// conditions, and acoustic forward/adjoint modelling with an adjoint test.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "stencilforge/operator.hpp"
#include "stencilforge/solve.hpp"

namespace sf {

struct DemoRun {
  DseLevel dse = DseLevel::advanced;
  DleLevel dle = DleLevel::advanced;
  ExecMode mode = ExecMode::tape;
  bool parallel = true;
  std::optional<BlockingSpec> blocking;

  OperatorOptions operator_options(Substitutions subs, TimeAxis axis = TimeAxis::Forward) const {
    OperatorOptions o;
    o.dse = dse;
    o.dle = dle;
    o.axis = axis;
    o.subs = std::move(subs);
    o.blocking = blocking;
    return o;
  }
  RunOptions run_options() const {
    RunOptions r;
    r.mode = mode;
    r.parallel = parallel;
    return r;
  }
};

// A demo's symbolic kernel, for code generation and benchmarking.
struct DemoKernel {
  std::string id;
  Grid grid;
  std::vector<Equation> equations;
  std::vector<SparseOp> sparse;
  Substitutions subs;
  TimeAxis axis = TimeAxis::Forward;

  template <class T = double>
  Operator<T> build(const DemoRun& run, std::string name = "kernel") const {
    auto options = run.operator_options(subs, axis);
    options.name = std::move(name);
    return Operator<T>(equations, sparse, options);
  }
};

struct FieldPeak {
  double value = 0.0;
  std::vector<int> index;
};

inline FieldPeak find_peak(std::span<const double> field, const std::vector<int>& shape) {
  FieldPeak peak;
  std::size_t best = 0;
  for (std::size_t i = 1; i < field.size(); ++i) {
    if (field[i] > field[best]) best = i;
  }
  peak.value = field.empty() ? 0.0 : field[best];
  peak.index.assign(shape.size(), 0);
  for (std::size_t d = shape.size(); d-- > 0;) {
    peak.index[d] = static_cast<int>(best % static_cast<std::size_t>(shape[d]));
    best /= static_cast<std::size_t>(shape[d]);
  }
  return peak;
}

// ---------------------------------------------------------------------------
// Linear convection: u.dt + c u.dxl + c u.dyl = 0.

struct ConvectionConfig {
  int nx = 81;
  int ny = 81;
  int steps = 100;
  double c = 1.0;
  double dx = 0.025;
  double dt = 0.005;
};

struct ConvectionResult {
  std::vector<int> shape;
  std::vector<double> initial;
  std::vector<double> final;
  int steps = 0;
  FieldPeak initial_peak;
  FieldPeak final_peak;
  double seconds = 0.0;
};

// sin^2 bump on [0.5, 1], zero elsewhere.
inline double smooth_bump(double xi) {
  if (xi < 0.5 || xi > 1.0) return 0.0;
  double s = std::sin(std::numbers::pi * (xi - 0.5) / 0.5);
  return s * s;
}

inline DemoKernel convection_kernel(const ConvectionConfig& config = {}) {
  Grid grid({config.nx, config.ny}, {config.dx, config.dx});
  auto u = Function::time("u", grid, 1, 2);
  Equation eq{u.dt() + config.c * u.dxl() + config.c * u.dyl(), 0.0};
  Expr update = solve_linear(expand_derivatives(eq), u.forward());
  return {"convection", grid, {{u.forward(), update}}, {}, {{"h", config.dx}, {"s", config.dt}}, TimeAxis::Forward};
}

inline ConvectionResult demo_convection(const ConvectionConfig& config = {}, const DemoRun& run = {}) {
  if (config.steps < 0) throw Error(ErrorCode::InvalidArgument, "steps must be >= 0");
  double courant = std::abs(config.c) * config.dt / config.dx;
  if (courant > 1.0) {
    throw Error(ErrorCode::CflViolation, "c*dt/dx = " + std::to_string(courant) + " exceeds 1");
  }
  DemoKernel kernel = convection_kernel(config);
  auto op = kernel.build(run, "convection");
  auto u = GridFunction<double>(Function::time("u", kernel.grid, 1, 2));
  for (int level = 0; level < u.buffers(); ++level) {
    for (int i = 0; i < config.nx; ++i) {
      for (int j = 0; j < config.ny; ++j) {
        u.at(level, {i, j}) = 1.0 + smooth_bump(2.0 * i * config.dx / 3.0) * smooth_bump(2.0 * j * config.dx / 3.0);
      }
    }
  }
  ConvectionResult result;
  result.shape = {config.nx, config.ny};
  auto initial = u.buffer(0);
  result.initial.assign(initial.begin(), initial.end());
  DataBinding<double> binding;
  binding.bind(u).time(0, config.steps);
  auto summary = op.apply(binding, run.run_options());
  auto final = u.buffer(config.steps);
  result.final.assign(final.begin(), final.end());
  result.steps = summary.steps;
  result.seconds = summary.seconds;
  result.initial_peak = find_peak(result.initial, result.shape);
  result.final_peak = find_peak(result.final, result.shape);
  return result;
}

// ---------------------------------------------------------------------------
// Laplace: a pn.dx2 + pn.dy2 = 0 iterated with explicit buffer exchange.

struct LaplaceConfig {
  int nx = 31;
  int ny = 31;
  double tol = 1e-4;
  int max_iterations = 100000;
};

struct LaplaceResult {
  std::vector<int> shape;
  std::vector<double> field;
  int iterations = 0;
  double l1 = 0.0;  // last relative L1 change
  bool converged = false;
  double seconds = 0.0;
};

inline double laplace_spacing(const LaplaceConfig& config) { return 1.0 / (config.nx - 1); }

inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return out;
}

// Update of p from pn followed by the boundary assignments on p.
inline DemoKernel laplace_kernel(const LaplaceConfig& config = {}) {
  double h = laplace_spacing(config);
  Grid grid({config.nx, config.ny}, {h, h});
  auto p = Function::dense("p", grid, 2);
  auto pn = Function::dense("pn", grid, 2);
  auto bc_right = Function::dense("bc_right", grid, 2, {"x"});
  const double a = 1.0;
  Expr update = solve_linear(expand_derivatives(Equation{a * pn.dx2() + pn.dy2(), 0.0}), pn());
  const int nx = config.nx;
  const int ny = config.ny;
  std::vector<Equation> eqs{
      {p(), update},
      {p.indexed({rel("x"), abs_index(0)}), 0.0},
      {p.indexed({rel("x"), abs_index(ny - 1)}), bc_right()},
      {p.indexed({abs_index(0), rel("y")}), p.indexed({abs_index(1), rel("y")})},
      {p.indexed({abs_index(nx - 1), rel("y")}), p.indexed({abs_index(nx - 2), rel("y")})},
  };
  return {"laplace", grid, eqs, {}, {{"h", h}}, TimeAxis::Forward};
}

// |sum|p| - sum|pn|| / sum|pn|
inline double relative_l1_change(std::span<const double> p, std::span<const double> pn) {
  double a = 0.0, b = 0.0;
  for (double v : p) a += std::abs(v);
  for (double v : pn) b += std::abs(v);
  if (b == 0.0) return a == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(a - b) / b;
}

// Both buffers start at zero with the Dirichlet edge applied.
inline void laplace_initial(std::span<double> field, const LaplaceConfig& config) {
  std::fill(field.begin(), field.end(), 0.0);
  auto edge = linspace(0.0, 1.0, config.nx);
  for (int i = 0; i < config.nx; ++i) field[static_cast<std::size_t>(i) * config.ny + config.ny - 1] = edge[i];
}

inline LaplaceResult demo_laplace(const LaplaceConfig& config = {}, const DemoRun& run = {}) {
  if (!(config.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be > 0");
  DemoKernel kernel = laplace_kernel(config);
  auto op = kernel.build(run, "laplace");
  Grid& grid = kernel.grid;
  GridFunction<double> first(Function::dense("p", grid, 2));
  GridFunction<double> second(Function::dense("pn", grid, 2));
  GridFunction<double> bc(Function::dense("bc_right", grid, 2, {"x"}));
  auto edge = linspace(0.0, 1.0, config.nx);
  std::copy(edge.begin(), edge.end(), bc.data().begin());
  laplace_initial(first.data(), config);
  laplace_initial(second.data(), config);

  LaplaceResult result;
  result.shape = {config.nx, config.ny};
  result.l1 = std::numeric_limits<double>::infinity();
  auto options = run.run_options();
  GridFunction<double>* written = &first;
  while (result.iterations < config.max_iterations) {
    bool even = result.iterations % 2 == 0;
    GridFunction<double>& p = even ? first : second;
    GridFunction<double>& pn = even ? second : first;
    DataBinding<double> binding;
    binding.bind("p", p).bind("pn", pn).bind(bc);
    result.seconds += op.apply(binding, options).seconds;
    ++result.iterations;
    written = &p;
    result.l1 = relative_l1_change(p.data(), pn.data());
    if (result.l1 < config.tol) {
      result.converged = true;
      break;
    }
  }
  result.field.assign(written->data().begin(), written->data().end());
  if (!result.converged) {
    throw Error(ErrorCode::NonConvergence, "no convergence after " + std::to_string(result.iterations) +
                                               " iterations (last change " + std::to_string(result.l1) + ")");
  }
  return result;
}

// ---------------------------------------------------------------------------
// Acoustic modelling: m u.dt2 - laplace(u) + eta u.dt = q.

struct AcousticConfig {
  std::vector<int> shape{61, 61};
  double spacing = 10.0;  // m
  int order = 2;
  int ntime = 200;
  double f0 = 0.015;  // kHz; time is in ms and velocity in km/s (= m/ms)
  int nbl = 10;       // absorbing layer width in points
  std::vector<double> velocities{1.5, 2.5};  // upper and lower half
  int nrec = 101;
  double damping = 0.25;  // eta_max * dt / min(m)
  double courant = 0.5;   // dt as a fraction of the stability limit
};

struct AcousticModel {
  Grid grid;
  std::vector<double> m;    // square slowness
  std::vector<double> eta;  // dampening, zero in the interior
  double dt = 0.0;
  double f0 = 0.0;
  int nbl = 0;
  std::vector<double> source;
  std::vector<std::vector<double>> receivers;
};

// Stability limit h * sqrt(min m) / sqrt(ndim).
inline double critical_dt(const Grid& grid, double min_m) {
  double h = *std::min_element(grid.spacing().begin(), grid.spacing().end());
  return h * std::sqrt(min_m) / std::sqrt(static_cast<double>(grid.ndim()));
}

inline AcousticModel make_acoustic_model(const AcousticConfig& config) {
  const std::size_t ndim = config.shape.size();
  if (ndim < 2) throw Error(ErrorCode::InvalidArgument, "acoustic model needs at least 2 dimensions");
  AcousticModel model;
  model.grid = Grid(config.shape, std::vector<double>(ndim, config.spacing));
  model.nbl = config.nbl;
  model.f0 = config.f0;
  const auto& shape = config.shape;
  for (int n : shape) {
    if (n < 2 * config.nbl + 6) throw Error(ErrorCode::InvalidArgument, "grid too small for the absorbing layer");
  }
  const std::size_t points = model.grid.points();
  model.m.resize(points);
  model.eta.resize(points);
  const int depth_extent = shape.back();
  double min_m = std::numeric_limits<double>::infinity();
  for (double v : config.velocities) {
    if (!(v > 0.0)) throw Error(ErrorCode::InvalidArgument, "velocities must be > 0");
    min_m = std::min(min_m, 1.0 / (v * v));
  }
  model.dt = config.courant * critical_dt(model.grid, min_m);
  if (model.dt > critical_dt(model.grid, min_m)) {
    throw Error(ErrorCode::CflViolation, "dt exceeds h*sqrt(min m)/sqrt(ndim)");
  }
  const double eta_max = config.damping * min_m / model.dt;
  std::vector<int> index(ndim, 0);
  for (std::size_t linear = 0; linear < points; ++linear) {
    std::size_t rest = linear;
    for (std::size_t d = ndim; d-- > 0;) {
      index[d] = static_cast<int>(rest % static_cast<std::size_t>(shape[d]));
      rest /= static_cast<std::size_t>(shape[d]);
    }
    const std::size_t layers = config.velocities.size();
    std::size_t layer = std::min(layers - 1, static_cast<std::size_t>(index.back()) * layers / depth_extent);
    double v = config.velocities[layer];
    model.m[linear] = 1.0 / (v * v);
    int depth = 0;
    for (std::size_t d = 0; d < ndim; ++d) {
      depth = std::max({depth, config.nbl - index[d], index[d] - (shape[d] - 1 - config.nbl)});
    }
    double r = config.nbl > 0 ? static_cast<double>(depth) / config.nbl : 0.0;
    model.eta[linear] = eta_max * r * r;
  }

  // Source at the horizontal centre, two points below the layer; receivers
  // on a horizontal line inside the undamped region.
  const double h = config.spacing;
  model.source.assign(ndim, 0.0);
  for (std::size_t d = 0; d + 1 < ndim; ++d) model.source[d] = (shape[d] - 1) / 2 * h;
  model.source.back() = (config.nbl + 2) * h;
  const double lo = (config.nbl + 1) * h;
  const double hi = (shape[0] - 2 - config.nbl) * h;
  for (int r = 0; r < config.nrec; ++r) {
    std::vector<double> coord = model.source;
    coord[0] = config.nrec == 1 ? lo : lo + (hi - lo) * r / (config.nrec - 1);
    coord.back() = (config.nbl + 4) * h;
    model.receivers.push_back(coord);
  }
  return model;
}

inline double ricker(double t, double f0) {
  double a = std::numbers::pi * f0 * (t - 1.0 / f0);
  a *= a;
  return (1.0 - 2.0 * a) * std::exp(-a);
}

inline std::vector<double> ricker_series(const AcousticModel& model, int ntime) {
  std::vector<double> out(static_cast<std::size_t>(ntime));
  for (int t = 0; t < ntime; ++t) out[t] = ricker(t * model.dt, model.f0);
  return out;
}

// Sparse series are stored [time][point].
struct AcousticKernel {
  DemoKernel kernel;
  std::string field;
  std::string injected;
  std::string sampled;
};

inline AcousticKernel acoustic_kernel(const AcousticModel& model, int order, int ntime, bool adjoint,
                                      const std::vector<std::vector<double>>& source_points = {},
                                      const std::vector<std::vector<double>>& receiver_points = {}) {
  const Grid& grid = model.grid;
  auto sources = source_points.empty() ? std::vector<std::vector<double>>{model.source} : source_points;
  auto receivers = receiver_points.empty() ? model.receivers : receiver_points;
  auto u = Function::time(adjoint ? "v" : "u", grid, 2, order);
  auto m = Function::dense("m", grid, order);
  auto eta = Function::dense("eta", grid, order);
  // The adjoint flips the dampening sign and uses the backward difference,
  // which makes its discrete update the exact transpose of the forward one.
  Expr damping = adjoint ? -(eta() * u.dtl()) : eta() * u.dt();
  Expr pde = m() * u.dt2() - u.laplace() + damping;
  Expr target = adjoint ? u.backward() : u.forward();
  Expr update = solve_linear(expand_derivatives(Equation{pde, 0.0}), target);

  SparsePointSet<double> in(adjoint ? "rec" : "src", grid, adjoint ? receivers : sources, ntime);
  SparsePointSet<double> out(adjoint ? "srca" : "rec", grid, adjoint ? sources : receivers, ntime);
  Expr s = symbol(std::string(kTimeSpacing));
  std::vector<SparseOp> sparse{inject(in, target, in.value() * s * s / m()), interpolate(out, target)};

  AcousticKernel k;
  k.kernel = {adjoint ? "acoustic-adjoint" : "acoustic",
              grid,
              {{target, update}},
              std::move(sparse),
              {{"h", grid.spacing()[0]}, {"s", model.dt}},
              adjoint ? TimeAxis::Backward : TimeAxis::Forward};
  k.field = u.name();
  k.injected = in.name();
  k.sampled = out.name();
  return k;
}

template <class T>
struct AcousticRun {
  std::vector<T> sampled;  // [ntime][npoint]
  std::vector<T> field;    // last written wavefield buffer
  double seconds = 0.0;
  int steps = 0;
};

template <class T>
AcousticRun<T> run_acoustic(const AcousticModel& model, const AcousticKernel& k, std::span<const T> injected,
                            int ntime, int order, const DemoRun& run = {}) {
  auto op = k.kernel.build<T>(run, k.kernel.id == "acoustic" ? "forward" : "adjoint");
  const Grid& grid = model.grid;
  GridFunction<T> u(Function::time(k.field, grid, 2, order));
  GridFunction<T> m(Function::dense("m", grid, order));
  GridFunction<T> eta(Function::dense("eta", grid, order));
  for (std::size_t i = 0; i < model.m.size(); ++i) {
    m.data()[i] = static_cast<T>(model.m[i]);
    eta.data()[i] = static_cast<T>(model.eta[i]);
  }
  std::vector<T> in(injected.begin(), injected.end());
  const auto& sampled_decl = op.nest().function(k.sampled);
  AcousticRun<T> result;
  result.sampled.assign(static_cast<std::size_t>(ntime) * sampled_decl->points(), T(0));
  DataBinding<T> binding;
  binding.bind(u).bind(m).bind(eta).bind(k.injected, std::span<T>(in)).bind(k.sampled, std::span<T>(result.sampled));
  binding.time(0, ntime);
  auto summary = op.apply(binding, run.run_options());
  result.seconds = summary.seconds;
  result.steps = summary.steps;
  int last = k.kernel.axis == TimeAxis::Forward ? ntime : -1;
  auto buffer = u.buffer(last);
  result.field.assign(buffer.begin(), buffer.end());
  return result;
}

template <class T>
struct AdjointTestResult {
  double forward_product = 0.0;  // <F src, rec>
  double adjoint_product = 0.0;  // <src, F* rec>
  double mismatch = 0.0;
  std::vector<T> src, rec, srca;
  AcousticRun<T> forward;
  double seconds = 0.0;
};

// Dot-product test with rec = F src.
template <class T = double>
AdjointTestResult<T> adjoint_test(const AcousticConfig& config, const DemoRun& run = {}) {
  auto model = make_acoustic_model(config);
  const int nt = config.ntime;
  auto fwd = acoustic_kernel(model, config.order, nt, false);
  auto adj = acoustic_kernel(model, config.order, nt, true);
  AdjointTestResult<T> r;
  for (double v : ricker_series(model, nt)) r.src.push_back(static_cast<T>(v));
  r.forward = run_acoustic<T>(model, fwd, r.src, nt, config.order, run);
  r.rec = r.forward.sampled;
  auto back = run_acoustic<T>(model, adj, r.rec, nt, config.order, run);
  r.srca = back.sampled;
  for (std::size_t i = 0; i < r.rec.size(); ++i) r.forward_product += double(r.forward.sampled[i]) * double(r.rec[i]);
  for (std::size_t i = 0; i < r.src.size(); ++i) r.adjoint_product += double(r.src[i]) * double(r.srca[i]);
  r.mismatch = std::abs(r.adjoint_product - r.forward_product) / std::abs(r.forward_product);
  r.seconds = r.forward.seconds + back.seconds;
  return r;
}

// ---------------------------------------------------------------------------

inline std::vector<std::string> demo_ids() { return {"convection", "laplace", "acoustic", "acoustic-adjoint"}; }

inline DemoKernel demo_kernel(const std::string& id, int order = 2) {
  if (id == "convection") return convection_kernel();
  if (id == "laplace") return laplace_kernel();
  if (id == "acoustic" || id == "acoustic-adjoint") {
    AcousticConfig config;
    config.order = order;
    auto model = make_acoustic_model(config);
    return acoustic_kernel(model, order, config.ntime, id == "acoustic-adjoint").kernel;
  }
  throw Error(ErrorCode::UnknownDemo, "unknown demo '" + id + "'");
}

}  // namespace sf
