#include <gtest/gtest.h>

#include <cstdlib>
#include <cstring>
#include <set>
#include <random>

#include "stencilforge/execute.hpp"
#include "stencilforge/fd.hpp"
#include "stencilforge/solve.hpp"
#include "stencilforge/sparse.hpp"

namespace sf {
namespace {

template <class T>
void randomize(std::span<T> data, std::uint64_t seed, double lo = 0.5, double hi = 1.5) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  for (auto& x : data) x = static_cast<T>(dist(rng));
}

template <class T>
bool bit_equal(std::span<const T> a, std::span<const T> b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(T)) == 0;
}

// Acoustic forward kernel with a source and receivers, on a small grid.
struct Acoustic {
  Grid grid;
  int order;
  Function u, m, eta;
  SparsePointSet<double> src, rec;
  std::vector<Equation> eqs;
  std::vector<SparseOp> sparse;

  Acoustic(int n, int order_, int ntime)
      : grid({n, n + 3}, {0.1, 0.1}),
        order(order_),
        u(Function::time("u", grid, 2, order)),
        m(Function::dense("m", grid, order)),
        eta(Function::dense("eta", grid, order)),
        src("src", grid, {{0.45, 0.52}}, ntime),
        rec("rec", grid, {{0.3, 0.33}, {0.61, 0.4}, {0.5, 0.5}}, ntime) {
    Expr eqn = expand_derivatives(m() * u.dt2() - u.laplace() + eta() * u.dt());
    eqs = {{u.forward(), solve_linear({eqn, 0.0}, u.forward())}};
    Expr s = symbol("s");
    sparse = {inject(src, u.forward(), src.value() * s * s / m()), interpolate(rec, u.forward())};
  }

  LoopNest nest(DseLevel level) const {
    return schedule(optimize(eqs, level), sparse, {{"h", 0.1}, {"s", 0.004}});
  }
};

struct AcousticData {
  GridFunction<double> u, m, eta;
  std::vector<double> src, rec;

  AcousticData(const Acoustic& a, std::uint64_t seed)
      : u(a.u), m(a.m), eta(a.eta), src(a.src.data().begin(), a.src.data().end()), rec(a.rec.data().size(), 0.0) {
    randomize(u.data(), seed, -1.0, 1.0);
    randomize(m.data(), seed + 1, 0.2, 0.5);
    randomize(eta.data(), seed + 2, 0.0, 0.3);
    randomize(std::span<double>(src), seed + 3, -1.0, 1.0);
  }

  DataBinding<double> binding(int steps) {
    DataBinding<double> b;
    b.bind(u).bind(m).bind(eta).bind("src", std::span<double>(src)).bind("rec", std::span<double>(rec)).time(0, steps);
    return b;
  }
};

TEST(Tape, SumProgram) {
  Grid grid({4, 3}, {1.0, 1.0});
  auto a = Function::dense("a", grid);
  auto b = Function::dense("b", grid);
  auto y = Function::dense("y", grid);
  auto nest = schedule(make_set({{y(), a() + b()}}), {}, {});
  Kernel<double> kernel(nest);
  const auto& ci = kernel.compiled_body().at(0);
  ASSERT_EQ(ci.programs.size(), 1u);
  const auto& code = ci.programs[0].code;
  ASSERT_EQ(code.size(), 3u);
  EXPECT_EQ(code[0].op, tape::Op::grid);
  EXPECT_EQ(code[1].op, tape::Op::grid);
  EXPECT_EQ(code[2].op, tape::Op::add);
  EXPECT_EQ(ci.programs[0].depth, 2);
  EXPECT_GE(ci.programs[0].store_slot, 0);

  GridFunction<double> ad(a), bd(b), yd(y);
  randomize(ad.data(), 1);
  randomize(bd.data(), 2);
  DataBinding<double> binding;
  binding.bind(ad).bind(bd).bind(yd);
  kernel.run(binding);
  for (std::size_t i = 0; i < yd.data().size(); ++i) EXPECT_EQ(yd.data()[i], ad.data()[i] + bd.data()[i]);
}

TEST(Tape, JacobiLoadsFourNeighbours) {
  Grid grid({9, 7}, {0.1, 0.1});
  auto p = Function::dense("p", grid, 2);
  auto pn = Function::dense("pn", grid, 2);
  Expr update = solve_linear({expand_derivatives(1.0 * pn.dx2() + pn.dy2()), 0.0}, pn());
  auto nest = schedule(make_set({{p(), update}}), {}, {{"h", 0.1}});
  Kernel<double> kernel(nest);
  const auto& ci = kernel.compiled_body().at(0);
  std::set<std::ptrdiff_t> deltas;
  int adds = 0, muls = 0, loads = 0;
  for (const auto& in : ci.programs[0].code) {
    if (in.op == tape::Op::grid) {
      ++loads;
      deltas.insert(ci.slots[in.arg].delta);
    }
    adds += in.op == tape::Op::add;
    muls += in.op == tape::Op::mul;
  }
  EXPECT_EQ(loads, 4);
  EXPECT_EQ(deltas, (std::set<std::ptrdiff_t>{-7, -1, 1, 7}));
  EXPECT_EQ(adds, 3);
  EXPECT_EQ(muls, 1);
}

TEST(Tape, StackBoundRaises) {
  Grid grid({4, 4}, {1.0, 1.0});
  auto a = Function::dense("a", grid);
  auto y = Function::dense("y", grid);
  // Right-nested sum: each level keeps one operand on the stack.
  Expr deep = a();
  for (int k = 0; k < 10; ++k) deep = add({symbol("c" + std::to_string(k)), deep});
  auto nest = schedule(make_set({{y(), deep}}), {}, {});
  EXPECT_NO_THROW(Kernel<double>(nest, 64));
  try {
    Kernel<double> kernel(nest, 4);
    FAIL() << "expected StackOverflowBound";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::StackOverflowBound);
  }
}

TEST(DualExecution, AcousticTapeEqualsTree) {
  for (int order : {2, 4}) {
    Acoustic problem(14, order, 8);
    for (auto level : {DseLevel::basic, DseLevel::advanced}) {
      auto nest = apply_simd(problem.nest(level));
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        AcousticData x(problem, seed), y(problem, seed);
        auto bx = x.binding(8);
        auto by = y.binding(8);
        Kernel<double> tape_kernel(nest), tree_kernel(nest);
        RunOptions tree;
        tree.mode = ExecMode::tree;
        tree.check_bounds = true;
        RunOptions sequential;
        sequential.parallel = false;
        tape_kernel.run(bx, sequential);
        tree_kernel.run(by, tree);
        EXPECT_TRUE(bit_equal<double>(x.u.data(), y.u.data())) << "order " << order << " seed " << seed;
        EXPECT_TRUE(bit_equal<double>(x.rec, y.rec)) << "order " << order << " seed " << seed;
      }
    }
  }
}

TEST(DualExecution, ParallelMatchesSequential) {
  Acoustic problem(40, 4, 6);
  auto nest = apply_blocking(apply_simd(problem.nest(DseLevel::advanced)), BlockingSpec::uniform({"x", "y"}, 8));
  setenv("STENCILFORGE_THREADS", "4", 1);
  AcousticData x(problem, 5), y(problem, 5);
  auto bx = x.binding(6);
  auto by = y.binding(6);
  Kernel<double> kernel(nest);
  RunOptions sequential;
  sequential.parallel = false;
  kernel.run(bx);
  kernel.run(by, sequential);
  unsetenv("STENCILFORGE_THREADS");
  EXPECT_TRUE(bit_equal<double>(x.u.data(), y.u.data()));
  EXPECT_TRUE(bit_equal<double>(x.rec, y.rec));
}

TEST(Run, MissingBinding) {
  Acoustic problem(10, 2, 4);
  AcousticData data(problem, 1);
  Kernel<double> kernel(problem.nest(DseLevel::basic));
  DataBinding<double> binding;
  binding.bind(data.u).bind(data.m).time(0, 4);
  try {
    kernel.run(binding);
    FAIL() << "expected MissingBinding";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingBinding);
    EXPECT_NE(std::string(e.what()).find("eta"), std::string::npos);
  }
}

TEST(Run, ShapeMismatch) {
  Acoustic problem(10, 2, 4);
  AcousticData data(problem, 1);
  Kernel<double> kernel(problem.nest(DseLevel::basic));
  auto binding = data.binding(4);
  std::vector<double> small(data.m.data().size() - 1);
  binding.bind("m", std::span<double>(small));
  try {
    kernel.run(binding);
    FAIL() << "expected ShapeMismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ShapeMismatch);
  }
  // Sparse series too short for the requested time range.
  auto long_run = data.binding(5);
  EXPECT_THROW(kernel.run(long_run), Error);
}

TEST(Run, MissingScalar) {
  Grid grid({5, 5}, {1.0, 1.0});
  auto a = Function::dense("a", grid);
  auto y = Function::dense("y", grid);
  Kernel<double> kernel(schedule(make_set({{y(), symbol("c") * a()}}), {}, {}));
  GridFunction<double> ad(a), yd(y);
  DataBinding<double> binding;
  binding.bind(ad).bind(yd);
  EXPECT_THROW(kernel.run(binding), Error);
  binding.set("c", 3.0);
  ad.fill(2.0);
  kernel.run(binding);
  EXPECT_EQ(yd.data()[7], 6.0);
}

TEST(Run, ZeroStepsLeaveBuffersUnchanged) {
  Acoustic problem(12, 2, 4);
  AcousticData data(problem, 9);
  auto before = std::vector<double>(data.u.data().begin(), data.u.data().end());
  Kernel<double> kernel(problem.nest(DseLevel::advanced));
  auto binding = data.binding(0);
  auto summary = kernel.run(binding);
  EXPECT_EQ(summary.steps, 0);
  EXPECT_TRUE(bit_equal<double>(data.u.data(), before));
}

TEST(Run, StepsCounted) {
  Acoustic problem(12, 2, 10);
  AcousticData data(problem, 9);
  Kernel<double> kernel(problem.nest(DseLevel::basic));
  auto binding = data.binding(10);
  EXPECT_EQ(kernel.run(binding).steps, 10);
}

TEST(Run, BufferSwapByName) {
  Grid grid({6, 6}, {0.1, 0.1});
  auto p = Function::dense("p", grid, 2);
  auto pn = Function::dense("pn", grid, 2);
  Expr update = solve_linear({expand_derivatives(1.0 * pn.dx2() + pn.dy2()), 0.0}, pn());
  Kernel<double> kernel(schedule(make_set({{p(), update}}), {}, {{"h", 0.1}}));
  GridFunction<double> first(p), second(pn);
  randomize(first.data(), 1);
  randomize(second.data(), 2);
  auto a = std::vector<double>(first.data().begin(), first.data().end());
  auto b = std::vector<double>(second.data().begin(), second.data().end());
  DataBinding<double> swapped;
  swapped.bind("p", second).bind("pn", first);
  kernel.run(swapped);
  EXPECT_TRUE(bit_equal<double>(first.data(), a));  // read only
  EXPECT_FALSE(bit_equal<double>(second.data(), b));
  // Interior point 2,3 of `second` is the average of neighbours in `first`.
  auto at = [&](const std::vector<double>& v, int x, int y) { return v[x * 6 + y]; };
  double expected = 0.25 * (at(a, 1, 3) + at(a, 3, 3) + at(a, 2, 2) + at(a, 2, 4));
  EXPECT_NEAR(second.at(0, {2, 3}), expected, 1e-15);
}

TEST(Run, FloatMatchesDoubleLoosely) {
  Acoustic problem(16, 4, 6);
  auto nest = problem.nest(DseLevel::advanced);
  AcousticData d(problem, 4);
  d.u.fill(0.0);
  GridFunction<float> uf(problem.u), mf(problem.m), ef(problem.eta);
  for (std::size_t i = 0; i < d.m.data().size(); ++i) {
    mf.data()[i] = static_cast<float>(d.m.data()[i]);
    ef.data()[i] = static_cast<float>(d.eta.data()[i]);
  }
  std::vector<float> srcf(d.src.begin(), d.src.end()), recf(d.rec.size());
  // Exactly representable inputs so both runs start from the same data.
  for (std::size_t i = 0; i < d.m.data().size(); ++i) {
    d.m.data()[i] = mf.data()[i];
    d.eta.data()[i] = ef.data()[i];
  }
  for (std::size_t i = 0; i < d.src.size(); ++i) d.src[i] = srcf[i];
  auto bd = d.binding(6);
  Kernel<double>(nest).run(bd);
  DataBinding<float> bf;
  bf.bind(uf).bind(mf).bind(ef).bind("src", std::span<float>(srcf)).bind("rec", std::span<float>(recf)).time(0, 6);
  Kernel<float>(nest).run(bf);
  double scale = 0.0;
  for (double v : d.rec) scale = std::max(scale, std::abs(v));
  ASSERT_GT(scale, 0.0);
  for (std::size_t i = 0; i < recf.size(); ++i) EXPECT_NEAR(recf[i], d.rec[i], 1e-5 * scale);
}

TEST(Run, PrologueRunsOnceWithHoistedBuffers) {
  Acoustic problem(12, 4, 3);
  auto nest = problem.nest(DseLevel::advanced);
  ASSERT_FALSE(nest.prologue.empty());
  ASSERT_FALSE(nest.scratch.empty());
  AcousticData x(problem, 2), y(problem, 2);
  auto bx = x.binding(3);
  auto by = y.binding(3);
  Kernel<double>(nest).run(bx);
  Kernel<double>(problem.nest(DseLevel::basic)).run(by);
  for (std::size_t i = 0; i < x.u.data().size(); ++i) {
    double a = x.u.data()[i], b = y.u.data()[i];
    EXPECT_LE(std::abs(a - b), 1e-12 * std::max(1.0, std::abs(b)));
  }
}

}  // namespace
}  // namespace sf
