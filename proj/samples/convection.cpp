// Linear convection written against the symbolic API directly: declare the
// field, state the equation, solve for the forward stencil, run it.

#include <cmath>
#include <cstdio>
#include <numbers>

#include "stencilforge/stencilforge.hpp"

int main() {
  using namespace sf;
  const int nx = 81, ny = 81, steps = 100;
  const double c = 1.0, dx = 0.025, dt = 0.005;

  Grid grid({nx, ny}, {dx, dx});
  auto u = GridFunction<double>::time("u", grid, /*time_order=*/1, /*space_order=*/2);

  Equation eq{u.dt() + c * u.dxl() + c * u.dyl(), 0.0};
  Expr stencil = solve_linear(expand_derivatives(eq), u.forward());
  std::printf("u(t + s, x, y) = %s\n", to_string(stencil).c_str());

  auto bump = [](double xi) {
    if (xi < 0.5 || xi > 1.0) return 0.0;
    double s = std::sin(std::numbers::pi * (xi - 0.5) / 0.5);
    return s * s;
  };
  for (int level = 0; level < u.buffers(); ++level) {
    for (int i = 0; i < nx; ++i) {
      for (int j = 0; j < ny; ++j) u.at(level, {i, j}) = 1.0 + bump(2.0 * i * dx / 3.0) * bump(2.0 * j * dx / 3.0);
    }
  }

  OperatorOptions options;
  options.subs = {{"h", dx}, {"s", dt}};
  Operator<double> op({{u.forward(), stencil}}, {}, options);

  DataBinding<double> args;
  args.bind(u).time(0, steps);
  auto summary = op.apply(args);

  auto final = u.buffer(steps);
  auto peak = find_peak(final, {nx, ny});
  std::printf("%d steps in %.4f s; peak %.4f at (%d, %d)\n", summary.steps, summary.seconds, peak.value,
              peak.index[0], peak.index[1]);
  std::printf("\n%s", op.ccode().c_str());
  return 0;
}
