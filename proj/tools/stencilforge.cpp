// stencilforge: run the demos, emit C for a demo kernel, or run the
// benchmark matrix.
//
// Exit codes: 0 success, 1 numerical failure, 2 usage error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "stencilforge/stencilforge.hpp"

namespace fs = std::filesystem;
using namespace sf;

namespace {

constexpr int kNumericalFailure = 1;
constexpr int kUsageError = 2;

struct Levels {
  std::string dse = "advanced";
  std::string dle = "advanced";

  DemoRun run() const {
    DemoRun r;
    r.dse = parse_dse_level(dse);
    r.dle = parse_dle_level(dle);
    return r;
  }
};

void add_levels(CLI::App* cmd, Levels& levels) {
  cmd->add_option("--dse", levels.dse, "expression optimization level")->check(CLI::IsMember({"basic", "advanced"}));
  cmd->add_option("--dle", levels.dle, "loop optimization level")->check(CLI::IsMember({"basic", "advanced"}));
}

std::string shape_text(const std::vector<int>& shape) {
  std::string out;
  for (std::size_t i = 0; i < shape.size(); ++i) out += (i ? "x" : "") + std::to_string(shape[i]);
  return out;
}

void dump_field(const fs::path& dir, const std::string& stem, std::span<const double> values,
                const std::vector<int>& shape, const std::string& format) {
  fs::create_directories(dir);
  fs::path path = dir / (stem + (format == "bin" ? ".bin" : ".csv"));
  if (format == "bin") {
    save_binary<double>(path.string(), values);
  } else {
    save_csv<double>(path.string(), values, static_cast<std::size_t>(shape.back()));
  }
  std::cout << "wrote " << path.string() << "\n";
}

// ---------------------------------------------------------------------------

struct ConvectionArgs {
  ConvectionConfig config;
  Levels levels;
  std::string out;
  std::string format = "csv";
};

int run_convection(const ConvectionArgs& a) {
  auto r = demo_convection(a.config, a.levels.run());
  auto peak = [](const FieldPeak& p) {
    return std::to_string(p.value) + " at (" + std::to_string(p.index[0]) + ", " + std::to_string(p.index[1]) + ")";
  };
  std::cout << "steps: " << r.steps << "\n"
            << "initial peak: " << peak(r.initial_peak) << "\n"
            << "final peak: " << peak(r.final_peak) << "\n"
            << "runtime: " << r.seconds << " s\n";
  if (!a.out.empty()) {
    dump_field(a.out, "convection_initial", r.initial, r.shape, a.format);
    dump_field(a.out, "convection_final", r.final, r.shape, a.format);
  }
  return 0;
}

struct LaplaceArgs {
  LaplaceConfig config;
  Levels levels;
  std::string out;
  std::string format = "csv";
};

int run_laplace(const LaplaceArgs& a) {
  auto r = demo_laplace(a.config, a.levels.run());
  std::cout << "iterations: " << r.iterations << "\n"
            << "relative L1 change: " << r.l1 << "\n"
            << "converged: " << (r.converged ? "true" : "false") << "\n"
            << "runtime: " << r.seconds << " s\n";
  if (!a.out.empty()) dump_field(a.out, "laplace_final", r.field, r.shape, a.format);
  return 0;
}

struct AcousticArgs {
  AcousticConfig config;
  Levels levels;
  bool adjoint_test = false;
  std::string precision = "f64";
  std::string out;
};

template <class T>
int run_acoustic_demo(const AcousticArgs& a) {
  const double tolerance = sizeof(T) == sizeof(float) ? 1e-4 : 1e-10;
  auto r = adjoint_test<T>(a.config, a.levels.run());
  std::cout << "grid: " << shape_text(a.config.shape) << ", order " << a.config.order << ", " << a.config.ntime
            << " steps, " << a.precision << "\n";
  if (a.adjoint_test) {
    std::printf("<F src, rec>  = %.17g\n<src, F* rec> = %.17g\nrelative mismatch: %.3e (tolerance %.0e)\n",
                r.forward_product, r.adjoint_product, r.mismatch, tolerance);
  }
  std::cout << "runtime: " << r.seconds << " s\n";
  if (!a.out.empty()) {
    auto model = make_acoustic_model(a.config);
    fs::create_directories(a.out);
    SparsePointSet<double> rec("rec", model.grid, model.receivers, a.config.ntime);
    for (std::size_t i = 0; i < r.rec.size(); ++i) rec.data()[i] = static_cast<double>(r.rec[i]);
    fs::path path = fs::path(a.out) / "acoustic_rec.csv";
    save_points_csv(path.string(), rec);
    std::cout << "wrote " << path.string() << "\n";
    std::vector<double> field(r.forward.field.begin(), r.forward.field.end());
    dump_field(a.out, "acoustic_final", field, a.config.shape, "csv");
  }
  if (a.adjoint_test && !(r.mismatch <= tolerance)) {
    std::cerr << "adjoint test failed\n";
    return kNumericalFailure;
  }
  return 0;
}

struct CodegenArgs {
  std::string demo;
  Levels levels;
  int order = 2;
  std::string precision = "f64";
  std::string output;
};

int run_codegen(const CodegenArgs& a) {
  DemoKernel kernel = demo_kernel(a.demo, a.order);
  std::string text = a.precision == "f32" ? kernel.build<float>(a.levels.run(), "kernel").ccode()
                                          : kernel.build<double>(a.levels.run(), "kernel").ccode();
  if (a.output.empty() || a.output == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(a.output, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + a.output + " for writing");
  out << text;
  std::cerr << "wrote " << a.output << "\n";
  return 0;
}

struct BenchArgs {
  BenchConfig config;
  std::vector<std::string> dse{"basic", "advanced"};
  std::vector<std::string> dle{"basic", "advanced"};
  bool no_autotune = false;
  double peak = 0.0;
  double bandwidth = 0.0;
  std::string json;
};

int run_bench_cmd(BenchArgs a) {
  a.config.dse.clear();
  a.config.dle.clear();
  for (const auto& s : a.dse) a.config.dse.push_back(parse_dse_level(s));
  for (const auto& s : a.dle) a.config.dle.push_back(parse_dle_level(s));
  a.config.autotune = !a.no_autotune;
  if (a.peak > 0.0) a.config.peak_gflops = a.peak;
  if (a.bandwidth > 0.0) a.config.bandwidth_gbs = a.bandwidth;
  std::ofstream file;
  if (!a.json.empty()) {
    file.open(a.json);
    if (!file) throw Error(ErrorCode::Io, "cannot open " + a.json + " for writing");
  }
  run_bench(a.config, [&](const BenchReport& row) {
    nlohmann::json j = row;
    if (file.is_open()) file << j.dump() << "\n" << std::flush;
    std::printf("order %2d dse %-8s dle %-8s %8.4f s  %5ld flops/pt  OI %.3f  %.3f GFlop/s  block %s\n",
                row.space_order, row.dse.c_str(), row.dle.c_str(), row.runtime, row.flops_per_point, row.oi,
                row.gflops, row.block.c_str());
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-difference stencil compiler: demos, C code generation and benchmarks"};
  app.require_subcommand(1);

  auto* demo = app.add_subcommand("demo", "run a worked example");
  demo->require_subcommand(1);

  ConvectionArgs conv;
  auto* c = demo->add_subcommand("convection", "linear convection of a smooth bump");
  c->add_option("--nx", conv.config.nx);
  c->add_option("--ny", conv.config.ny);
  c->add_option("--steps", conv.config.steps);
  c->add_option("-c,--velocity", conv.config.c);
  c->add_option("--dx", conv.config.dx);
  c->add_option("--dt", conv.config.dt);
  c->add_option("--out", conv.out, "directory for field dumps");
  c->add_option("--format", conv.format)->check(CLI::IsMember({"csv", "bin"}));
  add_levels(c, conv.levels);

  LaplaceArgs lap;
  auto* l = demo->add_subcommand("laplace", "Laplace equation with mixed boundary conditions");
  l->add_option("--nx", lap.config.nx);
  l->add_option("--ny", lap.config.ny);
  l->add_option("--tol", lap.config.tol);
  l->add_option("--max-iterations", lap.config.max_iterations);
  l->add_option("--out", lap.out, "directory for field dumps");
  l->add_option("--format", lap.format)->check(CLI::IsMember({"csv", "bin"}));
  add_levels(l, lap.levels);

  AcousticArgs ac;
  auto* w = demo->add_subcommand("acoustic", "acoustic forward and adjoint modelling");
  w->add_option("--shape", ac.config.shape, "grid shape, e.g. 61,61 or 41,41,41")->delimiter(',');
  w->add_option("--spacing", ac.config.spacing, "grid spacing in m");
  w->add_option("--order", ac.config.order, "space order");
  w->add_option("--ntime", ac.config.ntime);
  w->add_option("--f0", ac.config.f0, "Ricker peak frequency in kHz");
  w->add_option("--nbl", ac.config.nbl, "absorbing layer width in points");
  w->add_option("--nrec", ac.config.nrec);
  w->add_flag("--adjoint-test", ac.adjoint_test, "report the dot-product test");
  w->add_option("--precision", ac.precision)->check(CLI::IsMember({"f64", "f32"}));
  w->add_option("--out", ac.out, "directory for receiver and field dumps");
  add_levels(w, ac.levels);

  CodegenArgs gen;
  auto* g = app.add_subcommand("codegen", "emit C source for a demo kernel");
  g->add_option("--demo", gen.demo, "convection, laplace, acoustic or acoustic-adjoint")->required();
  g->add_option("--order", gen.order, "space order (acoustic)");
  g->add_option("--precision", gen.precision)->check(CLI::IsMember({"f64", "f32"}));
  g->add_option("-o,--output", gen.output, "output path ('-' for stdout)");
  add_levels(g, gen.levels);

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "benchmark the acoustic stencil across optimization levels");
  b->add_option("--shape", bench.config.shape)->delimiter(',');
  b->add_option("--orders", bench.config.orders)->delimiter(',');
  b->add_option("--dse", bench.dse)->delimiter(',')->check(CLI::IsMember({"basic", "advanced"}));
  b->add_option("--dle", bench.dle)->delimiter(',')->check(CLI::IsMember({"basic", "advanced"}));
  b->add_option("--steps", bench.config.steps);
  b->add_option("--repeats", bench.config.repeats);
  b->add_flag("--no-autotune", bench.no_autotune);
  b->add_option("--peak-gflops", bench.peak, "machine peak for the roofline bound");
  b->add_option("--bandwidth", bench.bandwidth, "memory bandwidth in GB/s for the roofline bound");
  b->add_option("--json", bench.json, "JSON-lines report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsageError;
  }

  try {
    if (*demo) {
      if (*c) return run_convection(conv);
      if (*l) return run_laplace(lap);
      if (*w) return ac.precision == "f32" ? run_acoustic_demo<float>(ac) : run_acoustic_demo<double>(ac);
    }
    if (*g) return run_codegen(gen);
    if (*b) return run_bench_cmd(bench);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::UnknownDemo:
      case ErrorCode::InvalidArgument:
      case ErrorCode::CflViolation:
        return kUsageError;
      default:
        return kNumericalFailure;
    }
  }
  return kUsageError;
}
