#pragma once

// Benchmark matrix over space order x DSE level x DLE level for the acoustic
// forward stencil, reported as JSON lines.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "stencilforge/demos.hpp"

namespace sf {

struct BenchConfig {
  std::vector<int> shape{64, 64, 64};
  std::vector<int> orders{2, 4, 8, 16};
  std::vector<DseLevel> dse{DseLevel::basic, DseLevel::advanced};
  std::vector<DleLevel> dle{DleLevel::basic, DleLevel::advanced};
  int steps = 5;
  int repeats = 3;
  bool autotune = true;   // search block sizes for dle=advanced
  int tune_steps = 1;
  // Optional machine constants for a roofline bound; not measured.
  std::optional<double> peak_gflops;
  std::optional<double> bandwidth_gbs;
};

struct BenchReport {
  std::string kernel;
  std::vector<int> shape;
  int space_order = 0;
  std::string dse;
  std::string dle;
  std::string element;
  double runtime = 0.0;  // median seconds for `steps` time steps
  int steps = 0;
  long points = 0;        // updated points per step
  long flops_per_point = 0;
  double gflops = 0.0;
  double oi = 0.0;
  std::string block;
  std::vector<std::pair<std::string, double>> tuning;  // candidate -> median seconds
  int threads = 1;
  std::optional<double> roofline_gflops;
};

inline void to_json(nlohmann::json& j, const BenchReport& r) {
  j = nlohmann::json{{"kernel", r.kernel},
                     {"shape", r.shape},
                     {"space_order", r.space_order},
                     {"dse", r.dse},
                     {"dle", r.dle},
                     {"element", r.element},
                     {"runtime_s", r.runtime},
                     {"steps", r.steps},
                     {"points", r.points},
                     {"flops_per_point", r.flops_per_point},
                     {"gflops", r.gflops},
                     {"oi", r.oi},
                     {"block", r.block},
                     {"threads", r.threads},
                     {"pinning", "none (left to the host OS)"}};
  if (!r.tuning.empty()) {
    nlohmann::json tuning = nlohmann::json::object();
    for (const auto& [spec, seconds] : r.tuning) tuning[spec] = seconds;
    j["tuning"] = tuning;
  }
  if (r.roofline_gflops) j["roofline_gflops"] = *r.roofline_gflops;
}

inline long stencil_points(const LoopNest& nest) {
  long total = 0;
  for (const auto& item : nest.body) {
    if (item.kind != BodyItem::Kind::stencil) continue;
    long n = 1;
    for (const auto& loop : item.loops) n *= loop.extent();
    total += n;
  }
  return total;
}

inline double median_seconds(const std::function<double()>& once, int repeats) {
  once();  // warm-up
  std::vector<double> times;
  for (int r = 0; r < std::max(1, repeats); ++r) times.push_back(once());
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

template <class T = double>
std::vector<BenchReport> run_bench(const BenchConfig& config, const std::function<void(const BenchReport&)>& on_row = {}) {
  std::vector<BenchReport> out;
  for (int order : config.orders) {
    AcousticConfig ac;
    ac.shape = config.shape;
    ac.order = order;
    ac.nbl = std::min(10, (*std::min_element(config.shape.begin(), config.shape.end()) - 6) / 2);
    auto model = make_acoustic_model(ac);
    DemoKernel kernel = acoustic_kernel(model, order, 1, false).kernel;
    kernel.sparse.clear();

    GridFunction<T> u(Function::time("u", model.grid, 2, order));
    GridFunction<T> m(Function::dense("m", model.grid, order));
    GridFunction<T> eta(Function::dense("eta", model.grid, order));
    for (std::size_t i = 0; i < model.m.size(); ++i) {
      m.data()[i] = static_cast<T>(model.m[i]);
      eta.data()[i] = static_cast<T>(model.eta[i]);
    }
    auto bind = [&](int steps) {
      DataBinding<T> b;
      b.bind(u).bind(m).bind(eta).time(0, steps);
      return b;
    };

    for (auto dse : config.dse) {
      for (auto dle : config.dle) {
        DemoRun run;
        run.dse = dse;
        run.dle = dle;
        BenchReport row;
        if (dle == DleLevel::advanced && config.autotune) {
          auto base = kernel.build<T>(run);
          auto tuned = autotune_blocks(base.nest(), [&](const LoopNest& nest) {
            Kernel<T> k(nest);
            auto b = bind(config.tune_steps);
            return k.run(b).seconds;
          });
          run.blocking = tuned.best;
          for (const auto& [spec, seconds] : tuned.medians) row.tuning.emplace_back(spec.to_string(), seconds);
        }
        auto op = kernel.build<T>(run);
        auto flops = op.flops();
        row.kernel = "acoustic";
        row.shape = config.shape;
        row.space_order = order;
        row.dse = std::string(to_string(dse));
        row.dle = std::string(to_string(dle));
        row.element = sizeof(T) == sizeof(float) ? "f32" : "f64";
        row.steps = config.steps;
        row.points = stencil_points(op.nest());
        row.flops_per_point = flops.flops;
        row.oi = flops.oi;
        row.block = blocking_of(op.nest()).to_string();
        row.threads = configured_threads();
        row.runtime = median_seconds([&] {
          auto b = bind(config.steps);
          return op.apply(b).seconds;
        }, config.repeats);
        double work = static_cast<double>(row.flops_per_point) * static_cast<double>(row.points) * config.steps;
        row.gflops = row.runtime > 0.0 ? work / row.runtime * 1e-9 : 0.0;
        if (config.peak_gflops && config.bandwidth_gbs) {
          row.roofline_gflops = std::min(*config.peak_gflops, row.oi * *config.bandwidth_gbs);
        }
        if (on_row) on_row(row);
        out.push_back(std::move(row));
      }
    }
  }
  return out;
}

}  // namespace sf
