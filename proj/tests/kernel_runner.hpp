#pragma once

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "stencilforge/demos.hpp"

namespace sf::testing {

using ArrayMap = std::map<std::string, std::vector<double>>;

// Random contents for every user-bound array of a nest; sparse series get
// `steps` rows.
inline ArrayMap random_arrays(const LoopNest& nest, int steps, std::uint64_t seed) {
  std::set<std::string> scratch;
  for (const auto& f : nest.scratch) scratch.insert(f->name);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.5, 1.5);
  ArrayMap out;
  for (const auto& f : nest.functions) {
    if (scratch.count(f->name)) continue;
    std::size_t rows = f->time == TimeStorage::full ? static_cast<std::size_t>(steps)
                                                    : static_cast<std::size_t>(f->buffers());
    std::vector<double> values(f->points() * rows);
    for (auto& v : values) v = dist(rng);
    out.emplace(f->name, std::move(values));
  }
  return out;
}

inline ArrayMap run_on(Operator<double>& op, ArrayMap arrays, int steps, const RunOptions& options) {
  DataBinding<double> binding;
  for (auto& [name, values] : arrays) binding.bind(name, std::span<double>(values));
  binding.time(0, steps);
  op.apply(binding, options);
  return arrays;
}

// max |a - b| over max |b|, across all arrays.
inline double max_relative_difference(const ArrayMap& a, const ArrayMap& b) {
  double diff = 0.0, scale = 0.0;
  for (const auto& [name, values] : b) {
    const auto& other = a.at(name);
    for (std::size_t i = 0; i < values.size(); ++i) {
      diff = std::max(diff, std::abs(other[i] - values[i]));
      scale = std::max(scale, std::abs(values[i]));
    }
  }
  return scale > 0.0 ? diff / scale : diff;
}

inline bool bit_identical(const ArrayMap& a, const ArrayMap& b) {
  for (const auto& [name, values] : b) {
    const auto& other = a.at(name);
    if (other.size() != values.size()) return false;
    if (std::memcmp(other.data(), values.data(), values.size() * sizeof(double)) != 0) return false;
  }
  return true;
}

struct LevelCheck {
  double worst_level_difference = 0.0;  // across dse x dle, vs basic/basic
  bool tape_equals_tree = true;          // sequential, every combination
};

inline LevelCheck check_levels(const DemoKernel& kernel, int steps, std::uint64_t seed) {
  LevelCheck out;
  ArrayMap inputs;
  ArrayMap reference;
  bool first = true;
  for (auto dse : {DseLevel::basic, DseLevel::advanced}) {
    for (auto dle : {DleLevel::basic, DleLevel::advanced}) {
      DemoRun run;
      run.dse = dse;
      run.dle = dle;
      auto op = kernel.build(run);
      if (first) inputs = random_arrays(op.nest(), steps, seed);
      RunOptions tape;
      tape.parallel = false;
      RunOptions tree;
      tree.mode = ExecMode::tree;
      tree.check_bounds = true;
      auto a = run_on(op, inputs, steps, tape);
      auto b = run_on(op, inputs, steps, tree);
      out.tape_equals_tree = out.tape_equals_tree && bit_identical(a, b);
      if (first) {
        reference = a;
        first = false;
      } else {
        out.worst_level_difference = std::max(out.worst_level_difference, max_relative_difference(a, reference));
      }
    }
  }
  return out;
}

// Demo kernels on reduced grids for quick property runs.
inline std::vector<DemoKernel> small_demo_kernels() {
  ConvectionConfig conv;
  conv.nx = 23;
  conv.ny = 19;
  LaplaceConfig lap;
  lap.nx = 17;
  lap.ny = 17;
  std::vector<DemoKernel> out{convection_kernel(conv), laplace_kernel(lap)};
  for (int order : {2, 4}) {
    AcousticConfig ac;
    ac.shape = {33, 33};
    ac.order = order;
    ac.nrec = 7;
    auto model = make_acoustic_model(ac);
    for (bool adjoint : {false, true}) out.push_back(acoustic_kernel(model, order, 8, adjoint).kernel);
  }
  return out;
}

}  // namespace sf::testing
