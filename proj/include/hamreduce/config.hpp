#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace hamreduce {

/// Runtime knobs echoed into every CLI artifact for reproducibility.
struct RunConfig {
  std::uint64_t seed = 1;
  int dense_cap = 14;
  int iterative_cap = 24;
  int oracle_cap = 24;
  double a_const = 2.0;
  double b_const = 0.125;
  double mu = -1.0;  // < 0: use 2^{-num_inputs}
  int num_bins = 0;  // 0: 4 * total_qubits
  double c_exponent = 1.0;
  int ell = 12;
  int reps = 9;
  int ell_ee = 22;

  nlohmann::ordered_json to_json() const;
  static RunConfig from_json(const nlohmann::ordered_json& j);
  static RunConfig from_file(const std::string& path);
};

}  // namespace hamreduce
