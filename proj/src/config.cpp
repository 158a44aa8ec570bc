#include "hamreduce/config.hpp"

#include "hamreduce/serialize.hpp"

namespace hamreduce {

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["dense_cap"] = dense_cap;
  j["iterative_cap"] = iterative_cap;
  j["oracle_cap"] = oracle_cap;
  j["a_const"] = a_const;
  j["b_const"] = b_const;
  j["mu"] = mu;
  j["num_bins"] = num_bins;
  j["c_exponent"] = c_exponent;
  j["ell"] = ell;
  j["reps"] = reps;
  j["ell_ee"] = ell_ee;
  return j;
}

RunConfig RunConfig::from_json(const nlohmann::ordered_json& j) {
  RunConfig cfg;
  cfg.seed = j.value("seed", cfg.seed);
  cfg.dense_cap = j.value("dense_cap", cfg.dense_cap);
  cfg.iterative_cap = j.value("iterative_cap", cfg.iterative_cap);
  cfg.oracle_cap = j.value("oracle_cap", cfg.oracle_cap);
  cfg.a_const = j.value("a_const", cfg.a_const);
  cfg.b_const = j.value("b_const", cfg.b_const);
  cfg.mu = j.value("mu", cfg.mu);
  cfg.num_bins = j.value("num_bins", cfg.num_bins);
  cfg.c_exponent = j.value("c_exponent", cfg.c_exponent);
  cfg.ell = j.value("ell", cfg.ell);
  cfg.reps = j.value("reps", cfg.reps);
  cfg.ell_ee = j.value("ell_ee", cfg.ell_ee);
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
  return from_json(nlohmann::ordered_json::parse(read_file(path)));
}

}  // namespace hamreduce
