// Command-line front end: reduce CNF instances to local Hamiltonians,
// inspect spectra and partition-function estimates, and dump clock paths
// and verifier gate counts as machine-readable JSON.

#include <cmath>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hamreduce/bits.hpp"
#include "hamreduce/circuit.hpp"
#include "hamreduce/clock.hpp"
#include "hamreduce/cnf.hpp"
#include "hamreduce/config.hpp"
#include "hamreduce/errors.hpp"
#include "hamreduce/hamiltonian.hpp"
#include "hamreduce/qpf.hpp"
#include "hamreduce/serialize.hpp"
#include "hamreduce/spectra.hpp"

namespace hr = hamreduce;
using hr::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;
constexpr int kExitPromise = 4;

Json make_envelope(const hr::RunConfig& cfg, const std::string& input_bytes) {
  Json j;
  j["schema_version"] = 1;
  j["config"] = cfg.to_json();
  j["input_digest"] = hr::digest_hex(input_bytes);
  return j;
}

int pick_clock_size(int needed_steps, int d) {
  int n_cl = d + 1;
  while (static_cast<int>(hr::binomial(n_cl, d)) < needed_steps + 1) ++n_cl;
  return n_cl;
}

int cmd_reduce(const std::string& input, const std::string& flavor,
               const std::string& out, const hr::RunConfig& cfg) {
  const std::string bytes = hr::read_file(input);
  hr::CnfFormula phi = hr::parse_dimacs(bytes);
  hr::HamiltonianSpec spec;
  Json summary = make_envelope(cfg, bytes);
  summary["flavor"] = flavor;

  if (flavor == "trivial") {
    spec = hr::build_trivial_sat_hamiltonian(phi);
  } else if (flavor == "five_local") {
    hr::QuantumCircuit verifier = hr::build_sat_verifier(phi);
    const int g = static_cast<int>(hr::fully_decompose(verifier).size());
    hr::QuantumCircuit flat;
    flat.layout = verifier.layout;
    flat.gates = hr::fully_decompose(verifier);
    flat.gate_count_certificate = verifier.gate_count_certificate;
    const int n_cl = pick_clock_size(g, 2);
    hr::ClockSchedule sched = hr::johnson_path_d2(n_cl);
    hr::FiveLocalOptions opt;
    opt.mu = cfg.mu;
    opt.a_const = cfg.a_const;
    opt.b_const = cfg.b_const;
    spec = hr::build_hu_5local(flat, sched, opt);
    summary["gate_count"] = g;
    summary["gate_count_certificate"] = *verifier.gate_count_certificate;
    summary["n_cl"] = n_cl;
  } else if (flavor == "three_local") {
    hr::QuantumCircuit verifier = hr::build_sat_verifier(phi);
    hr::QuantumCircuit cz_form = hr::recompile_to_cz(verifier);
    hr::CzSandwichCircuit czc = hr::cz_sandwich_normalize(cz_form);
    const int n_cl = pick_clock_size(czc.total_time(), 2);
    hr::ClockSchedule sched = hr::johnson_path_d2(n_cl);
    spec = hr::build_hu_3local(czc, sched);
    summary["total_time"] = czc.total_time();
    summary["n_cl"] = n_cl;
  } else {
    throw hr::InputError("UnknownFlavor", flavor);
  }

  if (phi.num_vars >= 2 &&
      phi.clauses.size() >
          static_cast<size_t>(phi.num_vars) * static_cast<size_t>(phi.num_vars))
    std::cerr << "warning: clause count exceeds num_vars^2; the verifier "
                 "gate-count certificate regime assumes m = O(n^c), c < 2\n";

  summary["total_qubits"] = spec.total_qubits;
  summary["locality"] = hr::locality_of(spec);
  summary["term_count"] = spec.terms.size();
  if (spec.thresholds)
    summary["thresholds"] = {{"a", spec.thresholds->a},
                             {"b", spec.thresholds->b}};
  if (spec.weights)
    summary["coefficients"] = {{"J_in", spec.weights->j_in},
                               {"J_prop1", spec.weights->j_prop1},
                               {"J_prop2", spec.weights->j_prop2},
                               {"J_stab", spec.weights->j_stab}};

  Json artifact = make_envelope(cfg, bytes);
  artifact["spec"] = hr::spec_to_json(spec);
  hr::write_file(out, artifact.dump(2) + "\n");
  std::cout << summary.dump(2) << std::endl;
  return kExitOk;
}

hr::HamiltonianSpec load_spec(const std::string& path, std::string* bytes_out) {
  const std::string bytes = hr::read_file(path);
  if (bytes_out) *bytes_out = bytes;
  Json j = Json::parse(bytes);
  return hr::spec_from_json(j.contains("spec") ? j["spec"] : j);
}

int cmd_spectrum(const std::string& spec_path, double beta, bool has_beta,
                 bool csv, const hr::RunConfig& cfg) {
  std::string bytes;
  hr::HamiltonianSpec spec = load_spec(spec_path, &bytes);
  if (csv) {
    Eigen::VectorXd eigs = hr::full_spectrum(spec, cfg.dense_cap);
    std::cout << "eigenvalue\n";
    for (Eigen::Index i = 0; i < eigs.size(); ++i)
      std::cout << Json(eigs(i)).dump() << "\n";
    return kExitOk;
  }
  hr::SpectrumResult result = hr::ground_energy(
      spec, hr::SolveMethod::Auto, cfg.dense_cap, cfg.iterative_cap, cfg.seed);
  Json out = make_envelope(cfg, bytes);
  out["lambda"] = result.ground_energy;
  out["method"] = result.method;
  out["residual"] = result.residual;
  if (has_beta) {
    out["beta"] = beta;
    out["Z"] = hr::partition_function_exact(spec, beta, cfg.dense_cap);
  }
  std::cout << out.dump(2) << std::endl;
  return kExitOk;
}

int cmd_qpf(const std::string& spec_path, double beta, double delta,
            const std::string& backend, const hr::RunConfig& cfg) {
  std::string bytes;
  hr::HamiltonianSpec spec = load_spec(spec_path, &bytes);
  hr::QpfOptions opt;
  opt.seed = cfg.seed;
  opt.num_bins = cfg.num_bins;
  opt.c_exponent = cfg.c_exponent;
  opt.ell = cfg.ell;
  opt.reps = cfg.reps;
  opt.ell_ee = cfg.ell_ee;
  opt.dense_cap = cfg.dense_cap;
  hr::QpfBackend kind = backend == "simulated" ? hr::QpfBackend::Simulated
                                               : hr::QpfBackend::Ideal;
  hr::QpfEstimate est = hr::qpf_algorithm(spec, beta, delta, kind, opt);
  Json out = make_envelope(cfg, bytes);
  out["backend"] = backend;
  out["beta"] = beta;
  out["delta"] = delta;
  out["z_half"] = est.z_tilde_half;
  Json bins = Json::array();
  for (const auto& ce : est.bins) {
    Json b;
    b["bin"] = ce.bin_index;
    b["m_tilde"] = ce.m_tilde;
    b["mode"] = ce.mode == hr::CountMode::Exact ? "exact" : "simulated";
    if (ce.mode == hr::CountMode::Simulated) {
      b["ell"] = ce.ell;
      b["reps"] = ce.reps;
      b["success_fraction"] = ce.success_fraction;
    }
    bins.push_back(std::move(b));
  }
  out["bins"] = std::move(bins);
  if (spec.total_qubits <= cfg.dense_cap) {
    const double z = hr::partition_function_exact(spec, beta, cfg.dense_cap);
    out["exact_Z"] = z;
    out["ratio"] = z > 0 ? est.z_tilde_half / z : 0.0;
  }
  std::cout << out.dump(2) << std::endl;
  return kExitOk;
}

int cmd_clock_path(int n_cl, int d, bool two_step, const hr::RunConfig& cfg) {
  hr::ClockSchedule sched =
      (d == 2 && two_step) ? hr::johnson_path_d2(n_cl)
                           : hr::johnson_path_generic(n_cl, d);
  hr::ScheduleReport report = hr::validate_schedule(sched, two_step);
  Json out = make_envelope(cfg, std::to_string(n_cl) + ":" + std::to_string(d));
  out["n_cl"] = n_cl;
  out["d"] = d;
  out["two_step"] = two_step;
  out["valid"] = report.ok;
  out["schedule"] = hr::schedule_to_json(sched);
  std::cout << out.dump(2) << std::endl;
  return report.ok ? kExitOk : kExitInput;
}

int cmd_gatecount(const std::string& input, const hr::RunConfig& cfg) {
  const std::string bytes = hr::read_file(input);
  hr::CnfFormula phi = hr::parse_dimacs(bytes);
  hr::QuantumCircuit verifier = hr::build_sat_verifier(phi);
  const std::uint64_t actual = hr::elementary_gate_count(verifier);
  Json out = make_envelope(cfg, bytes);
  out["num_vars"] = phi.num_vars;
  out["num_clauses"] = phi.clauses.size();
  out["arity_bound"] = phi.arity_bound;
  out["actual"] = actual;
  out["certificate"] = *verifier.gate_count_certificate;
  out["within_certificate"] = actual <= *verifier.gate_count_certificate;
  std::cout << out.dump(2) << std::endl;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"local Hamiltonian reductions and partition-function estimation"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "RunConfig JSON file");

  auto* reduce = app.add_subcommand("reduce", "CNF to Hamiltonian spec");
  std::string input, flavor = "trivial", out = "spec.json";
  reduce->add_option("--input", input, "DIMACS CNF path")->required();
  reduce->add_option("--flavor", flavor,
                     "trivial | five_local | three_local");
  reduce->add_option("--out", out, "output spec path");

  auto* spectrum = app.add_subcommand("spectrum", "ground energy / Z(beta)");
  std::string spec_path;
  double beta = 1.0;
  bool csv = false;
  spectrum->add_option("--spec", spec_path, "spec JSON path")->required();
  auto* beta_opt = spectrum->add_option("--beta", beta, "inverse temperature");
  spectrum->add_flag("--csv", csv, "emit eigenvalue CSV");

  auto* qpf = app.add_subcommand("qpf", "partition-function estimation");
  std::string qpf_spec, backend = "ideal";
  double qpf_beta = 1.0, qpf_delta = 0.75;
  std::uint64_t qpf_seed = 0;
  qpf->add_option("--spec", qpf_spec, "spec JSON path")->required();
  qpf->add_option("--beta", qpf_beta, "inverse temperature");
  qpf->add_option("--delta", qpf_delta, "relative error target");
  qpf->add_option("--backend", backend, "ideal | simulated");
  auto* seed_opt = qpf->add_option("--seed", qpf_seed, "run seed");

  auto* clock = app.add_subcommand("clock-path", "clock schedule dump");
  int n_cl = 4, d = 2;
  bool two_step = false;
  clock->add_option("--n", n_cl, "clock qubits")->required();
  clock->add_option("--d", d, "subset size");
  clock->add_flag("--two-step", two_step, "use the two-step d=2 path");

  auto* gatecount = app.add_subcommand("gatecount", "verifier gate counts");
  std::string gc_input;
  gatecount->add_option("--input", gc_input, "DIMACS CNF path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    hr::RunConfig cfg;
    if (!config_path.empty()) cfg = hr::RunConfig::from_file(config_path);
    if (*seed_opt) cfg.seed = qpf_seed;
    if (reduce->parsed()) return cmd_reduce(input, flavor, out, cfg);
    if (spectrum->parsed())
      return cmd_spectrum(spec_path, beta, !beta_opt->empty(), csv, cfg);
    if (qpf->parsed()) return cmd_qpf(qpf_spec, qpf_beta, qpf_delta, backend, cfg);
    if (clock->parsed()) return cmd_clock_path(n_cl, d, two_step, cfg);
    if (gatecount->parsed()) return cmd_gatecount(gc_input, cfg);
  } catch (const hr::CapError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitCap;
  } catch (const hr::PromiseError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitPromise;
  } catch (const hr::Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitInput;
  }
  return kExitOk;
}
