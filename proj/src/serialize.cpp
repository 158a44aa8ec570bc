#include "hamreduce/serialize.hpp"

#include <fstream>
#include <sstream>

#include "hamreduce/errors.hpp"

namespace hamreduce {

namespace {

Json complex_pairs(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      rows.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
  return rows;
}

Eigen::MatrixXcd complex_pairs_to_matrix(const Json& j, Eigen::Index dim) {
  Eigen::MatrixXcd m(dim, dim);
  if (static_cast<Eigen::Index>(j.size()) != dim * dim)
    throw InputError("MalformedSpecJson", "block entry count mismatch");
  Eigen::Index i = 0;
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) {
      m(r, c) = std::complex<double>(j[i][0].get<double>(),
                                     j[i][1].get<double>());
      ++i;
    }
  return m;
}

GateKind gate_kind_from_name(const std::string& name) {
  if (name == "NOT") return GateKind::Not;
  if (name == "CNOT") return GateKind::Cnot;
  if (name == "TOFFOLI") return GateKind::Toffoli;
  if (name == "CK_NOT") return GateKind::CkNot;
  if (name == "HADAMARD") return GateKind::Hadamard;
  if (name == "T_GATE") return GateKind::TGate;
  if (name == "Z") return GateKind::Z;
  if (name == "CZ") return GateKind::Cz;
  if (name == "IDENTITY") return GateKind::Identity;
  throw InputError("MalformedCircuitJson", "unknown gate kind " + name);
}

}  // namespace

Json spec_to_json(const HamiltonianSpec& spec) {
  Json j;
  j["schema_version"] = 1;
  j["total_qubits"] = spec.total_qubits;
  j["layout"] = {{"num_inputs", spec.num_inputs},
                 {"num_ancillas", spec.num_ancillas},
                 {"num_clock", spec.num_clock}};
  j["locality"] = spec.locality;
  if (spec.thresholds)
    j["thresholds"] = {{"a", spec.thresholds->a}, {"b", spec.thresholds->b}};
  if (spec.weights)
    j["coefficients"] = {{"J_in", spec.weights->j_in},
                         {"J_prop1", spec.weights->j_prop1},
                         {"J_prop2", spec.weights->j_prop2},
                         {"J_stab", spec.weights->j_stab}};
  if (spec.mu) j["mu"] = *spec.mu;
  Json terms = Json::array();
  for (const LocalTerm& term : spec.terms) {
    Json t;
    t["coeff"] = term.coefficient;
    t["support"] = term.support;
    t["block"] = complex_pairs(term.block);
    if (!term.group.empty()) t["group"] = term.group;
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

HamiltonianSpec spec_from_json(const Json& j) {
  HamiltonianSpec spec;
  spec.total_qubits = j.at("total_qubits").get<int>();
  if (j.contains("layout")) {
    spec.num_inputs = j["layout"].value("num_inputs", 0);
    spec.num_ancillas = j["layout"].value("num_ancillas", 0);
    spec.num_clock = j["layout"].value("num_clock", 0);
  }
  spec.locality = j.at("locality").get<int>();
  if (j.contains("thresholds"))
    spec.thresholds = Thresholds{j["thresholds"].at("a").get<double>(),
                                 j["thresholds"].at("b").get<double>()};
  if (j.contains("coefficients"))
    spec.weights = PenaltyWeights{j["coefficients"].at("J_in").get<double>(),
                                  j["coefficients"].at("J_prop1").get<double>(),
                                  j["coefficients"].at("J_prop2").get<double>(),
                                  j["coefficients"].at("J_stab").get<double>()};
  if (j.contains("mu")) spec.mu = j["mu"].get<double>();
  for (const Json& t : j.at("terms")) {
    LocalTerm term;
    term.coefficient = t.at("coeff").get<double>();
    term.support = t.at("support").get<std::vector<int>>();
    term.group = t.value("group", "");
    const Eigen::Index dim = Eigen::Index{1} << term.support.size();
    term.block = complex_pairs_to_matrix(t.at("block"), dim);
    spec.terms.push_back(std::move(term));
  }
  validate_spec(spec);
  return spec;
}

Json circuit_to_json(const QuantumCircuit& circ) {
  Json j;
  j["schema_version"] = 1;
  Json layout;
  layout["num_inputs"] = circ.layout.num_inputs;
  layout["num_ancillas"] = circ.layout.num_ancillas;
  layout["out_qubit"] = circ.layout.out_qubit;
  layout["cls_qubit"] = circ.layout.cls_qubit;
  layout["cnt_qubits"] = circ.layout.cnt_qubits;
  layout["scratch_qubits"] = circ.layout.scratch_qubits;
  j["layout"] = std::move(layout);
  j["classical_reversible"] = circ.classical_reversible;
  if (circ.gate_count_certificate)
    j["gate_count_certificate"] = *circ.gate_count_certificate;
  Json gates = Json::array();
  for (const Gate& gate : circ.gates) {
    Json g;
    g["kind"] = gate_kind_name(gate.kind);
    g["controls"] = gate.controls;
    g["targets"] = gate.targets;
    if (gate.repeats != 1) g["repeats"] = gate.repeats;
    gates.push_back(std::move(g));
  }
  j["gates"] = std::move(gates);
  return j;
}

QuantumCircuit circuit_from_json(const Json& j) {
  QuantumCircuit circ;
  const Json& layout = j.at("layout");
  circ.layout.num_inputs = layout.at("num_inputs").get<int>();
  circ.layout.num_ancillas = layout.at("num_ancillas").get<int>();
  circ.layout.out_qubit = layout.at("out_qubit").get<int>();
  circ.layout.cls_qubit = layout.value("cls_qubit", 0);
  circ.layout.cnt_qubits = layout.value("cnt_qubits", std::vector<int>{});
  circ.layout.scratch_qubits =
      layout.value("scratch_qubits", std::vector<int>{});
  circ.classical_reversible = j.value("classical_reversible", false);
  if (j.contains("gate_count_certificate"))
    circ.gate_count_certificate = j["gate_count_certificate"].get<std::uint64_t>();
  for (const Json& g : j.at("gates")) {
    Gate gate;
    gate.kind = gate_kind_from_name(g.at("kind").get<std::string>());
    gate.controls = g.at("controls").get<std::vector<int>>();
    gate.targets = g.at("targets").get<std::vector<int>>();
    gate.repeats = g.value("repeats", 1);
    circ.gates.push_back(std::move(gate));
  }
  validate_circuit(circ);
  return circ;
}

Json schedule_to_json(const ClockSchedule& sched) {
  Json j;
  j["schema_version"] = 1;
  j["n_cl"] = sched.n_cl;
  j["d"] = sched.d;
  Json path = Json::array();
  for (const JohnsonVertex& v : sched.path) path.push_back(v.subset);
  j["path"] = std::move(path);
  return j;
}

ClockSchedule schedule_from_json(const Json& j) {
  ClockSchedule sched;
  sched.n_cl = j.at("n_cl").get<int>();
  sched.d = j.at("d").get<int>();
  for (const Json& v : j.at("path"))
    sched.path.push_back(JohnsonVertex{v.get<std::vector<int>>()});
  return sched;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("FileNotReadable", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("FileNotWritable", "cannot open " + path);
  out << contents;
}

std::string digest_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace hamreduce
