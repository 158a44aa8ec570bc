#include "hamreduce/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "hamreduce/bits.hpp"
#include "hamreduce/errors.hpp"

namespace hamreduce {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

int expected_controls(GateKind kind) {
  switch (kind) {
    case GateKind::Cnot:
      return 1;
    case GateKind::Toffoli:
      return 2;
    case GateKind::Cz:
      return 1;
    default:
      return 0;
  }
}

}  // namespace

const char* gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::Not: return "NOT";
    case GateKind::Cnot: return "CNOT";
    case GateKind::Toffoli: return "TOFFOLI";
    case GateKind::CkNot: return "CK_NOT";
    case GateKind::Hadamard: return "HADAMARD";
    case GateKind::TGate: return "T_GATE";
    case GateKind::Z: return "Z";
    case GateKind::Cz: return "CZ";
    case GateKind::Identity: return "IDENTITY";
  }
  return "?";
}

std::vector<int> Gate::qubits() const {
  std::vector<int> q = controls;
  q.insert(q.end(), targets.begin(), targets.end());
  return q;
}

bool Gate::is_classical() const {
  switch (kind) {
    case GateKind::Not:
    case GateKind::Cnot:
    case GateKind::Toffoli:
    case GateKind::CkNot:
    case GateKind::Identity:
      return true;
    default:
      return false;
  }
}

void validate_gate(const Gate& gate) {
  const std::string name = gate_kind_name(gate.kind);
  if (gate.targets.size() != 1)
    throw InputError("MalformedGate", name + " needs exactly one target");
  if (gate.kind == GateKind::CkNot) {
    if (gate.controls.empty())
      throw InputError("MalformedGate", "CK_NOT needs at least one control");
  } else if (static_cast<int>(gate.controls.size()) !=
             expected_controls(gate.kind)) {
    throw InputError("MalformedGate",
                     name + " has wrong control count " +
                         std::to_string(gate.controls.size()));
  }
  std::set<int> distinct;
  for (int q : gate.qubits()) {
    if (q < 1) throw InputError("MalformedGate", "qubit ids are 1-based");
    if (!distinct.insert(q).second)
      throw InputError("MalformedGate", "repeated qubit in " + name);
  }
  if (gate.repeats < 1)
    throw InputError("MalformedGate", "repeats must be positive");
  if (gate.repeats != 1 && gate.kind != GateKind::TGate)
    throw InputError("MalformedGate", "only T_GATE entries may repeat");
}

void validate_circuit(const QuantumCircuit& circ) {
  const int total = circ.total_qubits();
  for (const Gate& gate : circ.gates) {
    validate_gate(gate);
    for (int q : gate.qubits())
      if (q > total)
        throw InputError("MalformedGate",
                         "gate references qubit " + std::to_string(q) +
                             " beyond layout size " + std::to_string(total));
    if (circ.classical_reversible && !gate.is_classical())
      throw InputError("NonReversibleGate",
                       std::string(gate_kind_name(gate.kind)) +
                           " in a classical-reversible circuit");
  }
  if (circ.layout.out_qubit < 1 || circ.layout.out_qubit > total)
    throw InputError("MalformedLayout", "out qubit outside in ∪ anc");
}

// ---------------------------------------------------------------------------
// Decompositions

std::vector<Gate> decompose_cknot(const Gate& gate,
                                  const std::vector<int>& scratch) {
  if (gate.kind != GateKind::CkNot && gate.kind != GateKind::Toffoli &&
      gate.kind != GateKind::Cnot)
    throw InputError("MalformedGate", "decompose_cknot expects a multi-control NOT");
  const int k = static_cast<int>(gate.controls.size());
  const int target = gate.targets[0];
  if (k == 1) return {Gate::cnot(gate.controls[0], target)};
  if (k == 2) return {Gate::toffoli(gate.controls[0], gate.controls[1], target)};
  if (static_cast<int>(scratch.size()) < k - 2)
    throw InputError("InsufficientScratch",
                     "C^" + std::to_string(k) + "NOT needs " +
                         std::to_string(k - 2) + " scratch qubits, got " +
                         std::to_string(scratch.size()));

  // AND-chain into scratch, flip the target, then uncompute: 2k-3 Toffolis.
  std::vector<Gate> out;
  out.reserve(2 * k - 3);
  std::vector<Gate> chain;
  chain.push_back(Gate::toffoli(gate.controls[0], gate.controls[1], scratch[0]));
  for (int i = 2; i < k - 1; ++i)
    chain.push_back(Gate::toffoli(gate.controls[i], scratch[i - 2], scratch[i - 1]));
  out = chain;
  out.push_back(Gate::toffoli(gate.controls[k - 1], scratch[k - 3], target));
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) out.push_back(*it);
  return out;
}

std::vector<Gate> decompose_toffoli(const Gate& gate) {
  if (gate.kind != GateKind::Toffoli)
    throw InputError("MalformedGate", "decompose_toffoli expects a Toffoli");
  const int c1 = gate.controls[0], c2 = gate.controls[1], t = gate.targets[0];
  return {
      Gate::hadamard(t), Gate::cnot(c2, t), Gate::t_dagger(t),
      Gate::cnot(c1, t), Gate::t_gate(t),   Gate::cnot(c2, t),
      Gate::t_dagger(t), Gate::cnot(c1, t), Gate::t_gate(c2),
      Gate::t_gate(t),   Gate::hadamard(t), Gate::cnot(c1, c2),
      Gate::t_gate(c1),  Gate::t_dagger(c2), Gate::cnot(c1, c2),
  };
}

std::vector<Gate> fully_decompose(const QuantumCircuit& circ) {
  std::vector<Gate> out;
  for (const Gate& gate : circ.gates) {
    std::vector<Gate> toffolis;
    switch (gate.kind) {
      case GateKind::CkNot:
        toffolis = decompose_cknot(gate, circ.layout.scratch_qubits);
        break;
      case GateKind::Toffoli:
        toffolis = {gate};
        break;
      default:
        out.push_back(gate);
        continue;
    }
    for (const Gate& tof : toffolis) {
      if (tof.kind == GateKind::Toffoli) {
        auto elem = decompose_toffoli(tof);
        out.insert(out.end(), elem.begin(), elem.end());
      } else {
        out.push_back(tof);
      }
    }
  }
  return out;
}

std::uint64_t elementary_gate_count(const QuantumCircuit& circ) {
  return fully_decompose(circ).size();
}

// ---------------------------------------------------------------------------
// Verifier construction

namespace {

int counter_width(int m) {
  int r = 1;
  while ((1 << r) < m + 1) ++r;  // counter must reach m exactly
  return r;
}

}  // namespace

RegisterLayout verifier_layout(const CnfFormula& phi) {
  const int n = phi.num_vars;
  const int m = static_cast<int>(phi.clauses.size());
  const int r = counter_width(m);
  const int pool = std::max(0, std::max(phi.arity_bound, r) - 2);
  RegisterLayout layout;
  layout.num_inputs = n;
  layout.cls_qubit = n + 1;
  layout.cnt_qubits.resize(r);
  for (int i = 0; i < r; ++i) layout.cnt_qubits[i] = n + 2 + i;
  layout.out_qubit = n + 2 + r;
  layout.scratch_qubits.resize(pool);
  for (int i = 0; i < pool; ++i) layout.scratch_qubits[i] = n + 3 + r + i;
  layout.num_ancillas = 2 + r + pool;
  return layout;
}

QuantumCircuit build_clause_gate(const CnfFormula& phi, int clause_index,
                                 const RegisterLayout& layout) {
  if (clause_index < 1 || clause_index > static_cast<int>(phi.clauses.size()))
    throw InputError("ClauseIndexOutOfRange",
                     "clause " + std::to_string(clause_index) + " of " +
                         std::to_string(phi.clauses.size()));
  const Clause& clause = phi.clauses[clause_index - 1];

  // cls <- OR of literals, via De Morgan: NOT the positive-literal qubits,
  // AND everything into cls, then NOT cls. The input NOTs are undone by the
  // adjoint application, not here.
  QuantumCircuit circ;
  circ.layout = layout;
  circ.classical_reversible = true;
  std::vector<int> support;
  for (const Literal& lit : clause.literals) {
    if (!lit.negated) circ.gates.push_back(Gate::not_gate(lit.variable_index));
    support.push_back(lit.variable_index);
  }
  if (support.empty()) {
    circ.gates.push_back(Gate::not_gate(layout.cls_qubit));
  } else if (support.size() == 1) {
    circ.gates.push_back(Gate::cnot(support[0], layout.cls_qubit));
  } else if (support.size() == 2) {
    circ.gates.push_back(Gate::toffoli(support[0], support[1], layout.cls_qubit));
  } else {
    circ.gates.push_back(Gate::ck_not(support, layout.cls_qubit));
  }
  circ.gates.push_back(Gate::not_gate(layout.cls_qubit));
  return circ;
}

QuantumCircuit build_addone(const RegisterLayout& layout) {
  const int r = static_cast<int>(layout.cnt_qubits.size());
  QuantumCircuit circ;
  circ.layout = layout;
  circ.classical_reversible = true;
  // Bit q flips iff cls and all lower-order counter bits are 1.
  for (int q = 1; q <= r; ++q) {
    std::vector<int> controls = {layout.cls_qubit};
    for (int p = q + 1; p <= r; ++p)
      controls.push_back(layout.cnt_qubits[p - 1]);
    const int target = layout.cnt_qubits[q - 1];
    if (controls.size() == 1)
      circ.gates.push_back(Gate::cnot(controls[0], target));
    else if (controls.size() == 2)
      circ.gates.push_back(Gate::toffoli(controls[0], controls[1], target));
    else
      circ.gates.push_back(Gate::ck_not(controls, target));
  }
  return circ;
}

QuantumCircuit build_compare(int m, const RegisterLayout& layout) {
  const int r = static_cast<int>(layout.cnt_qubits.size());
  QuantumCircuit circ;
  circ.layout = layout;
  circ.classical_reversible = true;
  std::vector<int> zero_positions;
  for (int j = 1; j <= r; ++j)
    if (((m >> (r - j)) & 1) == 0) zero_positions.push_back(layout.cnt_qubits[j - 1]);
  for (int q : zero_positions) circ.gates.push_back(Gate::not_gate(q));
  if (r == 1)
    circ.gates.push_back(Gate::cnot(layout.cnt_qubits[0], layout.out_qubit));
  else if (r == 2)
    circ.gates.push_back(Gate::toffoli(layout.cnt_qubits[0],
                                       layout.cnt_qubits[1], layout.out_qubit));
  else
    circ.gates.push_back(Gate::ck_not(layout.cnt_qubits, layout.out_qubit));
  for (int q : zero_positions) circ.gates.push_back(Gate::not_gate(q));
  return circ;
}

std::uint64_t verifier_gate_count_certificate(int n, int m, int k) {
  if (m < 1) m = 1;
  if (k < 1) k = 1;
  const double nn = std::max(n, 2);
  double c = std::log(static_cast<double>(m)) / std::log(nn);
  c = std::clamp(c, 1.0, 2.0 - 1e-9);
  const double nc = std::pow(nn, c);
  const double lg = std::log2(nn);
  const double bound =
      34.0 * c * c * nc * lg * lg + (70.0 * k + 2.0) * nc + 35.0 * c * lg;
  return static_cast<std::uint64_t>(std::ceil(bound));
}

QuantumCircuit build_sat_verifier(const CnfFormula& phi) {
  validate_formula(phi);
  const int m = static_cast<int>(phi.clauses.size());
  RegisterLayout layout = verifier_layout(phi);
  QuantumCircuit circ;
  circ.layout = layout;
  circ.classical_reversible = true;

  QuantumCircuit addone = build_addone(layout);
  auto emit_clause_block = [&](int i, bool subtract) {
    QuantumCircuit w = build_clause_gate(phi, i, layout);
    circ.gates.insert(circ.gates.end(), w.gates.begin(), w.gates.end());
    if (subtract) {
      // Controlled decrement: the increment's self-inverse gates reversed.
      for (auto it = addone.gates.rbegin(); it != addone.gates.rend(); ++it)
        circ.gates.push_back(*it);
    } else {
      circ.gates.insert(circ.gates.end(), addone.gates.begin(),
                        addone.gates.end());
    }
    // Adjoint of W_i: same self-inverse gates in reverse order.
    for (auto it = w.gates.rbegin(); it != w.gates.rend(); ++it)
      circ.gates.push_back(*it);
  };
  for (int i = 1; i <= m; ++i) emit_clause_block(i, /*subtract=*/false);
  QuantumCircuit compare = build_compare(m, layout);
  circ.gates.insert(circ.gates.end(), compare.gates.begin(),
                    compare.gates.end());
  // Return the counter to zero so only the out qubit carries state.
  for (int i = m; i >= 1; --i) emit_clause_block(i, /*subtract=*/true);
  circ.gate_count_certificate =
      verifier_gate_count_certificate(phi.num_vars, m, phi.arity_bound);
  return circ;
}

// ---------------------------------------------------------------------------
// Simulation

std::vector<uint8_t> run_reversible(const QuantumCircuit& circ,
                                    const std::vector<uint8_t>& x) {
  if (static_cast<int>(x.size()) != circ.total_qubits())
    throw InputError("LengthMismatch",
                     "basis vector length " + std::to_string(x.size()) +
                         " vs " + std::to_string(circ.total_qubits()) +
                         " qubits");
  std::vector<uint8_t> state = x;
  for (const Gate& gate : circ.gates) {
    if (!gate.is_classical())
      throw InputError("NonReversibleGate", gate_kind_name(gate.kind));
    if (gate.kind == GateKind::Identity) continue;
    bool fire = true;
    for (int c : gate.controls) fire = fire && state[c - 1];
    if (fire) state[gate.targets[0] - 1] ^= 1;
  }
  return state;
}

namespace {

void apply_one_qubit(Eigen::VectorXcd& state, int qubit, int total,
                     const Eigen::Matrix2cd& u) {
  const std::uint64_t dim = state.size();
  const std::uint64_t mask = std::uint64_t{1} << (total - qubit);
  for (std::uint64_t b = 0; b < dim; ++b) {
    if (b & mask) continue;
    const std::uint64_t b1 = b | mask;
    const auto a0 = state(b);
    const auto a1 = state(b1);
    state(b) = u(0, 0) * a0 + u(0, 1) * a1;
    state(b1) = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

void apply_gate_state(Eigen::VectorXcd& state, const Gate& gate, int total) {
  const std::uint64_t dim = state.size();
  switch (gate.kind) {
    case GateKind::Identity:
      return;
    case GateKind::Not:
    case GateKind::Cnot:
    case GateKind::Toffoli:
    case GateKind::CkNot: {
      const std::uint64_t tmask = std::uint64_t{1}
                                  << (total - gate.targets[0]);
      std::uint64_t cmask = 0;
      for (int c : gate.controls) cmask |= std::uint64_t{1} << (total - c);
      for (std::uint64_t b = 0; b < dim; ++b) {
        if ((b & cmask) == cmask && !(b & tmask))
          std::swap(state(b), state(b | tmask));
      }
      return;
    }
    case GateKind::Z: {
      const std::uint64_t tmask = std::uint64_t{1}
                                  << (total - gate.targets[0]);
      for (std::uint64_t b = 0; b < dim; ++b)
        if (b & tmask) state(b) = -state(b);
      return;
    }
    case GateKind::Cz: {
      const std::uint64_t m1 = std::uint64_t{1} << (total - gate.controls[0]);
      const std::uint64_t m2 = std::uint64_t{1} << (total - gate.targets[0]);
      for (std::uint64_t b = 0; b < dim; ++b)
        if ((b & m1) && (b & m2)) state(b) = -state(b);
      return;
    }
    case GateKind::Hadamard: {
      Eigen::Matrix2cd h;
      const double s = 1.0 / std::sqrt(2.0);
      h << s, s, s, -s;
      apply_one_qubit(state, gate.targets[0], total, h);
      return;
    }
    case GateKind::TGate: {
      const std::uint64_t tmask = std::uint64_t{1}
                                  << (total - gate.targets[0]);
      const std::complex<double> phase =
          std::exp(kI * (M_PI / 4.0) * static_cast<double>(gate.repeats));
      for (std::uint64_t b = 0; b < dim; ++b)
        if (b & tmask) state(b) *= phase;
      return;
    }
  }
}

}  // namespace

Eigen::MatrixXcd realize_unitary(const QuantumCircuit& circ) {
  const int total = circ.total_qubits();
  const std::uint64_t dim = std::uint64_t{1} << total;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (std::uint64_t col = 0; col < dim; ++col) {
    Eigen::VectorXcd state = u.col(col);
    for (const Gate& gate : circ.gates) apply_gate_state(state, gate, total);
    u.col(col) = state;
  }
  return u;
}

Eigen::MatrixXcd realize_unitary(const CzSandwichCircuit& circ) {
  QuantumCircuit tmp;
  tmp.layout.num_inputs = circ.total_qubits;
  tmp.layout.out_qubit = circ.out_qubit;
  tmp.gates = circ.gates;
  return realize_unitary(tmp);
}

Eigen::MatrixXcd gate_matrix(const Gate& gate, int total_qubits) {
  const std::uint64_t dim = std::uint64_t{1} << total_qubits;
  Eigen::MatrixXcd u(dim, dim);
  for (std::uint64_t col = 0; col < dim; ++col) {
    Eigen::VectorXcd state = Eigen::VectorXcd::Zero(dim);
    state(col) = 1.0;
    apply_gate_state(state, gate, total_qubits);
    u.col(col) = state;
  }
  return u;
}

Eigen::MatrixXcd gate_block(const Gate& gate) {
  // Block over the gate's own qubits, sorted ascending, first qubit most
  // significant.
  std::vector<int> qubits = gate.qubits();
  std::sort(qubits.begin(), qubits.end());
  const int s = static_cast<int>(qubits.size());
  Gate local = gate;
  auto remap = [&](int q) {
    return static_cast<int>(std::lower_bound(qubits.begin(), qubits.end(), q) -
                            qubits.begin()) +
           1;
  };
  for (int& c : local.controls) c = remap(c);
  for (int& t : local.targets) t = remap(t);
  return gate_matrix(local, s);
}

// ---------------------------------------------------------------------------
// CZ pipeline

QuantumCircuit recompile_to_cz(const QuantumCircuit& circ) {
  QuantumCircuit flat;
  flat.layout = circ.layout;
  flat.gates = fully_decompose(circ);
  QuantumCircuit out;
  out.layout = circ.layout;
  for (const Gate& gate : flat.gates) {
    switch (gate.kind) {
      case GateKind::Cnot:
        out.gates.push_back(Gate::hadamard(gate.targets[0]));
        out.gates.push_back(Gate::cz(gate.controls[0], gate.targets[0]));
        out.gates.push_back(Gate::hadamard(gate.targets[0]));
        break;
      case GateKind::Cz:
      case GateKind::Not:
      case GateKind::Hadamard:
      case GateKind::TGate:
      case GateKind::Z:
      case GateKind::Identity:
        out.gates.push_back(gate);
        break;
      default:
        throw InputError("UnsupportedGateKind",
                         std::string(gate_kind_name(gate.kind)) +
                             " survived decomposition");
    }
  }
  return out;
}

CzSandwichCircuit cz_sandwich_normalize(const QuantumCircuit& circ) {
  struct Segment {
    std::vector<Gate> run;                 // one-qubit gates before the CZ
    std::optional<std::pair<int, int>> cz;  // absent for the trailing run
  };
  std::vector<Segment> segments(1);
  for (const Gate& gate : circ.gates) {
    if (gate.kind == GateKind::Cz) {
      segments.back().cz = {gate.controls[0], gate.targets[0]};
      segments.emplace_back();
    } else if (gate.controls.empty() && gate.targets.size() == 1) {
      segments.back().run.push_back(gate);
    } else {
      throw InputError("UnsupportedGateKind",
                       std::string(gate_kind_name(gate.kind)) +
                           "; recompile to one-qubit + CZ first");
    }
  }

  // Gap between consecutive CZ times is run + 4 sandwich Z's + 1; pad the
  // shorter runs with IDENTITY so every gap matches the largest.
  int max_run = 0;
  for (size_t i = 1; i + 1 < segments.size(); ++i)
    max_run = std::max(max_run, static_cast<int>(segments[i].run.size()));

  CzSandwichCircuit out;
  out.total_qubits = circ.total_qubits();
  out.out_qubit = circ.layout.out_qubit;
  out.num_inputs = circ.layout.num_inputs;
  for (size_t i = 0; i < segments.size(); ++i) {
    const Segment& seg = segments[i];
    for (const Gate& g : seg.run) out.gates.push_back(g);
    if (!seg.cz) continue;
    const auto [f, s] = *seg.cz;
    if (i > 0) {
      int pad = max_run - static_cast<int>(seg.run.size());
      for (int p = 0; p < pad; ++p) out.gates.push_back(Gate::identity(f));
    }
    out.gates.push_back(Gate::z(f));
    out.gates.push_back(Gate::z(s));
    out.gates.push_back(Gate::cz(f, s));
    out.gates.push_back(Gate::z(f));
    out.gates.push_back(Gate::z(s));
    out.cz_pairs.emplace_back(f, s);
  }
  for (int t = 1; t <= out.total_time(); ++t) {
    if (out.gates[t - 1].kind == GateKind::Cz)
      out.t2_set.insert(t);
    else
      out.t1_set.insert(t);
  }
  validate_cz_sandwich(out);
  return out;
}

void validate_cz_sandwich(const CzSandwichCircuit& circ) {
  const int T = circ.total_time();
  std::vector<int> cz_times(circ.t2_set.begin(), circ.t2_set.end());
  if (cz_times.size() != circ.cz_pairs.size())
    throw InputError("MalformedCzSandwich", "t2 set and pair list disagree");
  for (size_t i = 0; i < cz_times.size(); ++i) {
    const int t = cz_times[i];
    const Gate& gate = circ.gates[t - 1];
    if (gate.kind != GateKind::Cz)
      throw InputError("MalformedCzSandwich",
                       "time " + std::to_string(t) + " is not a CZ");
    const int f = circ.cz_pairs[i].first;
    const int s = circ.cz_pairs[i].second;
    if (t - 2 < 1 || t + 2 > T)
      throw InputError("MalformedCzSandwich",
                       "CZ at time " + std::to_string(t) + " lacks Z room");
    auto is_z_pair = [&](int ta, int tb) {
      const Gate& a = circ.gates[ta - 1];
      const Gate& b = circ.gates[tb - 1];
      if (a.kind != GateKind::Z || b.kind != GateKind::Z) return false;
      std::set<int> got = {a.targets[0], b.targets[0]};
      return got == std::set<int>{f, s};
    };
    if (!is_z_pair(t - 2, t - 1) || !is_z_pair(t + 1, t + 2))
      throw InputError("MalformedCzSandwich",
                       "CZ at time " + std::to_string(t) +
                           " not wrapped by Z pairs");
  }
  for (size_t i = 2; i < cz_times.size(); ++i)
    if (cz_times[i] - cz_times[i - 1] != cz_times[1] - cz_times[0])
      throw InputError("MalformedCzSandwich", "CZ times not evenly spaced");
}

}  // namespace hamreduce
