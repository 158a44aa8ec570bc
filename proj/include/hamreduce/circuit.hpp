#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "hamreduce/cnf.hpp"

namespace hamreduce {

enum class GateKind {
  Not,
  Cnot,
  Toffoli,
  CkNot,
  Hadamard,
  TGate,
  Z,
  Cz,
  Identity,
};

const char* gate_kind_name(GateKind kind);

/// One gate application. Qubit ids are 1-based and global to the owning
/// circuit. `repeats` folds consecutive applications of the same gate into
/// one entry; it is used to encode the T-gate adjoint as seven T
/// applications while keeping list lengths at the conventional accounting.
struct Gate {
  GateKind kind = GateKind::Identity;
  std::vector<int> controls;
  std::vector<int> targets;
  int repeats = 1;

  static Gate not_gate(int target) { return {GateKind::Not, {}, {target}}; }
  static Gate cnot(int control, int target) {
    return {GateKind::Cnot, {control}, {target}};
  }
  static Gate toffoli(int c1, int c2, int target) {
    return {GateKind::Toffoli, {c1, c2}, {target}};
  }
  static Gate ck_not(std::vector<int> controls, int target) {
    return {GateKind::CkNot, std::move(controls), {target}};
  }
  static Gate hadamard(int target) {
    return {GateKind::Hadamard, {}, {target}};
  }
  static Gate t_gate(int target) { return {GateKind::TGate, {}, {target}}; }
  static Gate t_dagger(int target) {
    return {GateKind::TGate, {}, {target}, 7};
  }
  static Gate z(int target) { return {GateKind::Z, {}, {target}}; }
  static Gate cz(int a, int b) { return {GateKind::Cz, {a}, {b}}; }
  static Gate identity(int target) {
    return {GateKind::Identity, {}, {target}};
  }

  std::vector<int> qubits() const;
  bool is_classical() const;

  bool operator==(const Gate&) const = default;
};

void validate_gate(const Gate& gate);

/// Register layout of a verifier circuit. Inputs come first, then the
/// ancilla block (cls, cnt, out, scratch); the out qubit must lie in
/// in ∪ anc.
struct RegisterLayout {
  int num_inputs = 0;
  int num_ancillas = 0;
  int out_qubit = 0;
  int cls_qubit = 0;                // 0 when absent
  std::vector<int> cnt_qubits;      // counter, most significant first
  std::vector<int> scratch_qubits;  // reusable pool for decompositions

  int total_qubits() const { return num_inputs + num_ancillas; }
  bool operator==(const RegisterLayout&) const = default;
};

struct QuantumCircuit {
  RegisterLayout layout;
  std::vector<Gate> gates;
  std::optional<std::uint64_t> gate_count_certificate;
  bool classical_reversible = false;

  int total_qubits() const { return layout.total_qubits(); }
};

void validate_circuit(const QuantumCircuit& circ);

/// Normal form for the 3-local pipeline: gates at times 1..T where every
/// two-qubit gate is a CZ wrapped by Z gates on both its qubits, and the
/// CZ times form an arithmetic progression.
struct CzSandwichCircuit {
  int total_qubits = 0;
  int out_qubit = 0;
  int num_inputs = 0;
  std::vector<Gate> gates;          // gate at time t is gates[t-1]
  std::set<int> t1_set;             // one-qubit gate times
  std::set<int> t2_set;             // CZ times
  std::vector<std::pair<int, int>> cz_pairs;  // (f_t, s_t) per t2 in order

  int total_time() const { return static_cast<int>(gates.size()); }
};

void validate_cz_sandwich(const CzSandwichCircuit& circ);

// ---------------------------------------------------------------------------
// Decompositions

/// C^kNOT (k >= 3) into exactly 2k-3 Toffolis using k-2 zero-initialized
/// scratch qubits that are returned to zero. k = 2 passes through.
std::vector<Gate> decompose_cknot(const Gate& gate,
                                  const std::vector<int>& scratch);

/// Toffoli into the {HADAMARD, T, CNOT} alphabet (T-adjoint encoded as a
/// sevenfold T entry); 15 entries, exact up to nothing (no global phase).
std::vector<Gate> decompose_toffoli(const Gate& gate);

/// Expands every CkNot/Toffoli into the elementary alphabet; other gates
/// pass through. Scratch comes from the layout pool.
std::vector<Gate> fully_decompose(const QuantumCircuit& circ);

/// Number of gates after full decomposition, counting each list entry once
/// (a repeated-T entry counts as one elementary gate).
std::uint64_t elementary_gate_count(const QuantumCircuit& circ);

// ---------------------------------------------------------------------------
// Verifier construction

/// W_i: computes clause i of phi into the cls qubit (inputs conjugated by
/// NOTs on the positive-literal qubits; see build_sat_verifier).
QuantumCircuit build_clause_gate(const CnfFormula& phi, int clause_index,
                                 const RegisterLayout& layout);

/// Controlled increment of the counter register: layer q is a
/// C^{r+1-q}NOT controlled on cls and the lower-order counter bits.
QuantumCircuit build_addone(const RegisterLayout& layout);

/// Flips out iff the counter holds bin(m): NOTs on the zero bits of
/// bin(m), a C^rNOT, then the same NOTs again.
QuantumCircuit build_compare(int m, const RegisterLayout& layout);

/// Layout for the verifier of phi: n inputs, then cls, counter
/// (r = ceil(log2(m+1)) bits), out, and a scratch pool of max(k, r+1) - 2.
RegisterLayout verifier_layout(const CnfFormula& phi);

/// The full verifier: COMPARE ∘ (W_m† C-ADDONE W_m) ∘ ... ∘ (W_1† C-ADDONE W_1),
/// flagged classical-reversible, with a gate-count certificate attached.
QuantumCircuit build_sat_verifier(const CnfFormula& phi);

/// Certificate bound on the elementary gate count of the verifier for a
/// formula with n variables, m clauses and arity k. The exponent c is
/// log_n(m) clamped to [1, 2).
std::uint64_t verifier_gate_count_certificate(int n, int m, int k);

// ---------------------------------------------------------------------------
// Simulation

/// Applies classical truth tables gate by gate. Input and output are full
/// basis-state bit vectors (bit i assigns qubit i+1).
std::vector<uint8_t> run_reversible(const QuantumCircuit& circ,
                                    const std::vector<uint8_t>& x);

/// Dense unitary of the circuit (qubit 1 = most significant bit).
Eigen::MatrixXcd realize_unitary(const QuantumCircuit& circ);
Eigen::MatrixXcd gate_matrix(const Gate& gate, int total_qubits);

/// 2x2 / 4x4 block of a single gate on its own qubits.
Eigen::MatrixXcd gate_block(const Gate& gate);

// ---------------------------------------------------------------------------
// CZ pipeline

/// Rewrites CNOT as (I⊗H)·CZ·(I⊗H) and expands Toffoli/CkNot first, so the
/// result contains only one-qubit gates and CZ.
QuantumCircuit recompile_to_cz(const QuantumCircuit& circ);

/// Wraps every CZ with Z gates on both qubits at the four neighbouring
/// one-qubit times and pads with IDENTITY so CZ times are evenly spaced.
CzSandwichCircuit cz_sandwich_normalize(const QuantumCircuit& circ);

Eigen::MatrixXcd realize_unitary(const CzSandwichCircuit& circ);

}  // namespace hamreduce
