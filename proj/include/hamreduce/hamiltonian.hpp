#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hamreduce/circuit.hpp"
#include "hamreduce/clock.hpp"
#include "hamreduce/cnf.hpp"

namespace hamreduce {

/// coefficient × (Hermitian block embedded on `support`). Support is
/// sorted ascending; the first listed qubit is the block's most
/// significant bit.
struct LocalTerm {
  double coefficient = 0.0;
  std::vector<int> support;
  Eigen::MatrixXcd block;
  std::string group;  // diagnostic label: in/out/prop/stab/...
};

struct Thresholds {
  double a = 0.0;
  double b = 0.0;
};

struct PenaltyWeights {
  double j_in = 0.0;
  double j_prop1 = 0.0;
  double j_prop2 = 0.0;
  double j_stab = 0.0;
};

struct HamiltonianSpec {
  int total_qubits = 0;
  int num_inputs = 0;
  int num_ancillas = 0;
  int num_clock = 0;
  int locality = 0;
  std::vector<LocalTerm> terms;
  std::optional<Thresholds> thresholds;
  std::optional<PenaltyWeights> weights;
  std::optional<double> mu;
};

void validate_spec(const HamiltonianSpec& spec);
int locality_of(const HamiltonianSpec& spec);
bool is_diagonal(const HamiltonianSpec& spec);

/// Sum over terms of |coefficient| * ||block||; an operator-norm upper bound.
double triangle_norm_bound(const HamiltonianSpec& spec);

// ---------------------------------------------------------------------------

/// Diagonal SAT Hamiltonian: one projector per clause onto its unique
/// falsifying sub-assignment, so the diagonal entry at basis x counts the
/// clauses x violates. Thresholds a = 1/n, b = 1 - 1/n.
HamiltonianSpec build_trivial_sat_hamiltonian(const CnfFormula& phi);

struct FiveLocalOptions {
  double mu = -1.0;  // < 0 selects 2^{-num_inputs}
  double a_const = 2.0;
  double b_const = 0.125;
};

/// Clock reduction with term groups in + out + prop + stab; the schedule's
/// full length is used, with identity padding for steps past the last gate.
/// Locality is d + 3; every term has operator norm at most 1.
HamiltonianSpec build_hu_5local(const QuantumCircuit& circ,
                                const ClockSchedule& sched,
                                const FiveLocalOptions& options = {});

/// The stabilizer penalty alone, on a bare clock register (qubits 1..n_cl):
/// zero exactly on weight-d basis states, at least 1/C(n_cl,d) elsewhere.
HamiltonianSpec build_stab_penalty(int n_cl, int d);

/// Same propagation structure on an abstract (T+1)-dimensional clock,
/// for subspace-equivalence checks: operators on
/// (system ⊗ clock-step) space with index x*(T+1) + t.
struct RestrictedPropOperator {
  int num_system_qubits = 0;
  int num_steps = 0;  // T
  Eigen::MatrixXcd h_in;
  Eigen::MatrixXcd h_out;
  Eigen::MatrixXcd h_prop;

  Eigen::MatrixXcd total() const { return h_in + h_out + h_prop; }
  Eigen::Index dim() const { return h_prop.rows(); }
};

RestrictedPropOperator build_restricted_prop(const QuantumCircuit& circ,
                                             int total_steps);

struct ThreeLocalOptions {
  // Dense operator norm of the non-penalty part is used to size the
  // stabilizer weight when the instance fits; otherwise the triangle bound.
  int dense_norm_cap = 12;
};

/// CZ-sandwich reduction on a two-step d=2 schedule; every term acts on at
/// most 3 qubits (one circuit qubit plus a clock pair, or clock only).
HamiltonianSpec build_hu_3local(const CzSandwichCircuit& czc,
                                const ClockSchedule& sched,
                                const ThreeLocalOptions& options = {});

// ---------------------------------------------------------------------------
// Shared projector/hop blocks used by the builders and their tests.

/// Hop block on sorted clock qubits: leaving 1->0, entering 0->1, held
/// pinned to 1. Forward maps the earlier clock state to the later one.
Eigen::MatrixXcd forward_hop_block(const std::vector<int>& sorted_support,
                                   const std::vector<int>& leaving,
                                   const std::vector<int>& entering,
                                   const std::vector<int>& held);

/// Projector onto all-ones over `ones` within the sorted support.
Eigen::MatrixXcd all_ones_projector(const std::vector<int>& sorted_support,
                                    const std::vector<int>& ones);

}  // namespace hamreduce
