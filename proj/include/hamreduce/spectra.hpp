#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hamreduce/circuit.hpp"
#include "hamreduce/clock.hpp"
#include "hamreduce/hamiltonian.hpp"

namespace hamreduce {

enum class SolveMethod { Auto, Dense, Iterative };

struct SpectrumResult {
  double ground_energy = 0.0;
  std::optional<Eigen::VectorXcd> ground_vector;
  std::string method;  // "dense", "iterative" or "diagonal"
  double residual = 0.0;
};

/// Full embedding of a spec: sum of coefficient × block placed on each
/// term's support. Requires total_qubits within the dense cap.
Eigen::MatrixXcd realize_dense(const HamiltonianSpec& spec,
                               int dense_cap = 14);

/// Largest |eigenvalue| of a Hermitian matrix.
double operator_norm(const Eigen::MatrixXcd& h);

/// H|v> computed term by term without materializing the full matrix.
Eigen::VectorXcd apply_spec(const HamiltonianSpec& spec,
                            const Eigen::VectorXcd& v);

/// Diagonal of a diagonal spec, evaluated entry-wise.
Eigen::VectorXd diagonal_of(const HamiltonianSpec& spec);

/// Smallest eigenvalue with a residual certificate. Diagonal specs are
/// scanned directly; otherwise dense eigensolve up to 12 qubits and a
/// reorthogonalized restarted Lanczos beyond, up to iterative_cap.
SpectrumResult ground_energy(const HamiltonianSpec& spec,
                             SolveMethod method = SolveMethod::Auto,
                             int dense_cap = 14, int iterative_cap = 24,
                             std::uint64_t seed = 0x9e3779b97f4a7c15ull);

/// tr(e^{-beta H}) via full eigendecomposition (diagonal fast path).
double partition_function_exact(const HamiltonianSpec& spec, double beta,
                                int dense_cap = 14);

/// Sorted eigenvalues of the realized spec.
Eigen::VectorXd full_spectrum(const HamiltonianSpec& spec, int dense_cap = 14);

// ---------------------------------------------------------------------------

struct HistoryState {
  Eigen::VectorXcd state;  // (system ⊗ clock register) space
  int num_system_qubits = 0;
  int num_clock_qubits = 0;
  int total_steps = 0;
};

/// (1/sqrt(T+1)) Σ_t V_t..V_1 |psi,0...0> ⊗ |clock bits at t>, with identity
/// action past the last gate. By default the sum runs over the whole
/// schedule; `steps` truncates it (the off-window penalty of the 3-local
/// assembly expects histories that stop at the circuit's final time).
HistoryState history_state(const QuantumCircuit& circ,
                           const ClockSchedule& sched,
                           const Eigen::VectorXcd& psi_inputs,
                           int dense_cap = 14, int steps = -1);

/// Same history amplitudes over the abstract (T+1)-step clock used by
/// RestrictedPropOperator.
Eigen::VectorXcd abstract_history_state(const QuantumCircuit& circ,
                                        int total_steps,
                                        const Eigen::VectorXcd& psi_inputs);

/// Isometry sending system ⊗ step index to system ⊗ clock register basis.
Eigen::VectorXcd embed_on_schedule(const Eigen::VectorXcd& abstract_state,
                                   int num_system_qubits,
                                   const ClockSchedule& sched);

// ---------------------------------------------------------------------------

struct ProjectionReport {
  double lambda_sum = 0.0;        // λ(H1 + H2)
  double lambda_restricted = 0.0; // λ(H1 restricted to the kernel of H2)
  double h1_norm = 0.0;
  double j = 0.0;                 // smallest nonzero eigenvalue of H2
  double correction = 0.0;        // ||H1||^2 / (J - 2||H1||)
  bool inequality_holds = false;
};

/// Checks λ(H1+H2) >= λ(H1|_S) - ||H1||^2/(J-2||H1||) where S is the zero
/// eigenspace of H2 (columns of `subspace`, verified numerically).
ProjectionReport projection_lemma_check(const HamiltonianSpec& h1,
                                        const HamiltonianSpec& h2,
                                        const Eigen::MatrixXcd& subspace,
                                        int dense_cap = 14);

/// Orthonormal basis of the numerical kernel of the realized spec.
Eigen::MatrixXcd zero_eigenspace(const HamiltonianSpec& spec,
                                 double tol = 1e-9, int dense_cap = 14);

enum class LhAnswer { Yes, No };

/// YES iff λ <= a, NO iff λ >= b; PromiseViolated between.
LhAnswer decide_lh(const HamiltonianSpec& spec, double a, double b,
                   int dense_cap = 14, int iterative_cap = 24);

}  // namespace hamreduce
