#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "hamreduce/hamiltonian.hpp"
#include "hamreduce/spectra.hpp"

namespace hamreduce {

/// Energy range [0,1) divided into num_bins intervals; delta is the
/// Boltzmann exponent step beta/num_bins.
struct EnergyBins {
  int num_bins = 1;
  double beta = 1.0;

  double delta() const { return beta / num_bins; }
  double bin_lo(int j) const { return static_cast<double>(j - 1) / num_bins; }
  double bin_hi(int j) const { return static_cast<double>(j) / num_bins; }
};

enum class CountMode { Exact, Simulated };

struct CountEstimate {
  int bin_index = 0;
  double m_tilde = 0.0;
  CountMode mode = CountMode::Exact;
  int ell = 0;
  int reps = 0;
  double success_fraction = 1.0;
};

struct QpfEstimate {
  double z_tilde_half = 0.0;
  std::vector<CountEstimate> bins;
  double relative_error_target = 0.0;
};

struct PhaseEstimateRun {
  int ell = 0;
  int reps = 0;
  std::vector<double> samples;
  double theta_tilde = 0.0;  // in [0, 2pi)
};

// ---------------------------------------------------------------------------
// Counting building blocks

/// Exact eigenvalue census: M_j = #{p : E_p in [(j-1)/B, j/B)}. The spec
/// must be positive semidefinite with operator norm below 1.
std::vector<std::uint64_t> bin_counts_exact(const HamiltonianSpec& spec,
                                            const EnergyBins& bins,
                                            int dense_cap = 14);

/// z_half = (1/2) Σ_j m_tilde_j e^{-(j-1) delta}.
QpfEstimate estimate_z_from_counts(const std::vector<double>& counts,
                                   const EnergyBins& bins);

/// Exact outcome distribution of an ell-bit estimation of phase theta:
/// p(y) = |(1/2^ell) Σ_x e^{ix(theta - 2pi y/2^ell)}|^2.
Eigen::VectorXd pe_distribution(double theta, int ell);

/// Total p(y) over y whose phase 2pi y/2^ell lies in [lo, hi) mod 2pi.
double pe_window_mass(double theta, int ell, double lo, double hi);

/// One measurement sample from the estimation circuit applied to an
/// eigenvector (residual below 1e-9 required). Returns theta in [0, 2pi).
double phase_estimation(const Eigen::MatrixXcd& u,
                        const Eigen::VectorXcd& eigvec, int ell,
                        std::mt19937_64& rng);

/// Median of an odd number of independent samples (lower median).
PhaseEstimateRun median_amplified_pe(const Eigen::MatrixXcd& u,
                                     const Eigen::VectorXcd& eigvec, int ell,
                                     int reps, std::mt19937_64& rng);

/// Reflection pair (2|A psi><A psi| - I)(I - 2 P_good) whose restriction
/// to the marked/unmarked plane has eigenphases ±theta with
/// sin(theta/2) = sqrt(M/N). The good flag is the last qubit at |1>.
Eigen::MatrixXcd grover_operator(const Eigen::MatrixXcd& u_mark,
                                 const Eigen::VectorXcd& psi);

/// Full counting run: phase-estimate the reflection spectrum, fold
/// theta_tilde = min(theta', 2pi - theta'), return N sin^2(theta_tilde/2).
double quantum_counting(const Eigen::MatrixXcd& u_mark,
                        const Eigen::VectorXcd& psi, int ell, int reps,
                        std::mt19937_64& rng);

/// Counting given only the marked probability a = M/N; the dense variant
/// reduces to this after computing a.
double counting_from_amplitude(double a, double num_items, int ell, int reps,
                               std::mt19937_64& rng,
                               double* success_fraction = nullptr);

/// Σ_q |q>|q> / sqrt(2^n); equals Σ_p |v_p>|v_p*> / sqrt(2^n) for any
/// orthonormal basis {v_p}.
Eigen::VectorXcd epr_counting_state(int n, int cap = 26);

/// Probability that an ell-bit estimation of e^{-iH} on an eigenvector of
/// energy E decodes into the energy interval [lo, hi).
double marked_window_mass(double energy, int ell, double lo, double hi);

/// Interval verifier U_dec · U_EE on qubits [energy(ell_ee) | flag | ext |
/// system]: phase-estimates e^{-iH} into the energy register and flips the
/// flag when the decoded energy lies in bin j and the extension qubit is 0.
Eigen::MatrixXcd build_interval_marker(const HamiltonianSpec& spec,
                                       const EnergyBins& bins, int j,
                                       int ell_ee, int dense_cap = 14);

// ---------------------------------------------------------------------------
// End-to-end estimator

enum class QpfBackend { Ideal, Simulated };

struct QpfOptions {
  std::uint64_t seed = 1;
  int num_bins = 0;        // 0 selects 4 * total_qubits
  double c_exponent = 1.0; // the "poly" exponent in tolerance terms
  bool perturb_ideal = false;
  int ell = 12;            // counting phase-register width
  int reps = 9;
  int ell_ee = 22;         // energy-estimation register width (analytic)
  int dense_cap = 14;
};

/// Ideal backend: exact census optionally perturbed within the
/// ±1/(4 n^c) band. Simulated backend: per-bin marked amplitudes from the
/// exact estimation-register distribution, then sampled counting runs.
QpfEstimate qpf_algorithm(const HamiltonianSpec& spec, double beta,
                          double delta, QpfBackend backend,
                          const QpfOptions& options = {});

using QpfOracle =
    std::function<double(const HamiltonianSpec&, double beta, double delta)>;

struct LhViaQpfParams {
  double beta = 0.0;
  double delta = 0.0;
};

/// Decides λ <= a vs λ >= b through one partition-function query:
/// beta defaults to 2n/(b-a) and delta to the largest value with
/// (1-delta)/(1+delta) = e^{-0.3 n}. Raises ThresholdsOverlap when
/// (1-delta)e^{-beta a} <= (1+delta)e^{-beta b + 0.7 n}.
LhAnswer decide_lh_via_qpf(const QpfOracle& oracle,
                           const HamiltonianSpec& spec, double a, double b,
                           LhViaQpfParams* used_params = nullptr,
                           double beta_override = -1.0,
                           double delta_override = -1.0);

}  // namespace hamreduce
