#include "hamreduce/qpf.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <unsupported/Eigen/KroneckerProduct>

#include "hamreduce/bits.hpp"
#include "hamreduce/errors.hpp"

namespace hamreduce {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr std::complex<double> kI{0.0, 1.0};

double wrap_phase(double theta) {
  theta = std::fmod(theta, kTwoPi);
  if (theta < 0) theta += kTwoPi;
  return theta;
}

// |sum_{x=0}^{M-1} e^{ix delta}|^2 / M^2 for M = 2^ell.
double pe_prob(double delta, int ell) {
  const double m = std::ldexp(1.0, ell);
  const double half = 0.5 * delta;
  const double denom = std::sin(half);
  if (std::abs(denom) < 1e-15) return 1.0;
  const double num = std::sin(m * half);
  const double amp = num / (m * denom);
  return amp * amp;
}

int sample_discrete(const Eigen::VectorXd& probs, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double u = unif(rng);
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    u -= probs(i);
    if (u <= 0) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size() - 1);
}

Eigen::VectorXd decode_energies(const HamiltonianSpec& spec, int dense_cap) {
  Eigen::VectorXd energies = full_spectrum(spec, dense_cap);
  const double lo = energies.minCoeff();
  const double hi = energies.maxCoeff();
  if (lo < -1e-9 || hi >= 1.0)
    throw InputError("NormalizationViolated",
                     "spectrum [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "] not within [0, 1)");
  return energies.cwiseMax(0.0);
}

}  // namespace

std::vector<std::uint64_t> bin_counts_exact(const HamiltonianSpec& spec,
                                            const EnergyBins& bins,
                                            int dense_cap) {
  Eigen::VectorXd energies = decode_energies(spec, dense_cap);
  std::vector<std::uint64_t> counts(bins.num_bins, 0);
  for (Eigen::Index p = 0; p < energies.size(); ++p) {
    int j = static_cast<int>(std::floor(energies(p) * bins.num_bins)) + 1;
    j = std::clamp(j, 1, bins.num_bins);
    ++counts[j - 1];
  }
  return counts;
}

QpfEstimate estimate_z_from_counts(const std::vector<double>& counts,
                                   const EnergyBins& bins) {
  if (static_cast<int>(counts.size()) != bins.num_bins)
    throw InputError("LengthMismatch",
                     "got " + std::to_string(counts.size()) + " counts for " +
                         std::to_string(bins.num_bins) + " bins");
  QpfEstimate est;
  const double delta = bins.delta();
  double z = 0.0;
  for (int j = 1; j <= bins.num_bins; ++j)
    z += counts[j - 1] * std::exp(-(j - 1) * delta);
  est.z_tilde_half = 0.5 * z;
  for (int j = 1; j <= bins.num_bins; ++j) {
    CountEstimate ce;
    ce.bin_index = j;
    ce.m_tilde = counts[j - 1];
    est.bins.push_back(ce);
  }
  return est;
}

Eigen::VectorXd pe_distribution(double theta, int ell) {
  const int dim = 1 << ell;
  Eigen::VectorXd probs(dim);
  for (int y = 0; y < dim; ++y)
    probs(y) = pe_prob(theta - kTwoPi * y / dim, ell);
  return probs;
}

double pe_window_mass(double theta, int ell, double lo, double hi) {
  const std::uint64_t dim = std::uint64_t{1} << ell;
  // y values whose phase 2pi y / 2^ell falls in [lo, hi), walked as an
  // integer range on the phase circle.
  const double step = kTwoPi / static_cast<double>(dim);
  std::int64_t y_lo = static_cast<std::int64_t>(std::ceil(lo / step - 1e-12));
  std::int64_t y_hi = static_cast<std::int64_t>(std::ceil(hi / step - 1e-12));
  double mass = 0.0;
  for (std::int64_t y = y_lo; y < y_hi; ++y) {
    const std::int64_t yy = ((y % static_cast<std::int64_t>(dim)) +
                             static_cast<std::int64_t>(dim)) %
                            static_cast<std::int64_t>(dim);
    mass += pe_prob(theta - step * static_cast<double>(yy), ell);
  }
  return mass;
}

double phase_estimation(const Eigen::MatrixXcd& u,
                        const Eigen::VectorXcd& eigvec, int ell,
                        std::mt19937_64& rng) {
  const Eigen::Index dim = u.rows();
  if ((u.adjoint() * u - Eigen::MatrixXcd::Identity(dim, dim))
          .cwiseAbs()
          .maxCoeff() > 1e-10)
    throw InputError("NotUnitary", "operator is not unitary");
  Eigen::VectorXcd w = u * eigvec;
  const std::complex<double> phase = eigvec.dot(w);
  const double theta = wrap_phase(std::arg(phase));
  if ((w - std::exp(kI * theta) * eigvec).norm() > 1e-9)
    throw InputError("NotEigenvector", "residual exceeds 1e-9");
  // With an exact eigenvector the joint circuit factorizes, so the control
  // register distribution is the closed-form kernel for this phase.
  Eigen::VectorXd probs = pe_distribution(theta, ell);
  const int y = sample_discrete(probs, rng);
  return kTwoPi * y / std::ldexp(1.0, ell);
}

PhaseEstimateRun median_amplified_pe(const Eigen::MatrixXcd& u,
                                     const Eigen::VectorXcd& eigvec, int ell,
                                     int reps, std::mt19937_64& rng) {
  if (reps % 2 == 0)
    throw InputError("InvalidParameters", "reps must be odd");
  PhaseEstimateRun run;
  run.ell = ell;
  run.reps = reps;
  for (int i = 0; i < reps; ++i)
    run.samples.push_back(phase_estimation(u, eigvec, ell, rng));
  std::vector<double> sorted = run.samples;
  std::sort(sorted.begin(), sorted.end());
  run.theta_tilde = sorted[(reps - 1) / 2];
  return run;
}

Eigen::MatrixXcd grover_operator(const Eigen::MatrixXcd& u_mark,
                                 const Eigen::VectorXcd& psi) {
  const Eigen::Index dim = u_mark.rows();
  if (psi.size() != dim)
    throw InputError("DimensionMismatch",
                     "state dimension " + std::to_string(psi.size()) +
                         " vs operator " + std::to_string(dim));
  Eigen::VectorXcd marked_state = u_mark * psi;
  Eigen::MatrixXcd reflect_state =
      2.0 * (marked_state * marked_state.adjoint()) -
      Eigen::MatrixXcd::Identity(dim, dim);
  // The good flag is the last qubit: odd basis indices.
  Eigen::MatrixXcd flip_good = Eigen::MatrixXcd::Identity(dim, dim);
  for (Eigen::Index i = 1; i < dim; i += 2) flip_good(i, i) = -1.0;
  return reflect_state * flip_good;
}

double counting_from_amplitude(double a, double num_items, int ell, int reps,
                               std::mt19937_64& rng,
                               double* success_fraction) {
  a = std::clamp(a, 0.0, 1.0);
  const double theta = 2.0 * std::asin(std::sqrt(a));
  double branch = theta;
  if (a > 0.0 && a < 1.0) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    if (unif(rng) < 0.5) branch = wrap_phase(kTwoPi - theta);
  }
  Eigen::VectorXd probs = pe_distribution(branch, ell);
  std::vector<double> samples(reps);
  const double grid = std::ldexp(1.0, ell);
  int good = 0;
  for (int i = 0; i < reps; ++i) {
    const int y = sample_discrete(probs, rng);
    samples[i] = kTwoPi * y / grid;
    double diff = std::abs(samples[i] - branch);
    diff = std::min(diff, kTwoPi - diff);
    if (diff <= kTwoPi / std::ldexp(1.0, ell - 2)) ++good;
  }
  std::sort(samples.begin(), samples.end());
  const double theta_prime = samples[(reps - 1) / 2];
  const double folded = std::min(theta_prime, kTwoPi - theta_prime);
  if (success_fraction) *success_fraction = static_cast<double>(good) / reps;
  const double s = std::sin(0.5 * folded);
  return num_items * s * s;
}

double quantum_counting(const Eigen::MatrixXcd& u_mark,
                        const Eigen::VectorXcd& psi, int ell, int reps,
                        std::mt19937_64& rng) {
  if (reps % 2 == 0)
    throw InputError("InvalidParameters", "reps must be odd");
  Eigen::VectorXcd marked_state = u_mark * psi;
  double a = 0.0;
  for (Eigen::Index i = 1; i < marked_state.size(); i += 2)
    a += std::norm(marked_state(i));
  const double num_items = static_cast<double>(marked_state.size()) / 2.0;
  return counting_from_amplitude(a, num_items, ell, reps, rng);
}

Eigen::VectorXcd epr_counting_state(int n, int cap) {
  if (2 * n > cap)
    throw CapError("CapExceeded",
                   "EPR register of " + std::to_string(2 * n) +
                       " qubits exceeds cap " + std::to_string(cap));
  const Eigen::Index half = Eigen::Index{1} << n;
  Eigen::VectorXcd state = Eigen::VectorXcd::Zero(half * half);
  const double amp = 1.0 / std::sqrt(static_cast<double>(half));
  for (Eigen::Index q = 0; q < half; ++q) state(q * half + q) = amp;
  return state;
}

namespace {

// y values of an ell-bit estimation register that decode into the given
// energy interval under E(y) = (2pi - 2pi y / 2^ell) mod 2pi.
bool y_in_energy_window(std::uint64_t y, int ell, double lo, double hi) {
  const double phase = kTwoPi * static_cast<double>(y) / std::ldexp(1.0, ell);
  const double energy = (y == 0) ? 0.0 : kTwoPi - phase;
  return energy >= lo && energy < hi;
}

}  // namespace

double marked_window_mass(double energy, int ell, double lo, double hi) {
  // Mass the estimation register places on outcomes decoding into [lo, hi):
  // the eigenphase of e^{-iH} is -E, so the decoded window maps back to
  // phases [2pi - hi, 2pi - lo) with the 0/2pi seam handled by the caller.
  double mass = 0.0;
  const double theta = wrap_phase(-energy);
  if (lo <= 0.0) {
    // Window [0, hi): phase region {0} ∪ (2pi - hi, 2pi).
    mass += pe_window_mass(theta, ell, 0.0, 1e-18);
    mass += pe_window_mass(theta, ell, kTwoPi - hi + 1e-18, kTwoPi);
  } else {
    mass += pe_window_mass(theta, ell, kTwoPi - hi + 1e-18, kTwoPi - lo + 1e-18);
  }
  return mass;
}

Eigen::MatrixXcd build_interval_marker(const HamiltonianSpec& spec,
                                       const EnergyBins& bins, int j,
                                       int ell_ee, int dense_cap) {
  if (j < 1 || j > bins.num_bins)
    throw InputError("InvalidParameters", "bin index out of range");
  const int n = spec.total_qubits;
  const int total = ell_ee + 2 + n;
  if (total > dense_cap)
    throw CapError("CapExceeded",
                   "marker on " + std::to_string(total) + " qubits");
  Eigen::MatrixXcd h = realize_dense(spec, dense_cap);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXd energies = es.eigenvalues();
  if (energies.minCoeff() < -1e-9 || energies.maxCoeff() >= 1.0)
    throw InputError("NormalizationViolated", "spectrum not within [0, 1)");

  const Eigen::Index e_dim = Eigen::Index{1} << ell_ee;
  const Eigen::Index sys_dim = Eigen::Index{1} << n;

  // Estimation stage in the eigenbasis: control register goes from |0> to
  // QFT^† diag_x(e^{-i x E_p}) |uniform> for each eigenvector.
  Eigen::MatrixXcd qft(e_dim, e_dim);
  const double qnorm = 1.0 / std::sqrt(static_cast<double>(e_dim));
  for (Eigen::Index r = 0; r < e_dim; ++r)
    for (Eigen::Index c = 0; c < e_dim; ++c)
      qft(r, c) = qnorm * std::exp(kI * (kTwoPi * r * c / e_dim));
  Eigen::MatrixXcd hadamards(e_dim, e_dim);
  for (Eigen::Index r = 0; r < e_dim; ++r) {
    for (Eigen::Index c = 0; c < e_dim; ++c) {
      const int par = popcount64(static_cast<std::uint64_t>(r) &
                                 static_cast<std::uint64_t>(c));
      hadamards(r, c) = qnorm * (par % 2 ? -1.0 : 1.0);
    }
  }

  const Eigen::Index dim = e_dim * 4 * sys_dim;
  Eigen::MatrixXcd u_ee = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::MatrixXcd aux_identity = Eigen::MatrixXcd::Identity(4, 4);
  for (Eigen::Index p = 0; p < sys_dim; ++p) {
    Eigen::VectorXcd powers(e_dim);
    for (Eigen::Index x = 0; x < e_dim; ++x)
      powers(x) = std::exp(-kI * (static_cast<double>(x) * energies(p)));
    Eigen::MatrixXcd control =
        qft.adjoint() * powers.asDiagonal() * hadamards;
    Eigen::MatrixXcd proj_p =
        es.eigenvectors().col(p) * es.eigenvectors().col(p).adjoint();
    u_ee += Eigen::kroneckerProduct(
        control, Eigen::kroneckerProduct(aux_identity, proj_p).eval());
  }

  // Decision stage: flip the flag when the register decodes into bin j and
  // the extension qubit is 0. Qubit order is [energy | flag | ext | system].
  Eigen::MatrixXcd u_dec = Eigen::MatrixXcd::Zero(dim, dim);
  const double lo = bins.bin_lo(j), hi = bins.bin_hi(j);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    const Eigen::Index sys = idx % sys_dim;
    const Eigen::Index aux = (idx / sys_dim) % 4;
    const Eigen::Index y = idx / (4 * sys_dim);
    const int flag = static_cast<int>(aux >> 1);
    const int ext = static_cast<int>(aux & 1);
    int new_flag = flag;
    if (ext == 0 && y_in_energy_window(static_cast<std::uint64_t>(y), ell_ee,
                                       lo, hi))
      new_flag ^= 1;
    const Eigen::Index target =
        y * 4 * sys_dim + (static_cast<Eigen::Index>(new_flag) * 2 + ext) * sys_dim +
        sys;
    u_dec(target, idx) = 1.0;
  }
  return u_dec * u_ee;
}

// ---------------------------------------------------------------------------

QpfEstimate qpf_algorithm(const HamiltonianSpec& spec, double beta,
                          double delta, QpfBackend backend,
                          const QpfOptions& options) {
  const int n = spec.total_qubits;
  const double floor_delta =
      0.5 + 1.0 / std::pow(static_cast<double>(std::max(n, 2)),
                           options.c_exponent);
  if (delta < floor_delta)
    throw InputError("DeltaTooSmall",
                     "relative error target " + std::to_string(delta) +
                         " below " + std::to_string(floor_delta));
  EnergyBins bins;
  bins.num_bins = options.num_bins > 0 ? options.num_bins : 4 * n;
  bins.beta = beta;

  std::mt19937_64 rng(options.seed);
  std::vector<double> m_tilde(bins.num_bins, 0.0);
  QpfEstimate est;

  if (backend == QpfBackend::Ideal) {
    std::vector<std::uint64_t> exact =
        bin_counts_exact(spec, bins, options.dense_cap);
    const double band =
        1.0 / (4.0 * std::pow(static_cast<double>(std::max(n, 2)),
                              options.c_exponent));
    std::uniform_real_distribution<double> unif(-band, band);
    for (int j = 0; j < bins.num_bins; ++j) {
      double noise = options.perturb_ideal ? unif(rng) : 0.0;
      m_tilde[j] = static_cast<double>(exact[j]) * (1.0 + noise);
    }
    est = estimate_z_from_counts(m_tilde, bins);
    for (auto& ce : est.bins) ce.mode = CountMode::Exact;
  } else {
    Eigen::VectorXd energies = decode_energies(spec, options.dense_cap);
    const double num_items = 2.0 * std::ldexp(1.0, n);
    for (int j = 1; j <= bins.num_bins; ++j) {
      double mass = 0.0;
      for (Eigen::Index p = 0; p < energies.size(); ++p)
        mass += marked_window_mass(energies(p), options.ell_ee,
                                   bins.bin_lo(j), bins.bin_hi(j));
      const double a = mass / num_items;
      double success = 1.0;
      m_tilde[j - 1] = counting_from_amplitude(a, num_items, options.ell,
                                               options.reps, rng, &success);
      CountEstimate ce;
      ce.bin_index = j;
      ce.m_tilde = m_tilde[j - 1];
      ce.mode = CountMode::Simulated;
      ce.ell = options.ell;
      ce.reps = options.reps;
      ce.success_fraction = success;
      est.bins.push_back(ce);
    }
    QpfEstimate folded = estimate_z_from_counts(m_tilde, bins);
    est.z_tilde_half = folded.z_tilde_half;
  }
  est.relative_error_target = delta;
  return est;
}

LhAnswer decide_lh_via_qpf(const QpfOracle& oracle,
                           const HamiltonianSpec& spec, double a, double b,
                           LhViaQpfParams* used_params, double beta_override,
                           double delta_override) {
  if (!(b > a)) throw InputError("InvalidThresholds", "need b > a");
  const double n = spec.total_qubits;
  const double beta = beta_override > 0 ? beta_override : 2.0 * n / (b - a);
  const double e3 = std::exp(-0.3 * n);
  const double delta =
      delta_override > 0 ? delta_override : (1.0 - e3) / (1.0 + e3);
  if (used_params) *used_params = {beta, delta};

  const double yes_floor = (1.0 - delta) * std::exp(-beta * a);
  const double no_ceiling = (1.0 + delta) * std::exp(-beta * b + 0.7 * n);
  if (yes_floor <= no_ceiling)
    throw PromiseError("ThresholdsOverlap",
                       "decision thresholds overlap for these a, b");

  const double z = oracle(spec, beta, delta);
  if (z >= yes_floor) return LhAnswer::Yes;
  if (z <= no_ceiling) return LhAnswer::No;
  throw PromiseError("UndecidedEstimate",
                     "estimate lies between the decision thresholds");
}

}  // namespace hamreduce
