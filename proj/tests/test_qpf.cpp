#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "hamreduce/cnf.hpp"
#include "hamreduce/errors.hpp"
#include "hamreduce/hamiltonian.hpp"
#include "hamreduce/qpf.hpp"
#include "hamreduce/spectra.hpp"

using namespace hamreduce;

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double circle_distance(double a, double b) {
  double d = std::abs(a - b);
  return std::min(d, kTwoPi - d);
}

HamiltonianSpec diagonal_spec(const Eigen::VectorXd& diag) {
  int qubits = 0;
  while ((Eigen::Index{1} << qubits) < diag.size()) ++qubits;
  HamiltonianSpec spec;
  spec.total_qubits = qubits;
  spec.locality = qubits;
  LocalTerm term;
  term.coefficient = 1.0;
  for (int q = 1; q <= qubits; ++q) term.support.push_back(q);
  term.block = diag.asDiagonal()
                   .toDenseMatrix()
                   .cast<std::complex<double>>();
  spec.terms.push_back(std::move(term));
  return spec;
}

// Marker unitary on n item qubits plus a flag (last qubit): flips the flag
// on the first `marked` item indices.
Eigen::MatrixXcd boolean_marker(int n, int marked) {
  const Eigen::Index items = Eigen::Index{1} << n;
  const Eigen::Index dim = items * 2;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index x = 0; x < items; ++x) {
    for (int f = 0; f < 2; ++f) {
      const int nf = x < marked ? f ^ 1 : f;
      u(2 * x + nf, 2 * x + f) = 1.0;
    }
  }
  return u;
}

Eigen::VectorXcd uniform_with_flag0(int n) {
  const Eigen::Index items = Eigen::Index{1} << n;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(items * 2);
  const double amp = 1.0 / std::sqrt(static_cast<double>(items));
  for (Eigen::Index x = 0; x < items; ++x) psi(2 * x) = amp;
  return psi;
}

Eigen::MatrixXcd random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      m(r, c) = std::complex<double>(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  return qr.householderQ();
}

HamiltonianSpec random_normalized_spec(std::mt19937_64& rng, int qubits) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  HamiltonianSpec spec;
  spec.total_qubits = qubits;
  spec.locality = std::min(3, qubits);
  const int terms = 2 + static_cast<int>(rng() % 4);
  for (int i = 0; i < terms; ++i) {
    LocalTerm term;
    const int s = 1 + static_cast<int>(rng() % spec.locality);
    std::vector<int> all(qubits);
    for (int q = 0; q < qubits; ++q) all[q] = q + 1;
    std::shuffle(all.begin(), all.end(), rng);
    term.support.assign(all.begin(), all.begin() + s);
    std::sort(term.support.begin(), term.support.end());
    const Eigen::Index dim = Eigen::Index{1} << s;
    Eigen::MatrixXcd raw(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
      for (Eigen::Index c = 0; c < dim; ++c)
        raw(r, c) = std::complex<double>(gauss(rng), gauss(rng));
    term.block = 0.5 * (raw + raw.adjoint());
    term.coefficient = gauss(rng);
    spec.terms.push_back(std::move(term));
  }
  // Shift and scale the spectrum into [0, 0.95].
  Eigen::VectorXd eigs = full_spectrum(spec);
  const double lo = eigs.minCoeff(), hi = eigs.maxCoeff();
  const double scale = 0.95 / std::max(hi - lo, 1e-9);
  for (LocalTerm& term : spec.terms) term.coefficient *= scale;
  LocalTerm shift;
  shift.coefficient = -lo * scale;
  shift.support = {1};
  shift.block = Eigen::MatrixXcd::Identity(2, 2);
  spec.terms.push_back(shift);
  return spec;
}

}  // namespace

TEST_CASE("exact census sums to the full dimension") {
  Eigen::VectorXd diag(2);
  diag << 0.0, 0.6;
  HamiltonianSpec spec = diagonal_spec(diag);
  EnergyBins bins{2, 1.0};
  std::vector<std::uint64_t> m = bin_counts_exact(spec, bins);
  CHECK(m[0] == 1);
  CHECK(m[1] == 1);

  HamiltonianSpec zero;
  zero.total_qubits = 3;
  zero.locality = 1;
  EnergyBins four{4, 1.0};
  std::vector<std::uint64_t> mz = bin_counts_exact(zero, four);
  CHECK(mz[0] == 8);
  CHECK(mz[1] + mz[2] + mz[3] == 0);

  std::mt19937_64 rng(71);
  HamiltonianSpec rnd = random_normalized_spec(rng, 6);
  EnergyBins bins6{24, 1.0};
  std::vector<std::uint64_t> counts = bin_counts_exact(rnd, bins6);
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  CHECK(total == 64);

  Eigen::VectorXd bad(2);
  bad << 0.0, 1.4;
  CHECK_THROWS_WITH_AS(bin_counts_exact(diagonal_spec(bad), bins),
                       doctest::Contains("NormalizationViolated"), InputError);
}

TEST_CASE("estimator arithmetic") {
  EnergyBins bins{4, 1.0};
  QpfEstimate est = estimate_z_from_counts({8, 0, 0, 0}, bins);
  CHECK(est.z_tilde_half == doctest::Approx(4.0));

  QpfEstimate zero = estimate_z_from_counts({0, 0, 0, 0}, bins);
  CHECK(zero.z_tilde_half == doctest::Approx(0.0));

  CHECK_THROWS_WITH_AS(estimate_z_from_counts({1, 2}, bins),
                       doctest::Contains("LengthMismatch"), InputError);
}

TEST_CASE("estimator stays in the half-band under census perturbations") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 6;
    HamiltonianSpec spec = random_normalized_spec(rng, n);
    for (double beta : {0.5, 1.0, 2.0}) {
      EnergyBins bins{4 * n, beta};
      std::vector<std::uint64_t> exact = bin_counts_exact(spec, bins);
      const double band = 1.0 / (4.0 * n);
      std::uniform_real_distribution<double> unif(-band, band);
      std::vector<double> noisy(exact.size());
      for (size_t j = 0; j < exact.size(); ++j)
        noisy[j] = exact[j] * (1.0 + unif(rng));
      const double z_half = estimate_z_from_counts(noisy, bins).z_tilde_half;
      const double z = partition_function_exact(spec, beta);
      CHECK(std::abs(z_half / z - 1.0) <= 0.5 + 1.0 / n);
    }
  }
}

TEST_CASE("phase estimation is exact for representable phases") {
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Identity(2, 2);
  z(1, 1) = -1.0;
  Eigen::VectorXcd one(2);
  one << 0.0, 1.0;
  std::mt19937_64 rng(79);
  for (int i = 0; i < 50; ++i) {
    const double theta = phase_estimation(z, one, 3, rng);
    CHECK(theta == doctest::Approx(M_PI));
  }
}

TEST_CASE("one-bit estimation matches the closed-form two-level table") {
  // Phase pi/4 on |1>: p(0) = cos^2(pi/8), p(1) = sin^2(pi/8).
  Eigen::VectorXd probs = pe_distribution(M_PI / 4.0, 1);
  CHECK(probs(0) == doctest::Approx(std::pow(std::cos(M_PI / 8.0), 2)));
  CHECK(probs(1) == doctest::Approx(std::pow(std::sin(M_PI / 8.0), 2)));

  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(2, 2);
  u(1, 1) = std::exp(std::complex<double>(0.0, M_PI / 4.0));
  Eigen::VectorXcd one(2);
  one << 0.0, 1.0;
  std::mt19937_64 rng(83);
  int zeros = 0;
  const int samples = 20000;
  for (int i = 0; i < samples; ++i)
    if (phase_estimation(u, one, 1, rng) == 0.0) ++zeros;
  const double p0 = std::pow(std::cos(M_PI / 8.0), 2);
  const double sigma = std::sqrt(p0 * (1 - p0) / samples);
  CHECK(std::abs(static_cast<double>(zeros) / samples - p0) < 5 * sigma);
}

TEST_CASE("estimation register distribution matches an explicit circuit simulation") {
  // Independent oracle: build the control-register state by explicit QFT
  // matrix multiplication and compare probabilities entry by entry.
  const int ell = 6;
  const Eigen::Index dim = Eigen::Index{1} << ell;
  for (double theta : {0.4, 2.1, kTwoPi - 0.7}) {
    Eigen::VectorXcd control(dim);
    for (Eigen::Index x = 0; x < dim; ++x)
      control(x) = std::exp(std::complex<double>(0.0, theta * x)) /
                   std::sqrt(static_cast<double>(dim));
    Eigen::MatrixXcd qft(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
      for (Eigen::Index c = 0; c < dim; ++c)
        qft(r, c) = std::exp(std::complex<double>(0.0, kTwoPi * r * c / dim)) /
                    std::sqrt(static_cast<double>(dim));
    Eigen::VectorXcd after = qft.adjoint() * control;
    Eigen::VectorXd probs = pe_distribution(theta, ell);
    for (Eigen::Index y = 0; y < dim; ++y)
      CHECK(std::norm(after(y)) == doctest::Approx(probs(y)).epsilon(1e-10));
  }
}

TEST_CASE("estimation tail obeys the stated bound") {
  const double theta = kTwoPi / 3.0;  // not representable in binary
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(2, 2);
  u(1, 1) = std::exp(std::complex<double>(0.0, theta));
  Eigen::VectorXcd one(2);
  one << 0.0, 1.0;
  std::mt19937_64 rng(89);
  const int ell = 6, b = 4;
  const int samples = 10000;
  int fails = 0;
  for (int i = 0; i < samples; ++i) {
    const double sample = phase_estimation(u, one, ell, rng);
    if (circle_distance(sample, theta) > kTwoPi / std::ldexp(1.0, b)) ++fails;
  }
  const double bound = 1.0 / std::ldexp(1.0, ell - b);
  const double sigma = std::sqrt(bound * (1 - bound) / samples);
  CHECK(static_cast<double>(fails) / samples <= bound + 5 * sigma);
}

TEST_CASE("median amplification drives the failure rate down") {
  const double theta = 2.0 * std::sqrt(2.0);  // irrational fraction of 2pi
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(2, 2);
  u(1, 1) = std::exp(std::complex<double>(0.0, theta));
  Eigen::VectorXcd one(2);
  one << 0.0, 1.0;
  const int ell = 5, b = 3;
  const double window = kTwoPi / std::ldexp(1.0, b);
  std::mt19937_64 rng(97);
  std::vector<double> rates;
  for (int reps : {1, 5, 15}) {
    int fails = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
      PhaseEstimateRun run = median_amplified_pe(u, one, ell, reps, rng);
      if (circle_distance(run.theta_tilde, theta) > window) ++fails;
    }
    rates.push_back(static_cast<double>(fails) / trials);
  }
  CHECK(rates[1] < rates[0]);
  CHECK(rates[2] <= rates[1]);

  CHECK_THROWS_WITH_AS(median_amplified_pe(u, one, ell, 4, rng),
                       doctest::Contains("InvalidParameters"), InputError);
  PhaseEstimateRun single = median_amplified_pe(u, one, ell, 1, rng);
  CHECK(single.samples.size() == 1);
  CHECK(single.theta_tilde == single.samples[0]);
}

TEST_CASE("reflection spectrum encodes the marked fraction") {
  // M = 0: identity on the prepared state.
  Eigen::MatrixXcd u0 = boolean_marker(3, 0);
  Eigen::VectorXcd psi = uniform_with_flag0(3);
  Eigen::MatrixXcd g0 = grover_operator(u0, psi);
  Eigen::VectorXcd fixed = g0 * (u0 * psi);
  CHECK((fixed - u0 * psi).norm() < 1e-12);

  // M = N: eigenphase pi.
  Eigen::MatrixXcd g8 = grover_operator(boolean_marker(3, 8), psi);
  Eigen::VectorXcd flipped = g8 * (boolean_marker(3, 8) * psi);
  CHECK((flipped + boolean_marker(3, 8) * psi).norm() < 1e-12);

  // M = 2 of 8: restricted eigenphases ±theta with sin(theta/2) = 1/2.
  Eigen::MatrixXcd u2 = boolean_marker(3, 2);
  Eigen::MatrixXcd g2 = grover_operator(u2, psi);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(g2);
  Eigen::VectorXcd state = u2 * psi;
  double best_theta = -1.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double overlap =
        std::abs((es.eigenvectors().col(i).adjoint() * state)(0, 0));
    if (overlap > 0.3) {
      const double phase = std::abs(std::arg(es.eigenvalues()(i)));
      if (best_theta < 0) best_theta = phase;
      CHECK(phase == doctest::Approx(best_theta));
    }
  }
  CHECK(std::sin(best_theta / 2.0) == doctest::Approx(0.5));

  Eigen::VectorXcd wrong(4);
  wrong << 1, 0, 0, 0;
  CHECK_THROWS_WITH_AS(grover_operator(u2, wrong),
                       doctest::Contains("DimensionMismatch"), InputError);
}

TEST_CASE("counting is exact at the extremes and accurate in between") {
  std::mt19937_64 rng(101);
  Eigen::VectorXcd psi = uniform_with_flag0(3);
  CHECK(quantum_counting(boolean_marker(3, 0), psi, 8, 9, rng) ==
        doctest::Approx(0.0));
  CHECK(quantum_counting(boolean_marker(3, 8), psi, 8, 9, rng) ==
        doctest::Approx(8.0));

  const int ell = 8, b = ell - 2;
  const double dtheta = kTwoPi / std::ldexp(1.0, b);
  const double n_items = 8.0;
  int hits = 0;
  const int runs = 60;
  for (int r = 0; r < runs; ++r) {
    const double m = quantum_counting(boolean_marker(3, 3), psi, ell, 9, rng);
    const double bound =
        (std::sqrt(2.0 * n_items * 3.0) + n_items * dtheta / 2.0) * dtheta;
    if (std::abs(m - 3.0) < bound) ++hits;
  }
  CHECK(hits >= 57);  // 95% of runs
}

TEST_CASE("entangled counting state and basis invariance") {
  Eigen::VectorXcd epr1 = epr_counting_state(1);
  CHECK(epr1.size() == 4);
  CHECK(std::abs(epr1(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(epr1(3) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(epr1(1)) + std::abs(epr1(2)) < 1e-15);
  CHECK(epr1.norm() == doctest::Approx(1.0));

  std::mt19937_64 rng(103);
  for (int n = 1; n <= 3; ++n) {
    Eigen::VectorXcd target = epr_counting_state(n);
    const Eigen::Index half = Eigen::Index{1} << n;
    for (int trial = 0; trial < 5; ++trial) {
      Eigen::MatrixXcd v = random_unitary(static_cast<int>(half), rng);
      Eigen::VectorXcd rebuilt = Eigen::VectorXcd::Zero(half * half);
      for (Eigen::Index p = 0; p < half; ++p) {
        Eigen::VectorXcd vp = v.col(p);
        Eigen::VectorXcd vp_conj = vp.conjugate();
        for (Eigen::Index i = 0; i < half; ++i)
          for (Eigen::Index k = 0; k < half; ++k)
            rebuilt(i * half + k) += vp(i) * vp_conj(k);
      }
      rebuilt /= std::sqrt(static_cast<double>(half));
      CHECK((rebuilt - target).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  CHECK_THROWS_WITH_AS(epr_counting_state(20),
                       doctest::Contains("CapExceeded"), CapError);
}

TEST_CASE("interval marker flags representable energies deterministically") {
  // One eigenvalue dead centre in bin 2 of 4 and representable with 5 bits:
  // E = 3/8 = 2pi * 12/(2pi*32)... representable means E = 2pi k / 2^ell.
  const int ell_ee = 5;
  const double representable =
      kTwoPi * 28.0 / std::ldexp(1.0, ell_ee);  // 2pi*28/32 -> E via 2pi-…
  const double energy = kTwoPi - representable;  // 0.785398 = pi/4
  Eigen::VectorXd diag(2);
  diag << 0.1, energy;
  HamiltonianSpec spec = diagonal_spec(diag);
  EnergyBins bins{4, 1.0};
  // pi/4 ≈ 0.785 lies in bin 4 of 4 over [0,1).
  Eigen::MatrixXcd marker = build_interval_marker(spec, bins, 4, ell_ee);
  // Unitarity.
  Eigen::MatrixXcd eye =
      marker.adjoint() * marker - Eigen::MatrixXcd::Identity(marker.rows(),
                                                             marker.cols());
  CHECK(eye.cwiseAbs().maxCoeff() < 1e-10);

  // Apply to |0...0>_E |0>_flag |0>_ext |psi_1>: flag must be 1.
  const Eigen::Index sys_dim = 2;
  Eigen::VectorXcd in = Eigen::VectorXcd::Zero(marker.rows());
  in(1) = 1.0;  // energy reg 0, flag 0, ext 0, system |1> (the E=pi/4 state)
  Eigen::VectorXcd out = marker * in;
  double flag1 = 0.0;
  for (Eigen::Index idx = 0; idx < out.size(); ++idx) {
    const Eigen::Index aux = (idx / sys_dim) % 4;
    if ((aux >> 1) == 1) flag1 += std::norm(out(idx));
  }
  CHECK(flag1 == doctest::Approx(1.0).epsilon(1e-10));

  // The other eigenvector (E = 0.1, not in bin 4) keeps the flag near 0.
  Eigen::VectorXcd in0 = Eigen::VectorXcd::Zero(marker.rows());
  in0(0) = 1.0;
  Eigen::VectorXcd out0 = marker * in0;
  double flag1_low = 0.0;
  for (Eigen::Index idx = 0; idx < out0.size(); ++idx) {
    const Eigen::Index aux = (idx / sys_dim) % 4;
    if ((aux >> 1) == 1) flag1_low += std::norm(out0(idx));
  }
  CHECK(flag1_low < 0.05);
}

TEST_CASE("window masses match the dense marker on an entangled input") {
  // Cross-check the analytic path against the dense unitary: amplitude of
  // flag=1 on U_j applied to |0,0,+> ⊗ EPR equals sum of window masses
  // over 2N.
  Eigen::VectorXd diag(2);
  diag << 0.15, 0.6;
  HamiltonianSpec spec = diagonal_spec(diag);
  EnergyBins bins{4, 1.0};
  const int ell_ee = 5;
  const int j = 3;  // bin [0.5, 0.75)
  Eigen::MatrixXcd marker = build_interval_marker(spec, bins, j, ell_ee);

  const Eigen::Index sys_dim = 2;
  const Eigen::Index marker_dim = marker.rows();
  // Joint space: marker ⊗ mirror.
  Eigen::VectorXcd epr = epr_counting_state(1);
  Eigen::VectorXcd joint = Eigen::VectorXcd::Zero(marker_dim * sys_dim);
  // |0>_E |0>_flag |+>_ext ⊗ EPR: index = ((y*4 + aux)*2 + s)*2 + mirror.
  for (Eigen::Index s = 0; s < sys_dim; ++s)
    for (Eigen::Index m = 0; m < sys_dim; ++m) {
      const double amp = std::real(epr(s * sys_dim + m));
      if (amp == 0.0) continue;
      for (int ext = 0; ext < 2; ++ext) {
        const Eigen::Index aux = ext;  // flag 0
        const Eigen::Index idx = (aux * sys_dim + s) * sys_dim + m;
        joint(idx) += amp / std::sqrt(2.0);
      }
    }
  // Apply marker ⊗ I_mirror.
  Eigen::VectorXcd applied = Eigen::VectorXcd::Zero(joint.size());
  for (Eigen::Index row = 0; row < marker_dim; ++row)
    for (Eigen::Index col = 0; col < marker_dim; ++col) {
      if (marker(row, col) == std::complex<double>(0, 0)) continue;
      for (Eigen::Index m = 0; m < sys_dim; ++m)
        applied(row * sys_dim + m) += marker(row, col) * joint(col * sys_dim + m);
    }
  double flag1 = 0.0;
  for (Eigen::Index idx = 0; idx < applied.size(); ++idx) {
    const Eigen::Index aux = (idx / (sys_dim * sys_dim)) % 4;
    if ((aux >> 1) == 1) flag1 += std::norm(applied(idx));
  }
  double mass = 0.0;
  for (int p = 0; p < 2; ++p)
    mass += marked_window_mass(diag(p), ell_ee, bins.bin_lo(j), bins.bin_hi(j));
  CHECK(flag1 == doctest::Approx(mass / 4.0).epsilon(1e-9));
}

TEST_CASE("ideal backend reproduces the half ratio on the zero Hamiltonian") {
  HamiltonianSpec zero;
  zero.total_qubits = 3;
  zero.locality = 1;
  QpfOptions opt;
  QpfEstimate est = qpf_algorithm(zero, 1.0, 0.9, QpfBackend::Ideal, opt);
  CHECK(est.z_tilde_half == doctest::Approx(4.0));
  const double z = partition_function_exact(zero, 1.0);
  CHECK(est.z_tilde_half / z == doctest::Approx(0.5));

  CHECK_THROWS_WITH_AS(qpf_algorithm(zero, 1.0, 0.4, QpfBackend::Ideal, opt),
                       doctest::Contains("DeltaTooSmall"), InputError);
}

TEST_CASE("ideal backend with exact counts stays near the half ratio") {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 6; ++trial) {
    HamiltonianSpec spec = random_normalized_spec(rng, 5);
    QpfOptions opt;
    opt.seed = trial + 1;
    QpfEstimate est = qpf_algorithm(spec, 1.0, 0.9, QpfBackend::Ideal, opt);
    const double z = partition_function_exact(spec, 1.0);
    const double ratio = est.z_tilde_half / z;
    CHECK(ratio >= 0.5 - 1e-9);
    CHECK(ratio <= 0.5 * std::exp(1.0 / (4.0 * 5)) + 0.05);
  }
}

TEST_CASE("simulated backend meets the coarse band on two-qubit instances") {
  std::mt19937_64 rng(109);
  HamiltonianSpec spec = random_normalized_spec(rng, 2);
  const double z = partition_function_exact(spec, 1.0);
  int hits = 0;
  const int runs = 20;
  for (int r = 0; r < runs; ++r) {
    QpfOptions opt;
    opt.seed = 1000 + r;
    QpfEstimate est = qpf_algorithm(spec, 1.0, 1.0, QpfBackend::Simulated, opt);
    if (std::abs(est.z_tilde_half / z - 1.0) <= 1.0) ++hits;
  }
  CHECK(hits >= 19);
}

TEST_CASE("partition decision through the estimator interface") {
  QpfOracle exact_oracle = [](const HamiltonianSpec& spec, double beta,
                              double) {
    return partition_function_exact(spec, beta);
  };

  CnfFormula sat = parse_dimacs("p cnf 4 3\n1 2 0\n-1 3 0\n2 -4 0\n");
  HamiltonianSpec hs = build_trivial_sat_hamiltonian(sat);
  CHECK(decide_lh_via_qpf(exact_oracle, hs, hs.thresholds->a,
                          hs.thresholds->b) == LhAnswer::Yes);

  CnfFormula unsat =
      parse_dimacs("p cnf 3 4\n1 2 0\n1 -2 0\n-1 2 0\n-1 -2 0\n");
  HamiltonianSpec hu = build_trivial_sat_hamiltonian(unsat);
  CHECK(decide_lh_via_qpf(exact_oracle, hu, hu.thresholds->a,
                          hu.thresholds->b) == LhAnswer::No);

  // Forcing a tiny beta makes the decision thresholds overlap.
  LhViaQpfParams params;
  CHECK_THROWS_WITH_AS(
      decide_lh_via_qpf(exact_oracle, hs, hs.thresholds->a, hs.thresholds->b,
                        &params, /*beta_override=*/0.01),
      doctest::Contains("ThresholdsOverlap"), PromiseError);
}
