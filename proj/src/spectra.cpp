#include "hamreduce/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hamreduce/bits.hpp"
#include "hamreduce/errors.hpp"

namespace hamreduce {

namespace {

void check_dense_cap(int total_qubits, int dense_cap) {
  if (total_qubits > dense_cap)
    throw CapError("DimensionCapExceeded",
                   std::to_string(total_qubits) + " qubits exceeds dense cap " +
                       std::to_string(dense_cap));
}

// Applies a term's block to the statevector on its support qubits.
void apply_term(const LocalTerm& term, int total_qubits,
                const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
  const int s = static_cast<int>(term.support.size());
  const std::uint64_t dim = std::uint64_t{1} << total_qubits;
  if (s == 0) {
    out += term.coefficient * term.block(0, 0) * in;
    return;
  }
  std::vector<std::uint64_t> masks(s);
  for (int i = 0; i < s; ++i)
    masks[i] = std::uint64_t{1} << (total_qubits - term.support[i]);
  const std::uint64_t block_dim = std::uint64_t{1} << s;
  // Iterate over the off-support configurations via mask arithmetic.
  for (std::uint64_t base = 0; base < dim; ++base) {
    bool is_base = true;
    for (const auto m : masks)
      if (base & m) { is_base = false; break; }
    if (!is_base) continue;
    for (std::uint64_t row = 0; row < block_dim; ++row) {
      std::uint64_t row_state = base;
      for (int i = 0; i < s; ++i)
        if ((row >> (s - 1 - i)) & 1) row_state |= masks[i];
      std::complex<double> acc = 0.0;
      for (std::uint64_t col = 0; col < block_dim; ++col) {
        const auto entry = term.block(row, col);
        if (entry == std::complex<double>(0.0, 0.0)) continue;
        std::uint64_t col_state = base;
        for (int i = 0; i < s; ++i)
          if ((col >> (s - 1 - i)) & 1) col_state |= masks[i];
        acc += entry * in(col_state);
      }
      out(row_state) += term.coefficient * acc;
    }
  }
}

}  // namespace

Eigen::MatrixXcd realize_dense(const HamiltonianSpec& spec, int dense_cap) {
  check_dense_cap(spec.total_qubits, dense_cap);
  const std::uint64_t dim = std::uint64_t{1} << spec.total_qubits;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (const LocalTerm& term : spec.terms) {
    const int s = static_cast<int>(term.support.size());
    if (s == 0) {
      h += term.coefficient * term.block(0, 0) *
           Eigen::MatrixXcd::Identity(dim, dim);
      continue;
    }
    std::vector<std::uint64_t> masks(s);
    for (int i = 0; i < s; ++i)
      masks[i] = std::uint64_t{1} << (spec.total_qubits - term.support[i]);
    std::uint64_t support_mask = 0;
    for (auto m : masks) support_mask |= m;
    const std::uint64_t block_dim = std::uint64_t{1} << s;
    for (std::uint64_t base = 0; base < dim; ++base) {
      if (base & support_mask) continue;
      for (std::uint64_t row = 0; row < block_dim; ++row) {
        std::uint64_t row_state = base;
        for (int i = 0; i < s; ++i)
          if ((row >> (s - 1 - i)) & 1) row_state |= masks[i];
        for (std::uint64_t col = 0; col < block_dim; ++col) {
          const auto entry = term.block(row, col);
          if (entry == std::complex<double>(0.0, 0.0)) continue;
          std::uint64_t col_state = base;
          for (int i = 0; i < s; ++i)
            if ((col >> (s - 1 - i)) & 1) col_state |= masks[i];
          h(row_state, col_state) += term.coefficient * entry;
        }
      }
    }
  }
  return h;
}

double operator_norm(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::VectorXcd apply_spec(const HamiltonianSpec& spec,
                            const Eigen::VectorXcd& v) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
  for (const LocalTerm& term : spec.terms)
    apply_term(term, spec.total_qubits, v, out);
  return out;
}

Eigen::VectorXd diagonal_of(const HamiltonianSpec& spec) {
  const std::uint64_t dim = std::uint64_t{1} << spec.total_qubits;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
  for (const LocalTerm& term : spec.terms) {
    const int s = static_cast<int>(term.support.size());
    if (s == 0) {
      diag.array() += term.coefficient * term.block(0, 0).real();
      continue;
    }
    std::vector<int> support = term.support;
    for (std::uint64_t b = 0; b < dim; ++b) {
      const std::uint64_t idx =
          extract_bits(b, support, spec.total_qubits);
      diag(b) += term.coefficient * term.block(idx, idx).real();
    }
  }
  return diag;
}

namespace {

// Restarted Lanczos with full reorthogonalization for the smallest
// eigenvalue of the spec's matvec.
SpectrumResult lanczos_ground(const HamiltonianSpec& spec, std::uint64_t seed) {
  const std::uint64_t dim = std::uint64_t{1} << spec.total_qubits;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(dim);
  for (std::uint64_t i = 0; i < dim; ++i)
    v(i) = std::complex<double>(gauss(rng), gauss(rng));
  v.normalize();

  const int block = std::min<std::uint64_t>(60, dim);
  const int max_restarts = 200;
  double lambda = 0.0;
  Eigen::VectorXcd ground = v;
  for (int restart = 0; restart < max_restarts; ++restart) {
    std::vector<Eigen::VectorXcd> basis;
    basis.push_back(v);
    Eigen::VectorXd alpha = Eigen::VectorXd::Zero(block);
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(block);
    int built = 0;
    for (int j = 0; j < block; ++j) {
      Eigen::VectorXcd w = apply_spec(spec, basis[j]);
      alpha(j) = std::real(basis[j].dot(w));
      // Full reorthogonalization keeps the basis clean at desk scale.
      for (const auto& b : basis) w -= b.dot(w) * b;
      for (const auto& b : basis) w -= b.dot(w) * b;
      built = j + 1;
      const double nrm = w.norm();
      if (nrm < 1e-13 || j == block - 1) break;
      beta(j) = nrm;
      basis.push_back(w / nrm);
    }
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(built, built);
    for (int j = 0; j < built; ++j) {
      tri(j, j) = alpha(j);
      if (j + 1 < built) {
        tri(j, j + 1) = beta(j);
        tri(j + 1, j) = beta(j);
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    lambda = es.eigenvalues()(0);
    Eigen::VectorXcd next = Eigen::VectorXcd::Zero(dim);
    for (int j = 0; j < built; ++j)
      next += es.eigenvectors()(j, 0) * basis[j];
    next.normalize();
    ground = next;
    const double residual = (apply_spec(spec, ground) - lambda * ground).norm();
    if (residual < 1e-9) break;
    v = ground;
  }
  SpectrumResult result;
  result.ground_energy = lambda;
  result.ground_vector = ground;
  result.method = "iterative";
  result.residual = (apply_spec(spec, ground) - lambda * ground).norm();
  if (result.residual > 1e-8)
    throw Error("ConvergenceFailure",
                "iterative residual " + std::to_string(result.residual));
  return result;
}

}  // namespace

SpectrumResult ground_energy(const HamiltonianSpec& spec, SolveMethod method,
                             int dense_cap, int iterative_cap,
                             std::uint64_t seed) {
  if (spec.total_qubits > iterative_cap)
    throw CapError("DimensionCapExceeded",
                   std::to_string(spec.total_qubits) +
                       " qubits exceeds iterative cap " +
                       std::to_string(iterative_cap));
  if (method == SolveMethod::Auto && is_diagonal(spec)) {
    Eigen::VectorXd diag = diagonal_of(spec);
    Eigen::Index arg = 0;
    const double lambda = diag.minCoeff(&arg);
    SpectrumResult result;
    result.ground_energy = lambda;
    Eigen::VectorXcd vec = Eigen::VectorXcd::Zero(diag.size());
    vec(arg) = 1.0;
    result.ground_vector = vec;
    result.method = "diagonal";
    result.residual = 0.0;
    return result;
  }
  const bool dense_ok = spec.total_qubits <= std::min(dense_cap, 12);
  if (method == SolveMethod::Dense ||
      (method == SolveMethod::Auto && dense_ok)) {
    check_dense_cap(spec.total_qubits, dense_cap);
    Eigen::MatrixXcd h = realize_dense(spec, dense_cap);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    SpectrumResult result;
    result.ground_energy = es.eigenvalues()(0);
    result.ground_vector = es.eigenvectors().col(0);
    result.method = "dense";
    result.residual =
        (h * *result.ground_vector - result.ground_energy * *result.ground_vector)
            .norm();
    return result;
  }
  return lanczos_ground(spec, seed);
}

double partition_function_exact(const HamiltonianSpec& spec, double beta,
                                int dense_cap) {
  if (is_diagonal(spec)) {
    Eigen::VectorXd diag = diagonal_of(spec);
    double z = 0.0;
    for (Eigen::Index i = 0; i < diag.size(); ++i)
      z += std::exp(-beta * diag(i));
    return z;
  }
  check_dense_cap(spec.total_qubits, dense_cap);
  Eigen::MatrixXcd h = realize_dense(spec, dense_cap);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  double z = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    z += std::exp(-beta * es.eigenvalues()(i));
  return z;
}

Eigen::VectorXd full_spectrum(const HamiltonianSpec& spec, int dense_cap) {
  if (is_diagonal(spec)) {
    Eigen::VectorXd diag = diagonal_of(spec);
    std::sort(diag.data(), diag.data() + diag.size());
    return diag;
  }
  check_dense_cap(spec.total_qubits, dense_cap);
  Eigen::MatrixXcd h = realize_dense(spec, dense_cap);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// ---------------------------------------------------------------------------

Eigen::VectorXcd abstract_history_state(const QuantumCircuit& circ,
                                        int total_steps,
                                        const Eigen::VectorXcd& psi_inputs) {
  const int nq = circ.total_qubits();
  const int n_in = circ.layout.num_inputs;
  const Eigen::Index sys_dim = Eigen::Index{1} << nq;
  if (psi_inputs.size() != (Eigen::Index{1} << n_in))
    throw InputError("LengthMismatch", "input state dimension mismatch");
  if (static_cast<int>(circ.gates.size()) > total_steps)
    throw InputError("ScheduleTooShort", "more gates than steps");

  // |psi>|0...0> on the full system; ancillas are the low qubits.
  Eigen::VectorXcd state = Eigen::VectorXcd::Zero(sys_dim);
  const int anc = nq - n_in;
  for (Eigen::Index x = 0; x < psi_inputs.size(); ++x)
    state(x << anc) = psi_inputs(x);

  QuantumCircuit stepper;
  stepper.layout = circ.layout;
  Eigen::VectorXcd hist =
      Eigen::VectorXcd::Zero(sys_dim * (total_steps + 1));
  const double norm = 1.0 / std::sqrt(static_cast<double>(total_steps + 1));
  for (int t = 0; t <= total_steps; ++t) {
    if (t >= 1 && t <= static_cast<int>(circ.gates.size())) {
      stepper.gates = {circ.gates[t - 1]};
      Eigen::MatrixXcd u = realize_unitary(stepper);
      state = (u * state).eval();
    }
    for (Eigen::Index x = 0; x < sys_dim; ++x)
      hist(x * (total_steps + 1) + t) = norm * state(x);
  }
  return hist;
}

Eigen::VectorXcd embed_on_schedule(const Eigen::VectorXcd& abstract_state,
                                   int num_system_qubits,
                                   const ClockSchedule& sched) {
  const int steps = sched.total_steps();
  const Eigen::Index sys_dim = Eigen::Index{1} << num_system_qubits;
  if (abstract_state.size() != sys_dim * (steps + 1))
    throw InputError("LengthMismatch", "abstract state dimension mismatch");
  const Eigen::Index clk_dim = Eigen::Index{1} << sched.n_cl;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(sys_dim * clk_dim);
  for (int t = 0; t <= steps; ++t) {
    const std::uint64_t clock_basis = clock_state(sched, t).basis_index();
    for (Eigen::Index x = 0; x < sys_dim; ++x)
      out(x * clk_dim + clock_basis) += abstract_state(x * (steps + 1) + t);
  }
  return out;
}

HistoryState history_state(const QuantumCircuit& circ,
                           const ClockSchedule& sched,
                           const Eigen::VectorXcd& psi_inputs, int dense_cap,
                           int steps) {
  check_dense_cap(circ.total_qubits() + sched.n_cl, dense_cap);
  if (steps < 0) steps = sched.total_steps();
  if (steps > sched.total_steps())
    throw InputError("StepOutOfRange", "history longer than the schedule");
  HistoryState hist;
  hist.num_system_qubits = circ.total_qubits();
  hist.num_clock_qubits = sched.n_cl;
  hist.total_steps = steps;
  Eigen::VectorXcd abstract =
      abstract_history_state(circ, steps, psi_inputs);
  const Eigen::Index sys_dim = Eigen::Index{1} << circ.total_qubits();
  const Eigen::Index clk_dim = Eigen::Index{1} << sched.n_cl;
  hist.state = Eigen::VectorXcd::Zero(sys_dim * clk_dim);
  for (int t = 0; t <= steps; ++t) {
    const std::uint64_t clock_basis = clock_state(sched, t).basis_index();
    for (Eigen::Index x = 0; x < sys_dim; ++x)
      hist.state(x * clk_dim + clock_basis) += abstract(x * (steps + 1) + t);
  }
  return hist;
}

// ---------------------------------------------------------------------------

Eigen::MatrixXcd zero_eigenspace(const HamiltonianSpec& spec, double tol,
                                 int dense_cap) {
  Eigen::MatrixXcd h = realize_dense(spec, dense_cap);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  int count = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i)) < tol) ++count;
  Eigen::MatrixXcd basis(h.rows(), count);
  int k = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i)) < tol)
      basis.col(k++) = es.eigenvectors().col(i);
  return basis;
}

ProjectionReport projection_lemma_check(const HamiltonianSpec& h1,
                                        const HamiltonianSpec& h2,
                                        const Eigen::MatrixXcd& subspace,
                                        int dense_cap) {
  Eigen::MatrixXcd m1 = realize_dense(h1, dense_cap);
  Eigen::MatrixXcd m2 = realize_dense(h2, dense_cap);

  // The columns must span the zero eigenspace of H2 exactly.
  if ((m2 * subspace).cwiseAbs().maxCoeff() > 1e-9)
    throw InputError("SubspaceMismatch",
                     "columns are not annihilated by the penalty term");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(m2,
                                                      Eigen::EigenvaluesOnly);
  int zero_count = 0;
  double j = 0.0;
  for (Eigen::Index i = 0; i < es2.eigenvalues().size(); ++i) {
    const double ev = es2.eigenvalues()(i);
    if (std::abs(ev) < 1e-9) {
      ++zero_count;
    } else if (j == 0.0 || ev < j) {
      j = ev;
    }
  }
  if (zero_count != subspace.cols())
    throw InputError("SubspaceMismatch",
                     "kernel dimension " + std::to_string(zero_count) +
                         " vs basis of " + std::to_string(subspace.cols()));

  ProjectionReport report;
  report.h1_norm = operator_norm(m1);
  report.j = j;
  if (j <= 2.0 * report.h1_norm)
    throw PromiseError("HypothesisViolated",
                       "smallest nonzero penalty eigenvalue too small");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es_sum(m1 + m2,
                                                         Eigen::EigenvaluesOnly);
  report.lambda_sum = es_sum.eigenvalues()(0);
  Eigen::MatrixXcd restricted = subspace.adjoint() * m1 * subspace;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es_r(restricted,
                                                       Eigen::EigenvaluesOnly);
  report.lambda_restricted =
      subspace.cols() > 0 ? es_r.eigenvalues()(0) : 0.0;
  report.correction =
      report.h1_norm * report.h1_norm / (report.j - 2.0 * report.h1_norm);
  report.inequality_holds =
      report.lambda_sum >= report.lambda_restricted - report.correction - 1e-9;
  return report;
}

LhAnswer decide_lh(const HamiltonianSpec& spec, double a, double b,
                   int dense_cap, int iterative_cap) {
  if (!(b > a))
    throw InputError("InvalidThresholds", "need b > a");
  const double lambda =
      ground_energy(spec, SolveMethod::Auto, dense_cap, iterative_cap)
          .ground_energy;
  if (lambda <= a) return LhAnswer::Yes;
  if (lambda >= b) return LhAnswer::No;
  throw PromiseError("PromiseViolated",
                     "ground energy " + std::to_string(lambda) +
                         " lies strictly between a and b");
}

}  // namespace hamreduce
