#include <doctest.h>

#include <random>

#include <Eigen/Dense>

#include "hamreduce/bits.hpp"
#include "hamreduce/circuit.hpp"
#include "hamreduce/clock.hpp"
#include "hamreduce/cnf.hpp"
#include "hamreduce/errors.hpp"
#include "hamreduce/hamiltonian.hpp"
#include "hamreduce/serialize.hpp"
#include "hamreduce/spectra.hpp"

using namespace hamreduce;

namespace {

QuantumCircuit simple_circuit(int num_inputs, int num_ancillas, int out_qubit,
                              std::vector<Gate> gates) {
  QuantumCircuit circ;
  circ.layout.num_inputs = num_inputs;
  circ.layout.num_ancillas = num_ancillas;
  circ.layout.out_qubit = out_qubit;
  circ.gates = std::move(gates);
  return circ;
}

Eigen::VectorXcd basis_state(int dim, int index) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(index) = 1.0;
  return v;
}

HamiltonianSpec terms_in_groups(const HamiltonianSpec& spec,
                                const std::vector<std::string>& groups) {
  HamiltonianSpec out = spec;
  out.terms.clear();
  for (const LocalTerm& term : spec.terms)
    if (std::find(groups.begin(), groups.end(), term.group) != groups.end())
      out.terms.push_back(term);
  return out;
}

}  // namespace

TEST_CASE("diagonal SAT Hamiltonian counts violated clauses") {
  // (x1): energy 0 at x=1, 1 at x=0.
  CnfFormula phi = parse_dimacs("p cnf 1 1\n1 0\n");
  HamiltonianSpec spec = build_trivial_sat_hamiltonian(phi);
  CHECK(is_diagonal(spec));
  Eigen::VectorXd diag = diagonal_of(spec);
  CHECK(diag(0) == doctest::Approx(1.0));
  CHECK(diag(1) == doctest::Approx(0.0));
  CHECK(spec.thresholds->a == doctest::Approx(1.0));

  CnfFormula contradiction = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n");
  HamiltonianSpec hc = build_trivial_sat_hamiltonian(contradiction);
  CHECK(ground_energy(hc).ground_energy == doctest::Approx(1.0));

  CnfFormula pair = parse_dimacs("p cnf 2 2\n1 0\n2 0\n");
  Eigen::VectorXd d2 = diagonal_of(build_trivial_sat_hamiltonian(pair));
  CHECK(d2(0) == doctest::Approx(2.0));
  CHECK(d2(1) == doctest::Approx(1.0));
  CHECK(d2(2) == doctest::Approx(1.0));
  CHECK(d2(3) == doctest::Approx(0.0));
}

TEST_CASE("diagonal SAT Hamiltonian matches the exhaustive oracle") {
  std::mt19937_64 rng(31);
  std::bernoulli_distribution sign(0.5);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 3 + trial % 8;
    CnfFormula phi;
    phi.num_vars = n;
    phi.arity_bound = 3;
    const int m = 2 + static_cast<int>(rng() % (2 * n));
    for (int i = 0; i < m; ++i) {
      Clause c;
      std::vector<int> vars(n);
      for (int v = 0; v < n; ++v) vars[v] = v + 1;
      std::shuffle(vars.begin(), vars.end(), rng);
      const int len = 1 + static_cast<int>(rng() % 3);
      for (int j = 0; j < std::min(len, n); ++j)
        c.literals.push_back({vars[j], sign(rng)});
      phi.clauses.push_back(c);
    }
    HamiltonianSpec spec = build_trivial_sat_hamiltonian(phi);
    BruteForceResult oracle = brute_force_min_violations(phi);
    SpectrumResult lambda = ground_energy(spec);
    CHECK(lambda.ground_energy ==
          doctest::Approx(oracle.min_count).epsilon(1e-12));
    // The diagonal entry at any assignment is its violation count.
    Eigen::VectorXd diag = diagonal_of(spec);
    for (int probe = 0; probe < 8; ++probe) {
      const std::uint64_t x = rng() % (std::uint64_t{1} << n);
      CHECK(diag(x) ==
            doctest::Approx(count_violations(phi, Assignment::from_index(x, n))));
    }
  }
}

TEST_CASE("locality report") {
  CnfFormula phi = parse_dimacs("p cnf 3 2\n1 -2 3 0\n-1 2 0\n");
  CHECK(locality_of(build_trivial_sat_hamiltonian(phi)) == 3);
}

TEST_CASE("stabilizer penalty spectrum on the bare clock register") {
  for (int n_cl = 3; n_cl <= 5; ++n_cl) {
    HamiltonianSpec stab = build_stab_penalty(n_cl, 2);
    CHECK(is_diagonal(stab));
    Eigen::VectorXd diag = diagonal_of(stab);
    const double floor = 1.0 / static_cast<double>(binomial(n_cl, 2));
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << n_cl); ++w) {
      const int weight = popcount64(w);
      if (weight == 2) {
        CHECK(std::abs(diag(w)) < 1e-10);
      } else {
        CHECK(diag(w) >= floor - 1e-10);
      }
    }
  }
}

TEST_CASE("clock reduction of the empty circuit has ground energy zero") {
  QuantumCircuit circ = simple_circuit(1, 0, 1, {});
  ClockSchedule sched = johnson_path_d2(3);
  HamiltonianSpec spec = build_hu_5local(circ, sched);
  CHECK(spec.total_qubits == 4);
  CHECK(spec.locality == 5);
  SpectrumResult result = ground_energy(spec, SolveMethod::Dense);
  CHECK(result.ground_energy == doctest::Approx(0.0).epsilon(1e-10));

  // The uniform clock superposition over |1> achieves it.
  HistoryState hist = history_state(circ, sched, basis_state(2, 1));
  Eigen::MatrixXcd h = realize_dense(spec);
  const double energy =
      std::real((hist.state.adjoint() * h * hist.state)(0, 0));
  CHECK(energy == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("single NOT acceptor stays below the yes threshold") {
  QuantumCircuit circ = simple_circuit(1, 0, 1, {Gate::not_gate(1)});
  ClockSchedule sched = johnson_path_d2(3);
  HamiltonianSpec spec = build_hu_5local(circ, sched);
  SpectrumResult result = ground_energy(spec, SolveMethod::Dense);
  CHECK(result.ground_energy < spec.thresholds->a);
  CHECK(result.ground_energy == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("five-local terms are unit-norm and the declared locality is met") {
  QuantumCircuit circ =
      simple_circuit(2, 1, 3, {Gate::hadamard(1), Gate::cnot(1, 2),
                               Gate::not_gate(3), Gate::t_gate(2)});
  ClockSchedule sched = johnson_path_d2(4);
  HamiltonianSpec spec = build_hu_5local(circ, sched);
  CHECK(locality_of(spec) == 5);
  for (const LocalTerm& term : spec.terms) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(term.block,
                                                       Eigen::EigenvaluesOnly);
    CHECK(std::abs(term.coefficient) *
              es.eigenvalues().cwiseAbs().maxCoeff() <=
          1.0 + 1e-12);
  }
  // Hermiticity of the realization.
  Eigen::MatrixXcd h = realize_dense(spec);
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("five-local build rejects oversized circuits and fat gates") {
  ClockSchedule sched = johnson_path_d2(3);  // 2 steps
  QuantumCircuit too_long = simple_circuit(
      1, 0, 1, {Gate::not_gate(1), Gate::not_gate(1), Gate::not_gate(1)});
  CHECK_THROWS_WITH_AS(build_hu_5local(too_long, sched),
                       doctest::Contains("ScheduleTooShort"), InputError);
  QuantumCircuit fat = simple_circuit(3, 0, 1, {Gate::toffoli(1, 2, 3)});
  CHECK_THROWS_WITH_AS(build_hu_5local(fat, sched),
                       doctest::Contains("UnsupportedGate"), InputError);
}

TEST_CASE("abstract propagation operator matches the stated transcription") {
  // One Hadamard step: H'_prop = (1/2)(I ⊗ (|0><0| + |1><1|)
  //                                - H ⊗ |1><0| - H ⊗ |0><1|).
  QuantumCircuit circ = simple_circuit(1, 0, 1, {Gate::hadamard(1)});
  RestrictedPropOperator op = build_restricted_prop(circ, 1);
  Eigen::MatrixXcd expected(4, 4);
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd had(2, 2);
  had << s, s, s, -s;
  Eigen::MatrixXcd e00 = Eigen::MatrixXcd::Zero(2, 2), e11 = e00, e10 = e00,
                   e01 = e00;
  e00(0, 0) = 1;
  e11(1, 1) = 1;
  e10(1, 0) = 1;
  e01(0, 1) = 1;
  expected.setZero();
  auto kron = [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j)
        out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
  };
  expected = 0.5 * (kron(Eigen::MatrixXcd::Identity(2, 2), e00 + e11) -
                    kron(had, e10) - kron(had, e01));
  CHECK((op.h_prop - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("uniform clock superpositions span the propagation kernel for the idle circuit") {
  QuantumCircuit circ = simple_circuit(1, 0, 1, {});
  RestrictedPropOperator op = build_restricted_prop(circ, 2);
  // 3x3 clock Laplacian per system basis state: kernel is the uniform vector.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.h_prop);
  int zeros = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i)) < 1e-12) ++zeros;
  CHECK(zeros == 2);  // one uniform history per system basis state
  for (int x = 0; x < 2; ++x) {
    Eigen::VectorXcd hist =
        abstract_history_state(circ, 2, basis_state(2, x));
    CHECK((op.h_prop * hist).norm() < 1e-12);
  }
}

TEST_CASE("history energy equals the rejection probability over the step count") {
  // Hadamard on |0>: acceptance probability 1/2, T = 1.
  QuantumCircuit circ = simple_circuit(1, 0, 1, {Gate::hadamard(1)});
  RestrictedPropOperator op = build_restricted_prop(circ, 1);
  Eigen::VectorXcd hist = abstract_history_state(circ, 1, basis_state(2, 0));
  const double energy =
      std::real((hist.adjoint() * op.total() * hist)(0, 0));
  CHECK(energy == doctest::Approx(0.5 / 2.0).epsilon(1e-12));

  // NOT on |0>: acceptance probability 1, all groups vanish.
  QuantumCircuit acc = simple_circuit(1, 0, 1, {Gate::not_gate(1)});
  RestrictedPropOperator op2 = build_restricted_prop(acc, 1);
  Eigen::VectorXcd hist2 = abstract_history_state(acc, 1, basis_state(2, 0));
  CHECK(std::abs((hist2.adjoint() * op2.total() * hist2)(0, 0)) < 1e-12);
}

TEST_CASE("embedded and abstract quadratic forms agree on the legal subspace") {
  std::mt19937_64 rng(47);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<QuantumCircuit> circuits = {
      simple_circuit(1, 0, 1, {Gate::hadamard(1)}),
      simple_circuit(1, 1, 2, {Gate::cnot(1, 2), Gate::t_gate(1)}),
      simple_circuit(2, 0, 2, {Gate::cz(1, 2), Gate::not_gate(1)}),
  };
  for (const QuantumCircuit& circ : circuits) {
    ClockSchedule sched = johnson_path_d2(3);
    HamiltonianSpec spec = build_hu_5local(circ, sched);
    Eigen::MatrixXcd h_full = realize_dense(spec);
    RestrictedPropOperator op =
        build_restricted_prop(circ, sched.total_steps());
    Eigen::MatrixXcd h_abstract = op.total();
    const int nq = circ.total_qubits();
    for (int probe = 0; probe < 6; ++probe) {
      Eigen::VectorXcd phi(h_abstract.rows());
      for (Eigen::Index i = 0; i < phi.size(); ++i)
        phi(i) = std::complex<double>(gauss(rng), gauss(rng));
      phi.normalize();
      Eigen::VectorXcd embedded = embed_on_schedule(phi, nq, sched);
      const double q_full =
          std::real((embedded.adjoint() * h_full * embedded)(0, 0));
      const double q_abstract =
          std::real((phi.adjoint() * h_abstract * phi)(0, 0));
      CHECK(q_full == doctest::Approx(q_abstract).epsilon(1e-9));
    }
  }
}

TEST_CASE("three-local build structure") {
  QuantumCircuit circ = simple_circuit(2, 0, 1, {Gate::cz(1, 2)});
  CzSandwichCircuit czc = cz_sandwich_normalize(circ);
  ClockSchedule sched = johnson_path_d2(4);
  HamiltonianSpec spec = build_hu_3local(czc, sched);
  CHECK(locality_of(spec) == 3);
  CHECK(spec.weights.has_value());
  CHECK(spec.weights->j_prop1 == doctest::Approx(czc.total_time() + 1));
  CHECK(spec.weights->j_prop2 >= spec.weights->j_prop1);
  CHECK(spec.weights->j_in >= spec.weights->j_prop2);
  CHECK(spec.weights->j_stab > 0);
  Eigen::MatrixXcd h = realize_dense(spec);
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-10);

  ClockSchedule generic = johnson_path_generic(4, 2);
  ScheduleReport check = validate_schedule(generic, true);
  if (!check.ok) {
    CHECK_THROWS_WITH_AS(build_hu_3local(czc, generic),
                         doctest::Contains("ScheduleLacksTwoStepProperty"),
                         InputError);
  }
  ClockSchedule tiny = johnson_path_d2(3);
  CHECK_THROWS_WITH_AS(build_hu_3local(czc, tiny),
                       doctest::Contains("GateCountExceedsSchedule"),
                       InputError);
}

TEST_CASE("circuit-qubit block matches the stated combination") {
  QuantumCircuit circ = simple_circuit(2, 0, 1, {Gate::cz(1, 2)});
  CzSandwichCircuit czc = cz_sandwich_normalize(circ);
  ClockSchedule sched = johnson_path_d2(4);
  HamiltonianSpec spec = build_hu_3local(czc, sched);
  // Collect the four qubit-group terms of the single CZ and rebuild
  // Q = (1/2)(-2|0><0|_f - 2|0><0|_s + |1><1|_f + |1><1|_s) ⊗ (hop + hop†)
  // on (f, s, clock pair) from them.
  HamiltonianSpec qubit_terms = terms_in_groups(spec, {"qubit"});
  REQUIRE(qubit_terms.terms.size() == 4);
  const double j2 = spec.weights->j_prop2;
  double sum_coeff = 0.0;
  for (const LocalTerm& term : qubit_terms.terms) {
    CHECK(term.support.size() == 3);
    sum_coeff += term.coefficient / j2;
  }
  CHECK(sum_coeff == doctest::Approx(-1.0));  // -1 -1 +1/2 +1/2
}

TEST_CASE("three-local yes instance keeps the history energy below epsilon") {
  // CZ sandwich on |11>: accepted with certainty, so the history state must
  // sit at (numerically) nonpositive energy against the full assembly.
  QuantumCircuit circ = simple_circuit(2, 0, 1, {Gate::cz(1, 2)});
  CzSandwichCircuit czc = cz_sandwich_normalize(circ);
  ClockSchedule sched = johnson_path_d2(4);
  HamiltonianSpec spec = build_hu_3local(czc, sched);

  QuantumCircuit timeline = simple_circuit(2, 0, 1, czc.gates);
  HistoryState hist = history_state(timeline, sched, basis_state(4, 3));
  Eigen::MatrixXcd h = realize_dense(spec);
  const double energy =
      std::real((hist.state.adjoint() * h * hist.state)(0, 0));
  CHECK(energy <= 1e-9);
}

TEST_CASE("spec JSON round trip preserves realization") {
  QuantumCircuit circ = simple_circuit(1, 0, 1, {Gate::not_gate(1)});
  ClockSchedule sched = johnson_path_d2(3);
  HamiltonianSpec spec = build_hu_5local(circ, sched);
  HamiltonianSpec again = spec_from_json(spec_to_json(spec));
  CHECK(again.total_qubits == spec.total_qubits);
  CHECK(again.locality == spec.locality);
  CHECK(again.terms.size() == spec.terms.size());
  Eigen::MatrixXcd h1 = realize_dense(spec);
  Eigen::MatrixXcd h2 = realize_dense(again);
  CHECK((h1 - h2).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(spec_to_json(again).dump() == spec_to_json(spec).dump());
}
