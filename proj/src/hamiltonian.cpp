#include "hamreduce/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <unsupported/Eigen/KroneckerProduct>

#include "hamreduce/bits.hpp"
#include "hamreduce/errors.hpp"
#include "hamreduce/spectra.hpp"

namespace hamreduce {

namespace {

std::vector<int> sorted_union(std::initializer_list<std::vector<int>> sets) {
  std::vector<int> out;
  for (const auto& s : sets) out.insert(out.end(), s.begin(), s.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int position_of(const std::vector<int>& sorted_support, int qubit) {
  auto it = std::lower_bound(sorted_support.begin(), sorted_support.end(), qubit);
  return static_cast<int>(it - sorted_support.begin());
}

// All k-subsets of [n] in lexicographic order.
std::vector<std::vector<int>> k_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - (k - 1 - i)) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

Eigen::Matrix2cd proj0() {
  Eigen::Matrix2cd p = Eigen::Matrix2cd::Zero();
  p(0, 0) = 1.0;
  return p;
}

Eigen::Matrix2cd proj1() {
  Eigen::Matrix2cd p = Eigen::Matrix2cd::Zero();
  p(1, 1) = 1.0;
  return p;
}

bool is_one_qubit_kind(GateKind kind) {
  switch (kind) {
    case GateKind::Not:
    case GateKind::Hadamard:
    case GateKind::TGate:
    case GateKind::Z:
    case GateKind::Identity:
      return true;
    default:
      return false;
  }
}

}  // namespace

void validate_spec(const HamiltonianSpec& spec) {
  for (const LocalTerm& term : spec.terms) {
    if (!std::is_sorted(term.support.begin(), term.support.end()))
      throw InputError("MalformedTerm", "support not sorted");
    for (int q : term.support)
      if (q < 1 || q > spec.total_qubits)
        throw InputError("MalformedTerm", "support outside qubit range");
    const Eigen::Index dim = Eigen::Index{1} << term.support.size();
    if (term.block.rows() != dim || term.block.cols() != dim)
      throw InputError("MalformedTerm", "block dimension mismatch");
    if ((term.block - term.block.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
      throw InputError("MalformedTerm", "block not Hermitian");
    if (static_cast<int>(term.support.size()) > spec.locality)
      throw InputError("MalformedTerm", "term exceeds declared locality");
  }
}

int locality_of(const HamiltonianSpec& spec) {
  int k = 0;
  for (const LocalTerm& term : spec.terms)
    k = std::max(k, static_cast<int>(term.support.size()));
  return k;
}

bool is_diagonal(const HamiltonianSpec& spec) {
  for (const LocalTerm& term : spec.terms) {
    const Eigen::Index dim = term.block.rows();
    for (Eigen::Index r = 0; r < dim; ++r)
      for (Eigen::Index c = 0; c < dim; ++c)
        if (r != c && std::abs(term.block(r, c)) > 0.0) return false;
  }
  return true;
}

double triangle_norm_bound(const HamiltonianSpec& spec) {
  double bound = 0.0;
  for (const LocalTerm& term : spec.terms) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(term.block,
                                                       Eigen::EigenvaluesOnly);
    bound += std::abs(term.coefficient) *
             es.eigenvalues().cwiseAbs().maxCoeff();
  }
  return bound;
}

Eigen::MatrixXcd all_ones_projector(const std::vector<int>& sorted_support,
                                    const std::vector<int>& ones) {
  const int s = static_cast<int>(sorted_support.size());
  const Eigen::Index dim = Eigen::Index{1} << s;
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
  std::uint64_t mask = 0;
  for (int q : ones)
    mask |= std::uint64_t{1} << (s - 1 - position_of(sorted_support, q));
  for (Eigen::Index b = 0; b < dim; ++b)
    if ((static_cast<std::uint64_t>(b) & mask) == mask) p(b, b) = 1.0;
  return p;
}

Eigen::MatrixXcd forward_hop_block(const std::vector<int>& sorted_support,
                                   const std::vector<int>& leaving,
                                   const std::vector<int>& entering,
                                   const std::vector<int>& held) {
  const int s = static_cast<int>(sorted_support.size());
  const Eigen::Index dim = Eigen::Index{1} << s;
  std::uint64_t leave_mask = 0, enter_mask = 0, held_mask = 0;
  for (int q : leaving)
    leave_mask |= std::uint64_t{1} << (s - 1 - position_of(sorted_support, q));
  for (int q : entering)
    enter_mask |= std::uint64_t{1} << (s - 1 - position_of(sorted_support, q));
  for (int q : held)
    held_mask |= std::uint64_t{1} << (s - 1 - position_of(sorted_support, q));
  Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::uint64_t col = 0; col < static_cast<std::uint64_t>(dim); ++col) {
    // Input pattern: leaving and held qubits at 1, entering at 0.
    if ((col & leave_mask) != leave_mask) continue;
    if ((col & held_mask) != held_mask) continue;
    if ((col & enter_mask) != 0) continue;
    const std::uint64_t row = (col & ~leave_mask) | enter_mask;
    f(row, col) = 1.0;
  }
  return f;
}

// ---------------------------------------------------------------------------

HamiltonianSpec build_trivial_sat_hamiltonian(const CnfFormula& phi) {
  validate_formula(phi);
  HamiltonianSpec spec;
  spec.total_qubits = phi.num_vars;
  spec.num_inputs = phi.num_vars;
  spec.locality = std::max(phi.arity_bound, 1);
  for (const Clause& clause : phi.clauses) {
    LocalTerm term;
    term.coefficient = 1.0;
    term.group = "clause";
    for (const Literal& lit : clause.literals)
      term.support.push_back(lit.variable_index);
    std::sort(term.support.begin(), term.support.end());
    const int s = static_cast<int>(term.support.size());
    // Projector onto the unique falsifying sub-assignment: a positive
    // literal is falsified by 0, a negated one by 1.
    std::uint64_t pattern = 0;
    for (const Literal& lit : clause.literals) {
      if (lit.negated)
        pattern |= std::uint64_t{1}
                   << (s - 1 - position_of(term.support, lit.variable_index));
    }
    const Eigen::Index dim = Eigen::Index{1} << s;
    term.block = Eigen::MatrixXcd::Zero(dim, dim);
    term.block(pattern, pattern) = 1.0;
    spec.terms.push_back(std::move(term));
  }
  const double n = std::max(phi.num_vars, 1);
  spec.thresholds = Thresholds{1.0 / n, 1.0 - 1.0 / n};
  return spec;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<int> to_clock_qubits(const std::vector<int>& subset, int offset) {
  std::vector<int> out;
  out.reserve(subset.size());
  for (int e : subset) out.push_back(offset + e);
  return out;
}

void append_stab_terms(HamiltonianSpec& spec, int offset, int n_cl, int d) {
  const double population = static_cast<double>(binomial(n_cl, d));
  for (const auto& subset : k_subsets(n_cl, d + 1)) {
    LocalTerm term;
    term.coefficient = 1.0;
    term.group = "stab_more";
    term.support = to_clock_qubits(subset, offset);
    term.block = all_ones_projector(term.support, term.support);
    spec.terms.push_back(std::move(term));
  }
  for (const auto& subset : k_subsets(n_cl, d)) {
    LocalTerm term;
    term.coefficient = 1.0 / population;
    term.group = "stab_fewer";
    term.support = to_clock_qubits(subset, offset);
    const Eigen::Index dim = Eigen::Index{1} << d;
    term.block = Eigen::MatrixXcd::Identity(dim, dim) -
                 all_ones_projector(term.support, term.support);
    spec.terms.push_back(std::move(term));
  }
  LocalTerm id_term;
  id_term.coefficient = -(population - 1.0) / population;
  id_term.group = "stab_id";
  id_term.support = {1};
  id_term.block = Eigen::MatrixXcd::Identity(2, 2);
  spec.terms.push_back(std::move(id_term));
}

}  // namespace

HamiltonianSpec build_hu_5local(const QuantumCircuit& circ,
                                const ClockSchedule& sched,
                                const FiveLocalOptions& options) {
  validate_circuit(circ);
  const int g = static_cast<int>(circ.gates.size());
  const int T = sched.total_steps();
  if (g > T)
    throw InputError("ScheduleTooShort",
                     std::to_string(g) + " gates vs " + std::to_string(T) +
                         " schedule steps");
  for (const Gate& gate : circ.gates)
    if (!is_one_qubit_kind(gate.kind) && gate.kind != GateKind::Cnot &&
        gate.kind != GateKind::Cz)
      throw InputError("UnsupportedGate",
                       std::string(gate_kind_name(gate.kind)) +
                           "; decompose to one- and two-qubit gates first");

  const int nq = circ.total_qubits();
  const int offset = nq;
  HamiltonianSpec spec;
  spec.total_qubits = nq + sched.n_cl;
  spec.num_inputs = circ.layout.num_inputs;
  spec.num_ancillas = circ.layout.num_ancillas;
  spec.num_clock = sched.n_cl;
  spec.locality = sched.d + 3;

  const auto clock_support_at = [&](int t) {
    return to_clock_qubits(sched.path[t].subset, offset);
  };

  for (int a = spec.num_inputs + 1; a <= nq; ++a) {
    LocalTerm term;
    term.coefficient = 1.0;
    term.group = "in";
    std::vector<int> s0 = clock_support_at(0);
    term.support = sorted_union({{a}, s0});
    term.block = Eigen::kroneckerProduct(
                     proj1(), all_ones_projector(s0, s0))
                     .eval();
    spec.terms.push_back(std::move(term));
  }
  {
    LocalTerm term;
    term.coefficient = 1.0;
    term.group = "out";
    std::vector<int> st = clock_support_at(T);
    term.support = sorted_union({{circ.layout.out_qubit}, st});
    term.block =
        Eigen::kroneckerProduct(proj0(), all_ones_projector(st, st)).eval();
    spec.terms.push_back(std::move(term));
  }

  for (int t = 1; t <= T; ++t) {
    ClockTermDescriptor desc =
        transition_descriptor(sched, t, TransitionKind::Forward);
    std::vector<int> leaving = to_clock_qubits(desc.leaving, offset);
    std::vector<int> entering = to_clock_qubits(desc.entering, offset);
    std::vector<int> held = to_clock_qubits(desc.held, offset);
    std::vector<int> clock_support = sorted_union({leaving, entering, held});
    Eigen::MatrixXcd f =
        forward_hop_block(clock_support, leaving, entering, held);

    const bool has_gate =
        t <= g && circ.gates[t - 1].kind != GateKind::Identity;
    LocalTerm hop;
    hop.coefficient = 1.0;
    hop.group = "prop_hop";
    if (has_gate) {
      const Gate& gate = circ.gates[t - 1];
      std::vector<int> vq = gate.qubits();
      std::sort(vq.begin(), vq.end());
      Eigen::MatrixXcd v = gate_block(gate);
      Eigen::MatrixXcd m = Eigen::kroneckerProduct(v, f).eval();
      hop.support = sorted_union({vq, clock_support});
      hop.block = -0.5 * (m + m.adjoint());
    } else {
      hop.support = clock_support;
      hop.block = -0.5 * (f + f.adjoint());
    }
    spec.terms.push_back(std::move(hop));

    LocalTerm pause;
    pause.coefficient = 1.0;
    pause.group = "prop_pause";
    pause.support = clock_support;
    pause.block =
        0.5 * (all_ones_projector(clock_support,
                                  to_clock_qubits(sched.path[t - 1].subset,
                                                  offset)) +
               all_ones_projector(clock_support,
                                  to_clock_qubits(sched.path[t].subset,
                                                  offset)));
    spec.terms.push_back(std::move(pause));
  }

  append_stab_terms(spec, offset, sched.n_cl, sched.d);

  const double mu = options.mu < 0.0
                        ? std::pow(2.0, -spec.num_inputs)
                        : options.mu;
  const double steps = T + 1;
  spec.mu = mu;
  spec.thresholds = Thresholds{
      options.a_const * mu / steps,
      options.b_const * (1.0 - std::sqrt(mu)) / (steps * steps * steps)};
  validate_spec(spec);
  return spec;
}

/// Stabilizer penalty alone on a bare clock register (qubits 1..n_cl).
HamiltonianSpec build_stab_penalty(int n_cl, int d) {
  HamiltonianSpec spec;
  spec.total_qubits = n_cl;
  spec.num_clock = n_cl;
  spec.locality = d + 1;
  append_stab_terms(spec, 0, n_cl, d);
  return spec;
}

// ---------------------------------------------------------------------------

RestrictedPropOperator build_restricted_prop(const QuantumCircuit& circ,
                                             int total_steps) {
  validate_circuit(circ);
  const int g = static_cast<int>(circ.gates.size());
  if (g > total_steps)
    throw InputError("ScheduleTooShort",
                     std::to_string(g) + " gates vs " +
                         std::to_string(total_steps) + " steps");
  const int nq = circ.total_qubits();
  const Eigen::Index sys_dim = Eigen::Index{1} << nq;
  const Eigen::Index clk_dim = total_steps + 1;

  RestrictedPropOperator op;
  op.num_system_qubits = nq;
  op.num_steps = total_steps;

  Eigen::MatrixXcd sys_identity = Eigen::MatrixXcd::Identity(sys_dim, sys_dim);
  auto clock_unit = [&](int r, int c) {
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(clk_dim, clk_dim);
    e(r, c) = 1.0;
    return e;
  };

  // Ancilla penalty at step 0: one projector per ancilla qubit, matching
  // the embedded construction term by term.
  Eigen::MatrixXcd anc_count = Eigen::MatrixXcd::Zero(sys_dim, sys_dim);
  for (int a = circ.layout.num_inputs + 1; a <= nq; ++a)
    for (Eigen::Index b = 0; b < sys_dim; ++b)
      if (bit_of(static_cast<std::uint64_t>(b), a, nq)) anc_count(b, b) += 1.0;
  op.h_in = Eigen::kroneckerProduct(anc_count, clock_unit(0, 0)).eval();

  Eigen::MatrixXcd out_proj = Eigen::MatrixXcd::Zero(sys_dim, sys_dim);
  for (Eigen::Index b = 0; b < sys_dim; ++b)
    if (!bit_of(static_cast<std::uint64_t>(b), circ.layout.out_qubit, nq))
      out_proj(b, b) = 1.0;
  op.h_out = Eigen::kroneckerProduct(
                 out_proj, clock_unit(total_steps, total_steps))
                 .eval();

  op.h_prop = Eigen::MatrixXcd::Zero(sys_dim * clk_dim, sys_dim * clk_dim);
  for (int t = 1; t <= total_steps; ++t) {
    Eigen::MatrixXcd v =
        (t <= g && circ.gates[t - 1].kind != GateKind::Identity)
            ? gate_matrix(circ.gates[t - 1], nq)
            : sys_identity;
    op.h_prop += 0.5 * Eigen::kroneckerProduct(sys_identity,
                                               clock_unit(t - 1, t - 1));
    op.h_prop +=
        0.5 * Eigen::kroneckerProduct(sys_identity, clock_unit(t, t));
    op.h_prop -= 0.5 * Eigen::kroneckerProduct(v, clock_unit(t, t - 1));
    op.h_prop -= 0.5 * Eigen::kroneckerProduct(v.adjoint().eval(),
                                               clock_unit(t - 1, t));
  }
  return op;
}

// ---------------------------------------------------------------------------

namespace {

struct HopQubits {
  int leaving = 0;
  int entering = 0;
};

// Clock pair flipped by the move from path vertex `from` to `to`; both
// difference sets must be singletons.
HopQubits hop_pair(const ClockSchedule& sched, int from, int to, int offset) {
  std::vector<int> leave, enter;
  const auto& a = sched.path[from].subset;
  const auto& b = sched.path[to].subset;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(leave));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(),
                      std::back_inserter(enter));
  if (leave.size() != 1 || enter.size() != 1)
    throw InputError("ScheduleLacksTwoStepProperty",
                     "clock move " + std::to_string(from) + "->" +
                         std::to_string(to) + " flips more than one pair");
  return {offset + leave[0], offset + enter[0]};
}

Eigen::MatrixXcd pair_hop_block(const std::vector<int>& sorted_support,
                                int leaving, int entering) {
  return forward_hop_block(sorted_support, {leaving}, {entering}, {});
}

}  // namespace

HamiltonianSpec build_hu_3local(const CzSandwichCircuit& czc,
                                const ClockSchedule& sched,
                                const ThreeLocalOptions& options) {
  validate_cz_sandwich(czc);
  if (sched.d != 2)
    throw InputError("ScheduleLacksTwoStepProperty", "schedule must have d=2");
  ScheduleReport report = validate_schedule(sched, /*require_two_step=*/true);
  if (!report.ok)
    throw InputError("ScheduleLacksTwoStepProperty", report.violations[0]);
  const int T = czc.total_time();
  const int L = sched.total_steps();
  if (T > L)
    throw InputError("GateCountExceedsSchedule",
                     std::to_string(T) + " time steps vs " +
                         std::to_string(L) + " schedule steps");

  const int nq = czc.total_qubits;
  const int offset = nq;
  HamiltonianSpec spec;
  spec.total_qubits = nq + sched.n_cl;
  spec.num_inputs = czc.num_inputs;
  spec.num_ancillas = nq - czc.num_inputs;
  spec.num_clock = sched.n_cl;
  spec.locality = 3;

  const auto clock_pair_at = [&](int t) {
    return to_clock_qubits(sched.path[t].subset, offset);
  };
  auto push = [&](double coeff, std::vector<int> support, Eigen::MatrixXcd block,
                  const char* group) {
    LocalTerm term;
    term.coefficient = coeff;
    term.support = std::move(support);
    term.block = std::move(block);
    term.group = group;
    spec.terms.push_back(std::move(term));
  };
  // Symmetrized hop between two path vertices on their flipped clock pair.
  auto hop_sym = [&](int from, int to) {
    HopQubits hq = hop_pair(sched, from, to, offset);
    std::vector<int> support = sorted_union({{hq.leaving}, {hq.entering}});
    Eigen::MatrixXcd h = pair_hop_block(support, hq.leaving, hq.entering);
    Eigen::MatrixXcd block = h + h.adjoint();
    return std::make_pair(support, block);
  };
  // One circuit-qubit projector tensored with a symmetric clock hop.
  auto qubit_hop = [&](int qubit, const Eigen::Matrix2cd& p, int from, int to) {
    auto [clock_support, hop] = hop_sym(from, to);
    std::vector<int> support = sorted_union({{qubit}, clock_support});
    Eigen::MatrixXcd block = Eigen::kroneckerProduct(p, hop).eval();
    return std::make_pair(support, block);
  };

  // Assembly order: out, in, prop1, prop2, stab. Weights are folded into
  // the term coefficients and recorded in the metadata.

  // Pass 1 builds the non-penalty part with unit weights to size them.
  // Weight policy: j_prop1 = T+1, then successive factors of
  // 16*max(1, unit-norm-bound)^2, and j_stab from the projection-lemma
  // requirement using the assembled norm of the weighted non-penalty part.
  struct PendingTerm {
    double coeff;
    std::vector<int> support;
    Eigen::MatrixXcd block;
    const char* group;
    int weight_class;  // 0: out (T+1), 1: in, 2: prop1, 3: prop2
  };
  std::vector<PendingTerm> pending;
  auto stage = [&](double coeff, std::vector<int> support,
                   Eigen::MatrixXcd block, const char* group,
                   int weight_class) {
    pending.push_back(PendingTerm{coeff, std::move(support), std::move(block),
                                  group, weight_class});
  };

  {
    std::vector<int> st = clock_pair_at(T);
    stage(static_cast<double>(T + 1),
          sorted_union({{czc.out_qubit}, st}),
          Eigen::kroneckerProduct(proj0(), all_ones_projector(st, st)).eval(),
          "out", 0);
  }
  for (int a = czc.num_inputs + 1; a <= nq; ++a) {
    std::vector<int> s0 = clock_pair_at(0);
    stage(1.0, sorted_union({{a}, s0}),
          Eigen::kroneckerProduct(proj1(), all_ones_projector(s0, s0)).eval(),
          "in", 1);
  }

  for (int t : czc.t1_set) {
    const Gate& gate = czc.gates[t - 1];
    std::vector<int> sprev = clock_pair_at(t - 1);
    std::vector<int> scur = clock_pair_at(t);
    std::vector<int> pause_support = sorted_union({sprev, scur});
    Eigen::MatrixXcd pause_block =
        0.5 * (all_ones_projector(pause_support, sprev) +
               all_ones_projector(pause_support, scur));
    stage(1.0, pause_support, pause_block, "prop_pause", 2);

    HopQubits hq = hop_pair(sched, t - 1, t, offset);
    std::vector<int> hop_support = sorted_union({{hq.leaving}, {hq.entering}});
    Eigen::MatrixXcd hop = pair_hop_block(hop_support, hq.leaving, hq.entering);
    if (gate.kind == GateKind::Identity) {
      Eigen::MatrixXcd block = -0.5 * (hop + hop.adjoint()).eval();
      stage(1.0, hop_support, block, "prop_hop", 2);
    } else {
      Eigen::MatrixXcd u = gate_block(gate);
      Eigen::MatrixXcd m = Eigen::kroneckerProduct(u, hop).eval();
      std::vector<int> support =
          sorted_union({{gate.targets[0]}, hop_support});
      Eigen::MatrixXcd block = -0.5 * (m + m.adjoint()).eval();
      stage(1.0, support, block, "prop_hop", 2);
    }
  }

  for (size_t idx = 0; idx < czc.cz_pairs.size(); ++idx) {
    auto it = czc.t2_set.begin();
    std::advance(it, idx);
    const int t = *it;
    const auto [f, s] = czc.cz_pairs[idx];

    {  // Circuit-qubit group across the CZ transition.
      auto [sup_f0, blk_f0] = qubit_hop(f, proj0(), t - 1, t);
      stage(-1.0, sup_f0, blk_f0, "qubit", 3);
      auto [sup_s0, blk_s0] = qubit_hop(s, proj0(), t - 1, t);
      stage(-1.0, sup_s0, blk_s0, "qubit", 3);
      auto [sup_f1, blk_f1] = qubit_hop(f, proj1(), t - 1, t);
      stage(0.5, sup_f1, blk_f1, "qubit", 3);
      auto [sup_s1, blk_s1] = qubit_hop(s, proj1(), t - 1, t);
      stage(0.5, sup_s1, blk_s1, "qubit", 3);
    }

    // Clock-only window terms around the CZ, one window on each side.
    auto window = [&](int base) {
      if (base < 0 || base + 2 > L) return;
      const double eighth = 1.0 / 8.0;
      for (int k = 0; k < 3; ++k) {
        const double w = (k == 1) ? 6.0 : 1.0;
        std::vector<int> sv = clock_pair_at(base + k);
        stage(eighth * w, sv, all_ones_projector(sv, sv), "time", 3);
      }
      auto [sup2, blk2] = hop_sym(base, base + 2);
      stage(eighth * 2.0, sup2, blk2, "time", 3);
      auto [sup01, blk01] = hop_sym(base, base + 1);
      stage(eighth, sup01, blk01, "time", 3);
      auto [sup12, blk12] = hop_sym(base + 1, base + 2);
      stage(eighth, sup12, blk12, "time", 3);
    };
    window(t);
    window(t - 3);
  }

  // Size the weights from the unit-weight triangle bound.
  double unit_bound = 0.0;
  for (const PendingTerm& term : pending) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(term.block,
                                                       Eigen::EigenvaluesOnly);
    unit_bound += std::abs(term.coeff) * es.eigenvalues().cwiseAbs().maxCoeff();
  }
  const double factor = 16.0 * std::max(1.0, unit_bound * unit_bound);
  PenaltyWeights weights;
  weights.j_prop1 = static_cast<double>(T + 1);
  weights.j_prop2 = factor * weights.j_prop1;
  weights.j_in = factor * weights.j_prop2;

  for (PendingTerm& term : pending) {
    double w = 1.0;
    switch (term.weight_class) {
      case 1: w = weights.j_in; break;
      case 2: w = weights.j_prop1; break;
      case 3: w = weights.j_prop2; break;
      default: break;
    }
    push(term.coeff * w, std::move(term.support), std::move(term.block),
         term.group);
  }

  // Norm of the weighted non-penalty part, dense when it fits.
  double h1_norm;
  if (spec.total_qubits <= options.dense_norm_cap) {
    HamiltonianSpec partial = spec;
    h1_norm = operator_norm(realize_dense(partial, spec.total_qubits));
  } else {
    h1_norm = triangle_norm_bound(spec);
  }
  weights.j_stab = 2.0 * h1_norm + 8.0 * h1_norm * h1_norm + 1.0;

  // Stabilizer penalty, unnormalized variant with the off-window clamp.
  const double population = static_cast<double>(binomial(sched.n_cl, 2));
  for (const auto& subset : k_subsets(sched.n_cl, 3)) {
    std::vector<int> support = to_clock_qubits(subset, offset);
    push(weights.j_stab * population, support,
         all_ones_projector(support, support), "stab_more");
  }
  for (const auto& subset : k_subsets(sched.n_cl, 2)) {
    std::vector<int> support = to_clock_qubits(subset, offset);
    push(weights.j_stab, support,
         (Eigen::MatrixXcd::Identity(4, 4) -
          all_ones_projector(support, support))
             .eval(),
         "stab_fewer");
  }
  for (int t = T + 1; t <= L; ++t) {
    std::vector<int> support = clock_pair_at(t);
    push(weights.j_stab, support, all_ones_projector(support, support),
         "stab_window");
  }
  push(-weights.j_stab * (population - 1.0), {1},
       Eigen::MatrixXcd::Identity(2, 2), "stab_id");

  spec.weights = weights;
  validate_spec(spec);
  if (locality_of(spec) > 3)
    throw InputError("MalformedTerm", "three-local build exceeded locality 3");
  return spec;
}

}  // namespace hamreduce
