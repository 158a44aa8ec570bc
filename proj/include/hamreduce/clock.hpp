#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hamreduce {

/// A d-subset of [n_cl], kept sorted ascending.
struct JohnsonVertex {
  std::vector<int> subset;

  bool operator==(const JohnsonVertex&) const = default;
};

/// An ordered walk S_0..S_T through distinct d-subsets of [n_cl] where
/// consecutive subsets share d-1 elements. Paths built by
/// johnson_path_d2 additionally satisfy |S_t ∩ S_{t+2}| = 1.
struct ClockSchedule {
  int n_cl = 0;
  int d = 0;
  std::vector<JohnsonVertex> path;

  int total_steps() const { return static_cast<int>(path.size()) - 1; }
};

enum class TransitionKind { Forward, Backward, Pause };

/// Role split of the clock qubits involved in one transition.
/// For Forward/Backward between consecutive vertices, leaving/entering
/// are singletons and held has d-1 elements; Pause only fills held.
struct ClockTermDescriptor {
  TransitionKind kind = TransitionKind::Pause;
  int step = 0;
  int span = 1;  // 1 for adjacent transitions, 2 for two-step hops
  std::vector<int> leaving;   // in the earlier vertex, not the later
  std::vector<int> entering;  // in the later vertex, not the earlier
  std::vector<int> held;      // shared by both vertices
};

/// Basis bitstring of the clock register at step t: bit i = 1 iff i in S_t.
struct ClockState {
  int t = 0;
  std::vector<uint8_t> bits;  // length n_cl

  std::uint64_t basis_index() const;
};

/// Special Hamiltonian path in J(n_cl, 2) with one-element two-step
/// overlaps: base ({1,2},{2,3},{1,3}), then for each n the block
/// {n-1,n}, {x,n} (x from the previous endpoint {x,n-1}), and the
/// remaining {z,n} in increasing z.
ClockSchedule johnson_path_d2(int n_cl);

/// Hamiltonian path in J(n_cl, d) via revolving-door minimal-change
/// ordering of d-combinations. The two-step overlap property is not
/// guaranteed here.
ClockSchedule johnson_path_generic(int n_cl, int d);

ClockState clock_state(const ClockSchedule& sched, int t);

ClockTermDescriptor transition_descriptor(const ClockSchedule& sched, int t,
                                          TransitionKind kind);

/// Roles between S_t and S_{t+2}; on a d=2 two-step path both difference
/// sets are singletons.
ClockTermDescriptor two_step_descriptor(const ClockSchedule& sched, int t);

struct ScheduleReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Diagnostic check of all schedule invariants; with require_two_step the
/// |S_t ∩ S_{t+2}| = 1 property is checked as well.
ScheduleReport validate_schedule(const ClockSchedule& sched,
                                 bool require_two_step);

}  // namespace hamreduce
