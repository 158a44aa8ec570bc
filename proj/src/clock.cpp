#include "hamreduce/clock.hpp"

#include <algorithm>
#include <set>

#include "hamreduce/bits.hpp"
#include "hamreduce/errors.hpp"

namespace hamreduce {

namespace {

std::vector<int> set_difference(const std::vector<int>& a,
                                const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

std::vector<int> set_intersection(const std::vector<int>& a,
                                  const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

// Revolving-door ordering of k-subsets of [n]: consecutive subsets swap a
// single element. R(n,k) = R(n-1,k) ++ reverse(R(n-1,k-1)) each + {n}.
void revolving_door(int n, int k, std::vector<std::vector<int>>& out) {
  if (k == 0) {
    out.push_back({});
    return;
  }
  if (k == n) {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i + 1;
    out.push_back(all);
    return;
  }
  revolving_door(n - 1, k, out);
  std::vector<std::vector<int>> tail;
  revolving_door(n - 1, k - 1, tail);
  for (auto it = tail.rbegin(); it != tail.rend(); ++it) {
    std::vector<int> s = *it;
    s.push_back(n);
    out.push_back(std::move(s));
  }
}

}  // namespace

std::uint64_t ClockState::basis_index() const {
  std::uint64_t idx = 0;
  for (uint8_t b : bits) idx = (idx << 1) | b;
  return idx;
}

ClockSchedule johnson_path_d2(int n_cl) {
  if (n_cl < 3)
    throw InputError("TooFewClockQubits",
                     "d=2 path needs n_cl >= 3, got " + std::to_string(n_cl));
  std::vector<std::vector<int>> path = {{1, 2}, {2, 3}, {1, 3}};
  for (int n = 4; n <= n_cl; ++n) {
    // Previous endpoint is {x, n-1}; x rejoins first among the {., n} block.
    const std::vector<int>& last = path.back();
    int x = (last[1] == n - 1) ? last[0] : last[1];
    path.push_back({n - 1, n});
    path.push_back({x, n});
    for (int z = 1; z <= n - 2; ++z)
      if (z != x) path.push_back({z, n});
  }
  ClockSchedule sched;
  sched.n_cl = n_cl;
  sched.d = 2;
  sched.path.reserve(path.size());
  for (auto& s : path) {
    std::sort(s.begin(), s.end());
    sched.path.push_back(JohnsonVertex{std::move(s)});
  }
  return sched;
}

ClockSchedule johnson_path_generic(int n_cl, int d) {
  if (d < 1 || d >= n_cl)
    throw InputError("InvalidParameters",
                     "need 1 <= d < n_cl, got d=" + std::to_string(d) +
                         ", n_cl=" + std::to_string(n_cl));
  std::vector<std::vector<int>> subsets;
  subsets.reserve(binomial(n_cl, d));
  revolving_door(n_cl, d, subsets);
  ClockSchedule sched;
  sched.n_cl = n_cl;
  sched.d = d;
  sched.path.reserve(subsets.size());
  for (auto& s : subsets) {
    std::sort(s.begin(), s.end());
    sched.path.push_back(JohnsonVertex{std::move(s)});
  }
  return sched;
}

ClockState clock_state(const ClockSchedule& sched, int t) {
  if (t < 0 || t > sched.total_steps())
    throw InputError("StepOutOfRange",
                     "step " + std::to_string(t) + " outside 0.." +
                         std::to_string(sched.total_steps()));
  ClockState state;
  state.t = t;
  state.bits.assign(sched.n_cl, 0);
  for (int i : sched.path[t].subset) state.bits[i - 1] = 1;
  return state;
}

ClockTermDescriptor transition_descriptor(const ClockSchedule& sched, int t,
                                          TransitionKind kind) {
  ClockTermDescriptor desc;
  desc.kind = kind;
  desc.step = t;
  if (kind == TransitionKind::Pause) {
    if (t < 0 || t > sched.total_steps())
      throw InputError("StepOutOfRange", "pause step " + std::to_string(t));
    desc.held = sched.path[t].subset;
    return desc;
  }
  if (t < 1 || t > sched.total_steps())
    throw InputError("StepOutOfRange", "transition step " + std::to_string(t));
  const auto& prev = sched.path[t - 1].subset;
  const auto& next = sched.path[t].subset;
  desc.leaving = set_difference(prev, next);
  desc.entering = set_difference(next, prev);
  desc.held = set_intersection(prev, next);
  return desc;
}

ClockTermDescriptor two_step_descriptor(const ClockSchedule& sched, int t) {
  if (t < 0 || t + 2 > sched.total_steps())
    throw InputError("StepOutOfRange", "two-step hop from " + std::to_string(t));
  ClockTermDescriptor desc;
  desc.kind = TransitionKind::Forward;
  desc.step = t;
  desc.span = 2;
  const auto& from = sched.path[t].subset;
  const auto& to = sched.path[t + 2].subset;
  desc.leaving = set_difference(from, to);
  desc.entering = set_difference(to, from);
  desc.held = set_intersection(from, to);
  return desc;
}

ScheduleReport validate_schedule(const ClockSchedule& sched,
                                 bool require_two_step) {
  ScheduleReport report;
  auto flag = [&](int index, const std::string& what) {
    report.ok = false;
    report.violations.push_back("step " + std::to_string(index) + ": " + what);
  };

  std::set<std::vector<int>> seen;
  for (size_t t = 0; t < sched.path.size(); ++t) {
    const auto& s = sched.path[t].subset;
    if (static_cast<int>(s.size()) != sched.d) flag(t, "wrong subset size");
    if (!std::is_sorted(s.begin(), s.end())) flag(t, "subset not sorted");
    for (int e : s)
      if (e < 1 || e > sched.n_cl) flag(t, "element out of range");
    if (!seen.insert(s).second) flag(t, "repeated vertex");
  }
  if (seen.size() != binomial(sched.n_cl, sched.d))
    flag(-1, "path does not visit every subset");
  for (size_t t = 0; t + 1 < sched.path.size(); ++t) {
    auto common =
        set_intersection(sched.path[t].subset, sched.path[t + 1].subset);
    if (static_cast<int>(common.size()) != sched.d - 1)
      flag(t, "consecutive vertices not adjacent");
  }
  if (require_two_step) {
    for (size_t t = 0; t + 2 < sched.path.size(); ++t) {
      auto common =
          set_intersection(sched.path[t].subset, sched.path[t + 2].subset);
      if (common.size() != 1) flag(t, "two-step overlap not a singleton");
    }
  }
  return report;
}

}  // namespace hamreduce
