#pragma once

#include <cstdint>
#include <vector>

namespace hamreduce {

// Global basis convention: qubit ids are 1-based and qubit 1 is the most
// significant bit of a basis index. For q qubits, basis index b in
// [0, 2^q) assigns bit (b >> (q - i)) & 1 to qubit i.

inline int bit_of(std::uint64_t basis, int qubit, int num_qubits) {
  return static_cast<int>((basis >> (num_qubits - qubit)) & 1u);
}

inline std::uint64_t set_bit(std::uint64_t basis, int qubit, int num_qubits,
                             int value) {
  std::uint64_t mask = std::uint64_t{1} << (num_qubits - qubit);
  return value ? (basis | mask) : (basis & ~mask);
}

inline std::uint64_t flip_bit(std::uint64_t basis, int qubit, int num_qubits) {
  return basis ^ (std::uint64_t{1} << (num_qubits - qubit));
}

inline int popcount64(std::uint64_t x) {
  return static_cast<int>(__builtin_popcountll(x));
}

// Packs the bits of `basis` at the given qubit positions (ascending ids)
// into a small index whose first listed qubit is the most significant bit.
inline std::uint64_t extract_bits(std::uint64_t basis,
                                  const std::vector<int>& qubits,
                                  int num_qubits) {
  std::uint64_t out = 0;
  for (int q : qubits) out = (out << 1) | bit_of(basis, q, num_qubits);
  return out;
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

}  // namespace hamreduce
