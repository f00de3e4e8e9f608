#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace minexp {

using Rng = std::mt19937_64;

/// splitmix64 finaliser; used to derive independent per-task seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for a task identified by a tuple of integers, e.g. (seed, k, trial).
/// Order-sensitive and independent of how the tasks are scheduled.
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x6a09e667f3bcc908ULL;
  for (auto p : parts) h = mix64(h ^ mix64(p));
  return h;
}

}  // namespace minexp
