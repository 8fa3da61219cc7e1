#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace equivote {

/// Enumeration limits shared by every exhaustive kernel. Each field bounds
/// one kind of scan; exceeding it raises ErrorCode::Infeasible (or yields an
/// `unknown` verdict where the operation is three-valued).
struct Caps {
  std::size_t profile_n = 12;        // 3^n ternary profile scans
  std::size_t binary_n = 20;         // 2^n binary profile scans
  std::size_t permutation_n = 8;     // n! permutation scans
  std::size_t roles_n = 5;           // n! x n! assignment comparisons
  std::uint64_t closure_order = 10080;
  std::uint64_t automorphism_order = 40320;
  std::uint64_t subset_budget = 50'000'000;  // subsets tested by min-coalition search
  std::size_t max_witnesses = 100'000;
  unsigned workers = 1;
};

/// Splits [0, count) into `workers` contiguous chunks and runs
/// `body(begin, end, chunk)` on each. Chunk i always covers the same range
/// for a given (count, workers), so callers merging per-chunk results in
/// chunk order get output independent of scheduling.
template <typename Body>
void parallel_chunks(std::uint64_t count, unsigned workers, Body&& body) {
  workers = std::max(1u, workers);
  if (workers == 1 || count < 2 * static_cast<std::uint64_t>(workers)) {
    body(std::uint64_t{0}, count, 0u);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  const std::uint64_t step = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = std::min(count, step * w);
    const std::uint64_t end = std::min(count, begin + step);
    threads.emplace_back([&, begin, end, w] {
      try {
        body(begin, end, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline std::uint64_t checked_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace equivote
