#pragma once

// Contiguous partitioning of an index range over a fixed number of threads.
// Results are always merged by partition index, so output never depends on
// scheduling.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace fibcf {

struct Partition {
  std::uint64_t begin;
  std::uint64_t end;
};

inline std::vector<Partition> partition_range(std::uint64_t n, unsigned parts) {
  parts = std::max(1u, parts);
  std::vector<Partition> out;
  out.reserve(parts);
  for (unsigned k = 0; k < parts; ++k) {
    out.push_back({n * k / parts, n * (k + 1) / parts});
  }
  return out;
}

/// Runs fn(partition) for each partition of [0, n) and returns the results
/// in partition order. The first exception thrown by any worker is rethrown.
template <class Fn>
auto map_partitions(std::uint64_t n, unsigned threads, Fn fn) {
  using Result = decltype(fn(Partition{0, 0}));
  const auto parts = partition_range(n, threads);
  std::vector<Result> results(parts.size());
  std::vector<std::exception_ptr> errors(parts.size());
  if (parts.size() == 1) {
    results[0] = fn(parts[0]);
    return results;
  }
  std::vector<std::thread> pool;
  pool.reserve(parts.size());
  for (std::size_t k = 0; k < parts.size(); ++k) {
    pool.emplace_back([&, k] {
      try {
        results[k] = fn(parts[k]);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

/// Evaluates fn(k) for k in [0, n) on `threads` workers; results in index order.
template <class Fn>
auto parallel_map(std::uint64_t n, unsigned threads, Fn fn) {
  using Item = decltype(fn(std::uint64_t{0}));
  auto chunks = map_partitions(n, threads, [&](Partition p) {
    std::vector<Item> local;
    local.reserve(p.end - p.begin);
    for (std::uint64_t k = p.begin; k < p.end; ++k) local.push_back(fn(k));
    return local;
  });
  std::vector<Item> out;
  out.reserve(n);
  for (auto& c : chunks)
    for (auto& x : c) out.push_back(std::move(x));
  return out;
}

}  // namespace fibcf
