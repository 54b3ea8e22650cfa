#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "comdet/error.hpp"

namespace comdet {

// Fixed-size pool of workers consuming a FIFO queue of row-range tasks.
// This is the single owner of the concurrency contract: algorithms submit
// pure tasks over disjoint row ranges and communicate only through returned
// partials, which are always merged in task order so results do not depend
// on worker count or completion order (beyond floating-point grouping,
// which is fixed by the partition count, not by the workers).
//
// A pool of size 1 runs tasks inline on the calling thread.
class WorkerPool {
 public:
  explicit WorkerPool(int num_workers);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  int num_workers() const { return num_workers_; }

  // Runs every task exactly once and blocks until all finish. If any task
  // throws, the whole batch fails with an EngineError naming the lowest
  // failing task id; queued tasks that have not started are then skipped.
  // Not reentrant: tasks must not call back into the same pool.
  void run_all(const std::vector<std::function<void()>>& tasks);

  static int hardware_workers();

 private:
  void worker_loop();

  int num_workers_;
  std::vector<std::thread> threads_;

  std::mutex mu_;
  std::condition_variable work_cv_;
  std::condition_variable done_cv_;
  // All batch state below is guarded by mu_.
  const std::vector<std::function<void()>>* batch_ = nullptr;
  std::vector<std::exception_ptr>* errors_ = nullptr;
  std::size_t next_task_ = 0;
  bool batch_failed_ = false;
  std::size_t tasks_remaining_ = 0;
  bool stopping_ = false;
};

// Contiguous row ranges [begin, end) covering [0, count), at most
// `parts` of them, sized as evenly as possible.
std::vector<std::pair<std::size_t, std::size_t>> split_rows(std::size_t count,
                                                            int parts);

// Partitioned map over [0, count) followed by an ordered left fold of the
// per-partition partials. `map(begin, end)` must be pure; `reduce` must be
// associative over partials. The fold order is the partition order, so for
// a fixed partition count the result is identical no matter how many
// workers run the map side or in which order partitions complete.
template <class Result, class MapFn, class ReduceFn>
Result parallel_map_reduce(WorkerPool& pool, std::size_t count,
                           int num_partitions, MapFn&& map, ReduceFn&& reduce,
                           Result init) {
  if (num_partitions <= 0) num_partitions = pool.num_workers();
  auto ranges = split_rows(count, num_partitions);
  if (ranges.empty()) return init;

  std::vector<Result> partials(ranges.size());
  std::vector<std::function<void()>> tasks;
  tasks.reserve(ranges.size());
  for (std::size_t t = 0; t < ranges.size(); ++t) {
    tasks.push_back([&, t]() { partials[t] = map(ranges[t].first, ranges[t].second); });
  }
  pool.run_all(tasks);

  Result acc = std::move(init);
  for (auto& part : partials) acc = reduce(std::move(acc), std::move(part));
  return acc;
}

// Wall-clock durations of the named phases of one run, in seconds,
// in the order they were recorded. Repeated names accumulate.
class PhaseTimings {
 public:
  void add(const std::string& name, double seconds);
  double get(const std::string& name) const;  // 0 when absent
  double total() const;
  const std::vector<std::pair<std::string, double>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, double>> entries_;
};

// Accumulates the elapsed time of its scope into one named phase.
class PhaseClock {
 public:
  PhaseClock(PhaseTimings* timings, std::string name);
  ~PhaseClock();

  PhaseClock(const PhaseClock&) = delete;
  PhaseClock& operator=(const PhaseClock&) = delete;

 private:
  PhaseTimings* timings_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

double peak_rss_mb();

}  // namespace comdet
