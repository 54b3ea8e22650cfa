#include "comdet/engine.hpp"

#include <sys/resource.h>

#include <algorithm>
#include <chrono>

namespace comdet {

WorkerPool::WorkerPool(int num_workers) : num_workers_(std::max(1, num_workers)) {
  if (num_workers_ == 1) return;
  threads_.reserve(static_cast<std::size_t>(num_workers_));
  for (int i = 0; i < num_workers_; ++i) {
    threads_.emplace_back([this] { worker_loop(); });
  }
}

WorkerPool::~WorkerPool() {
  if (threads_.empty()) return;
  {
    std::lock_guard<std::mutex> lock(mu_);
    stopping_ = true;
  }
  work_cv_.notify_all();
  for (auto& t : threads_) t.join();
}

int WorkerPool::hardware_workers() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

void WorkerPool::run_all(const std::vector<std::function<void()>>& tasks) {
  if (tasks.empty()) return;
  std::vector<std::exception_ptr> errors(tasks.size());

  if (threads_.empty()) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      try {
        tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
        break;  // remaining tasks are skipped once the batch has failed
      }
    }
  } else {
    {
      std::lock_guard<std::mutex> lock(mu_);
      batch_ = &tasks;
      errors_ = &errors;
      next_task_ = 0;
      batch_failed_ = false;
      tasks_remaining_ = tasks.size();
    }
    work_cv_.notify_all();
    {
      std::unique_lock<std::mutex> lock(mu_);
      done_cv_.wait(lock, [this] { return tasks_remaining_ == 0; });
      batch_ = nullptr;
      errors_ = nullptr;
    }
  }

  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw EngineError(i, e.what());
    } catch (...) {
      throw EngineError(i, "unknown exception");
    }
  }
}

void WorkerPool::worker_loop() {
  std::unique_lock<std::mutex> lock(mu_);
  while (true) {
    work_cv_.wait(lock, [this] {
      return stopping_ || (batch_ != nullptr && next_task_ < batch_->size());
    });
    if (stopping_) return;

    // Claim one task under the lock so a stale worker can never claim
    // from a batch it did not observe there.
    std::size_t i = next_task_++;
    const auto* batch = batch_;
    auto* errors = errors_;
    bool skip = batch_failed_;
    lock.unlock();

    std::exception_ptr err;
    if (!skip) {
      try {
        (*batch)[i]();
      } catch (...) {
        err = std::current_exception();
      }
    }

    lock.lock();
    if (err) {
      (*errors)[i] = err;
      batch_failed_ = true;
    }
    if (--tasks_remaining_ == 0) done_cv_.notify_all();
  }
}

std::vector<std::pair<std::size_t, std::size_t>> split_rows(std::size_t count,
                                                            int parts) {
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  if (count == 0 || parts <= 0) return ranges;
  std::size_t p = std::min<std::size_t>(static_cast<std::size_t>(parts), count);
  std::size_t base = count / p;
  std::size_t extra = count % p;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < p; ++i) {
    std::size_t len = base + (i < extra ? 1 : 0);
    ranges.emplace_back(begin, begin + len);
    begin += len;
  }
  return ranges;
}

void PhaseTimings::add(const std::string& name, double seconds) {
  for (auto& [n, s] : entries_) {
    if (n == name) {
      s += seconds;
      return;
    }
  }
  entries_.emplace_back(name, seconds);
}

double PhaseTimings::get(const std::string& name) const {
  for (const auto& [n, s] : entries_) {
    if (n == name) return s;
  }
  return 0.0;
}

double PhaseTimings::total() const {
  double t = 0.0;
  for (const auto& [n, s] : entries_) t += s;
  return t;
}

PhaseClock::PhaseClock(PhaseTimings* timings, std::string name)
    : timings_(timings), name_(std::move(name)),
      start_(std::chrono::steady_clock::now()) {}

PhaseClock::~PhaseClock() {
  if (!timings_) return;
  auto elapsed = std::chrono::steady_clock::now() - start_;
  timings_->add(name_, std::chrono::duration<double>(elapsed).count());
}

double peak_rss_mb() {
  struct rusage usage {};
  if (getrusage(RUSAGE_SELF, &usage) != 0) return 0.0;
  // ru_maxrss is KiB on Linux.
  return static_cast<double>(usage.ru_maxrss) / 1024.0;
}

}  // namespace comdet
