#pragma once

#include <stdexcept>
#include <string>

namespace comdet {

// Bad or unreadable user-supplied data (files, records, partitions).
// The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A result-size guard tripped (e.g. clique enumeration growing past its
// configured cap). Raised instead of silently truncating output.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

// A task submitted to the worker pool threw; carries the task id.
class EngineError : public std::runtime_error {
 public:
  EngineError(std::size_t task_id, const std::string& msg)
      : std::runtime_error("task " + std::to_string(task_id) + ": " + msg),
        task_id_(task_id) {}
  std::size_t task_id() const { return task_id_; }

 private:
  std::size_t task_id_;
};

}  // namespace comdet
