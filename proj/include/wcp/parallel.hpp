#pragma once

#include <algorithm>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace wcp {

/**
 * @brief Fork-join pool with a fixed number of workers.
 *
 * `for_chunks` splits an index range into at most `workers()` contiguous
 * chunks and runs them concurrently; the calling thread executes chunk 0 and
 * returns once every chunk has finished, so each call is a barrier. Ranges
 * shorter than `grain` per chunk run inline on the caller.
 *
 * Detectors only write through per-index disjoint slots or same-value stores,
 * so results never depend on the worker count.
 */
class WorkerPool {
 public:
  static constexpr std::size_t kDefaultGrain = 256;

  explicit WorkerPool(std::size_t workers = 1, std::size_t grain = kDefaultGrain)
      : workers_(std::max<std::size_t>(workers, 1)), grain_(std::max<std::size_t>(grain, 1)) {
    threads_.reserve(workers_ - 1);
    for (std::size_t w = 1; w < workers_; ++w) {
      threads_.emplace_back([this, w] { worker_loop(w); });
    }
  }

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  ~WorkerPool() {
    {
      std::lock_guard lock(mutex_);
      stopping_ = true;
    }
    wake_.notify_all();
    for (auto& t : threads_) t.join();
  }

  std::size_t workers() const noexcept { return workers_; }
  std::size_t grain() const noexcept { return grain_; }

  /// Number of chunks `for_parts` uses for a range of `len` indices.
  std::size_t parts_for(std::size_t len) const noexcept {
    if (len == 0) return 0;
    return std::max<std::size_t>(1, std::min(workers_, (len + grain_ - 1) / grain_));
  }

  /// Calls body(part, begin, end) for a static partition of [first, last)
  /// into parts_for(last - first) chunks.
  template <class Body>
  void for_parts(std::size_t first, std::size_t last, Body&& body) {
    if (last <= first) return;
    const std::size_t len = last - first;
    const std::size_t parts = parts_for(len);
    if (parts == 1) {
      body(std::size_t{0}, first, last);
      return;
    }
    dispatch(parts, [&](std::size_t part) {
      const std::size_t b = first + len * part / parts;
      const std::size_t e = first + len * (part + 1) / parts;
      if (b < e) body(part, b, e);
    });
  }

  /// Calls body(begin, end) for a static partition of [first, last).
  template <class Body>
  void for_chunks(std::size_t first, std::size_t last, Body&& body) {
    for_parts(first, last, [&](std::size_t, std::size_t b, std::size_t e) { body(b, e); });
  }

  template <class Body>
  void for_each_index(std::size_t first, std::size_t last, Body&& body) {
    for_chunks(first, last, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) body(i);
    });
  }

 private:
  void dispatch(std::size_t parts, const std::function<void(std::size_t)>& job) {
    {
      std::lock_guard lock(mutex_);
      job_ = &job;
      parts_ = parts;
      pending_ = workers_ - 1;
      error_ = nullptr;
      ++generation_;
    }
    wake_.notify_all();

    std::exception_ptr local_error;
    try {
      job(0);
    } catch (...) {
      local_error = std::current_exception();
    }

    std::unique_lock lock(mutex_);
    done_.wait(lock, [this] { return pending_ == 0; });
    job_ = nullptr;
    if (!local_error) local_error = error_;
    lock.unlock();
    if (local_error) std::rethrow_exception(local_error);
  }

  void worker_loop(std::size_t id) {
    std::size_t seen = 0;
    for (;;) {
      const std::function<void(std::size_t)>* job = nullptr;
      std::size_t parts = 0;
      {
        std::unique_lock lock(mutex_);
        wake_.wait(lock, [&] { return stopping_ || generation_ != seen; });
        if (stopping_) return;
        seen = generation_;
        job = job_;
        parts = parts_;
      }
      std::exception_ptr err;
      if (id < parts) {
        try {
          (*job)(id);
        } catch (...) {
          err = std::current_exception();
        }
      }
      {
        std::lock_guard lock(mutex_);
        if (err && !error_) error_ = err;
        if (--pending_ == 0) done_.notify_one();
      }
    }
  }

  std::size_t workers_;
  std::size_t grain_;
  std::vector<std::thread> threads_;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;
  const std::function<void(std::size_t)>* job_ = nullptr;
  std::size_t parts_ = 0;
  std::size_t pending_ = 0;
  std::size_t generation_ = 0;
  bool stopping_ = false;
  std::exception_ptr error_;
};

}  // namespace wcp
