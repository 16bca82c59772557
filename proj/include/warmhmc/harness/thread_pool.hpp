#pragma once

// Minimal fixed-size worker pool for running independent experiment arms.
// Determinism does not depend on scheduling: every arm owns its RNG stream
// and result slot, and reductions happen after join in index order.

#include <condition_variable>
#include <functional>
#include <mutex>
#include <queue>
#include <stdexcept>
#include <thread>
#include <vector>

#include "warmhmc/core/errors.hpp"

namespace warmhmc {

class ThreadPool {
  public:
    explicit ThreadPool(long workers) {
        if (workers < 1) throw ConfigError("ThreadPool: workers must be >= 1");
        workers_.reserve(static_cast<std::size_t>(workers));
        for (long i = 0; i < workers; ++i)
            workers_.emplace_back([this] { worker_loop(); });
    }

    ThreadPool(const ThreadPool&) = delete;
    ThreadPool& operator=(const ThreadPool&) = delete;

    ~ThreadPool() {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            stopping_ = true;
        }
        cv_.notify_all();
        for (std::thread& t : workers_) t.join();
    }

    void submit(std::function<void()> task) {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            if (stopping_) throw ConfigError("ThreadPool: submit after shutdown");
            tasks_.push(std::move(task));
            ++pending_;
        }
        cv_.notify_one();
    }

    // Blocks until every submitted task has finished, then rethrows the first
    // captured exception (by submission-completion order) if any task threw.
    void wait() {
        std::unique_lock<std::mutex> lock(mutex_);
        done_cv_.wait(lock, [this] { return pending_ == 0; });
        if (first_error_) {
            std::exception_ptr e = first_error_;
            first_error_ = nullptr;
            std::rethrow_exception(e);
        }
    }

  private:
    void worker_loop() {
        for (;;) {
            std::function<void()> task;
            {
                std::unique_lock<std::mutex> lock(mutex_);
                cv_.wait(lock, [this] { return stopping_ || !tasks_.empty(); });
                if (tasks_.empty()) return;  // stopping
                task = std::move(tasks_.front());
                tasks_.pop();
            }
            std::exception_ptr err;
            try {
                task();
            } catch (...) {
                err = std::current_exception();
            }
            {
                std::lock_guard<std::mutex> lock(mutex_);
                if (err && !first_error_) first_error_ = err;
                --pending_;
            }
            done_cv_.notify_all();
        }
    }

    std::vector<std::thread> workers_;
    std::queue<std::function<void()>> tasks_;
    std::mutex mutex_;
    std::condition_variable cv_;
    std::condition_variable done_cv_;
    long pending_ = 0;
    bool stopping_ = false;
    std::exception_ptr first_error_;
};

}  // namespace warmhmc
