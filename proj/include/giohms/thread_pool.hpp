#pragma once

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

namespace giohms {

/// Fixed-size worker pool for index-range parallelism. Work items are pulled
/// in chunks from a per-job atomic counter, so scheduling never influences
/// which index runs; callers must write results into per-index slots to stay
/// deterministic. A pool of size <= 1 runs everything on the caller.
class ThreadPool {
public:
    explicit ThreadPool(unsigned threads) : threads_(threads == 0 ? 1 : threads) {
        for (unsigned i = 0; i + 1 < threads_; ++i) {
            workers_.emplace_back([this] { worker_loop(); });
        }
    }

    ~ThreadPool() {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            stop_ = true;
        }
        work_cv_.notify_all();
        for (auto& w : workers_) w.join();
    }

    ThreadPool(const ThreadPool&) = delete;
    ThreadPool& operator=(const ThreadPool&) = delete;

    unsigned size() const { return threads_; }

    /// Runs fn(i) for every i in [0, count). Blocks until all items finish.
    /// The first exception thrown by fn is rethrown on the calling thread.
    void for_each(std::size_t count, const std::function<void(std::size_t)>& fn,
                  std::size_t chunk = 64) {
        if (count == 0) return;
        if (chunk == 0) chunk = 1;
        if (threads_ <= 1 || count <= chunk) {
            for (std::size_t i = 0; i < count; ++i) fn(i);
            return;
        }

        auto job = std::make_shared<Job>();
        job->fn = &fn;
        job->count = count;
        job->chunk = chunk;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            current_ = job;
        }
        work_cv_.notify_all();

        run_chunks(*job);

        std::unique_lock<std::mutex> lock(mutex_);
        done_cv_.wait(lock, [&] { return job->finished == job->count; });
        if (current_ == job) current_.reset();
        if (job->error) std::rethrow_exception(job->error);
    }

private:
    struct Job {
        const std::function<void(std::size_t)>* fn = nullptr;
        std::size_t count = 0;
        std::size_t chunk = 1;
        std::atomic<std::size_t> next{0};
        std::size_t finished = 0;     // guarded by pool mutex
        std::exception_ptr error;     // guarded by pool mutex
    };

    // A chunk is only claimed while finished < count, and for_each cannot
    // return before finished == count, so job->fn stays valid for every
    // claimed chunk even when a worker arrives late.
    void run_chunks(Job& job) {
        std::size_t done = 0;
        std::exception_ptr err;
        for (;;) {
            const std::size_t begin = job.next.fetch_add(job.chunk, std::memory_order_relaxed);
            if (begin >= job.count) break;
            const std::size_t end = std::min(begin + job.chunk, job.count);
            try {
                for (std::size_t i = begin; i < end; ++i) (*job.fn)(i);
            } catch (...) {
                if (!err) err = std::current_exception();
            }
            done += end - begin;
        }
        if (done > 0 || err) {
            std::lock_guard<std::mutex> lock(mutex_);
            job.finished += done;
            if (err && !job.error) job.error = err;
            if (job.finished == job.count) done_cv_.notify_all();
        }
    }

    void worker_loop() {
        std::shared_ptr<Job> last;
        for (;;) {
            std::shared_ptr<Job> job;
            {
                std::unique_lock<std::mutex> lock(mutex_);
                work_cv_.wait(lock, [&] { return stop_ || (current_ && current_ != last); });
                if (stop_) return;
                job = current_;
            }
            run_chunks(*job);
            last = std::move(job);
        }
    }

    unsigned threads_;
    std::vector<std::thread> workers_;
    std::mutex mutex_;
    std::condition_variable work_cv_;
    std::condition_variable done_cv_;
    std::shared_ptr<Job> current_;
    bool stop_ = false;
};

} // namespace giohms
