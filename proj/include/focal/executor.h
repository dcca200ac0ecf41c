#ifndef FOCAL_EXECUTOR_H_
#define FOCAL_EXECUTOR_H_

#include <algorithm>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace focal {

// Runs produce(0..count-1) on up to `workers` threads and hands the results to
// consume() on the calling thread in index order. consume() returning false
// stops the run early. If produce(i) throws, every result before i is still
// consumed, later results are dropped and the exception is rethrown.
// Returns the number of produce() calls that were started.
template <typename Result>
std::size_t RunOrdered(std::size_t count, int workers,
                       const std::function<Result(std::size_t)>& produce,
                       const std::function<bool(std::size_t, Result&&)>& consume) {
  if (workers <= 1) {
    std::size_t started = 0;
    for (std::size_t i = 0; i < count; ++i) {
      ++started;
      if (!consume(i, produce(i))) break;
    }
    return started;
  }

  struct Slot {
    std::optional<Result> value;
    std::exception_ptr error;
  };
  std::mutex mu;
  std::condition_variable cv;
  std::map<std::size_t, Slot> done;
  std::size_t next = 0;
  std::size_t expected = 0;
  bool stop = false;
  // Bounds the reorder buffer when one slow item holds up the rest.
  const std::size_t window = static_cast<std::size_t>(workers) * 4;

  auto work = [&] {
    for (;;) {
      std::size_t index;
      {
        std::unique_lock<std::mutex> lock(mu);
        cv.wait(lock, [&] { return stop || next >= count || next < expected + window; });
        if (stop || next >= count) return;
        index = next++;
      }
      Slot slot;
      try {
        slot.value.emplace(produce(index));
      } catch (...) {
        slot.error = std::current_exception();
      }
      {
        std::lock_guard<std::mutex> lock(mu);
        done.emplace(index, std::move(slot));
      }
      cv.notify_all();
    }
  };

  const int threads = static_cast<int>(std::min<std::size_t>(workers, count));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(work);

  std::exception_ptr failure;
  while (expected < count) {
    Slot slot;
    {
      std::unique_lock<std::mutex> lock(mu);
      cv.wait(lock, [&] { return done.count(expected) > 0; });
      slot = std::move(done.at(expected));
      done.erase(expected);
    }
    bool keep_going = false;
    if (slot.error) {
      failure = slot.error;
    } else {
      keep_going = consume(expected, std::move(*slot.value));
    }
    {
      std::lock_guard<std::mutex> lock(mu);
      ++expected;
      if (!keep_going) stop = true;
    }
    cv.notify_all();
    if (!keep_going) break;
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  std::lock_guard<std::mutex> lock(mu);
  return next;
}

}  // namespace focal

#endif  // FOCAL_EXECUTOR_H_
