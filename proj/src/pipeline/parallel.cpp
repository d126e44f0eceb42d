// Copyright 2026 The gapsum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pipeline/parallel.hpp"

#include <condition_variable>
#include <deque>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#include "util/errors.hpp"

namespace gapsum::pipeline {

namespace {

std::uint64_t ProcessSequential(std::istream& in, std::ostream& out,
                                const LineFn& fn) {
  std::uint64_t index = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (auto result = fn(std::move(line), index)) {
      out << *result << '\n';
    }
    line.clear();
    ++index;
  }
  if (!out) throw IoError("output stream failed");
  return index;
}

struct SharedState {
  const LineFn* fn = nullptr;
  bool ordered = true;
  std::size_t window = 256;

  std::mutex in_mutex;
  std::condition_variable in_ready;   // queue has work or reading is done
  std::condition_variable in_space;   // queue below capacity
  std::deque<std::pair<std::uint64_t, std::string>> queue;
  bool reading_done = false;

  std::mutex out_mutex;
  std::condition_variable out_ready;  // a result arrived or workers finished
  std::condition_variable out_space;  // reorder window advanced
  std::map<std::uint64_t, std::optional<std::string>> pending;
  std::uint64_t next_emit = 0;
  unsigned active_workers = 0;

  std::mutex error_mutex;
  std::exception_ptr first_error;

  void RecordError() {
    std::lock_guard<std::mutex> lock(error_mutex);
    if (!first_error) first_error = std::current_exception();
  }
};

void WorkerLoop(SharedState& st) {
  for (;;) {
    std::pair<std::uint64_t, std::string> job;
    {
      std::unique_lock<std::mutex> lock(st.in_mutex);
      st.in_ready.wait(lock,
                       [&] { return !st.queue.empty() || st.reading_done; });
      if (st.queue.empty()) break;
      job = std::move(st.queue.front());
      st.queue.pop_front();
    }
    st.in_space.notify_one();

    std::optional<std::string> result;
    try {
      result = (*st.fn)(std::move(job.second), job.first);
    } catch (...) {
      st.RecordError();
    }

    {
      std::unique_lock<std::mutex> lock(st.out_mutex);
      if (st.ordered) {
        // Results far ahead of the writer wait so the reorder buffer stays
        // bounded. The job holding next_emit is never blocked.
        st.out_space.wait(lock, [&] {
          return job.first < st.next_emit + st.window;
        });
      }
      st.pending.emplace(job.first, std::move(result));
    }
    st.out_ready.notify_one();
  }

  {
    std::lock_guard<std::mutex> lock(st.out_mutex);
    --st.active_workers;
  }
  st.out_ready.notify_one();
}

void WriterLoop(SharedState& st, std::ostream& out) {
  std::unique_lock<std::mutex> lock(st.out_mutex);
  for (;;) {
    st.out_ready.wait(lock, [&] {
      if (st.active_workers == 0) return true;
      if (st.ordered) return st.pending.count(st.next_emit) > 0;
      return !st.pending.empty();
    });
    bool wrote = false;
    if (st.ordered) {
      for (auto it = st.pending.find(st.next_emit); it != st.pending.end();
           it = st.pending.find(st.next_emit)) {
        if (it->second) out << *it->second << '\n';
        st.pending.erase(it);
        ++st.next_emit;
        wrote = true;
      }
    } else {
      while (!st.pending.empty()) {
        if (st.pending.begin()->second) {
          out << *st.pending.begin()->second << '\n';
        }
        st.pending.erase(st.pending.begin());
        wrote = true;
      }
    }
    if (wrote) st.out_space.notify_all();
    if (st.active_workers == 0 &&
        (st.ordered ? st.pending.count(st.next_emit) == 0
                    : st.pending.empty())) {
      break;
    }
  }
}

}  // namespace

std::uint64_t ProcessLines(std::istream& in, std::ostream& out,
                           const LineFn& fn, const ParallelOptions& opts) {
  if (opts.workers <= 1) return ProcessSequential(in, out, fn);

  SharedState st;
  st.fn = &fn;
  st.ordered = opts.ordered;
  st.window = std::max<std::size_t>(opts.window, opts.workers);
  st.active_workers = opts.workers;

  std::vector<std::thread> workers;
  workers.reserve(opts.workers);
  for (unsigned i = 0; i < opts.workers; ++i) {
    workers.emplace_back([&st] { WorkerLoop(st); });
  }
  std::thread writer([&st, &out] { WriterLoop(st, out); });

  std::uint64_t index = 0;
  std::string line;
  while (std::getline(in, line)) {
    {
      std::unique_lock<std::mutex> lock(st.in_mutex);
      st.in_space.wait(lock, [&] { return st.queue.size() < st.window; });
      st.queue.emplace_back(index, std::move(line));
    }
    st.in_ready.notify_one();
    line.clear();
    ++index;
  }
  {
    std::lock_guard<std::mutex> lock(st.in_mutex);
    st.reading_done = true;
  }
  st.in_ready.notify_all();

  for (std::thread& w : workers) w.join();
  writer.join();

  if (st.first_error) std::rethrow_exception(st.first_error);
  if (!out) throw IoError("output stream failed");
  return index;
}

}  // namespace gapsum::pipeline
