#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

#include "fusesim/domain/types.hpp"

namespace fusesim {

// Single simulated timeline. Events fire in (time, insertion order); the
// clock only moves forward.
class EventQueue {
 public:
  using Action = std::function<void()>;

  // `at` earlier than now() is clamped to now().
  void Schedule(Micros at, Action action);

  // Pops and runs one event. False when the queue is empty.
  bool Step();
  void RunUntilEmpty();

  Micros now() const { return now_; }
  bool empty() const { return events_.empty(); }
  size_t pending() const { return events_.size(); }
  uint64_t processed() const { return processed_; }

 private:
  struct Event {
    Micros at;
    uint64_t seq;
    Action action;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.at != b.at) return a.at > b.at;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> events_;
  Micros now_{0};
  uint64_t next_seq_ = 0;
  uint64_t processed_ = 0;
};

}  // namespace fusesim
