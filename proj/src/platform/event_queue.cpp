#include "fusesim/platform/event_queue.hpp"

#include <algorithm>

namespace fusesim {

void EventQueue::Schedule(Micros at, Action action) {
  events_.push(Event{std::max(at, now_), next_seq_++, std::move(action)});
}

bool EventQueue::Step() {
  if (events_.empty()) return false;
  Event event = events_.top();
  events_.pop();
  now_ = event.at;
  ++processed_;
  event.action();
  return true;
}

void EventQueue::RunUntilEmpty() {
  while (Step()) {
  }
}

}  // namespace fusesim
