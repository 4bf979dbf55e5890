#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

#include "scatsim/error.hpp"
#include "scatsim/types.hpp"

namespace scatsim {

enum class EventKind {
  slot_tick,       // piconet channel service
  frame_delivery,  // data frame reaches the far end of a link
  control_delivery,
  timer_fire,
  flow_packet,
  migrate,
  inject_static_routes,
  end_of_run,
};

inline const char* event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::slot_tick: return "SlotTick";
    case EventKind::frame_delivery: return "FrameDelivery";
    case EventKind::control_delivery: return "ControlDelivery";
    case EventKind::timer_fire: return "TimerFire";
    case EventKind::flow_packet: return "FlowPacket";
    case EventKind::migrate: return "Migrate";
    case EventKind::inject_static_routes: return "InjectStaticRoutes";
    case EventKind::end_of_run: return "EndOfRun";
  }
  return "Unknown";
}

struct Event {
  MicroSec time = 0;
  std::uint64_t seq = 0;  // insertion counter; ties processed in schedule order
  EventKind kind = EventKind::timer_fire;
  std::function<void()> fire;
};

// Min-heap on (time, seq). Equal-time events run in the order they were
// scheduled, which is what makes runs bit-reproducible.
class EventQueue {
 public:
  void schedule(MicroSec now, MicroSec at, EventKind kind, std::function<void()> fire) {
    if (at < now)
      raise(Errc::time_in_past, "event at t=" + std::to_string(at) + " scheduled from t=" +
                                    std::to_string(now));
    Event e;
    e.time = at;
    e.seq = next_seq_++;
    e.kind = kind;
    e.fire = std::move(fire);
    heap_.push(std::move(e));
  }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  MicroSec next_time() const { return heap_.top().time; }

  Event pop() {
    Event e = heap_.top();
    heap_.pop();
    return e;
  }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  std::uint64_t next_seq_ = 0;
  std::priority_queue<Event, std::vector<Event>, Later> heap_;
};

}  // namespace scatsim
