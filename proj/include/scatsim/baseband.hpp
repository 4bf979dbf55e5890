#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <variant>
#include <vector>

#include "scatsim/error.hpp"
#include "scatsim/packets.hpp"
#include "scatsim/types.hpp"

namespace scatsim {

// ---- ACL framing -----------------------------------------------------------
//
// Frames occupy 1, 3 or 5 TDD slots. Payload capacities are fixed simulator
// constants: 339 bytes is what a 5-slot frame must carry for a saturated
// one-direction flow over a 6-slot round to hit the 723.2 kb/s ACL ceiling;
// 27 and 183 follow the same framing proportions.

constexpr int kAccessCodeBits = 72;
constexpr int kHeaderBits = 54;
constexpr int kCrcBits = 16;

constexpr int kPayloadMax1 = 27;
constexpr int kPayloadMax3 = 183;
constexpr int kPayloadMax5 = 339;

enum class FrameKind { poll, data, control };

struct PacketFrame {
  FrameKind kind = FrameKind::poll;
  int payload_bytes = 0;
  int slots = 1;  // 1, 3 or 5
  NodeId src = 0;
  NodeId dst = 0;
  std::variant<std::monostate, DataPacket, RreqPacket, RrepPacket, RerrPacket> payload;
};

inline int slots_for_payload(int payload_bytes) {
  if (payload_bytes < 0 || payload_bytes > kPayloadMax5)
    raise(Errc::payload_too_large,
          std::to_string(payload_bytes) + " bytes exceeds the 5-slot capacity; fragment first");
  if (payload_bytes <= kPayloadMax1) return 1;
  if (payload_bytes <= kPayloadMax3) return 3;
  return 5;
}

// Smallest slot class whose capacity fits the payload.
inline PacketFrame frame_for_payload(int payload_bytes) {
  PacketFrame f;
  f.kind = FrameKind::data;
  f.payload_bytes = payload_bytes;
  f.slots = slots_for_payload(payload_bytes);
  return f;
}

inline PacketFrame poll_frame(NodeId master, NodeId slave) {
  return PacketFrame{FrameKind::poll, 0, 1, master, slave, {}};
}

constexpr MicroSec transmit_duration(const PacketFrame& f) { return f.slots * kSlotUs; }

// ---- Per-link FIFO ---------------------------------------------------------

// Directed master<->slave queue, drop-tail at capacity (the arriving frame is
// discarded, never a queued one).
class LinkQueue {
 public:
  static constexpr std::size_t kDefaultCapacity = 50;

  LinkQueue() = default;
  LinkQueue(NodeId owner, NodeId peer, std::size_t capacity = kDefaultCapacity)
      : owner_(owner), peer_(peer), capacity_(capacity) {}

  bool enqueue(PacketFrame frame) {
    if (frames_.size() >= capacity_) return false;
    frames_.push_back(std::move(frame));
    return true;
  }

  std::optional<PacketFrame> pop() {
    if (frames_.empty()) return std::nullopt;
    PacketFrame f = std::move(frames_.front());
    frames_.pop_front();
    return f;
  }

  bool empty() const { return frames_.empty(); }
  std::size_t size() const { return frames_.size(); }
  std::size_t capacity() const { return capacity_; }
  NodeId owner() const { return owner_; }
  NodeId peer() const { return peer_; }

 private:
  NodeId owner_ = 0;
  NodeId peer_ = 0;
  std::size_t capacity_ = kDefaultCapacity;
  std::deque<PacketFrame> frames_;
};

// ---- Bridge time sharing ---------------------------------------------------

// A bridge rotates through its piconets in fixed windows of window_slots,
// cycling the sorted membership list. Deterministic by construction: presence
// is a pure function of the global slot index and the membership set.
inline PiconetId present_piconet(const std::vector<PiconetId>& sorted_memberships,
                                 std::int64_t slot_index, int window_slots) {
  std::size_t m = sorted_memberships.size();
  if (m == 1) return sorted_memberships.front();
  std::size_t window = static_cast<std::size_t>(slot_index / window_slots);
  return sorted_memberships[window % m];
}

// ---- Master polling --------------------------------------------------------

// Round-robin over present slaves. rr_cursor is the index to try next (0 on
// a fresh piconet); absent bridge slaves are skipped for this window. Returns
// the polled slave and advances the cursor past it, or nothing when no slave
// is present. An idle master still spends a 1-slot poll frame on the result.
template <typename PresentFn>
std::optional<NodeId> next_poll(const std::vector<NodeId>& slaves, std::size_t& rr_cursor,
                                PresentFn&& present) {
  if (slaves.empty()) return std::nullopt;
  const std::size_t n = slaves.size();
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t idx = (rr_cursor + step) % n;
    if (present(slaves[idx])) {
      rr_cursor = (idx + 1) % n;
      return slaves[idx];
    }
  }
  return std::nullopt;
}

}  // namespace scatsim
