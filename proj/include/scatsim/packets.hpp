#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "scatsim/types.hpp"

namespace scatsim {

// Application payload riding ACL data frames. hop_limit guards against
// forwarding cycles (misconfigured static routes); each link traversal
// consumes one unit.
struct DataPacket {
  std::uint64_t id = 0;
  NodeId src = 0;
  NodeId dst = 0;
  int payload_bytes = 0;
  int hop_limit = 32;
  MicroSec sent_at = 0;
};

// Flooded route request. (source_addr, broadcast_id) uniquely identifies a
// discovery attempt; dest_seq is the minimum acceptable freshness.
struct RreqPacket {
  NodeId source_addr = 0;
  SeqNum source_seq = 0;
  std::uint32_t broadcast_id = 0;
  NodeId dest_addr = 0;
  SeqNum dest_seq = 0;
  int hop_cnt = 0;
};

// Route reply, unicast hop by hop along the reverse path toward source_addr.
struct RrepPacket {
  NodeId source_addr = 0;  // requester the reply travels to
  NodeId dest_addr = 0;    // destination the route leads to
  SeqNum dest_seq = 0;
  int hop_cnt = 0;
  MilliSec lifetime = 0;
};

// Link-break notification. Sequence numbers are the last known values
// incremented by one, so receivers outrank the dead routes.
struct RerrPacket {
  std::vector<std::pair<NodeId, SeqNum>> unreachable;
};

// Control packet sizes; only used to map control traffic onto slot classes.
constexpr int kRreqBytes = 24;
constexpr int kRrepBytes = 20;
constexpr int rerr_bytes(std::size_t n) { return 4 + 8 * static_cast<int>(n); }

}  // namespace scatsim
