#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <variant>
#include <vector>

#include "scatsim/error.hpp"
#include "scatsim/packets.hpp"
#include "scatsim/types.hpp"

namespace scatsim {

struct AodvConfig {
  MilliSec route_lifetime_ms = 3000;        // forward route expiry
  MilliSec reverse_path_timeout_ms = 1000;  // reverse path + RREQ dedup memory
  MilliSec active_timeout_ms = 3000;        // how long a precursor stays "active"
  MilliSec retry_interval_ms = 500;
  int rreq_retries = 2;                     // attempts = 1 + retries
  int hop_limit = 32;                       // data packet TTL
  std::size_t pending_capacity = 50;        // packets buffered while discovering
};

struct RouteEntry {
  NodeId destination = 0;
  NodeId next_hop = 0;
  int hop_count = 0;
  SeqNum dest_seq = 0;
  std::map<NodeId, MicroSec> active_neighbors;  // precursor -> last time it used the route
  MicroSec expiry = 0;

  bool usable(MicroSec now) const { return now < expiry; }
};

struct RouteCandidate {
  SeqNum dest_seq = 0;
  int hop_count = 0;
  NodeId next_hop = 0;
};

// Freshest first: greatest destination sequence number, then fewest hops,
// then lowest next-hop id so the choice is total.
inline NodeId select_route(const std::vector<RouteCandidate>& candidates) {
  if (candidates.empty()) raise(Errc::no_candidates, "no route candidates");
  const RouteCandidate* best = &candidates.front();
  for (const RouteCandidate& c : candidates) {
    if (c.dest_seq > best->dest_seq ||
        (c.dest_seq == best->dest_seq &&
         (c.hop_count < best->hop_count ||
          (c.hop_count == best->hop_count && c.next_hop < best->next_hop))))
      best = &c;
  }
  return best->next_hop;
}

// ---- per-operation outcomes --------------------------------------------

struct RreqDrop {
  enum class Reason { duplicate, own_flood } reason;
};
struct RreqRebroadcast {
  RreqPacket packet;
};
struct RreqReply {
  RrepPacket reply;  // unicast back to prev_hop
  bool from_cache = false;
};
using RreqAction = std::variant<RreqDrop, RreqRebroadcast, RreqReply>;

struct RrepInstallAndForward {
  NodeId forward_to = 0;  // reverse-path previous hop
  RrepPacket packet;
};
struct RrepInstallOnly {};  // self is the requester
struct RrepDiscard {
  enum class Reason { no_reverse_path, stale } reason;
};
using RrepAction = std::variant<RrepInstallAndForward, RrepInstallOnly, RrepDiscard>;

struct ForwardVia {
  NodeId next_hop = 0;
};
struct BufferAndDiscover {
  bool buffered = false;  // false: pending buffer overflowed, packet dropped
};
using ForwardResult = std::variant<ForwardVia, BufferAndDiscover>;

struct LinkBreakNotice {
  RerrPacket rerr;
  std::set<NodeId> notify;             // union of still-active precursors
  std::vector<NodeId> invalidated;     // destinations whose routes died
};

struct ExpirySweep {
  std::vector<NodeId> expired_routes;
  int reverse_paths_expired = 0;
  int seen_rreqs_expired = 0;
};

// ---- per-node protocol state --------------------------------------------
//
// One instance per node. All interaction happens through packets handed in
// and actions handed back; the simulation kernel owns delivery and timing.
class AodvState {
 public:
  AodvState() = default;
  AodvState(NodeId self, AodvConfig cfg) : self_(self), cfg_(cfg) {}

  NodeId self() const { return self_; }
  const AodvConfig& config() const { return cfg_; }
  SeqNum own_seq() const { return own_seq_; }
  std::uint32_t last_broadcast_id() const { return next_broadcast_id_; }

  // Fires after install/replace/refresh/invalidate/expire of a route entry.
  void set_route_observer(std::function<void(NodeId dest, const char* what)> fn) {
    observer_ = std::move(fn);
  }

  const std::map<NodeId, RouteEntry>& route_table() const { return route_table_; }

  const RouteEntry* route(NodeId dest) const {
    auto it = route_table_.find(dest);
    return it == route_table_.end() ? nullptr : &it->second;
  }

  bool has_usable_route(NodeId dest, MicroSec now) const {
    const RouteEntry* e = route(dest);
    return e && e->usable(now);
  }

  bool has_reverse_path(NodeId source, MicroSec now) const {
    auto it = reverse_paths_.find(source);
    return it != reverse_paths_.end() && now < it->second.deadline;
  }

  SeqNum last_seen_seq(NodeId dest) const {
    auto it = last_seen_seq_.find(dest);
    return it == last_seen_seq_.end() ? 0 : it->second;
  }

  // Starts a discovery: bumps broadcast-id and own sequence number, requests
  // at least the freshness this node last heard for the destination.
  RreqPacket originate_rreq(NodeId dest, MicroSec now) {
    if (has_usable_route(dest, now))
      raise(Errc::route_already_known, "node " + std::to_string(self_) +
                                           " already has a route to " + std::to_string(dest));
    ++next_broadcast_id_;
    ++own_seq_;
    RreqPacket rreq;
    rreq.source_addr = self_;
    rreq.source_seq = own_seq_;
    rreq.broadcast_id = next_broadcast_id_;
    rreq.dest_addr = dest;
    rreq.dest_seq = last_seen_seq(dest);
    rreq.hop_cnt = 0;
    seen_rreqs_[{self_, rreq.broadcast_id}] = now + ms_to_us(cfg_.reverse_path_timeout_ms);
    return rreq;
  }

  // Flood handling: drop duplicates, set up the reverse path, then either
  // answer (destination or fresh-enough cache) or rebroadcast one hop wider.
  RreqAction handle_rreq(const RreqPacket& rreq, NodeId prev_hop, MicroSec now) {
    if (rreq.source_addr == self_) return RreqDrop{RreqDrop::Reason::own_flood};
    auto key = std::make_pair(rreq.source_addr, rreq.broadcast_id);
    auto seen = seen_rreqs_.find(key);
    if (seen != seen_rreqs_.end() && now < seen->second)
      return RreqDrop{RreqDrop::Reason::duplicate};
    seen_rreqs_[key] = now + ms_to_us(cfg_.reverse_path_timeout_ms);

    reverse_paths_[rreq.source_addr] =
        ReversePath{prev_hop, now + ms_to_us(cfg_.reverse_path_timeout_ms)};
    note_seq(rreq.source_addr, rreq.source_seq);

    const int hops_here = rreq.hop_cnt + 1;

    if (rreq.dest_addr == self_) {
      // Freshness ordering requires the destination to at least match the
      // sequence number the requester asked for.
      own_seq_ = std::max(own_seq_, rreq.dest_seq);
      RrepPacket rrep;
      rrep.source_addr = rreq.source_addr;
      rrep.dest_addr = self_;
      rrep.dest_seq = own_seq_;
      rrep.hop_cnt = 0;
      rrep.lifetime = cfg_.route_lifetime_ms;
      return RreqReply{rrep, false};
    }

    auto it = route_table_.find(rreq.dest_addr);
    if (it != route_table_.end() && it->second.usable(now) &&
        it->second.dest_seq >= rreq.dest_seq) {
      RouteEntry& e = it->second;
      e.active_neighbors[prev_hop] = now;  // it relayed a packet for this destination
      RrepPacket rrep;
      rrep.source_addr = rreq.source_addr;
      rrep.dest_addr = rreq.dest_addr;
      rrep.dest_seq = e.dest_seq;
      rrep.hop_cnt = e.hop_count;
      rrep.lifetime = std::max<MilliSec>(1, (e.expiry - now) / 1000);
      return RreqReply{rrep, true};
    }

    RreqPacket out = rreq;
    out.hop_cnt = hops_here;
    return RreqRebroadcast{out};
  }

  // Forward path setup. An entry is replaced only by a greater destination
  // sequence number, or by the same number with fewer hops; the reply is
  // propagated toward the requester only when it installed.
  RrepAction handle_rrep(const RrepPacket& rrep, NodeId prev_hop, MicroSec now) {
    note_seq(rrep.dest_addr, rrep.dest_seq);
    if (rrep.source_addr == self_) {
      if (!try_install(rrep, prev_hop, now)) return RrepDiscard{RrepDiscard::Reason::stale};
      return RrepInstallOnly{};
    }
    auto rp = reverse_paths_.find(rrep.source_addr);
    if (rp == reverse_paths_.end() || now >= rp->second.deadline)
      return RrepDiscard{RrepDiscard::Reason::no_reverse_path};
    if (!try_install(rrep, prev_hop, now)) return RrepDiscard{RrepDiscard::Reason::stale};
    RrepPacket out = rrep;
    out.hop_cnt = rrep.hop_cnt + 1;
    return RrepInstallAndForward{rp->second.prev_hop, out};
  }

  // Table lookup on the data path. A hit refreshes the entry and records the
  // upstream neighbor as active; a miss buffers the packet for discovery.
  ForwardResult forward_data(const DataPacket& packet, std::optional<NodeId> prev_hop,
                             MicroSec now) {
    auto it = route_table_.find(packet.dst);
    if (it != route_table_.end() && it->second.usable(now)) {
      RouteEntry& e = it->second;
      e.expiry = now + ms_to_us(cfg_.route_lifetime_ms);
      if (prev_hop) e.active_neighbors[*prev_hop] = now;
      notify("refresh", packet.dst);
      return ForwardVia{e.next_hop};
    }
    if (pending_.size() >= cfg_.pending_capacity) return BufferAndDiscover{false};
    pending_.push_back(packet);
    return BufferAndDiscover{true};
  }

  // Routes through a dead neighbor are invalidated (sequence number bumped,
  // expiry cut to now) and the still-active precursors get one RERR naming
  // every destination that died.
  std::optional<LinkBreakNotice> handle_link_break(NodeId dead_neighbor, MicroSec now) {
    LinkBreakNotice notice;
    for (auto& [dest, e] : route_table_) {
      if (e.next_hop != dead_neighbor || !e.usable(now)) continue;
      e.dest_seq += 1;
      e.expiry = now;
      note_seq(dest, e.dest_seq);
      notice.rerr.unreachable.emplace_back(dest, e.dest_seq);
      notice.invalidated.push_back(dest);
      for (auto& [nbr, last] : e.active_neighbors)
        if (nbr != dead_neighbor && now - last <= ms_to_us(cfg_.active_timeout_ms))
          notice.notify.insert(nbr);
      notify("invalidate", dest);
    }
    for (auto it = reverse_paths_.begin(); it != reverse_paths_.end();)
      it = (it->second.prev_hop == dead_neighbor) ? reverse_paths_.erase(it) : std::next(it);
    if (notice.invalidated.empty()) return std::nullopt;
    return notice;
  }

  // Receiving side of a link-break notification: kill matching routes that
  // run through the sender and cascade to our own precursors.
  std::optional<LinkBreakNotice> handle_rerr(const RerrPacket& rerr, NodeId prev_hop,
                                             MicroSec now) {
    LinkBreakNotice notice;
    for (auto& [dest, seq] : rerr.unreachable) {
      note_seq(dest, seq);
      auto it = route_table_.find(dest);
      if (it == route_table_.end() || it->second.next_hop != prev_hop ||
          !it->second.usable(now))
        continue;
      RouteEntry& e = it->second;
      e.dest_seq = std::max<SeqNum>(e.dest_seq + 1, seq);
      e.expiry = now;
      note_seq(dest, e.dest_seq);
      notice.rerr.unreachable.emplace_back(dest, e.dest_seq);
      notice.invalidated.push_back(dest);
      for (auto& [nbr, last] : e.active_neighbors)
        if (nbr != prev_hop && now - last <= ms_to_us(cfg_.active_timeout_ms))
          notice.notify.insert(nbr);
      notify("invalidate", dest);
    }
    if (notice.invalidated.empty()) return std::nullopt;
    return notice;
  }

  // Removes entries past expiry and forgets timed-out reverse paths and
  // RREQ dedup records.
  ExpirySweep expire_routes(MicroSec now) {
    ExpirySweep sweep;
    for (auto it = route_table_.begin(); it != route_table_.end();) {
      if (it->second.expiry <= now) {
        sweep.expired_routes.push_back(it->first);
        notify("expire", it->first);
        it = route_table_.erase(it);
      } else {
        ++it;
      }
    }
    for (auto it = reverse_paths_.begin(); it != reverse_paths_.end();) {
      if (it->second.deadline <= now) {
        ++sweep.reverse_paths_expired;
        it = reverse_paths_.erase(it);
      } else {
        ++it;
      }
    }
    for (auto it = seen_rreqs_.begin(); it != seen_rreqs_.end();) {
      if (it->second <= now) {
        ++sweep.seen_rreqs_expired;
        it = seen_rreqs_.erase(it);
      } else {
        ++it;
      }
    }
    return sweep;
  }

  // Fixture/seed entry point; the kernel checks next_hop is a live neighbor.
  void install_route(NodeId dest, NodeId next_hop, int hop_count, SeqNum dest_seq,
                     MilliSec lifetime_ms, MicroSec now) {
    RouteEntry e;
    e.destination = dest;
    e.next_hop = next_hop;
    e.hop_count = hop_count;
    e.dest_seq = dest_seq;
    e.expiry = now + ms_to_us(lifetime_ms);
    route_table_[dest] = e;
    note_seq(dest, dest_seq);
    notify("install", dest);
  }

  std::vector<DataPacket> take_pending(NodeId dest) {
    std::vector<DataPacket> out;
    for (auto it = pending_.begin(); it != pending_.end();) {
      if (it->dst == dest) {
        out.push_back(*it);
        it = pending_.erase(it);
      } else {
        ++it;
      }
    }
    return out;
  }

  std::vector<DataPacket> take_all_pending() {
    std::vector<DataPacket> out(pending_.begin(), pending_.end());
    pending_.clear();
    return out;
  }

  std::size_t pending_size() const { return pending_.size(); }

 private:
  struct ReversePath {
    NodeId prev_hop = 0;
    MicroSec deadline = 0;
  };

  bool try_install(const RrepPacket& rrep, NodeId prev_hop, MicroSec now) {
    const int new_hops = rrep.hop_cnt + 1;
    auto it = route_table_.find(rrep.dest_addr);
    bool fresh_install = it == route_table_.end();
    if (!fresh_install) {
      const RouteEntry& e = it->second;
      bool better = rrep.dest_seq > e.dest_seq ||
                    (rrep.dest_seq == e.dest_seq &&
                     (!e.usable(now) || new_hops < e.hop_count));
      if (!better) return false;
    }
    RouteEntry e;
    e.destination = rrep.dest_addr;
    e.next_hop = prev_hop;
    e.hop_count = new_hops;
    e.dest_seq = rrep.dest_seq;
    e.expiry = now + ms_to_us(rrep.lifetime);
    if (!fresh_install) e.active_neighbors = it->second.active_neighbors;
    route_table_[rrep.dest_addr] = e;
    notify(fresh_install ? "install" : "replace", rrep.dest_addr);
    return true;
  }

  void note_seq(NodeId dest, SeqNum seq) {
    auto it = last_seen_seq_.find(dest);
    if (it == last_seen_seq_.end())
      last_seen_seq_[dest] = seq;
    else
      it->second = std::max(it->second, seq);
  }

  void notify(const char* what, NodeId dest) {
    if (observer_) observer_(dest, what);
  }

  NodeId self_ = 0;
  AodvConfig cfg_;
  SeqNum own_seq_ = 0;
  std::uint32_t next_broadcast_id_ = 0;
  std::map<NodeId, RouteEntry> route_table_;
  std::map<NodeId, SeqNum> last_seen_seq_;  // survives entry expiry
  std::map<std::pair<NodeId, std::uint32_t>, MicroSec> seen_rreqs_;
  std::map<NodeId, ReversePath> reverse_paths_;
  std::deque<DataPacket> pending_;  // FIFO, drop-tail at capacity
  std::function<void(NodeId, const char*)> observer_;
};

}  // namespace scatsim
