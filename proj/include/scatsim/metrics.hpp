#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scatsim/error.hpp"
#include "scatsim/types.hpp"

namespace scatsim {

enum class DropReason { queue_overflow, no_route, loop_ttl_expired, buffer_overflow };

inline const char* drop_reason_name(DropReason r) {
  switch (r) {
    case DropReason::queue_overflow: return "QueueOverflow";
    case DropReason::no_route: return "NoRoute";
    case DropReason::loop_ttl_expired: return "LoopTtlExpired";
    case DropReason::buffer_overflow: return "BufferOverflow";
  }
  return "Unknown";
}

// Lifecycle of one data packet: sent, then exactly one of received/dropped,
// or still in flight when the run ends.
struct PacketRecord {
  std::uint64_t id = 0;
  NodeId src = 0;
  NodeId dst = 0;
  MicroSec t_send = 0;
  std::optional<MicroSec> t_recv;
  std::optional<DropReason> drop_reason;

  bool terminal() const { return t_recv.has_value() || drop_reason.has_value(); }
};

struct MetricSeries {
  MilliSec interval = 0;
  std::vector<std::pair<MilliSec, double>> buckets;  // (t_start, value), contiguous
};

struct LossReport {
  std::uint64_t sent = 0;
  std::uint64_t received = 0;
  std::map<DropReason, std::uint64_t> dropped_by_reason;
  std::uint64_t in_flight = 0;

  std::uint64_t dropped_total() const {
    std::uint64_t n = 0;
    for (auto& [_, c] : dropped_by_reason) n += c;
    return n;
  }
};

class MetricsCollector {
 public:
  void record_send(std::uint64_t id, NodeId src, NodeId dst, MicroSec t) {
    if (records_.count(id)) raise(Errc::double_terminal, "packet " + std::to_string(id) + " sent twice");
    PacketRecord r;
    r.id = id;
    r.src = src;
    r.dst = dst;
    r.t_send = t;
    records_[id] = r;
  }

  void record_receive(std::uint64_t id, MicroSec t) {
    PacketRecord& r = lookup(id);
    if (r.terminal()) raise(Errc::double_terminal, "packet " + std::to_string(id));
    r.t_recv = t;
  }

  void record_drop(std::uint64_t id, DropReason reason, MicroSec t) {
    (void)t;
    PacketRecord& r = lookup(id);
    if (r.terminal()) raise(Errc::double_terminal, "packet " + std::to_string(id));
    r.drop_reason = reason;
    drop_times_.emplace_back(t, reason);
  }

  // Mean end-to-end delay over delivered packets; send is the flow generation
  // instant, so time buffered during route discovery counts.
  std::optional<double> average_delay_us() const {
    std::int64_t total = 0;
    std::uint64_t n = 0;
    for (auto& [_, r] : records_) {
      if (!r.t_recv) continue;
      total += *r.t_recv - r.t_send;
      ++n;
    }
    if (n == 0) return std::nullopt;
    return static_cast<double>(total) / static_cast<double>(n);
  }

  // Packets (or payload bytes) received per interval bucket.
  MetricSeries throughput_series(MilliSec interval, MilliSec until) const {
    if (interval <= 0) raise(Errc::bad_interval, "interval must be positive");
    MetricSeries s = empty_series(interval, until);
    for (auto& [_, r] : records_) {
      if (!r.t_recv) continue;
      std::size_t b = static_cast<std::size_t>(*r.t_recv / ms_to_us(interval));
      if (b < s.buckets.size()) s.buckets[b].second += 1.0;
    }
    return s;
  }

  MetricSeries delay_series_ms(MilliSec interval, MilliSec until) const {
    if (interval <= 0) raise(Errc::bad_interval, "interval must be positive");
    MetricSeries s = empty_series(interval, until);
    std::vector<std::uint64_t> counts(s.buckets.size(), 0);
    for (auto& [_, r] : records_) {
      if (!r.t_recv) continue;
      std::size_t b = static_cast<std::size_t>(*r.t_recv / ms_to_us(interval));
      if (b >= s.buckets.size()) continue;
      s.buckets[b].second += static_cast<double>(*r.t_recv - r.t_send) / 1000.0;
      counts[b] += 1;
    }
    for (std::size_t i = 0; i < counts.size(); ++i)
      if (counts[i] > 0) s.buckets[i].second /= static_cast<double>(counts[i]);
    return s;
  }

  MetricSeries loss_series(MilliSec interval, MilliSec until) const {
    if (interval <= 0) raise(Errc::bad_interval, "interval must be positive");
    MetricSeries s = empty_series(interval, until);
    for (auto& [t, _] : drop_times_) {
      std::size_t b = static_cast<std::size_t>(t / ms_to_us(interval));
      if (b < s.buckets.size()) s.buckets[b].second += 1.0;
    }
    return s;
  }

  // sent = received + dropped + in_flight, exactly.
  LossReport loss_report() const {
    LossReport rep;
    for (auto& [_, r] : records_) {
      ++rep.sent;
      if (r.t_recv)
        ++rep.received;
      else if (r.drop_reason)
        ++rep.dropped_by_reason[*r.drop_reason];
      else
        ++rep.in_flight;
    }
    return rep;
  }

  std::uint64_t delivered_count() const {
    std::uint64_t n = 0;
    for (auto& [_, r] : records_)
      if (r.t_recv) ++n;
    return n;
  }

  // Payload-neutral: bits are the caller's business; this answers "what
  // arrived inside [from, to)".
  std::uint64_t received_in_window(MicroSec from, MicroSec to) const {
    std::uint64_t n = 0;
    for (auto& [_, r] : records_)
      if (r.t_recv && *r.t_recv >= from && *r.t_recv < to) ++n;
    return n;
  }

  std::optional<MicroSec> first_receive_at(NodeId dst = 0, bool any = true) const {
    std::optional<MicroSec> first;
    for (auto& [_, r] : records_) {
      if (!r.t_recv) continue;
      if (!any && r.dst != dst) continue;
      if (!first || *r.t_recv < *first) first = *r.t_recv;
    }
    return first;
  }

  const std::map<std::uint64_t, PacketRecord>& records() const { return records_; }

 private:
  MetricSeries empty_series(MilliSec interval, MilliSec until) const {
    MetricSeries s;
    s.interval = interval;
    MilliSec t = 0;
    while (t < until) {
      s.buckets.emplace_back(t, 0.0);
      t += interval;
    }
    return s;
  }

  PacketRecord& lookup(std::uint64_t id) {
    auto it = records_.find(id);
    if (it == records_.end())
      raise(Errc::unknown_packet, "packet " + std::to_string(id) + " was never sent");
    return it->second;
  }

  std::map<std::uint64_t, PacketRecord> records_;
  std::vector<std::pair<MicroSec, DropReason>> drop_times_;
};

}  // namespace scatsim
