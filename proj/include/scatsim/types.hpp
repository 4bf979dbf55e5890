#pragma once

#include <cstdint>

namespace scatsim {

using NodeId = std::uint32_t;
using PiconetId = std::uint32_t;

// Monotone per-owner freshness counter. Plain integer comparison; the
// counters are unbounded at the scales this simulator runs at.
using SeqNum = std::uint32_t;

// Simulation time in microseconds; scenario-facing times are milliseconds.
using MicroSec = std::int64_t;
using MilliSec = std::int64_t;

constexpr MicroSec kSlotUs = 625;          // baseband TDD slot
constexpr int kMaxSlaves = 7;              // active slaves per piconet

constexpr MicroSec ms_to_us(MilliSec ms) { return static_cast<MicroSec>(ms) * 1000; }

constexpr MicroSec slot_start_us(std::int64_t slot_index) { return slot_index * kSlotUs; }
constexpr std::int64_t slot_at(MicroSec t) { return t / kSlotUs; }

}  // namespace scatsim
