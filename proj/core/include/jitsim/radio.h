#pragma once
#include <algorithm>

#include <cstdint>
#include <stdexcept>
#include <variant>

#include "jitsim/packet.h"
#include "jitsim/sim_time.h"

namespace jitsim {

// Reduced 802.11 DCF model: carrier sense, DIFS, binary exponential
// backoff, receiver-side overlap corruption, implicit ACK. Timing
// constants follow the common DSSS parameterization and are configurable.
struct RadioConfig {
  double tx_range_m = 250.0;
  double interference_range_m = 550.0;
  std::int64_t bandwidth_bps = 2'000'000;
  SimTime slot_us = 20;
  SimTime difs_us = 50;
  SimTime sifs_us = 10;
  int cw_min = 31;
  int cw_max = 1023;
  int retry_limit = 7;           // total transmission attempts per frame
  SimTime phy_overhead_us = 192; // preamble + PLCP header at the base rate
  int mac_header_bytes = 56;     // MAC header + FCS + IP/LLC encapsulation
  int ack_bytes = 14;            // sent at the 1 Mbps basic rate
  double etd_beta = 0.8;         // ETD smoothing weight on the old value

  void validate() const {
    if (tx_range_m <= 0 || interference_range_m < tx_range_m) {
      throw std::invalid_argument("radio: need interference_range >= tx_range > 0");
    }
    if (cw_min > cw_max || cw_min < 0) {
      throw std::invalid_argument("radio: need 0 <= cw_min <= cw_max");
    }
    if (retry_limit < 1) {
      throw std::invalid_argument("radio: retry_limit must be >= 1");
    }
    if (bandwidth_bps <= 0) {
      throw std::invalid_argument("radio: bandwidth must be positive");
    }
  }

  // Time a frame occupies the air, excluding the ACK exchange.
  SimTime airtime_us(int payload_bytes) const {
    return phy_overhead_us +
           static_cast<SimTime>(mac_header_bytes + payload_bytes) * 8 *
               kUsPerSec / bandwidth_bps;
  }
  // SIFS plus the ACK frame; appended to every successful unicast. Control
  // frames go out at the basic rate, never above 1 Mbps.
  SimTime ack_time_us() const {
    const std::int64_t basic_bps = std::min<std::int64_t>(bandwidth_bps, 1'000'000);
    return sifs_us + phy_overhead_us +
           static_cast<SimTime>(ack_bytes) * 8 * kUsPerSec / basic_bps;
  }
};

// Routing advertisement flooded from the sink (SP).
struct SpAdvert {
  std::uint32_t seq = 0;
  int hop_count = 0;  // sender's distance from the sink, in hops
};

// Position announcement for SPEED neighbor tables. Positions are static,
// so the beacon itself carries no payload; receivers look the sender up.
struct SpeedBeacon {};

struct Frame {
  NodeId src = kNoNode;
  NodeId dst = kNoNode;  // kBroadcast for adverts and beacons
  int size_bytes = 0;
  int mac_priority = -1;  // VMS class 0..2; -1 = unprioritized
  std::variant<std::monostate, Packet, SpAdvert, SpeedBeacon> body;

  bool is_broadcast() const { return dst == kBroadcast; }
  bool is_data() const { return std::holds_alternative<Packet>(body); }
};

enum class MacOutcome : std::uint8_t {
  kDelivered,   // unicast acknowledged, or broadcast finished sending
  kDroppedRetries,
  kDroppedNoLink,
};

struct MacResult {
  MacOutcome outcome;
  SimTime submitted_at = 0;  // when the frame entered the MAC service point
  SimTime completed_at = 0;
};

inline constexpr int kAdvertBytes = 8;
inline constexpr int kBeaconBytes = 8;

}  // namespace jitsim
