#include "jitsim/speed.h"

namespace jitsim {

double relay_drop_probability(const std::vector<SpeedCandidate>& fs,
                              double setpoint_mps) {
  if (fs.empty()) return 1.0;
  std::size_t at_setpoint = 0;
  for (const auto& c : fs) {
    if (c.speed_mps >= setpoint_mps) ++at_setpoint;
  }
  return 1.0 - static_cast<double>(at_setpoint) / static_cast<double>(fs.size());
}

SpeedDecision sngf_select(const std::vector<SpeedCandidate>& fs,
                          double setpoint_mps, Rng& rng) {
  if (fs.empty()) return {SpeedDecision::Kind::kDropVoid, kNoNode};

  double total = 0.0;
  for (const auto& c : fs) {
    if (c.speed_mps >= setpoint_mps) total += c.speed_mps;
  }
  if (total > 0.0) {
    // Weighted pick among the candidates meeting the setpoint.
    const double u = rng.uniform01() * total;
    double acc = 0.0;
    for (const auto& c : fs) {
      if (c.speed_mps < setpoint_mps) continue;
      acc += c.speed_mps;
      if (u < acc) return {SpeedDecision::Kind::kForward, c.id};
    }
    // Fall through only on floating-point edge; take the last candidate.
    for (auto it = fs.rbegin(); it != fs.rend(); ++it) {
      if (it->speed_mps >= setpoint_mps) {
        return {SpeedDecision::Kind::kForward, it->id};
      }
    }
  }
  // Forced below the setpoint: drop per the relay-ratio controller, else
  // relay via the fastest available neighbor.
  const double p_drop = relay_drop_probability(fs, setpoint_mps);
  if (rng.uniform01() < p_drop) {
    return {SpeedDecision::Kind::kDropSetpoint, kNoNode};
  }
  return speed_s_select(fs);
}

SpeedDecision speed_t_select(const std::vector<SpeedCandidate>& fs) {
  if (fs.empty()) return {SpeedDecision::Kind::kDropVoid, kNoNode};
  const SpeedCandidate* best = &fs.front();
  for (const auto& c : fs) {
    if (c.hop_delay_us < best->hop_delay_us) best = &c;  // ids ascend
  }
  return {SpeedDecision::Kind::kForward, best->id};
}

SpeedDecision speed_s_select(const std::vector<SpeedCandidate>& fs) {
  if (fs.empty()) return {SpeedDecision::Kind::kDropVoid, kNoNode};
  const SpeedCandidate* best = &fs.front();
  for (const auto& c : fs) {
    if (c.speed_mps > best->speed_mps) best = &c;  // ids ascend
  }
  return {SpeedDecision::Kind::kForward, best->id};
}

}  // namespace jitsim
