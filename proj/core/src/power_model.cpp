#include "handsim/power_model.hpp"

#include <stdexcept>

namespace handsim {

const char* power_mode_name(PowerMode m) {
  switch (m) {
    case PowerMode::Idle: return "Idle";
    case PowerMode::Inference: return "Inference";
    case PowerMode::Operation: return "Operation";
  }
  return "?";
}

PowerMode classify_power(ControllerNode node, MotorMode mode, bool any_contact,
                         bool vision_active) {
  const bool motor_episode = node == ControllerNode::WaitClose ||
                             node == ControllerNode::Holding ||
                             node == ControllerNode::WaitOpen ||
                             mode == MotorMode::Closing || mode == MotorMode::Opening ||
                             (mode == MotorMode::Closed && any_contact);
  if (motor_episode) return PowerMode::Operation;
  return vision_active ? PowerMode::Inference : PowerMode::Idle;
}

double current_ma(const CurrentProfile& profile, PowerMode mode) {
  switch (mode) {
    case PowerMode::Idle: return profile.idle_ma;
    case PowerMode::Inference: return profile.inference_ma;
    case PowerMode::Operation: return profile.operation_ma;
  }
  return profile.idle_ma;
}

double current_for(const CurrentProfile& profile, ControllerNode node, MotorMode mode,
                   bool any_contact, bool vision_active) {
  return current_ma(profile, classify_power(node, mode, any_contact, vision_active));
}

BatteryState integrate_current(BatteryState battery, double current_ma, int64_t dt_ms) {
  if (dt_ms < 0) throw std::invalid_argument("battery dt must be nonnegative");
  if (current_ma < 0.0) throw std::invalid_argument("battery current must be nonnegative");
  if (dt_ms == 0) return battery;

  battery.charge_ma_ms += current_ma * static_cast<double>(dt_ms);
  battery.consumed_mah = battery.charge_ma_ms / 3.6e6;
  const double cap = battery.effective_capacity_mah();
  if (battery.consumed_mah >= cap) {
    battery.depleted = true;
  }
  if (battery.depleted && battery.consumed_mah > cap) {
    battery.consumed_mah = cap;
  }
  return battery;
}

}  // namespace handsim
