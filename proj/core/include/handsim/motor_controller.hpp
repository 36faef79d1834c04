#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "handsim/hand_model.hpp"
#include "handsim/sensors.hpp"
#include "handsim/wire_protocol.hpp"

namespace handsim {

enum class MotorMode { IdleOpen, Closing, Closed, Opening };

const char* motor_mode_name(MotorMode m);

struct MotorConfig {
  int pressure_threshold = 600;  // ADC counts, [1, 1023]
  bool per_finger_stop = true;   // false: first crossing halts the whole hand
  bool telemetry = false;        // emit one P frame per tick
};

// Servo drive asserted by the motor controller, applied to the plant each tick.
struct ServoActuation {
  std::array<double, kFingerCount> target_deg{};
  std::array<bool, kFingerCount> halt{};
};

// 500 us at 0 deg to 2500 us at 180 deg, linear, 50 Hz servo frame.
// Throws std::domain_error outside [0, 180].
double pwm_pulse_width_us(double angle_deg);

// ATMEGA328P firmware emulation: consumes HAND_CLOSE/HAND_OPEN, drives five
// servos, and stops fingers whose ADC count crosses the pressure threshold.
// Single logical thread, advanced once per control period.
class MotorController {
 public:
  explicit MotorController(MotorConfig cfg = {});

  // Wire ingestion. Commands are idempotent; status or telemetry arriving at
  // this end is protocol misuse: counted, state unchanged, returns false.
  bool handle_message(const WireMessage& msg);

  // One control tick. In Closing, fingers at or past the threshold halt at
  // their current angle this tick; CLOSED is emitted once when every finger
  // is stopped or fully closed. In Opening, OPENED is emitted once when all
  // servos reach 0.
  std::vector<WireMessage> tick(const std::array<AdcReading, kFingerCount>& adc,
                                const HandState& hand, int64_t dt_ms);

  MotorMode mode() const { return mode_; }
  const std::array<bool, kFingerCount>& stop_flags() const { return stopped_; }
  const ServoActuation& actuation() const { return act_; }
  int misuse_count() const { return misuse_count_; }
  const MotorConfig& config() const { return cfg_; }

 private:
  MotorConfig cfg_;
  MotorMode mode_ = MotorMode::IdleOpen;
  std::array<bool, kFingerCount> stopped_{};
  ServoActuation act_;
  int misuse_count_ = 0;
};

}  // namespace handsim
