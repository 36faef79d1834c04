#pragma once

#include <cstdint>
#include <vector>

#include "handsim/sensors.hpp"
#include "handsim/wire_protocol.hpp"

namespace handsim {

enum class ControllerNode { Idle, ObjectDetected, WaitClose, Holding, WaitOpen };

const char* controller_node_name(ControllerNode n);

struct GateConfig {
  double close_min_mm = 70.0;
  double close_max_mm = 90.0;
  double tilt_threshold_deg = 60.0;
  int64_t debounce_ms = 300;           // must be a multiple of the control period
  int64_t detection_timeout_ms = 2000;  // detection loss before falling back to Idle
  int64_t vision_period_ms = 111;       // 9 FPS nominal; rounded to the tick grid
};

// Throws std::invalid_argument on an inconsistent config.
void validate_gate(const GateConfig& cfg, int64_t control_period_ms);

// Vision period rounded to the nearest whole number of control periods
// (111 ms -> 110 ms on the 10 ms grid), never below one period.
int64_t effective_vision_period(const GateConfig& cfg, int64_t control_period_ms);

struct GestureUpdate {
  int64_t timer_ms = 0;
  bool fired = false;
};

// Debounce accumulator: timer += dt while tilt is at or above the threshold,
// reset to zero on any dip below; fires (and resets) once the accumulated
// time reaches the debounce window.
GestureUpdate gesture_update(int64_t timer_ms, double tilt_deg, const GateConfig& cfg,
                             int64_t dt_ms);

struct ControllerTick {
  std::vector<WireMessage> outbound;   // commands emitted this tick
  std::vector<WireMessage> anomalies;  // unexpected inbound, state unchanged
};

// The main-processor control script as an explicit state machine:
//   Idle -> ObjectDetected -> WaitClose -> Holding -> WaitOpen -> Idle
// Detection arms the TOF gate one tick later; the gate fires on the first
// valid reading inside [close_min, close_max]; completion is learned from
// CLOSED/OPENED status frames; a debounced tilt gesture releases.
class GraspController {
 public:
  explicit GraspController(GateConfig cfg = {}, int64_t control_period_ms = 10);

  // Called once per control period with monotonically increasing t.
  ControllerTick tick(const SensorFrame& frame, const std::vector<WireMessage>& inbound,
                      int64_t t_ms);

  ControllerNode node() const { return node_; }
  int64_t detection_loss_timer_ms() const { return detection_loss_ms_; }
  int64_t gesture_timer_ms() const { return gesture_timer_ms_; }
  int64_t last_vision_sample_ms() const { return last_vision_sample_ms_; }
  int anomaly_count() const { return anomaly_count_; }
  const GateConfig& config() const { return cfg_; }
  int64_t vision_period_ms() const { return vision_period_ms_; }

 private:
  GateConfig cfg_;
  int64_t dt_ms_;
  int64_t vision_period_ms_;
  ControllerNode node_ = ControllerNode::Idle;
  int64_t detection_loss_ms_ = 0;
  int64_t gesture_timer_ms_ = 0;
  int64_t last_vision_sample_ms_ = -1;
  int anomaly_count_ = 0;
};

}  // namespace handsim
