#include "handsim/grasp_controller.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace handsim {

const char* controller_node_name(ControllerNode n) {
  switch (n) {
    case ControllerNode::Idle: return "Idle";
    case ControllerNode::ObjectDetected: return "ObjectDetected";
    case ControllerNode::WaitClose: return "WaitClose";
    case ControllerNode::Holding: return "Holding";
    case ControllerNode::WaitOpen: return "WaitOpen";
  }
  return "?";
}

void validate_gate(const GateConfig& cfg, int64_t control_period_ms) {
  if (control_period_ms <= 0) throw std::invalid_argument("control period must be positive");
  if (!(cfg.close_min_mm > 0.0) || !(cfg.close_min_mm < cfg.close_max_mm)) {
    throw std::invalid_argument("close gate requires 0 < close_min < close_max");
  }
  if (!(cfg.tilt_threshold_deg >= 0.0 && cfg.tilt_threshold_deg <= 180.0)) {
    throw std::invalid_argument("tilt threshold out of [0,180]");
  }
  if (cfg.debounce_ms <= 0 || cfg.debounce_ms % control_period_ms != 0) {
    throw std::invalid_argument("debounce must be a positive multiple of the control period");
  }
  if (cfg.detection_timeout_ms <= 0) {
    throw std::invalid_argument("detection timeout must be positive");
  }
  if (cfg.vision_period_ms <= 0) {
    throw std::invalid_argument("vision period must be positive");
  }
}

int64_t effective_vision_period(const GateConfig& cfg, int64_t control_period_ms) {
  const double ticks = static_cast<double>(cfg.vision_period_ms) /
                       static_cast<double>(control_period_ms);
  int64_t n = std::llround(ticks);
  if (n < 1) n = 1;
  return n * control_period_ms;
}

GestureUpdate gesture_update(int64_t timer_ms, double tilt_deg, const GateConfig& cfg,
                             int64_t dt_ms) {
  if (dt_ms <= 0) throw std::invalid_argument("gesture dt must be positive");
  int64_t timer = (tilt_deg >= cfg.tilt_threshold_deg) ? timer_ms + dt_ms : 0;
  const bool fired = timer >= cfg.debounce_ms;
  if (fired) timer = 0;
  return {timer, fired};
}

GraspController::GraspController(GateConfig cfg, int64_t control_period_ms)
    : cfg_(cfg), dt_ms_(control_period_ms) {
  validate_gate(cfg_, dt_ms_);
  vision_period_ms_ = effective_vision_period(cfg_, dt_ms_);
}

ControllerTick GraspController::tick(const SensorFrame& frame,
                                     const std::vector<WireMessage>& inbound,
                                     int64_t t_ms) {
  ControllerTick out;

  // Wire ingestion first: status frames complete WaitClose/WaitOpen, stray
  // telemetry is legitimate optional traffic, anything else is an anomaly.
  for (const WireMessage& msg : inbound) {
    switch (msg.kind) {
      case WireMessage::Kind::Telemetry:
        break;
      case WireMessage::Kind::Closed:
        if (node_ == ControllerNode::WaitClose) {
          node_ = ControllerNode::Holding;
          gesture_timer_ms_ = 0;  // gesture armed
        } else {
          ++anomaly_count_;
          out.anomalies.push_back(msg);
        }
        break;
      case WireMessage::Kind::Opened:
        if (node_ == ControllerNode::WaitOpen) {
          node_ = ControllerNode::Idle;
          detection_loss_ms_ = 0;
        } else {
          ++anomaly_count_;
          out.anomalies.push_back(msg);
        }
        break;
      default:  // commands do not belong on this end
        ++anomaly_count_;
        out.anomalies.push_back(msg);
        break;
    }
  }

  const bool vision_tick = (t_ms % vision_period_ms_) == 0;
  if (vision_tick) last_vision_sample_ms_ = t_ms;

  switch (node_) {
    case ControllerNode::Idle:
      if (vision_tick && frame.detection) {
        // TOF gating arms from the next tick on.
        node_ = ControllerNode::ObjectDetected;
        detection_loss_ms_ = 0;
      }
      break;

    case ControllerNode::ObjectDetected: {
      if (vision_tick && frame.detection) {
        detection_loss_ms_ = 0;
      } else {
        detection_loss_ms_ += dt_ms_;
      }
      if (detection_loss_ms_ >= cfg_.detection_timeout_ms) {
        node_ = ControllerNode::Idle;
        detection_loss_ms_ = 0;
        break;
      }
      if (frame.tof.valid && frame.tof.distance_mm >= cfg_.close_min_mm &&
          frame.tof.distance_mm <= cfg_.close_max_mm) {
        out.outbound.push_back(WireMessage::hand_close());
        node_ = ControllerNode::WaitClose;
        detection_loss_ms_ = 0;
      }
      break;
    }

    case ControllerNode::WaitClose:
      break;  // completes on CLOSED above

    case ControllerNode::Holding: {
      const double tilt = tilt_angle_deg(frame.accel);
      const GestureUpdate g = gesture_update(gesture_timer_ms_, tilt, cfg_, dt_ms_);
      gesture_timer_ms_ = g.timer_ms;
      if (g.fired) {
        out.outbound.push_back(WireMessage::hand_open());
        node_ = ControllerNode::WaitOpen;
        gesture_timer_ms_ = 0;
      }
      break;
    }

    case ControllerNode::WaitOpen:
      break;  // completes on OPENED above
  }

  return out;
}

}  // namespace handsim
