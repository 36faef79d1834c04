#include "handsim/motor_controller.hpp"

#include <stdexcept>
#include <string>

namespace handsim {

const char* motor_mode_name(MotorMode m) {
  switch (m) {
    case MotorMode::IdleOpen: return "IdleOpen";
    case MotorMode::Closing: return "Closing";
    case MotorMode::Closed: return "Closed";
    case MotorMode::Opening: return "Opening";
  }
  return "?";
}

double pwm_pulse_width_us(double angle_deg) {
  if (!(angle_deg >= 0.0 && angle_deg <= 180.0)) {
    throw std::domain_error("pwm angle out of [0,180]: " + std::to_string(angle_deg));
  }
  return 500.0 + angle_deg * (2000.0 / 180.0);
}

MotorController::MotorController(MotorConfig cfg) : cfg_(cfg) {
  if (cfg.pressure_threshold < 1 || cfg.pressure_threshold > 1023) {
    throw std::invalid_argument("pressure threshold out of [1,1023]: " +
                                std::to_string(cfg.pressure_threshold));
  }
  act_.target_deg.fill(0.0);
  act_.halt.fill(false);
}

bool MotorController::handle_message(const WireMessage& msg) {
  switch (msg.kind) {
    case WireMessage::Kind::HandClose:
      if (mode_ != MotorMode::Closing) {
        mode_ = MotorMode::Closing;
        stopped_.fill(false);
        act_.target_deg.fill(180.0);
        act_.halt.fill(false);
      }
      return true;
    case WireMessage::Kind::HandOpen:
      if (mode_ != MotorMode::Opening) {
        mode_ = MotorMode::Opening;
        act_.target_deg.fill(0.0);
        act_.halt.fill(false);  // pressure halts released
      }
      return true;
    default:
      // Status and telemetry belong on the other end of the wire.
      ++misuse_count_;
      return false;
  }
}

std::vector<WireMessage> MotorController::tick(
    const std::array<AdcReading, kFingerCount>& adc, const HandState& hand,
    int64_t dt_ms) {
  if (dt_ms <= 0) throw std::invalid_argument("motor tick dt must be positive");
  std::vector<WireMessage> out;

  if (mode_ == MotorMode::Closing) {
    bool crossed = false;
    for (int i = 0; i < kFingerCount; ++i) {
      if (!stopped_[i] && adc[i].counts >= cfg_.pressure_threshold) {
        crossed = true;
        if (cfg_.per_finger_stop) {
          stopped_[i] = true;
          act_.halt[i] = true;
        }
      }
    }
    if (!cfg_.per_finger_stop && crossed) {
      // Global stop: the whole hand stops closing on the first crossing.
      stopped_.fill(true);
      act_.halt.fill(true);
    }
    bool done = true;
    for (int i = 0; i < kFingerCount; ++i) {
      if (!stopped_[i] && hand.servos[i].current_deg < 180.0) {
        done = false;
        break;
      }
    }
    if (done) {
      mode_ = MotorMode::Closed;
      out.push_back(WireMessage::closed());
    }
  } else if (mode_ == MotorMode::Opening) {
    bool done = true;
    for (int i = 0; i < kFingerCount; ++i) {
      if (hand.servos[i].current_deg > 0.0) {
        done = false;
        break;
      }
    }
    if (done) {
      mode_ = MotorMode::IdleOpen;
      stopped_.fill(false);
      out.push_back(WireMessage::opened());
    }
  }

  if (cfg_.telemetry) {
    std::array<int, 5> counts{};
    for (int i = 0; i < kFingerCount; ++i) counts[i] = adc[i].counts;
    out.push_back(WireMessage::telemetry(counts));
  }
  return out;
}

}  // namespace handsim
