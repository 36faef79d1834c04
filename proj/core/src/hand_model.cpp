#include "handsim/hand_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace handsim {

const char* finger_name(FingerId f) {
  switch (f) {
    case FingerId::Thumb: return "Thumb";
    case FingerId::Index: return "Index";
    case FingerId::Middle: return "Middle";
    case FingerId::Ring: return "Ring";
    case FingerId::Pinky: return "Pinky";
  }
  return "?";
}

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

double flexion_from_angle(double angle_deg) {
  if (!(angle_deg >= 0.0 && angle_deg <= 180.0)) {
    throw std::domain_error("servo angle out of [0,180]: " + std::to_string(angle_deg));
  }
  return angle_deg / 180.0;
}

Vec3 object_position(const ObjectSpec& object, int64_t t_ms) {
  const auto& traj = object.trajectory;
  if (traj.empty()) return {};
  if (t_ms <= traj.front().t_ms) return traj.front().pos;
  if (t_ms >= traj.back().t_ms) return traj.back().pos;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    if (t_ms <= traj[i].t_ms) {
      const Waypoint& a = traj[i - 1];
      const Waypoint& b = traj[i];
      const double u = static_cast<double>(t_ms - a.t_ms) /
                       static_cast<double>(b.t_ms - a.t_ms);
      return {a.pos.x + u * (b.pos.x - a.pos.x),
              a.pos.y + u * (b.pos.y - a.pos.y),
              a.pos.z + u * (b.pos.z - a.pos.z)};
    }
  }
  return traj.back().pos;
}

HandState step_kinematics(HandState hand, int64_t dt_ms) {
  if (dt_ms < 0) throw std::invalid_argument("step_kinematics: negative dt");
  for (int i = 0; i < kFingerCount; ++i) {
    ServoState& s = hand.servos[i];
    if (!s.halted) {
      const double max_step = s.slew_dps * static_cast<double>(dt_ms) / 1000.0;
      const double delta = s.commanded_deg - s.current_deg;
      if (std::abs(delta) <= max_step) {
        s.current_deg = s.commanded_deg;  // clamp: never overshoot the command
      } else {
        s.current_deg += (delta > 0.0) ? max_step : -max_step;
      }
      s.current_deg = std::clamp(s.current_deg, 0.0, 180.0);
    }
    hand.flexion[i] = s.current_deg / 180.0;
  }
  return hand;
}

double contact_pressure(HandState& hand, const ObjectSpec& object, FingerId finger) {
  const int i = static_cast<int>(finger);
  double p = 0.0;
  if (object.present) {
    const double past = hand.flexion[i] - object.contact_flexion[i];
    if (past > 0.0) p = object.stiffness * past;
  }
  hand.pressure[i] = p;
  hand.contact[i] = p > 0.0;
  return p;
}

void update_contacts(HandState& hand, const ObjectSpec& object) {
  for (int i = 0; i < kFingerCount; ++i) {
    contact_pressure(hand, object, static_cast<FingerId>(i));
  }
}

HandState make_hand(double slew_dps) {
  if (slew_dps <= 0.0) throw std::invalid_argument("slew rate must be positive");
  HandState hand;
  for (ServoState& s : hand.servos) s.slew_dps = slew_dps;
  return hand;
}

}  // namespace handsim
