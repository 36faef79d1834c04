#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace handsim {

inline constexpr int kFingerCount = 5;

// Telemetry ordering is the integer value, 0..4.
enum class FingerId : int { Thumb = 0, Index = 1, Middle = 2, Ring = 3, Pinky = 4 };

const char* finger_name(FingerId f);

// Wrist frame, millimetres: x forward along the palm normal, y lateral, z up.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double norm() const;
};

struct ServoState {
  double commanded_deg = 0.0;  // [0, 180]
  double current_deg = 0.0;    // [0, 180]
  double slew_dps = 600.0;     // > 0; SG90-class full travel in 0.3 s
  bool halted = false;         // halted servos do not move on tick
};

struct Waypoint {
  int64_t t_ms = 0;
  Vec3 pos;
};

struct ObjectSpec {
  bool present = true;
  double stiffness = 4.0;  // pressure units per unit flexion past contact
  std::array<double, kFingerCount> contact_flexion{0.5, 0.5, 0.5, 0.5, 0.5};
  std::vector<Waypoint> trajectory;  // waypoint times strictly increasing
};

// Piecewise-linear interpolation, clamped to the first/last waypoint.
Vec3 object_position(const ObjectSpec& object, int64_t t_ms);

struct HandState {
  std::array<ServoState, kFingerCount> servos{};
  std::array<double, kFingerCount> flexion{};   // current_deg / 180 after every tick
  std::array<bool, kFingerCount> contact{};
  std::array<double, kFingerCount> pressure{};  // > 0 iff contact
};

// angle/180. Throws std::domain_error outside [0, 180].
double flexion_from_angle(double angle_deg);

// Moves every non-halted servo toward its command by at most slew*dt,
// clamped so it never overshoots, then recomputes flexion.
HandState step_kinematics(HandState hand, int64_t dt_ms);

// Linear spring past the per-finger contact point: zero with no object or at
// or below contact flexion, stiffness*(flexion - contact_flexion) beyond.
// Updates the finger's pressure and contact flag, returns the pressure.
double contact_pressure(HandState& hand, const ObjectSpec& object, FingerId finger);

void update_contacts(HandState& hand, const ObjectSpec& object);

HandState make_hand(double slew_dps = 600.0);

}  // namespace handsim
