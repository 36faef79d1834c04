#pragma once

#include <cstdint>

#include "handsim/grasp_controller.hpp"
#include "handsim/motor_controller.hpp"

namespace handsim {

// Measured operating points: 130 mA idle, 250 mA running inference, 450 mA
// while detecting and grasping.
struct CurrentProfile {
  double idle_ma = 130.0;
  double inference_ma = 250.0;
  double operation_ma = 450.0;
};

enum class PowerMode { Idle, Inference, Operation };

const char* power_mode_name(PowerMode m);

// Any episode where motors move or hold under load bills at operation
// current; otherwise a running vision pipeline bills at inference current;
// a system with vision off bills at idle current.
PowerMode classify_power(ControllerNode node, MotorMode mode, bool any_contact,
                         bool vision_active = true);

double current_ma(const CurrentProfile& profile, PowerMode mode);

double current_for(const CurrentProfile& profile, ControllerNode node, MotorMode mode,
                   bool any_contact, bool vision_active = true);

struct BatteryState {
  double capacity_mah = 1300.0;
  double nominal_voltage = 11.1;
  // Effective capacity scale. The observed-vs-computed runtime gap is not
  // reproduced by the model; this knob stands in for it. Default 1.0.
  double derating = 1.0;
  double charge_ma_ms = 0.0;  // running integral, mA*ms
  double consumed_mah = 0.0;  // charge_ma_ms / 3.6e6, clamped once depleted
  bool depleted = false;

  double effective_capacity_mah() const { return capacity_mah * derating; }
};

// Coulomb counting: consumed += I*dt. Charge is accumulated in mA*ms so the
// running total stays an exact double for integer currents. Once consumed
// reaches the effective capacity the depleted flag latches and consumption
// clamps there.
BatteryState integrate_current(BatteryState battery, double current_ma, int64_t dt_ms);

}  // namespace handsim
