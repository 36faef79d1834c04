#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "handsim/grasp_controller.hpp"
#include "handsim/hand_model.hpp"
#include "handsim/motor_controller.hpp"
#include "handsim/power_model.hpp"
#include "handsim/sensors.hpp"

namespace handsim {

// Everything a scenario may override. The control period itself is fixed
// globally (kControlPeriodMs) and is not a scenario knob.
struct SimConfig {
  GateConfig gate;
  MotorConfig motor;
  double slew_dps = 600.0;
  CameraModel camera;
  TofModel tof;
  double fsr_full_scale = 1.0;
  CurrentProfile power;
  double battery_capacity_mah = 1300.0;
  double battery_voltage = 11.1;
  double derating = 1.0;
  int contact_quorum = 3;  // pressure-stopped fingers required for success
};

struct ScenarioSpec {
  std::string name;
  int64_t duration_ms = 0;
  uint64_t seed = 0;  // mandatory in files; no ambient randomness anywhere
  ObjectSpec object;
  WristPose wrist;
  SimConfig config;
};

class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(const std::string& file, int line, const std::string& field,
                const std::string& reason);

  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

// Parses the versioned scenario text format (see docs/scenario-format.md).
// Errors name the offending field and line.
ScenarioSpec parse_scenario(std::string_view text, const std::string& origin);

ScenarioSpec load_scenario(const std::filesystem::path& path);

// Applies one `key = value` override; throws ScenarioError on unknown keys or
// bad values. `origin`/`line` only feed error messages.
void apply_config_kv(SimConfig& cfg, std::string_view key, std::string_view value,
                     const std::string& origin, int line);

// Plain `key = value` override file (no sections, no header).
void apply_config_file(SimConfig& cfg, const std::filesystem::path& path);

// Cross-field checks shared by the loader and programmatic specs. Throws
// ScenarioError (loader paths carry real line numbers, programmatic ones 0).
void validate_scenario(const ScenarioSpec& spec);

}  // namespace handsim
