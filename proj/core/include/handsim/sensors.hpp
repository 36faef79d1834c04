#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "handsim/hand_model.hpp"
#include "handsim/rng.hpp"

namespace handsim {

struct DetectionEvent {
  std::string label;
  double score = 0.0;  // (0, 1]
  // Normalized bbox, kept inside the unit square.
  double cx = 0.5;
  double cy = 0.5;
  double w = 0.0;
  double h = 0.0;
  int64_t t_ms = 0;
};

struct TofReading {
  double distance_mm = 0.0;
  bool valid = false;  // valid readings lie in [0, max_range]
};

struct AdcReading {
  int counts = 0;  // 10-bit, [0, 1023]
};

struct AccelSample {
  double ax = 0.0;  // g units
  double ay = 0.0;
  double az = 0.0;
};

struct TiltPoint {
  int64_t t_ms = 0;
  double tilt_deg = 0.0;  // [0, 180], angle between hand down-axis and gravity
};

struct WristPose {
  std::vector<TiltPoint> timeline;  // times strictly increasing

  // Piecewise-linear, clamped to the ends; 0 for an empty timeline.
  double tilt_at(int64_t t_ms) const;
};

struct CameraModel {
  double horizontal_halfangle_deg = 43.5;  // 87 deg full view angle
  double vertical_halfangle_deg = 42.0;    // 84 deg full view angle
  double min_detect_mm = 50.0;
  double score = 0.9;
  double nominal_object_diameter_mm = 60.0;  // drives apparent bbox size
  int resolution_px = 320;                   // detector input edge, metadata
  std::string label = "object";
};

struct TofModel {
  double max_range_mm = 200.0;
  double noise_mm = 3.0;  // uniform in [-noise, +noise]
  bool noise_enabled = true;
};

// Scripted detector: fires iff the object is present, in front of the image
// plane, inside both half-angles, and at least min_detect away. Pure in
// (object state at t, t).
std::optional<DetectionEvent> camera_sample(const ObjectSpec& object, int64_t t_ms,
                                            const CameraModel& cam = {});

// Valid iff the object is present and within max_range; reading is the true
// distance plus uniform noise, clamped to [0, max_range]. Draws from the rng
// only when a valid noisy reading is produced.
TofReading tof_sample(const ObjectSpec& object, int64_t t_ms, Rng& rng,
                      const TofModel& model = {});

// counts = min(1023, round(1023 * pressure / full_scale)).
// Throws std::domain_error on negative pressure.
AdcReading fsr_to_adc(double pressure, double full_scale = 1.0);

// Gravity unit vector with the wrist tilted about the pitch axis:
// (sin tilt, 0, cos tilt) in g.
AccelSample accel_sample(const WristPose& pose, int64_t t_ms);

// arccos(clamp(az/|a|, -1, 1)) in degrees. Throws std::domain_error on a
// zero-magnitude sample.
double tilt_angle_deg(const AccelSample& sample);

// One control tick's worth of sensor data, assembled by the scenario runner.
struct SensorFrame {
  TofReading tof;
  std::array<AdcReading, kFingerCount> adc{};
  AccelSample accel;
  std::optional<DetectionEvent> detection;  // populated on vision ticks only
};

}  // namespace handsim
