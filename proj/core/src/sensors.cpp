#include "handsim/sensors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace handsim {

namespace {
constexpr double kRadToDeg = 180.0 / std::numbers::pi;
constexpr double kDegToRad = std::numbers::pi / 180.0;
}  // namespace

double WristPose::tilt_at(int64_t t_ms) const {
  if (timeline.empty()) return 0.0;
  if (t_ms <= timeline.front().t_ms) return timeline.front().tilt_deg;
  if (t_ms >= timeline.back().t_ms) return timeline.back().tilt_deg;
  for (std::size_t i = 1; i < timeline.size(); ++i) {
    if (t_ms <= timeline[i].t_ms) {
      const TiltPoint& a = timeline[i - 1];
      const TiltPoint& b = timeline[i];
      const double u = static_cast<double>(t_ms - a.t_ms) /
                       static_cast<double>(b.t_ms - a.t_ms);
      return a.tilt_deg + u * (b.tilt_deg - a.tilt_deg);
    }
  }
  return timeline.back().tilt_deg;
}

std::optional<DetectionEvent> camera_sample(const ObjectSpec& object, int64_t t_ms,
                                            const CameraModel& cam) {
  if (!object.present) return std::nullopt;
  const Vec3 pos = object_position(object, t_ms);
  if (pos.x <= 0.0) return std::nullopt;  // behind the image plane
  const double dist = pos.norm();
  if (dist < cam.min_detect_mm) return std::nullopt;
  const double az = std::atan2(pos.y, pos.x) * kRadToDeg;
  const double el = std::atan2(pos.z, pos.x) * kRadToDeg;
  if (std::abs(az) > cam.horizontal_halfangle_deg) return std::nullopt;
  if (std::abs(el) > cam.vertical_halfangle_deg) return std::nullopt;

  DetectionEvent ev;
  ev.label = cam.label;
  ev.score = cam.score;
  ev.t_ms = t_ms;
  // Linear angle-to-image mapping; the box is shrunk as needed to stay
  // inside the unit square.
  ev.cx = 0.5 + az / (2.0 * cam.horizontal_halfangle_deg);
  ev.cy = 0.5 - el / (2.0 * cam.vertical_halfangle_deg);
  const double apparent_deg =
      2.0 * std::atan2(cam.nominal_object_diameter_mm / 2.0, dist) * kRadToDeg;
  ev.w = std::max(0.0, std::min({apparent_deg / (2.0 * cam.horizontal_halfangle_deg),
                                 2.0 * ev.cx, 2.0 * (1.0 - ev.cx)}));
  ev.h = std::max(0.0, std::min({apparent_deg / (2.0 * cam.vertical_halfangle_deg),
                                 2.0 * ev.cy, 2.0 * (1.0 - ev.cy)}));
  return ev;
}

TofReading tof_sample(const ObjectSpec& object, int64_t t_ms, Rng& rng,
                      const TofModel& model) {
  if (!object.present) return {};
  const double true_dist = object_position(object, t_ms).norm();
  if (true_dist > model.max_range_mm) return {};
  double reading = true_dist;
  if (model.noise_enabled && model.noise_mm > 0.0) {
    reading += rng.uniform(-model.noise_mm, model.noise_mm);
  }
  reading = std::clamp(reading, 0.0, model.max_range_mm);
  return {reading, true};
}

AdcReading fsr_to_adc(double pressure, double full_scale) {
  if (full_scale <= 0.0) throw std::invalid_argument("fsr full scale must be positive");
  if (pressure < 0.0) throw std::domain_error("negative pressure");
  const long counts = std::lround(1023.0 * pressure / full_scale);
  return {static_cast<int>(std::min(counts, 1023L))};
}

AccelSample accel_sample(const WristPose& pose, int64_t t_ms) {
  const double tilt = pose.tilt_at(t_ms) * kDegToRad;
  return {std::sin(tilt), 0.0, std::cos(tilt)};
}

double tilt_angle_deg(const AccelSample& sample) {
  const double mag =
      std::sqrt(sample.ax * sample.ax + sample.ay * sample.ay + sample.az * sample.az);
  if (mag == 0.0) throw std::domain_error("zero-magnitude accelerometer sample");
  return std::acos(std::clamp(sample.az / mag, -1.0, 1.0)) * kRadToDeg;
}

}  // namespace handsim
