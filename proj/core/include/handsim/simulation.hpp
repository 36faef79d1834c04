#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "handsim/scenario.hpp"

namespace handsim {

// 100 Hz control loop, fixed globally. An integer divisor of the effective
// 110 ms vision period.
inline constexpr int64_t kControlPeriodMs = 10;

// One row per tick. Sensor columns (true distance, TOF, ADC, servo angles)
// are the snapshot the tick acted on; node/mode/current/consumed are the
// values after the tick. Wire entries: ">" main-to-motor, "<" motor-to-main,
// "!side:..." anomalous receptions, "!frame:side:kind" frame errors.
struct TraceRecord {
  int64_t t_ms = 0;
  ControllerNode node = ControllerNode::Idle;
  MotorMode mode = MotorMode::IdleOpen;
  std::optional<double> true_distance_mm;  // empty when the object is absent
  TofReading tof;
  std::array<int, kFingerCount> adc{};
  std::array<double, kFingerCount> servo_deg{};
  std::vector<std::string> wire;
  double current_ma = 0.0;
  double consumed_mah = 0.0;
};

struct RunSummary {
  std::string name;
  uint64_t seed = 0;
  bool success = false;
  int fingers_in_contact_at_hold = 0;
  std::optional<int64_t> time_to_grasp_ms;    // first tick in Holding
  std::optional<int64_t> time_to_release_ms;  // first WaitOpen -> Idle
  double energy_mah = 0.0;
  int frame_errors = 0;
};

struct RunResult {
  std::vector<TraceRecord> trace;
  RunSummary summary;
  std::vector<int64_t> vision_sample_times;  // camera cadence audit hook
  int anomaly_count = 0;
};

// Advances the full system tick by tick for duration_ms. Wire bytes emitted
// at tick k are delivered at tick k+1, never earlier. Fully deterministic in
// (spec, seed).
RunResult run_scenario(const ScenarioSpec& spec);

// Flat CSV trace; every float is rendered with a fixed precision so repeated
// runs are byte-identical.
std::string render_trace_header();
std::string render_trace_record(const TraceRecord& rec);
std::string render_trace(const std::vector<TraceRecord>& trace);

void write_trace_file(const std::filesystem::path& path,
                      const std::vector<TraceRecord>& trace);

std::string summary_to_json(const RunSummary& summary);

void write_summary_file(const std::filesystem::path& path, const RunSummary& summary);

// Human-readable run summary for the CLI.
std::string render_summary(const RunSummary& summary);

}  // namespace handsim
