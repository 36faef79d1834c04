#include "handsim/simulation.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "handsim/power_model.hpp"
#include "handsim/rng.hpp"

namespace handsim {

namespace {

std::string fmt_fixed(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

}  // namespace

RunResult run_scenario(const ScenarioSpec& spec) {
  validate_scenario(spec);
  const SimConfig& cfg = spec.config;
  const int64_t dt = kControlPeriodMs;

  HandState hand = make_hand(cfg.slew_dps);
  MotorController motor(cfg.motor);
  GraspController main_ctrl(cfg.gate, dt);
  BatteryState battery;
  battery.capacity_mah = cfg.battery_capacity_mah;
  battery.nominal_voltage = cfg.battery_voltage;
  battery.derating = cfg.derating;
  Rng rng(spec.seed);

  StreamDecoder main_rx;   // decodes bytes travelling motor -> main
  StreamDecoder motor_rx;  // decodes bytes travelling main -> motor
  std::string inflight_to_main;   // emitted last tick, delivered this tick
  std::string inflight_to_motor;

  RunResult out;
  out.trace.reserve(static_cast<std::size_t>(spec.duration_ms / dt));
  RunSummary& sum = out.summary;
  sum.name = spec.name;
  sum.seed = spec.seed;

  const int64_t vision_period = main_ctrl.vision_period_ms();
  ControllerNode prev_node = ControllerNode::Idle;
  int frame_errors = 0;

  for (int64_t t = 0; t < spec.duration_ms; t += dt) {
    TraceRecord rec;
    rec.t_ms = t;
    for (int i = 0; i < kFingerCount; ++i) {
      rec.servo_deg[i] = hand.servos[i].current_deg;
    }

    // Ground truth and sensors for this tick.
    if (spec.object.present) {
      rec.true_distance_mm = object_position(spec.object, t).norm();
    }
    SensorFrame frame;
    frame.tof = tof_sample(spec.object, t, rng, cfg.tof);
    for (int i = 0; i < kFingerCount; ++i) {
      frame.adc[i] = fsr_to_adc(hand.pressure[i], cfg.fsr_full_scale);
      rec.adc[i] = frame.adc[i].counts;
    }
    frame.accel = accel_sample(spec.wrist, t);
    if (t % vision_period == 0) {
      out.vision_sample_times.push_back(t);
      frame.detection = camera_sample(spec.object, t, cfg.camera);
    }
    rec.tof = frame.tof;

    // Deliver bytes that were emitted at the previous tick.
    std::vector<FrameError> errs;
    const std::vector<WireMessage> inbound_main = main_rx.feed(inflight_to_main, errs);
    for (const FrameError& e : errs) {
      rec.wire.push_back(std::string("!frame:main:") + frame_error_name(e.kind));
    }
    frame_errors += static_cast<int>(errs.size());
    errs.clear();
    const std::vector<WireMessage> inbound_motor = motor_rx.feed(inflight_to_motor, errs);
    for (const FrameError& e : errs) {
      rec.wire.push_back(std::string("!frame:motor:") + frame_error_name(e.kind));
    }
    frame_errors += static_cast<int>(errs.size());
    inflight_to_main.clear();
    inflight_to_motor.clear();

    // Main controller, then motor controller; their outputs go in flight.
    const ControllerTick main_out = main_ctrl.tick(frame, inbound_main, t);
    for (const WireMessage& m : main_out.outbound) {
      inflight_to_motor += encode(m);
      rec.wire.push_back(">" + message_line(m));
    }
    for (const WireMessage& m : main_out.anomalies) {
      rec.wire.push_back("!main:" + message_line(m));
    }

    for (const WireMessage& m : inbound_motor) {
      if (!motor.handle_message(m)) {
        rec.wire.push_back("!motor:" + message_line(m));
      }
    }
    const std::vector<WireMessage> motor_out = motor.tick(frame.adc, hand, dt);
    for (const WireMessage& m : motor_out) {
      inflight_to_main += encode(m);
      rec.wire.push_back("<" + message_line(m));
    }

    // Plant: apply the asserted drive, integrate, refresh contacts.
    const ServoActuation& act = motor.actuation();
    for (int i = 0; i < kFingerCount; ++i) {
      hand.servos[i].commanded_deg = act.target_deg[i];
      hand.servos[i].halted = act.halt[i];
    }
    hand = step_kinematics(std::move(hand), dt);
    update_contacts(hand, spec.object);

    // Power for the interval this tick covers.
    bool any_contact = false;
    for (bool c : hand.contact) any_contact = any_contact || c;
    const double ma = current_for(cfg.power, main_ctrl.node(), motor.mode(), any_contact);
    battery = integrate_current(battery, ma, dt);
    rec.current_ma = ma;
    rec.consumed_mah = battery.consumed_mah;

    rec.node = main_ctrl.node();
    rec.mode = motor.mode();

    if (rec.node == ControllerNode::Holding && prev_node != ControllerNode::Holding &&
        !sum.time_to_grasp_ms) {
      sum.time_to_grasp_ms = t;
      int stopped = 0;
      for (bool s : motor.stop_flags()) stopped += s ? 1 : 0;
      sum.fingers_in_contact_at_hold = stopped;
    }
    if (rec.node == ControllerNode::Idle && prev_node == ControllerNode::WaitOpen &&
        !sum.time_to_release_ms) {
      sum.time_to_release_ms = t;
    }
    prev_node = rec.node;
    out.trace.push_back(std::move(rec));
  }

  sum.success = sum.time_to_grasp_ms.has_value() &&
                sum.fingers_in_contact_at_hold >= cfg.contact_quorum;
  sum.energy_mah = battery.consumed_mah;
  sum.frame_errors = frame_errors;
  out.anomaly_count = main_ctrl.anomaly_count() + motor.misuse_count();
  return out;
}

std::string render_trace_header() {
  return "t_ms,node,mode,dist_mm,tof_mm,adc0,adc1,adc2,adc3,adc4,"
         "servo0,servo1,servo2,servo3,servo4,wire,current_ma,consumed_mah";
}

std::string render_trace_record(const TraceRecord& rec) {
  std::string row = std::to_string(rec.t_ms);
  row += ',';
  row += controller_node_name(rec.node);
  row += ',';
  row += motor_mode_name(rec.mode);
  row += ',';
  row += rec.true_distance_mm ? fmt_fixed(*rec.true_distance_mm, 3) : "-";
  row += ',';
  row += rec.tof.valid ? fmt_fixed(rec.tof.distance_mm, 3) : "-";
  for (int c : rec.adc) {
    row += ',';
    row += std::to_string(c);
  }
  for (double a : rec.servo_deg) {
    row += ',';
    row += fmt_fixed(a, 2);
  }
  row += ',';
  if (rec.wire.empty()) {
    row += '-';
  } else {
    for (std::size_t i = 0; i < rec.wire.size(); ++i) {
      if (i) row += '|';
      row += rec.wire[i];
    }
  }
  row += ',';
  row += fmt_fixed(rec.current_ma, 1);
  row += ',';
  row += fmt_fixed(rec.consumed_mah, 9);
  return row;
}

std::string render_trace(const std::vector<TraceRecord>& trace) {
  std::string out = render_trace_header();
  out += '\n';
  for (const TraceRecord& rec : trace) {
    out += render_trace_record(rec);
    out += '\n';
  }
  return out;
}

void write_trace_file(const std::filesystem::path& path,
                      const std::vector<TraceRecord>& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write trace file: " + path.string());
  out << render_trace(trace);
}

std::string summary_to_json(const RunSummary& s) {
  nlohmann::ordered_json j;
  j["name"] = s.name;
  j["seed"] = s.seed;
  j["success"] = s.success;
  j["fingers_in_contact_at_hold"] = s.fingers_in_contact_at_hold;
  if (s.time_to_grasp_ms) {
    j["time_to_grasp_ms"] = *s.time_to_grasp_ms;
  } else {
    j["time_to_grasp_ms"] = nullptr;
  }
  if (s.time_to_release_ms) {
    j["time_to_release_ms"] = *s.time_to_release_ms;
  } else {
    j["time_to_release_ms"] = nullptr;
  }
  j["energy_mah"] = s.energy_mah;
  j["frame_errors"] = s.frame_errors;
  return j.dump(2) + "\n";
}

void write_summary_file(const std::filesystem::path& path, const RunSummary& summary) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write summary file: " + path.string());
  out << summary_to_json(summary);
}

std::string render_summary(const RunSummary& s) {
  std::string out;
  out += "scenario '" + s.name + "' (seed " + std::to_string(s.seed) + ")\n";
  out += std::string("  success:             ") + (s.success ? "yes" : "no") + "\n";
  out += "  fingers in contact:  " + std::to_string(s.fingers_in_contact_at_hold) + "\n";
  out += "  time to grasp:       " +
         (s.time_to_grasp_ms ? std::to_string(*s.time_to_grasp_ms) + " ms" : "-") + "\n";
  out += "  time to release:     " +
         (s.time_to_release_ms ? std::to_string(*s.time_to_release_ms) + " ms" : "-") +
         "\n";
  out += "  energy consumed:     " + fmt_fixed(s.energy_mah, 6) + " mAh\n";
  out += "  frame errors:        " + std::to_string(s.frame_errors) + "\n";
  return out;
}

}  // namespace handsim
