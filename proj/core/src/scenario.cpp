#include "handsim/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "handsim/simulation.hpp"

namespace handsim {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_double(std::string_view tok, double& out) {
  const char* first = tok.data();
  const char* last = first + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && std::isfinite(out);
}

bool parse_i64(std::string_view tok, int64_t& out) {
  const char* first = tok.data();
  const char* last = first + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

bool parse_u64(std::string_view tok, uint64_t& out) {
  const char* first = tok.data();
  const char* last = first + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

bool parse_bool(std::string_view tok, bool& out) {
  if (tok == "true" || tok == "on" || tok == "1") {
    out = true;
    return true;
  }
  if (tok == "false" || tok == "off" || tok == "0") {
    out = false;
    return true;
  }
  return false;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& field,
                       const std::string& reason) {
  throw ScenarioError(origin, line, field, reason);
}

double need_double(std::string_view value, const std::string& origin, int line,
                   const std::string& field) {
  double v = 0.0;
  if (!parse_double(value, v)) fail(origin, line, field, "expected a number");
  return v;
}

int64_t need_i64(std::string_view value, const std::string& origin, int line,
                 const std::string& field) {
  int64_t v = 0;
  if (!parse_i64(value, v)) fail(origin, line, field, "expected an integer");
  return v;
}

bool need_bool(std::string_view value, const std::string& origin, int line,
               const std::string& field) {
  bool v = false;
  if (!parse_bool(value, v)) {
    fail(origin, line, field, "expected true/false/on/off/1/0");
  }
  return v;
}

}  // namespace

ScenarioError::ScenarioError(const std::string& file, int line, const std::string& field,
                             const std::string& reason)
    : std::runtime_error(file + ":" + std::to_string(line) +
                         (field.empty() ? "" : ": field '" + field + "'") + ": " + reason),
      field_(field),
      line_(line) {}

void apply_config_kv(SimConfig& cfg, std::string_view key, std::string_view value,
                     const std::string& origin, int line) {
  const std::string k(key);
  if (k == "close_min") {
    cfg.gate.close_min_mm = need_double(value, origin, line, k);
    if (cfg.gate.close_min_mm <= 0.0) fail(origin, line, k, "must be positive");
  } else if (k == "close_max") {
    cfg.gate.close_max_mm = need_double(value, origin, line, k);
    if (cfg.gate.close_max_mm <= 0.0) fail(origin, line, k, "must be positive");
  } else if (k == "tilt_threshold") {
    cfg.gate.tilt_threshold_deg = need_double(value, origin, line, k);
    if (cfg.gate.tilt_threshold_deg < 0.0 || cfg.gate.tilt_threshold_deg > 180.0) {
      fail(origin, line, k, "must lie in [0,180]");
    }
  } else if (k == "debounce") {
    cfg.gate.debounce_ms = need_i64(value, origin, line, k);
    if (cfg.gate.debounce_ms <= 0 || cfg.gate.debounce_ms % kControlPeriodMs != 0) {
      fail(origin, line, k,
           "must be a positive multiple of the " + std::to_string(kControlPeriodMs) +
               "ms control period");
    }
  } else if (k == "detection_timeout") {
    cfg.gate.detection_timeout_ms = need_i64(value, origin, line, k);
    if (cfg.gate.detection_timeout_ms <= 0) fail(origin, line, k, "must be positive");
  } else if (k == "vision_period") {
    cfg.gate.vision_period_ms = need_i64(value, origin, line, k);
    if (cfg.gate.vision_period_ms <= 0) fail(origin, line, k, "must be positive");
  } else if (k == "pressure_threshold") {
    const int64_t v = need_i64(value, origin, line, k);
    if (v < 1 || v > 1023) fail(origin, line, k, "must lie in [1,1023]");
    cfg.motor.pressure_threshold = static_cast<int>(v);
  } else if (k == "per_finger_stop") {
    cfg.motor.per_finger_stop = need_bool(value, origin, line, k);
  } else if (k == "telemetry") {
    cfg.motor.telemetry = need_bool(value, origin, line, k);
  } else if (k == "slew_rate") {
    cfg.slew_dps = need_double(value, origin, line, k);
    if (cfg.slew_dps <= 0.0) fail(origin, line, k, "must be positive");
  } else if (k == "tof_noise") {
    cfg.tof.noise_enabled = need_bool(value, origin, line, k);
  } else if (k == "tof_noise_mm") {
    cfg.tof.noise_mm = need_double(value, origin, line, k);
    if (cfg.tof.noise_mm < 0.0) fail(origin, line, k, "must be nonnegative");
  } else if (k == "tof_max_range") {
    cfg.tof.max_range_mm = need_double(value, origin, line, k);
    if (cfg.tof.max_range_mm <= 0.0) fail(origin, line, k, "must be positive");
  } else if (k == "min_detect") {
    cfg.camera.min_detect_mm = need_double(value, origin, line, k);
    if (cfg.camera.min_detect_mm < 0.0) fail(origin, line, k, "must be nonnegative");
  } else if (k == "fsr_full_scale") {
    cfg.fsr_full_scale = need_double(value, origin, line, k);
    if (cfg.fsr_full_scale <= 0.0) fail(origin, line, k, "must be positive");
  } else if (k == "idle_ma") {
    cfg.power.idle_ma = need_double(value, origin, line, k);
    if (cfg.power.idle_ma <= 0.0) fail(origin, line, k, "must be positive");
  } else if (k == "inference_ma") {
    cfg.power.inference_ma = need_double(value, origin, line, k);
    if (cfg.power.inference_ma <= 0.0) fail(origin, line, k, "must be positive");
  } else if (k == "operation_ma") {
    cfg.power.operation_ma = need_double(value, origin, line, k);
    if (cfg.power.operation_ma <= 0.0) fail(origin, line, k, "must be positive");
  } else if (k == "capacity_mah") {
    cfg.battery_capacity_mah = need_double(value, origin, line, k);
    if (cfg.battery_capacity_mah <= 0.0) fail(origin, line, k, "must be positive");
  } else if (k == "nominal_voltage") {
    cfg.battery_voltage = need_double(value, origin, line, k);
    if (cfg.battery_voltage <= 0.0) fail(origin, line, k, "must be positive");
  } else if (k == "derating") {
    cfg.derating = need_double(value, origin, line, k);
    if (cfg.derating <= 0.0) fail(origin, line, k, "must be positive");
  } else if (k == "contact_quorum") {
    const int64_t v = need_i64(value, origin, line, k);
    if (v < 0 || v > kFingerCount) fail(origin, line, k, "must lie in [0,5]");
    cfg.contact_quorum = static_cast<int>(v);
  } else {
    fail(origin, line, k, "unknown config key");
  }
}

namespace {

struct LoaderState {
  ScenarioSpec spec;
  std::string origin;
  bool seen_header = false;
  bool seen_seed = false;
  bool seen_duration = false;
  std::string section;
  int64_t prev_waypoint_t = -1;
  int64_t prev_tilt_t = -1;
  std::vector<std::pair<int64_t, int>> waypoint_lines;  // time -> source line
  std::vector<std::pair<int64_t, int>> tilt_lines;
  std::map<std::string, int> key_lines;
};

void handle_top_level(LoaderState& st, const std::string& key, std::string_view value,
                      int line) {
  if (key == "name") {
    st.spec.name = std::string(trim(value));
    if (st.spec.name.empty()) fail(st.origin, line, key, "must not be empty");
  } else if (key == "duration_ms") {
    st.spec.duration_ms = need_i64(value, st.origin, line, key);
    if (st.spec.duration_ms <= 0) fail(st.origin, line, key, "must be positive");
    st.seen_duration = true;
  } else if (key == "seed") {
    if (!parse_u64(value, st.spec.seed)) {
      fail(st.origin, line, key, "expected an unsigned 64-bit integer");
    }
    st.seen_seed = true;
  } else {
    fail(st.origin, line, key, "unknown key outside any section");
  }
}

void handle_object(LoaderState& st, const std::string& key, std::string_view value,
                   int line) {
  ObjectSpec& obj = st.spec.object;
  if (key == "present") {
    obj.present = need_bool(value, st.origin, line, key);
  } else if (key == "stiffness") {
    obj.stiffness = need_double(value, st.origin, line, key);
    if (obj.stiffness <= 0.0) fail(st.origin, line, key, "must be positive");
  } else if (key == "contact_flexion") {
    const auto toks = split_ws(value);
    if (toks.size() != kFingerCount) {
      fail(st.origin, line, key, "expected 5 per-finger values");
    }
    for (int i = 0; i < kFingerCount; ++i) {
      const double v = need_double(toks[i], st.origin, line, key);
      if (v < 0.0 || v > 1.0) fail(st.origin, line, key, "values must lie in [0,1]");
      obj.contact_flexion[i] = v;
    }
  } else if (key == "waypoint") {
    const auto toks = split_ws(value);
    if (toks.size() != 4) {
      fail(st.origin, line, key, "expected `t_ms x y z`");
    }
    Waypoint wp;
    wp.t_ms = need_i64(toks[0], st.origin, line, key);
    wp.pos.x = need_double(toks[1], st.origin, line, key);
    wp.pos.y = need_double(toks[2], st.origin, line, key);
    wp.pos.z = need_double(toks[3], st.origin, line, key);
    if (wp.t_ms < 0) fail(st.origin, line, key, "time must be nonnegative");
    if (wp.t_ms <= st.prev_waypoint_t) {
      fail(st.origin, line, key,
           "waypoint times must be strictly increasing (" + std::to_string(wp.t_ms) +
               " after " + std::to_string(st.prev_waypoint_t) + ")");
    }
    st.prev_waypoint_t = wp.t_ms;
    obj.trajectory.push_back(wp);
    st.waypoint_lines.emplace_back(wp.t_ms, line);
  } else {
    fail(st.origin, line, key, "unknown key in [object]");
  }
}

void handle_wrist(LoaderState& st, const std::string& key, std::string_view value,
                  int line) {
  if (key == "tilt") {
    const auto toks = split_ws(value);
    if (toks.size() != 2) fail(st.origin, line, key, "expected `t_ms tilt_deg`");
    TiltPoint tp;
    tp.t_ms = need_i64(toks[0], st.origin, line, key);
    tp.tilt_deg = need_double(toks[1], st.origin, line, key);
    if (tp.t_ms < 0) fail(st.origin, line, key, "time must be nonnegative");
    if (tp.tilt_deg < 0.0 || tp.tilt_deg > 180.0) {
      fail(st.origin, line, key, "tilt must lie in [0,180]");
    }
    if (tp.t_ms <= st.prev_tilt_t) {
      fail(st.origin, line, key,
           "tilt times must be strictly increasing (" + std::to_string(tp.t_ms) +
               " after " + std::to_string(st.prev_tilt_t) + ")");
    }
    st.prev_tilt_t = tp.t_ms;
    st.spec.wrist.timeline.push_back(tp);
    st.tilt_lines.emplace_back(tp.t_ms, line);
  } else {
    fail(st.origin, line, key, "unknown key in [wrist]");
  }
}

}  // namespace

ScenarioSpec parse_scenario(std::string_view text, const std::string& origin) {
  LoaderState st;
  st.origin = origin;
  st.spec.name = origin;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw =
        nl == std::string_view::npos ? text.substr(pos) : text.substr(pos, nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    std::string_view stripped = raw;
    const std::size_t hash = stripped.find('#');
    if (hash != std::string_view::npos) stripped = stripped.substr(0, hash);
    stripped = trim(stripped);
    if (stripped.empty()) continue;

    if (!st.seen_header) {
      if (stripped != "handsim-scenario v1") {
        fail(origin, line_no, "", "first line must be `handsim-scenario v1`");
      }
      st.seen_header = true;
      continue;
    }

    if (stripped.front() == '[') {
      if (stripped.back() != ']') fail(origin, line_no, "", "unterminated section header");
      const std::string section(trim(stripped.substr(1, stripped.size() - 2)));
      if (section != "object" && section != "wrist" && section != "config") {
        fail(origin, line_no, section, "unknown section");
      }
      st.section = section;
      continue;
    }

    const std::size_t eq = stripped.find('=');
    if (eq == std::string_view::npos) {
      fail(origin, line_no, "", "expected `key = value`");
    }
    const std::string key(trim(stripped.substr(0, eq)));
    const std::string_view value = trim(stripped.substr(eq + 1));
    if (key.empty()) fail(origin, line_no, "", "empty key");
    if (value.empty()) fail(origin, line_no, key, "empty value");
    st.key_lines[key] = line_no;

    if (st.section.empty()) {
      handle_top_level(st, key, value, line_no);
    } else if (st.section == "object") {
      handle_object(st, key, value, line_no);
    } else if (st.section == "wrist") {
      handle_wrist(st, key, value, line_no);
    } else {
      apply_config_kv(st.spec.config, key, value, origin, line_no);
    }
  }

  if (!st.seen_header) fail(origin, line_no, "", "empty file; expected `handsim-scenario v1`");
  if (!st.seen_duration) fail(origin, line_no, "duration_ms", "missing required field");
  if (!st.seen_seed) fail(origin, line_no, "seed", "missing required field");

  // Times must fall inside the scenario.
  for (const auto& [t, ln] : st.waypoint_lines) {
    if (t > st.spec.duration_ms) {
      fail(origin, ln, "waypoint",
           "time " + std::to_string(t) + " exceeds duration_ms " +
               std::to_string(st.spec.duration_ms));
    }
  }
  for (const auto& [t, ln] : st.tilt_lines) {
    if (t > st.spec.duration_ms) {
      fail(origin, ln, "tilt",
           "time " + std::to_string(t) + " exceeds duration_ms " +
               std::to_string(st.spec.duration_ms));
    }
  }
  if (st.spec.object.present && st.spec.object.trajectory.empty()) {
    fail(origin, line_no, "waypoint", "a present object needs at least one waypoint");
  }

  // Cross-field config checks, attributed to the key that set them.
  auto line_of = [&st](const char* key) {
    auto it = st.key_lines.find(key);
    return it == st.key_lines.end() ? 0 : it->second;
  };
  const SimConfig& cfg = st.spec.config;
  if (!(cfg.gate.close_min_mm < cfg.gate.close_max_mm)) {
    fail(origin, line_of("close_min"), "close_min",
         "close_min must be below close_max");
  }
  if (!(cfg.power.idle_ma <= cfg.power.inference_ma &&
        cfg.power.inference_ma <= cfg.power.operation_ma)) {
    fail(origin, line_of("idle_ma"), "idle_ma",
         "currents must satisfy idle <= inference <= operation");
  }

  return st.spec;
}

ScenarioSpec load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(path.string(), 0, "", "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  ScenarioSpec spec = parse_scenario(buf.str(), path.string());
  if (spec.name == path.string()) spec.name = path.stem().string();
  return spec;
}

void apply_config_file(SimConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(path.string(), 0, "", "cannot open file");
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view stripped(raw);
    const std::size_t hash = stripped.find('#');
    if (hash != std::string_view::npos) stripped = stripped.substr(0, hash);
    stripped = trim(stripped);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string_view::npos) {
      fail(path.string(), line_no, "", "expected `key = value`");
    }
    const std::string key(trim(stripped.substr(0, eq)));
    const std::string_view value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty()) {
      fail(path.string(), line_no, key, "expected `key = value`");
    }
    apply_config_kv(cfg, key, value, path.string(), line_no);
  }
}

void validate_scenario(const ScenarioSpec& spec) {
  const std::string origin = spec.name.empty() ? "<scenario>" : spec.name;
  if (spec.duration_ms <= 0) fail(origin, 0, "duration_ms", "must be positive");
  int64_t prev = -1;
  for (const Waypoint& wp : spec.object.trajectory) {
    if (wp.t_ms <= prev) fail(origin, 0, "waypoint", "times must be strictly increasing");
    if (wp.t_ms > spec.duration_ms) fail(origin, 0, "waypoint", "time exceeds duration");
    prev = wp.t_ms;
  }
  prev = -1;
  for (const TiltPoint& tp : spec.wrist.timeline) {
    if (tp.t_ms <= prev) fail(origin, 0, "tilt", "times must be strictly increasing");
    if (tp.t_ms > spec.duration_ms) fail(origin, 0, "tilt", "time exceeds duration");
    if (tp.tilt_deg < 0.0 || tp.tilt_deg > 180.0) {
      fail(origin, 0, "tilt", "tilt must lie in [0,180]");
    }
    prev = tp.t_ms;
  }
  for (double cf : spec.object.contact_flexion) {
    if (cf < 0.0 || cf > 1.0) {
      fail(origin, 0, "contact_flexion", "values must lie in [0,1]");
    }
  }
  if (spec.object.stiffness <= 0.0) fail(origin, 0, "stiffness", "must be positive");
  if (spec.object.present && spec.object.trajectory.empty()) {
    fail(origin, 0, "waypoint", "a present object needs at least one waypoint");
  }
  validate_gate(spec.config.gate, kControlPeriodMs);
  if (spec.config.motor.pressure_threshold < 1 ||
      spec.config.motor.pressure_threshold > 1023) {
    fail(origin, 0, "pressure_threshold", "must lie in [1,1023]");
  }
  if (spec.config.slew_dps <= 0.0) fail(origin, 0, "slew_rate", "must be positive");
  if (spec.config.fsr_full_scale <= 0.0) {
    fail(origin, 0, "fsr_full_scale", "must be positive");
  }
  if (spec.config.contact_quorum < 0 || spec.config.contact_quorum > kFingerCount) {
    fail(origin, 0, "contact_quorum", "must lie in [0,5]");
  }
}

}  // namespace handsim
