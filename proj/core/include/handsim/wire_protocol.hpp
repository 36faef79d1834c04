#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace handsim {

// Line content limit, LF excluded. Longer complete lines are frame errors.
inline constexpr std::size_t kMaxFrameBytes = 64;

// One UART frame: a command, a completion status, or a pressure telemetry
// line. Telemetry is optional traffic; control flow never depends on it.
struct WireMessage {
  enum class Kind { HandClose, HandOpen, Closed, Opened, Telemetry };

  Kind kind = Kind::HandClose;
  std::array<int, 5> adc{};  // Telemetry only, each in [0, 1023]

  static WireMessage hand_close() { return {Kind::HandClose, {}}; }
  static WireMessage hand_open() { return {Kind::HandOpen, {}}; }
  static WireMessage closed() { return {Kind::Closed, {}}; }
  static WireMessage opened() { return {Kind::Opened, {}}; }
  // Throws std::invalid_argument on counts outside [0, 1023].
  static WireMessage telemetry(const std::array<int, 5>& counts);

  bool operator==(const WireMessage&) const = default;
};

struct FrameError {
  enum class Kind {
    UnknownKeyword,  // line is not a known frame
    BadCount,        // telemetry field not a decimal in [0, 1023]
    WrongArity,      // telemetry field count != 5
    OversizedLine,   // line content longer than kMaxFrameBytes
  };

  Kind kind;
  std::string line;  // offending line, verbatim, LF excluded
};

const char* frame_error_name(FrameError::Kind kind);

// One ASCII line terminated by a single LF:
//   HAND_CLOSE | HAND_OPEN | CLOSED | OPENED | P c0 c1 c2 c3 c4
std::string encode(const WireMessage& msg);

// Message rendered without the trailing LF, for logs and traces.
std::string message_line(const WireMessage& msg);

struct DecodeResult {
  std::vector<WireMessage> messages;
  std::vector<FrameError> errors;
  std::string suffix;  // bytes after the final LF, unconsumed
};

// Splits on LF. Every complete line either parses to a message or is reported
// as a frame error with the line preserved verbatim. Never throws on any
// input.
DecodeResult decode(std::string_view bytes);

// Streaming wrapper that owns the unconsumed suffix between feeds. One reader
// per instance.
class StreamDecoder {
 public:
  std::vector<WireMessage> feed(std::string_view bytes, std::vector<FrameError>& errors);
  const std::string& pending() const { return pending_; }

 private:
  std::string pending_;
};

}  // namespace handsim
