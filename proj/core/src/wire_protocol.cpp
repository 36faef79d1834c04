#include "handsim/wire_protocol.hpp"

#include <charconv>
#include <optional>
#include <stdexcept>

namespace handsim {

namespace {

constexpr std::string_view kHandClose = "HAND_CLOSE";
constexpr std::string_view kHandOpen = "HAND_OPEN";
constexpr std::string_view kClosed = "CLOSED";
constexpr std::string_view kOpened = "OPENED";

bool parse_count(std::string_view token, int& value) {
  if (token.empty()) return false;
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  // from_chars rejects signs and whitespace, so a full match is digits only.
  return ec == std::errc{} && ptr == last;
}

std::optional<WireMessage> parse_line(std::string_view line, FrameError::Kind& err) {
  if (line.size() > kMaxFrameBytes) {
    err = FrameError::Kind::OversizedLine;
    return std::nullopt;
  }
  if (line == kHandClose) return WireMessage::hand_close();
  if (line == kHandOpen) return WireMessage::hand_open();
  if (line == kClosed) return WireMessage::closed();
  if (line == kOpened) return WireMessage::opened();
  if (line == "P" || line.starts_with("P ")) {
    // Fields are separated by exactly one space; empty tokens are malformed.
    std::array<std::string_view, 6> tokens;  // room to detect arity overflow
    std::size_t count = 0;
    std::string_view rest = line.size() > 1 ? line.substr(2) : std::string_view{};
    if (line == "P") {
      err = FrameError::Kind::WrongArity;
      return std::nullopt;
    }
    std::size_t start = 0;
    while (true) {
      const std::size_t sp = rest.find(' ', start);
      const std::string_view tok =
          sp == std::string_view::npos ? rest.substr(start) : rest.substr(start, sp - start);
      if (count < tokens.size()) tokens[count] = tok;
      ++count;
      if (sp == std::string_view::npos) break;
      start = sp + 1;
    }
    if (count != 5) {
      err = FrameError::Kind::WrongArity;
      return std::nullopt;
    }
    std::array<int, 5> counts{};
    for (std::size_t i = 0; i < 5; ++i) {
      int v = 0;
      if (!parse_count(tokens[i], v) || v < 0 || v > 1023) {
        err = FrameError::Kind::BadCount;
        return std::nullopt;
      }
      counts[i] = v;
    }
    return WireMessage{WireMessage::Kind::Telemetry, counts};
  }
  err = FrameError::Kind::UnknownKeyword;
  return std::nullopt;
}

}  // namespace

const char* frame_error_name(FrameError::Kind kind) {
  switch (kind) {
    case FrameError::Kind::UnknownKeyword: return "unknown-keyword";
    case FrameError::Kind::BadCount: return "bad-count";
    case FrameError::Kind::WrongArity: return "wrong-arity";
    case FrameError::Kind::OversizedLine: return "oversized-line";
  }
  return "?";
}

WireMessage WireMessage::telemetry(const std::array<int, 5>& counts) {
  for (int c : counts) {
    if (c < 0 || c > 1023) {
      throw std::invalid_argument("telemetry count out of [0,1023]: " + std::to_string(c));
    }
  }
  return {Kind::Telemetry, counts};
}

std::string message_line(const WireMessage& msg) {
  switch (msg.kind) {
    case WireMessage::Kind::HandClose: return std::string(kHandClose);
    case WireMessage::Kind::HandOpen: return std::string(kHandOpen);
    case WireMessage::Kind::Closed: return std::string(kClosed);
    case WireMessage::Kind::Opened: return std::string(kOpened);
    case WireMessage::Kind::Telemetry: {
      std::string line = "P";
      for (int c : msg.adc) {
        line += ' ';
        line += std::to_string(c);
      }
      return line;
    }
  }
  return {};
}

std::string encode(const WireMessage& msg) {
  std::string line = message_line(msg);
  line += '\n';
  return line;
}

DecodeResult decode(std::string_view bytes) {
  DecodeResult out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t lf = bytes.find('\n', pos);
    if (lf == std::string_view::npos) break;
    const std::string_view line = bytes.substr(pos, lf - pos);
    FrameError::Kind kind{};
    if (auto msg = parse_line(line, kind)) {
      out.messages.push_back(*msg);
    } else {
      out.errors.push_back({kind, std::string(line)});
    }
    pos = lf + 1;
  }
  out.suffix.assign(bytes.substr(pos));
  return out;
}

std::vector<WireMessage> StreamDecoder::feed(std::string_view bytes,
                                             std::vector<FrameError>& errors) {
  pending_.append(bytes);
  DecodeResult r = decode(pending_);
  pending_ = std::move(r.suffix);
  errors.insert(errors.end(), r.errors.begin(), r.errors.end());
  return std::move(r.messages);
}

}  // namespace handsim
