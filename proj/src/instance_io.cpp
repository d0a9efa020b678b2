#include "qwahba/instance_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>

namespace qwahba {

namespace {

Error parse_error(std::size_t line, std::string_view field, const std::string& message) {
  std::string where = line > 0 ? "line " + std::to_string(line) : std::string("record");
  if (!field.empty()) where += ", field '" + std::string(field) + "'";
  return Error(ErrorKind::ParseError, where + ": " + message);
}

double parse_number(std::string_view text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw Error(ErrorKind::ParseError, "'" + std::string(text) + "' is not a finite number");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

Quaternion parse_quaternion(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3 && parts.size() != 4) {
    throw Error(ErrorKind::ParseError,
                "expected 3 or 4 components, got " + std::to_string(parts.size()));
  }
  std::array<double, 4> c{};
  const std::size_t offset = parts.size() == 3 ? 1 : 0;
  for (std::size_t i = 0; i < parts.size(); ++i) c[i + offset] = parse_number(trim(parts[i]));
  return Quaternion::from_array(c);
}

InstanceRecord parse_record(std::string_view line, std::size_t line_number) {
  InstanceRecord r;
  r.line = line_number;
  std::array<bool, 4> seen{};
  constexpr std::array<std::string_view, 4> kVectors{"a1", "a2", "b1", "b2"};
  std::array<Quaternion*, 4> targets{&r.a1, &r.a2, &r.b1, &r.b2};
  bool have_label = false, have_kind = false;

  std::istringstream tokens{std::string(line)};
  std::string token;
  while (tokens >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw parse_error(line_number, token, "expected key=value");
    }
    const std::string_view key(token.data(), eq);
    const std::string_view value(token.data() + eq + 1, token.size() - eq - 1);

    bool handled = false;
    for (std::size_t i = 0; i < kVectors.size(); ++i) {
      if (key != kVectors[i]) continue;
      if (seen[i]) throw parse_error(line_number, key, "repeated");
      try {
        *targets[i] = parse_quaternion(value);
      } catch (const Error& e) {
        throw parse_error(line_number, key, e.detail());
      }
      seen[i] = handled = true;
    }
    if (handled) continue;

    if (key == "label") {
      if (have_label) throw parse_error(line_number, key, "repeated");
      r.label = value;
      have_label = true;
    } else if (key == "kind") {
      if (have_kind) throw parse_error(line_number, key, "repeated");
      r.kind = value;
      have_kind = true;
    } else if (key == "seed") {
      if (r.seed) throw parse_error(line_number, key, "repeated");
      std::uint64_t s = 0;
      const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), s);
      if (value.empty() || ec != std::errc() || ptr != value.data() + value.size()) {
        throw parse_error(line_number, key, "expected an unsigned 64-bit integer");
      }
      r.seed = s;
    } else {
      throw parse_error(line_number, key, "unknown key");
    }
  }
  for (std::size_t i = 0; i < kVectors.size(); ++i) {
    if (!seen[i]) throw parse_error(line_number, kVectors[i], "missing");
  }
  return r;
}

std::vector<InstanceRecord> parse_instances(std::istream& in) {
  std::vector<InstanceRecord> records;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    records.push_back(parse_record(body, number));
  }
  return records;
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format_components(const Quaternion& q) {
  std::string s;
  if (q.w() != 0.0) s = format_number(q.w()) + ",";
  s += format_number(q.x()) + "," + format_number(q.y()) + "," + format_number(q.z());
  return s;
}

std::string format_record(const InstanceRecord& record) {
  std::string s = "a1=" + format_components(record.a1) + " a2=" + format_components(record.a2) +
                  " b1=" + format_components(record.b1) + " b2=" + format_components(record.b2);
  if (!record.label.empty()) s += " label=" + record.label;
  if (record.seed) s += " seed=" + std::to_string(*record.seed);
  if (!record.kind.empty()) s += " kind=" + record.kind;
  return s;
}

}  // namespace qwahba
