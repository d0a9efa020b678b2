#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qwahba/quaternion.hpp"

namespace qwahba {

// Instance files are line oriented. Blank lines and lines starting with '#'
// are ignored; every other line is one record of whitespace-separated
// key=value fields:
//
//   a1=0,1,0 a2=0,0,1 b1=... b2=... [label=NAME] [seed=U64] [kind=KIND]
//
// a1, a2, b1, b2 are required. A value with three comma-separated numbers is
// a pure quaternion (x, y, z); four numbers are (w, x, y, z). Unknown or
// repeated keys are errors.

struct InstanceRecord {
  Quaternion a1, a2, b1, b2;
  std::string label;
  std::optional<std::uint64_t> seed;
  std::string kind;
  /// 1-based source line; 0 for records not read from a file.
  std::size_t line = 0;
};

/// Parse "x,y,z" or "w,x,y,z". Throws ParseError.
Quaternion parse_quaternion(std::string_view text);

/// Throws ParseError naming the line and field at fault.
InstanceRecord parse_record(std::string_view line, std::size_t line_number = 0);
std::vector<InstanceRecord> parse_instances(std::istream& in);

/// "%.17g": 17 significant digits, round-trips every finite double.
std::string format_number(double value);
/// Comma-separated components; pure quaternions are written with three.
std::string format_components(const Quaternion& q);
std::string format_record(const InstanceRecord& record);

}  // namespace qwahba
