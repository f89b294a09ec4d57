#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace oa {

/// UTC instant with millisecond resolution.
using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

/// Parses an RFC 3339 date-time ("2013-08-09T10:00:00Z", offsets and
/// fractional seconds accepted). Throws Error(invalid_timestamp).
auto parse_timestamp(std::string_view text) -> Timestamp;
auto try_parse_timestamp(std::string_view text) -> std::optional<Timestamp>;

/// Formats as RFC 3339 in UTC; milliseconds appear only when nonzero.
auto format_timestamp(Timestamp t) -> std::string;

auto now_utc() -> Timestamp;

}  // namespace oa
