#pragma once

#include <string>
#include <string_view>

namespace oa::unicode {

/// Decodes UTF-8 and applies NFC. Ill-formed sequences become U+FFFD.
auto nfc_code_points(std::string_view utf8) -> std::u32string;

auto to_utf8(std::u32string_view cps) -> std::string;

/// Plain decode, no normalization.
auto to_utf32(std::string_view utf8) -> std::u32string;

auto is_valid_utf8(std::string_view bytes) -> bool;

}  // namespace oa::unicode
