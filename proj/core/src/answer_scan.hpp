#pragma once

#include <cstddef>
#include <optional>
#include <string>

namespace boxart::detail {

/// Offset just past the indentation of the last line starting with
/// "(<digit>)", "<digit>)" or "<digit>.".
std::optional<std::size_t> last_marker_pos(const std::string& response, char digit);

/// Case-insensitive "Choice" + whitespace + standalone A/B/C, scanning from
/// `from`. Returns the first hit, or the last one when `last_occurrence`.
std::optional<char> find_choice_after(const std::string& text, std::size_t from,
                                      bool last_occurrence);

}  // namespace boxart::detail
