#pragma once

#include <string>
#include <string_view>

#include "admit/instance.hpp"

namespace admit {

/// Parses an instance document. Schema problems raise ValidationError naming
/// the offending path (e.g. "applicants[0].list[1].score"); data-model rule
/// violations raise ValidationError naming the rule.
Instance parse_instance(std::string_view text);

/// Serializes with a fixed key order; `parse_instance(serialize_instance(x)) == x`.
std::string serialize_instance(const Instance& inst, int indent = 2);

/// 64-bit FNV-1a digest of the canonical serialization, as 16 hex digits.
std::string instance_digest(const Instance& inst);

std::string read_file(const std::string& path);

}  // namespace admit
