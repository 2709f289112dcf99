#pragma once

#include <string>

#include <json.hpp>

namespace wmb {

/// Serializes with two-space indentation, keys in insertion order, integers
/// verbatim and floating-point values in fixed notation with `decimals`
/// digits. Output is byte-stable for equal inputs.
std::string write_fixed_json(const nlohmann::ordered_json& value, int decimals);

/// Fixed-notation rendering of one number, with negative zero printed as zero.
std::string format_fixed(double value, int decimals);

}  // namespace wmb
