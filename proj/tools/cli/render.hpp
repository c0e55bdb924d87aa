#pragma once

#include <string>

#include "cli/state_io.hpp"

namespace entsep::cli {

enum class Format { text, json };

// Both formats print numbers through json serialisation, so they agree digit
// for digit.
std::string render(const Json& report, Format format);

}  // namespace entsep::cli
