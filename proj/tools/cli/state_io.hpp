#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "entsep/mixtures.hpp"
#include "entsep/tensor.hpp"

namespace entsep::cli {

using Json = nlohmann::ordered_json;

struct LabeledState {
  AmplitudeTensor state;
  std::string label;  // empty when the file has none
};

// Reads and parses a json document; ValidationError on I/O or syntax errors.
Json read_json_file(const std::filesystem::path& path);

// `where` prefixes field names in error messages, e.g. "members[1].state".
LabeledState parse_state(const Json& body, const std::string& where = "");
Ensemble parse_ensemble(const Json& doc);
std::vector<LabeledState> parse_state_list(const Json& doc);

bool is_ensemble(const Json& doc);

Json complex_json(Complex z);
Json amplitudes_json(const AmplitudeTensor& t);
Json state_json(const AmplitudeTensor& t, const std::string& label = "");

}  // namespace entsep::cli
