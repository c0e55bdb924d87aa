#include "cli/state_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "entsep/error.hpp"

namespace entsep::cli {

namespace {

std::string field(const std::string& where, const std::string& name) {
  return where.empty() ? name : where + "." + name;
}

const Json& require(const Json& obj, const std::string& where, const char* name) {
  if (!obj.is_object()) throw ValidationError(where.empty() ? "document must be a json object"
                                                            : where + " must be a json object");
  const auto it = obj.find(name);
  if (it == obj.end()) throw ValidationError("missing field '" + field(where, name) + "'");
  return *it;
}

std::size_t unsigned_value(const Json& v, const std::string& name) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw ValidationError("field '" + name + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

double real_value(const Json& v, const std::string& name) {
  if (!v.is_number()) throw ValidationError("field '" + name + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ValidationError("field '" + name + "' is not finite");
  return x;
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("'" + path.string() + "' is not valid json: " + e.what());
  }
}

LabeledState parse_state(const Json& body, const std::string& where) {
  const std::size_t n = unsigned_value(require(body, where, "n_parties"), field(where, "n_parties"));

  const Json& dims_json = require(body, where, "local_dims");
  const std::string dims_name = field(where, "local_dims");
  if (!dims_json.is_array()) throw ValidationError("field '" + dims_name + "' must be an array");
  std::vector<std::size_t> dims;
  for (std::size_t j = 0; j < dims_json.size(); ++j) {
    const std::string name = dims_name + "[" + std::to_string(j) + "]";
    dims.push_back(unsigned_value(dims_json[j], name));
    if (dims.back() < 2) throw ValidationError("field '" + name + "' must be at least 2");
  }
  if (n == 0) throw ValidationError("field '" + field(where, "n_parties") + "' must be positive");
  if (dims.size() != n)
    throw ValidationError("field '" + dims_name + "' has " + std::to_string(dims.size()) +
                          " entries but n_parties is " + std::to_string(n));

  std::size_t expected = 1;
  for (std::size_t d : dims) {
    if (expected > max_tensor_size / d)
      throw ResourceError("local_dims describe more than " + std::to_string(max_tensor_size) +
                          " amplitudes");
    expected *= d;
  }

  const Json& amps = require(body, where, "amplitudes");
  const std::string amps_name = field(where, "amplitudes");
  if (!amps.is_array()) throw ValidationError("field '" + amps_name + "' must be an array");
  if (amps.size() != expected)
    throw ValidationError("field '" + amps_name + "' has " + std::to_string(amps.size()) +
                          " entries; length mismatch with local_dims (expected " +
                          std::to_string(expected) + ")");
  std::vector<Complex> data;
  data.reserve(expected);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const std::string name = amps_name + "[" + std::to_string(i) + "]";
    const double re = real_value(require(amps[i], name, "re"), name + ".re");
    const double im = real_value(require(amps[i], name, "im"), name + ".im");
    data.emplace_back(re, im);
  }

  std::string label;
  if (const auto it = body.find("label"); it != body.end()) {
    if (!it->is_string())
      throw ValidationError("field '" + field(where, "label") + "' must be a string");
    label = it->get<std::string>();
  }
  return {AmplitudeTensor::from_amplitudes(n, std::move(dims), std::move(data)), label};
}

bool is_ensemble(const Json& doc) { return doc.is_object() && doc.contains("members"); }

Ensemble parse_ensemble(const Json& doc) {
  const Json& members = require(doc, "", "members");
  if (!members.is_array() || members.empty())
    throw ValidationError("field 'members' must be a non-empty array");
  std::vector<EnsembleMember> out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::string where = "members[" + std::to_string(i) + "]";
    const double p = real_value(require(members[i], where, "p"), where + ".p");
    out.push_back({p, parse_state(require(members[i], where, "state"), where + ".state").state});
  }
  return Ensemble(std::move(out));
}

std::vector<LabeledState> parse_state_list(const Json& doc) {
  if (!doc.is_array()) return {parse_state(doc)};
  if (doc.empty()) throw ValidationError("state list is empty");
  std::vector<LabeledState> out;
  for (std::size_t i = 0; i < doc.size(); ++i)
    out.push_back(parse_state(doc[i], "[" + std::to_string(i) + "]"));
  return out;
}

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json amplitudes_json(const AmplitudeTensor& t) {
  Json out = Json::array();
  for (const Complex& z : t.data()) out.push_back(complex_json(z));
  return out;
}

Json state_json(const AmplitudeTensor& t, const std::string& label) {
  Json out;
  out["n_parties"] = t.n_parties();
  out["local_dims"] = Json(std::vector<std::size_t>(t.local_dims().begin(), t.local_dims().end()));
  out["amplitudes"] = amplitudes_json(t);
  if (!label.empty()) out["label"] = label;
  return out;
}

}  // namespace entsep::cli
