#include "cli/render.hpp"

#include <sstream>

namespace entsep::cli {

namespace {

bool is_scalar(const Json& v) { return !v.is_object() && !v.is_array(); }

bool is_flat_array(const Json& v) {
  if (!v.is_array()) return false;
  for (const auto& e : v)
    if (!is_scalar(e)) return false;
  return true;
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string inline_array(const Json& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar_text(v[i]);
  return s + "]";
}

// Small all-scalar objects such as {re, im} or {theta, phi} fit on one line.
bool is_compact_object(const Json& v) {
  if (!v.is_object() || v.size() > 3) return false;
  for (const auto& e : v)
    if (!is_scalar(e)) return false;
  return true;
}

std::string inline_object(const Json& v) {
  std::string s;
  for (const auto& [key, value] : v.items())
    s += (s.empty() ? "" : ", ") + key + ": " + scalar_text(value);
  return s;
}

void write_value(std::ostringstream& os, const Json& v, int indent);

void write_object(std::ostringstream& os, const Json& obj, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, value] : obj.items()) {
    if (is_scalar(value)) {
      os << pad << key << ": " << scalar_text(value) << '\n';
    } else if (is_flat_array(value)) {
      os << pad << key << ": " << inline_array(value) << '\n';
    } else {
      os << pad << key << ":\n";
      write_value(os, value, indent + 2);
    }
  }
}

void write_value(std::ostringstream& os, const Json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    write_object(os, v, indent);
    return;
  }
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Json& e = v[i];
      if (is_compact_object(e)) {
        os << pad << "- " << inline_object(e) << '\n';
      } else if (is_flat_array(e)) {
        os << pad << "- " << inline_array(e) << '\n';
      } else if (e.is_object()) {
        os << pad << "- [" << i << "]\n";
        write_object(os, e, indent + 2);
      } else if (is_scalar(e)) {
        os << pad << "- " << scalar_text(e) << '\n';
      } else {
        os << pad << "- [" << i << "]\n";
        write_value(os, e, indent + 2);
      }
    }
    return;
  }
  os << pad << scalar_text(v) << '\n';
}

}  // namespace

std::string render(const Json& report, Format format) {
  if (format == Format::json) return report.dump(2) + "\n";
  std::ostringstream os;
  write_value(os, report, 0);
  return os.str();
}

}  // namespace entsep::cli
