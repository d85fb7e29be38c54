#include "qem/report.hpp"

#include <cmath>
#include <fstream>

#include "qem/csv.hpp"
#include "qem/errors.hpp"

namespace qem {

namespace {

void escape_into(std::string& out, const std::string& s) {
  out += '"';
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

}  // namespace

Report& Report::set(const std::string& key, Report value) {
  for (auto& [k, v] : fields_)
    if (k == key) {
      v = std::move(value);
      return *this;
    }
  fields_.emplace_back(key, std::move(value));
  return *this;
}

Report& Report::push(Report value) {
  items_.push_back(std::move(value));
  return *this;
}

bool Report::has(const std::string& key) const { return find(key) != nullptr; }

const Report* Report::find(const std::string& key) const {
  for (const auto& [k, v] : fields_)
    if (k == key) return &v;
  return nullptr;
}

void Report::emit(std::string& out, int indent) const {
  const std::string pad(2 * indent, ' ');
  const std::string pad_in(2 * (indent + 1), ' ');
  switch (kind_) {
    case Kind::Null: out += "null"; break;
    case Kind::Bool: out += bool_ ? "true" : "false"; break;
    case Kind::Int: out += std::to_string(int_); break;
    case Kind::Double:
      // Non-finite values have no JSON literal; render as strings so the
      // document stays machine-readable.
      if (std::isnan(double_)) out += "\"nan\"";
      else if (std::isinf(double_)) out += double_ > 0 ? "\"inf\"" : "\"-inf\"";
      else out += format_g12(double_);
      break;
    case Kind::String: escape_into(out, string_); break;
    case Kind::Object:
      if (fields_.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      for (std::size_t i = 0; i < fields_.size(); ++i) {
        out += pad_in;
        escape_into(out, fields_[i].first);
        out += ": ";
        fields_[i].second.emit(out, indent + 1);
        if (i + 1 < fields_.size()) out += ',';
        out += '\n';
      }
      out += pad + "}";
      break;
    case Kind::Array:
      if (items_.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      for (std::size_t i = 0; i < items_.size(); ++i) {
        out += pad_in;
        items_[i].emit(out, indent + 1);
        if (i + 1 < items_.size()) out += ',';
        out += '\n';
      }
      out += pad + "]";
      break;
  }
}

std::string Report::to_json() const {
  std::string out;
  emit(out, 0);
  out += '\n';
  return out;
}

void Report::write_file(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("report: cannot write '" + path + "'");
  f << to_json();
}

}  // namespace qem
