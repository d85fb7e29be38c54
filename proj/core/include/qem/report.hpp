#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace qem {

// Insertion-ordered JSON document.  The emitter fixes both the field order
// (insertion order) and the float rendering (%.12g), so identical inputs
// produce byte-identical report files on every run and platform.
class Report {
 public:
  enum class Kind { Null, Bool, Int, Double, String, Object, Array };

  Report() : kind_(Kind::Object) {}

  static Report null() { return Report(Kind::Null); }
  static Report boolean(bool b) {
    Report r(Kind::Bool);
    r.bool_ = b;
    return r;
  }
  static Report integer(long long i) {
    Report r(Kind::Int);
    r.int_ = i;
    return r;
  }
  static Report number(double v) {
    Report r(Kind::Double);
    r.double_ = v;
    return r;
  }
  static Report string(std::string s) {
    Report r(Kind::String);
    r.string_ = std::move(s);
    return r;
  }
  static Report array() { return Report(Kind::Array); }
  static Report object() { return Report(Kind::Object); }

  // Object field setters (insertion order preserved; re-setting a key keeps
  // its original position).
  Report& set(const std::string& key, Report value);
  Report& set(const std::string& key, double v) { return set(key, number(v)); }
  Report& set(const std::string& key, bool b) { return set(key, boolean(b)); }
  Report& set(const std::string& key, int i) { return set(key, integer(i)); }
  Report& set(const std::string& key, long long i) { return set(key, integer(i)); }
  Report& set(const std::string& key, const char* s) { return set(key, string(s)); }
  Report& set(const std::string& key, const std::string& s) { return set(key, string(s)); }

  // Array append.
  Report& push(Report value);

  bool has(const std::string& key) const;
  const Report* find(const std::string& key) const;

  // Serialized with 2-space indentation and a trailing newline.
  std::string to_json() const;
  void write_file(const std::string& path) const;

 private:
  explicit Report(Kind k) : kind_(k) {}
  void emit(std::string& out, int indent) const;

  Kind kind_;
  bool bool_ = false;
  long long int_ = 0;
  double double_ = 0.0;
  std::string string_;
  std::vector<std::pair<std::string, Report>> fields_;  // objects
  std::vector<Report> items_;                           // arrays
};

}  // namespace qem
