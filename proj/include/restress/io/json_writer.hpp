#ifndef RESTRESS_IO_JSON_WRITER_HPP
#define RESTRESS_IO_JSON_WRITER_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace restress::io {

/// Insertion-ordered JSON tree with fixed 17-significant-digit float
/// formatting, so identical inputs serialize byte-identically.
class JsonValue {
 public:
  JsonValue() : type_(Type::null) {}
  JsonValue(bool b) : type_(Type::boolean), bool_(b) {}
  JsonValue(int v) : type_(Type::integer), int_(v) {}
  JsonValue(long long v) : type_(Type::integer), int_(v) {}
  JsonValue(size_t v) : type_(Type::integer), int_(static_cast<long long>(v)) {}
  JsonValue(double v) : type_(Type::number), num_(v) {}
  JsonValue(const char* s) : type_(Type::string), str_(s) {}
  JsonValue(std::string s) : type_(Type::string), str_(std::move(s)) {}

  static JsonValue object() {
    JsonValue v;
    v.type_ = Type::object;
    return v;
  }
  static JsonValue array() {
    JsonValue v;
    v.type_ = Type::array;
    return v;
  }
  template <typename T>
  static JsonValue array_of(const std::vector<T>& xs) {
    JsonValue v = array();
    for (const auto& x : xs) v.push_back(JsonValue(x));
    return v;
  }

  /// Object access; inserts a null member on first use, preserving order.
  JsonValue& operator[](const std::string& key);
  void push_back(JsonValue v);

  std::string dump(int indent = 2) const;
  void write_file(const std::string& path) const;

  /// Formats a double exactly like the serializer does.
  static std::string format_number(double v);

 private:
  enum class Type { null, boolean, integer, number, string, array, object };
  void dump_to(std::string& out, int indent, int depth) const;

  Type type_;
  bool bool_ = false;
  long long int_ = 0;
  double num_ = 0.0;
  std::string str_;
  std::vector<JsonValue> items_;
  std::vector<std::pair<std::string, JsonValue>> members_;
};

}  // namespace restress::io

#endif
