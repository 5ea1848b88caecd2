#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace pipmesh {

using Json = nlohmann::json;

// Raised for malformed documents; field() is the JSON path of the offending
// field, e.g. "routes[2].source".
class DocumentError : public std::runtime_error {
 public:
  DocumentError(std::string field, const std::string& detail);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

namespace json_util {

std::string join(std::string_view path, std::string_view key);
std::string join(std::string_view path, std::size_t index);

const Json& require(const Json& object, std::string_view key, std::string_view path);
const Json& require_array(const Json& object, std::string_view key, std::string_view path);

int as_int(const Json& value, std::string_view path);
double as_number(const Json& value, std::string_view path);
std::string as_string(const Json& value, std::string_view path);

Json parse(std::string_view text, std::string_view what);

}  // namespace json_util
}  // namespace pipmesh
