#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "magwell/boundstate.hpp"

namespace magwell::cli {

/// Doubles at 17 significant digits; non-finite values as "nan"/"inf".
std::string number(double value);

/// Minimal ordered JSON object writer with 17-digit numbers.
class JsonObject {
 public:
  JsonObject& add(const std::string& key, double value);
  JsonObject& add(const std::string& key, int value);
  JsonObject& add(const std::string& key, bool value);
  JsonObject& add(const std::string& key, const std::string& value);
  JsonObject& add(const std::string& key, const char* value) {
    return add(key, std::string(value));
  }
  JsonObject& add(const std::string& key, const JsonObject& value);
  JsonObject& add_null(const std::string& key);

  std::string str(int indent = 0) const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;  // raw encoded values
  std::vector<std::pair<std::string, JsonObject>> children_;
  std::vector<int> order_;  // >= 0 entries_, < 0 children_ (~index)
};

/// rho,z,psi,j_phi rows in the field's rho-major order.
void write_field_csv(std::ostream& os, const CylindricalField& field);

/// Static heatmap of j_phi over (rho, z).
void write_field_svg(std::ostream& os, const CylindricalField& field);

/// Write text to `path` (throws std::runtime_error on failure) or to `fallback`.
void emit(const std::string& text, const std::optional<std::string>& path, std::ostream& fallback);

/// Thrown when an output file cannot be written.
struct OutputError : std::exception {
  explicit OutputError(std::string m) : message(std::move(m)) {}
  const char* what() const noexcept override { return message.c_str(); }
  std::string message;
};

}  // namespace magwell::cli
