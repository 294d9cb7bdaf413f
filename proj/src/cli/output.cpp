#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace magwell::cli {

std::string number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", value);
}

namespace {

std::string quote(const std::string& s) {
  std::string r = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') r += '\\';
    if (c == '\n') {
      r += "\\n";
      continue;
    }
    r += c;
  }
  return r + "\"";
}

// JSON has no nan/inf literals.
std::string json_number(double value) { return std::isfinite(value) ? number(value) : "null"; }

}  // namespace

JsonObject& JsonObject::add(const std::string& key, double value) {
  order_.push_back(static_cast<int>(entries_.size()));
  entries_.emplace_back(key, json_number(value));
  return *this;
}

JsonObject& JsonObject::add(const std::string& key, int value) {
  order_.push_back(static_cast<int>(entries_.size()));
  entries_.emplace_back(key, std::to_string(value));
  return *this;
}

JsonObject& JsonObject::add(const std::string& key, bool value) {
  order_.push_back(static_cast<int>(entries_.size()));
  entries_.emplace_back(key, value ? "true" : "false");
  return *this;
}

JsonObject& JsonObject::add(const std::string& key, const std::string& value) {
  order_.push_back(static_cast<int>(entries_.size()));
  entries_.emplace_back(key, quote(value));
  return *this;
}

JsonObject& JsonObject::add(const std::string& key, const JsonObject& value) {
  order_.push_back(~static_cast<int>(children_.size()));
  children_.emplace_back(key, value);
  return *this;
}

JsonObject& JsonObject::add_null(const std::string& key) {
  order_.push_back(static_cast<int>(entries_.size()));
  entries_.emplace_back(key, "null");
  return *this;
}

std::string JsonObject::str(int indent) const {
  const std::string pad(indent + 2, ' ');
  std::string s = "{\n";
  for (std::size_t k = 0; k < order_.size(); ++k) {
    const int o = order_[k];
    if (o >= 0) {
      s += pad + quote(entries_[o].first) + ": " + entries_[o].second;
    } else {
      const auto& child = children_[~o];
      s += pad + quote(child.first) + ": " + child.second.str(indent + 2);
    }
    s += (k + 1 < order_.size()) ? ",\n" : "\n";
  }
  s += std::string(indent, ' ') + "}";
  return s;
}

void write_field_csv(std::ostream& os, const CylindricalField& field) {
  os << "rho,z,psi,j_phi\n";
  for (std::size_t k = 0; k < field.psi.size(); ++k) {
    os << number(field.rho[k]) << ',' << number(field.z[k]) << ',' << number(field.psi[k]) << ','
       << number(field.j_phi[k]) << '\n';
  }
}

void write_field_svg(std::ostream& os, const CylindricalField& field) {
  const auto& g = field.grid;
  const int cols = g.n_z + 1;
  const int rows = g.n_rho + 1;
  constexpr int kCell = 4;
  const double peak = std::max(1e-300, *std::max_element(field.j_phi.begin(), field.j_phi.end()));
  os << fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
      "viewBox=\"0 0 {} {}\">\n",
      cols * kCell, rows * kCell, cols * kCell, rows * kCell);
  os << "<title>j_phi(rho, z); z horizontal, rho downward</title>\n";
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double t = std::clamp(field.j_phi[field.index(i, j)] / peak, 0.0, 1.0);
      // White to dark red.
      const int r = static_cast<int>(std::lround(255.0 - 95.0 * t));
      const int gb = static_cast<int>(std::lround(255.0 * (1.0 - t)));
      os << fmt::format(
          "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#{:02x}{:02x}{:02x}\"/>\n",
          j * kCell, i * kCell, kCell, kCell, r, gb, gb);
    }
  }
  os << "</svg>\n";
}

void emit(const std::string& text, const std::optional<std::string>& path, std::ostream& fallback) {
  if (!path) {
    fallback << text;
    return;
  }
  std::ofstream file(*path, std::ios::binary | std::ios::trunc);
  if (!file) throw OutputError("cannot open output file '" + *path + "'");
  file << text;
  file.flush();
  if (!file) throw OutputError("failed writing output file '" + *path + "'");
}

}  // namespace magwell::cli
