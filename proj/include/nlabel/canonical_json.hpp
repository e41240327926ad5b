#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "json.hpp"

namespace nlabel {

// Insertion-ordered JSON: key order is part of the canonical form.
using Json = nlohmann::ordered_json;

// Rounds to at most six fractional digits, half away from zero. Magnitudes
// too large to carry a micro-unit are returned unchanged.
inline double round6(double x) {
  if (!std::isfinite(x) || std::fabs(x) >= 9.0e9) return x;
  double r = std::round(x * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;
}

// Shortest fixed-notation text that reads back as round6(x); integral values
// carry no fraction ("5", not "5.0").
inline std::string canonical_number(double x) {
  if (!std::isfinite(x)) return "null";
  x = round6(x);
  char buf[400];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed);
  return std::string(buf, res.ptr);
}

// Rounds a probability vector to micro-units that sum to exactly one
// (largest-remainder apportionment, ties to the lower index), so the
// serialized vector still sums to 1.
inline std::vector<double> quantize_simplex(const std::vector<double>& p) {
  constexpr std::int64_t kUnits = 1000000;
  double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (p.empty() || !(total > 0.0)) return p;
  std::vector<std::int64_t> units(p.size());
  std::vector<double> remainder(p.size());
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double exact = p[i] / total * static_cast<double>(kUnits);
    units[i] = static_cast<std::int64_t>(std::floor(exact));
    remainder[i] = exact - static_cast<double>(units[i]);
    assigned += units[i];
  }
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::int64_t k = 0; k < kUnits - assigned && k < static_cast<std::int64_t>(order.size()); ++k)
    ++units[order[static_cast<std::size_t>(k)]];
  std::vector<double> out;
  out.reserve(p.size());
  for (auto u : units) out.push_back(static_cast<double>(u) / static_cast<double>(kUnits));
  return out;
}

namespace detail {

inline bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

inline void write_scalar(std::string& out, const Json& j) {
  switch (j.type()) {
    case Json::value_t::null: out += "null"; break;
    case Json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; break;
    case Json::value_t::number_integer: out += std::to_string(j.get<std::int64_t>()); break;
    case Json::value_t::number_unsigned: out += std::to_string(j.get<std::uint64_t>()); break;
    case Json::value_t::number_float: out += canonical_number(j.get<double>()); break;
    case Json::value_t::string:
      out += j.dump(-1, ' ', false, Json::error_handler_t::replace);
      break;
    default: out += "null"; break;
  }
}

inline void write_value(std::string& out, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(depth + 1) * 2, ' ');
  const std::string close_pad(static_cast<std::size_t>(depth) * 2, ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += pad;
      out += Json(it.key()).dump(-1, ' ', false, Json::error_handler_t::replace);
      out += ": ";
      write_value(out, it.value(), depth + 1);
    }
    out += "\n" + close_pad + "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    bool flat = std::all_of(j.begin(), j.end(), is_scalar);
    if (flat) {
      out += "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ", ";
        write_scalar(out, j[i]);
      }
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      write_value(out, j[i], depth + 1);
    }
    out += "\n" + close_pad + "]";
  } else {
    write_scalar(out, j);
  }
}

}  // namespace detail

// Canonical text: two-space indentation, arrays of scalars on one line,
// numbers via canonical_number, LF line endings, trailing newline.
inline std::string canonical_dump(const Json& j) {
  std::string out;
  detail::write_value(out, j, 0);
  out += '\n';
  return out;
}

}  // namespace nlabel
