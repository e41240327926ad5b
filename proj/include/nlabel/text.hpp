#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace nlabel::text {

inline bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && is_ascii_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_ascii_space(s.back())) s.remove_suffix(1);
  return s;
}

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

inline bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_digit);
}

// Plain decimal numbers only: optional sign, digits with an optional
// fraction, optional exponent. Rejects inf/nan/hex and surrounding garbage;
// surrounding ASCII whitespace is ignored.
inline std::optional<double> parse_number(std::string_view raw) {
  std::string_view s = trim(raw);
  if (s.empty()) return std::nullopt;
  std::size_t i = 0;
  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    i = 1;
  }
  std::string_view body = s.substr(i);
  if (body.empty()) return std::nullopt;
  bool saw_digit = false;
  for (char c : body) {
    if (is_digit(c)) {
      saw_digit = true;
    } else if (c != '.' && c != 'e' && c != 'E' && c != '+' && c != '-') {
      return std::nullopt;
    }
  }
  if (!saw_digit || !(is_digit(body[0]) || body[0] == '.')) return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value,
                                   std::chars_format::general);
  if (ec != std::errc() || ptr != body.data() + body.size()) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return negative ? -value : value;
}

// True when the token is written with a fractional part or exponent
// ("14.0", "1e3"), as opposed to a bare integer literal.
inline bool has_decimal_notation(std::string_view raw) {
  std::string_view s = trim(raw);
  return s.find_first_of(".eE") != std::string_view::npos;
}

namespace detail {

inline int read_int(std::string_view s, std::size_t pos, std::size_t len) {
  int v = 0;
  for (std::size_t k = pos; k < pos + len; ++k) v = v * 10 + (s[k] - '0');
  return v;
}

inline bool digits_at(std::string_view s, std::size_t pos, std::size_t len) {
  if (pos + len > s.size()) return false;
  for (std::size_t k = pos; k < pos + len; ++k)
    if (!is_digit(s[k])) return false;
  return true;
}

inline bool valid_ymd(int y, int m, int d) {
  if (m < 1 || m > 12 || d < 1) return false;
  static constexpr int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  int limit = days[m - 1];
  bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  if (m == 2 && leap) limit = 29;
  return d <= limit;
}

// hh:mm[:ss[.fraction]][Z|+hh:mm|-hh:mm]
inline bool valid_time_suffix(std::string_view t) {
  if (!digits_at(t, 0, 2) || t.size() < 5 || t[2] != ':' || !digits_at(t, 3, 2)) return false;
  if (read_int(t, 0, 2) > 23 || read_int(t, 3, 2) > 59) return false;
  std::size_t i = 5;
  if (i < t.size() && t[i] == ':') {
    if (!digits_at(t, i + 1, 2) || read_int(t, i + 1, 2) > 60) return false;
    i += 3;
    if (i < t.size() && t[i] == '.') {
      ++i;
      std::size_t start = i;
      while (i < t.size() && is_digit(t[i])) ++i;
      if (i == start) return false;
    }
  }
  if (i == t.size()) return true;
  if (t[i] == 'Z') return i + 1 == t.size();
  if (t[i] == '+' || t[i] == '-') {
    return t.size() == i + 6 && digits_at(t, i + 1, 2) && t[i + 3] == ':' &&
           digits_at(t, i + 4, 2);
  }
  return false;
}

}  // namespace detail

// ISO-8601 calendar date (optionally followed by a time) or US MM/DD/YYYY.
inline bool is_date(std::string_view raw) {
  using detail::digits_at;
  using detail::read_int;
  std::string_view s = trim(raw);
  if (s.size() >= 10 && digits_at(s, 0, 4) && s[4] == '-' && digits_at(s, 5, 2) && s[7] == '-' &&
      digits_at(s, 8, 2)) {
    if (!detail::valid_ymd(read_int(s, 0, 4), read_int(s, 5, 2), read_int(s, 8, 2))) return false;
    if (s.size() == 10) return true;
    if (s[10] != 'T' && s[10] != ' ') return false;
    return detail::valid_time_suffix(s.substr(11));
  }
  // M/D/YYYY with one- or two-digit month and day.
  std::size_t slash1 = s.find('/');
  if (slash1 == std::string_view::npos || slash1 == 0 || slash1 > 2) return false;
  std::size_t slash2 = s.find('/', slash1 + 1);
  if (slash2 == std::string_view::npos || slash2 - slash1 - 1 == 0 || slash2 - slash1 - 1 > 2)
    return false;
  if (s.size() != slash2 + 5) return false;
  if (!digits_at(s, 0, slash1) || !digits_at(s, slash1 + 1, slash2 - slash1 - 1) ||
      !digits_at(s, slash2 + 1, 4))
    return false;
  return detail::valid_ymd(read_int(s, slash2 + 1, 4), read_int(s, 0, slash1),
                           read_int(s, slash1 + 1, slash2 - slash1 - 1));
}

// Formats part/whole as a percentage with `decimals` fractional digits,
// rounding half away from zero in exact integer arithmetic.
// format_percent(13, 500, 2) == "2.60%", format_percent(468, 9000, 1) == "5.2%".
inline std::string format_percent(std::uint64_t part, std::uint64_t whole, int decimals) {
  std::uint64_t scale = 1;
  for (int k = 0; k < decimals; ++k) scale *= 10;
  std::uint64_t units = 0;  // in 1/scale of a percent
  if (whole != 0) {
    // round(part * 100 * scale / whole), half away from zero
    unsigned __int128 num = static_cast<unsigned __int128>(part) * 100u * scale;
    units = static_cast<std::uint64_t>((2 * num + whole) / (2 * static_cast<unsigned __int128>(whole)));
  }
  std::string out = std::to_string(units / scale);
  if (decimals > 0) {
    std::string frac = std::to_string(units % scale);
    out += '.';
    out.append(static_cast<std::size_t>(decimals) - frac.size(), '0');
    out += frac;
  }
  out += '%';
  return out;
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    out.emplace_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t subst = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, subst});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace nlabel::text
