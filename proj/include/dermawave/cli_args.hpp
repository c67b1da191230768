#pragma once

// Quantity lists for the command line: "100e9,1e12", "100GHz,1THz",
// "0:0.5mm:5mm" (inclusive ranges).

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dermawave/format.hpp"

namespace dermawave {

enum class Quantity { frequency, length };

class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

struct Suffix {
  std::string_view text;
  double scale;
};

// Longest suffixes first so "mm" wins over "m".
inline constexpr Suffix kFrequencySuffixes[] = {
    {"THz", 1e12}, {"GHz", 1e9}, {"MHz", 1e6}, {"kHz", 1e3}, {"Hz", 1.0}};
inline constexpr Suffix kLengthSuffixes[] = {
    {"\xC2\xB5m", 1e-6}, {"um", 1e-6}, {"mm", 1e-3}, {"cm", 1e-2}, {"m", 1.0}};

}  // namespace detail

// One number with an optional unit suffix; bare numbers are SI (Hz or m).
inline double parse_quantity(std::string_view text, Quantity q) {
  const std::string_view t = trim(text);
  auto scan = [&](auto const& table) -> std::optional<double> {
    for (const auto& s : table) {
      if (t.size() > s.text.size() && t.substr(t.size() - s.text.size()) == s.text) {
        if (auto v = parse_double(trim(t.substr(0, t.size() - s.text.size())))) return *v * s.scale;
        return std::nullopt;
      }
    }
    return parse_double(t);
  };
  const auto v = q == Quantity::frequency ? scan(detail::kFrequencySuffixes)
                                          : scan(detail::kLengthSuffixes);
  if (!v || !std::isfinite(*v))
    throw ArgumentError("cannot parse '" + std::string(text) + "' as a " +
                        (q == Quantity::frequency ? "frequency" : "length"));
  return *v;
}

// start:step:stop, inclusive of stop when it lies on the lattice (to 1e-9
// of a step).
inline std::vector<double> expand_range(double start, double step, double stop) {
  if (!(step > 0.0)) throw ArgumentError("range step must be > 0");
  if (stop < start) throw ArgumentError("range stop is below its start");
  const double span = (stop - start) / step;
  if (span > 1e7) throw ArgumentError("range expands to too many values");
  auto n = static_cast<std::int64_t>(std::floor(span + 1e-9));
  std::vector<double> out;
  for (std::int64_t i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
  if (std::abs(out.back() - stop) <= 1e-9 * step) out.back() = stop;
  return out;
}

// Comma-separated items, each a single quantity or a start:step:stop range.
inline std::vector<double> parse_quantity_list(std::string_view text, Quantity q) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = trim(text.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
    if (item.empty()) throw ArgumentError("empty item in list '" + std::string(text) + "'");
    std::vector<std::string_view> parts;
    std::size_t p = 0;
    while (true) {
      const auto colon = item.find(':', p);
      parts.push_back(item.substr(p, colon == std::string_view::npos ? colon : colon - p));
      if (colon == std::string_view::npos) break;
      p = colon + 1;
    }
    if (parts.size() == 1) {
      out.push_back(parse_quantity(parts[0], q));
    } else if (parts.size() == 3) {
      const auto r = expand_range(parse_quantity(parts[0], q), parse_quantity(parts[1], q),
                                  parse_quantity(parts[2], q));
      out.insert(out.end(), r.begin(), r.end());
    } else {
      throw ArgumentError("range '" + std::string(item) + "' must be start:step:stop");
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

// "water=0.7,protein=0.2,lipid=0.1" -> composition over water. Fractions must
// sum to 1 within 1e-6.
inline std::vector<std::pair<std::string, double>> parse_composition_literal(std::string_view text) {
  std::vector<std::pair<std::string, double>> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto item = trim(text.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ArgumentError("expected name=fraction, got '" + std::string(item) + "'");
    const auto name = trim(item.substr(0, eq));
    const auto v = parse_double(trim(item.substr(eq + 1)));
    if (name.empty() || !v) throw ArgumentError("bad composition item '" + std::string(item) + "'");
    for (const auto& [n, _] : out)
      if (n == name) throw ArgumentError("component '" + std::string(name) + "' given twice");
    out.emplace_back(std::string(name), *v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline bool looks_like_composition_literal(std::string_view text) {
  return text.find('=') != std::string_view::npos;
}

}  // namespace dermawave
