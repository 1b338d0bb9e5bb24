#ifndef BOHM_REGIME_HPP
#define BOHM_REGIME_HPP

// Short/long distance regime boundary in SI units. This is the only part of
// the library that works in SI; everything else uses hbar = 1.

#include <cctype>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "bohm/error.hpp"
#include "bohm/io/csv.hpp"

namespace bohm::regime {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s

struct RegimeInput {
  double source_width_L0 = 0.0; ///< m
  double wavelength = 0.0;      ///< m
};

struct Transition {
  double T_seconds = 0.0;
  double R_meters = 0.0;
};

/// R = L0^2 k_c with k_c = 2 pi / wavelength, T = R / c.
inline Transition alignment_transition(const RegimeInput &in) {
  if (!(in.source_width_L0 > 0.0)) throw DomainError("alignment_transition: L0 must be positive");
  if (!(in.wavelength > 0.0)) throw DomainError("alignment_transition: wavelength must be positive");
  const double k_c = 2.0 * std::numbers::pi / in.wavelength;
  const double R = in.source_width_L0 * in.source_width_L0 * k_c;
  return {R / kSpeedOfLight, R};
}

struct AngleAsymptotes {
  double small_t = 0.0;
  double large_t = 0.0;
};

/// tan(theta) for small times, L0 m / (p t), and for large times, dp_sum / p.
inline AngleAsymptotes angle_asymptotes(double L0, double dp_sum, double p, double m, double t) {
  if (!(p > 0.0)) throw DomainError("angle_asymptotes: p must be positive");
  if (!(t > 0.0)) throw DomainError("angle_asymptotes: t must be positive");
  return {L0 * m / (p * t), dp_sum / p};
}

/// Parses a length with an optional SI suffix (m, mm, um, nm, pm, km);
/// a bare number is taken in metres.
inline double parse_length(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  std::size_t split = text.size();
  while (split > 0 && std::isalpha(static_cast<unsigned char>(text[split - 1]))) --split;
  const std::string_view number = text.substr(0, split);
  const std::string_view unit = text.substr(split);
  double scale = 0.0;
  if (unit.empty() || unit == "m") scale = 1.0;
  else if (unit == "km") scale = 1e3;
  else if (unit == "mm") scale = 1e-3;
  else if (unit == "um") scale = 1e-6;
  else if (unit == "nm") scale = 1e-9;
  else if (unit == "pm") scale = 1e-12;
  else throw DomainError("unknown length unit '" + std::string(unit) + "'");
  if (number.empty()) throw DomainError("missing number in length '" + std::string(text) + "'");
  return io::parse_double(number) * scale;
}

} // namespace bohm::regime

#endif // BOHM_REGIME_HPP
