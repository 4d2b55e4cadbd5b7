#pragma once

#include <string>

#include "mmf/mixture.hpp"

namespace mmf {

/// {"components":[{"sigma":s,"hurst":h},...],"lambda":l?}. Schema errors
/// throw ParameterError; the values themselves are not validated here.
MixtureSpec parse_spec_json(const std::string& text);
std::string spec_to_json(const MixtureSpec& spec);

/// {"kind":"harmonic|factorial|exponential","h_lo":..,"h_hi":..,"count":..,"decay":..?}.
ScheduleFamily parse_schedule_json(const std::string& text);

/// Inline JSON when the argument starts with '{', otherwise a file path
/// (IoError if unreadable).
std::string read_json_argument(const std::string& arg);
std::string read_text_file(const std::string& path);

}  // namespace mmf
