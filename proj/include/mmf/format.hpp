#pragma once

#include <string>

namespace mmf {

/// 17 significant digits with a '.' decimal point regardless of the
/// locale; nan and inf are spelled out.
std::string format_real(double v);

}  // namespace mmf
