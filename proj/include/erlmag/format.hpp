#pragma once

#include <string>

namespace erlmag {

// printf %.Ng / %.Nf formatting with clamped precision; C locale semantics
// regardless of the process environment, so output is byte-stable.
std::string fmt_g(double v, int precision = 6);
std::string fmt_f(double v, int precision = 6);

// Shortest decimal string that parses back to exactly the same double.
std::string fmt_roundtrip(double v);

// Minimal XML attribute/text escaping for the SVG emitter.
std::string xml_escape(const std::string& s);

}  // namespace erlmag
