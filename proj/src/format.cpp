#include "erlmag/format.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <system_error>

namespace erlmag {

namespace {

int clamp_precision(int precision) { return std::clamp(precision, 1, 17); }

}  // namespace

std::string fmt_g(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", clamp_precision(precision), v);
    return buf;
}

std::string fmt_f(double v, int precision) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), "%.*f", clamp_precision(precision), v);
    return buf;
}

std::string fmt_roundtrip(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += ch;
        }
    }
    return out;
}

}  // namespace erlmag
