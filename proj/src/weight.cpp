#include "wkc/weight.hpp"

#include <cstdio>
#include <cstdlib>

namespace wkc {

std::string Weight::str() const {
    if (is_infinite()) return "inf";
    // Integers print without a fraction; anything else round-trips.
    if (value_ == static_cast<double>(static_cast<long long>(value_)) &&
        value_ < 9.007199254740992e15) {
        return std::to_string(static_cast<long long>(value_));
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value_);
    return buf;
}

Weight Weight::parse(const std::string& text) {
    if (text == "inf" || text == "+inf" || text == "infinity") return infinity();
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw DomainError("malformed weight: '" + text + "'");
    return finite(v);
}

} // namespace wkc
