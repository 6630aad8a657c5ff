#pragma once

// Deterministic numeric formatting for every serialized artifact: fixed
// 17-significant-digit shortest-form floats so identical inputs give
// byte-identical files and values round-trip exactly through parsing.

#include <cstdio>
#include <string>

namespace tlab {

inline std::string g17(double v) {
    if (v == 0.0) return "0";  // canonical zero: -0.0 would not survive a round-trip
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string g17(int v) { return std::to_string(v); }

}  // namespace tlab
