#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace logicscan {

// 64-bit FNV-1a. Used for record ids and prompt digests; both are persisted,
// so the constants must never change.
constexpr std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string to_hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

inline std::string digest_hex(std::string_view data) { return to_hex64(fnv1a64(data)); }

}  // namespace logicscan
