#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace lexbridge::detail {

// FIPS 180-4 SHA-256, enough for content digests in provenance sidecars.
std::string sha256_hex(std::string_view bytes);

}  // namespace lexbridge::detail
