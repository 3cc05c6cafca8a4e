#pragma once

#include <string>
#include <string_view>

#include "rsp/engine/state.hpp"

namespace rsp::engine {

/// Hex PBKDF2-HMAC-SHA256 of `password` with `salt` (4096 iterations,
/// 32-byte output).
std::string hash_password(std::string_view password, std::string_view salt);

/// 16 random bytes, hex encoded.
std::string generate_salt();

/// Hex SHA-256 of arbitrary bytes.
std::string sha256_hex(std::string_view data);

/// Returns the principal iff the salted hash of `password` matches. Unknown
/// user and wrong password both raise Error(AuthFailed) with the same
/// message, after the same amount of hashing work.
Principal authenticate(const StoreState& state, std::string_view user_name,
                       std::string_view password);

}  // namespace rsp::engine
