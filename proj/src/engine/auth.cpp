#include "rsp/engine/auth.hpp"

#include <array>
#include <stdexcept>

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/rand.h>

#include "rsp/wire/error.hpp"

namespace rsp::engine {

namespace {

constexpr int kIterations = 4096;

std::string to_hex(const unsigned char* data, std::size_t size) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(size * 2);
  for (std::size_t i = 0; i < size; ++i) {
    out += kDigits[data[i] >> 4];
    out += kDigits[data[i] & 0xF];
  }
  return out;
}

// Hashed when the user is unknown so both failure paths cost the same.
const std::string& dummy_salt() {
  static const std::string salt = generate_salt();
  return salt;
}

}  // namespace

std::string hash_password(std::string_view password, std::string_view salt) {
  std::array<unsigned char, 32> out{};
  if (PKCS5_PBKDF2_HMAC(password.data(), static_cast<int>(password.size()),
                        reinterpret_cast<const unsigned char*>(salt.data()),
                        static_cast<int>(salt.size()), kIterations, EVP_sha256(),
                        static_cast<int>(out.size()), out.data()) != 1)
    throw std::runtime_error("PBKDF2 failed");
  return to_hex(out.data(), out.size());
}

std::string generate_salt() {
  std::array<unsigned char, 16> bytes{};
  if (RAND_bytes(bytes.data(), static_cast<int>(bytes.size())) != 1)
    throw std::runtime_error("RAND_bytes failed");
  return to_hex(bytes.data(), bytes.size());
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  return to_hex(md.data(), len);
}

Principal authenticate(const StoreState& state, std::string_view user_name,
                       std::string_view password) {
  auto it = state.users.find(std::string(user_name));
  if (it == state.users.end()) {
    (void)hash_password(password, dummy_salt());
    throw Error(ErrorCode::AuthFailed, "invalid user name or password");
  }
  const UserRecord& user = it->second;
  std::string computed = hash_password(password, user.salt);
  if (computed.size() != user.password_hash.size() ||
      CRYPTO_memcmp(computed.data(), user.password_hash.data(), computed.size()) != 0)
    throw Error(ErrorCode::AuthFailed, "invalid user name or password");
  return Principal{it->first, user.grants};
}

}  // namespace rsp::engine
