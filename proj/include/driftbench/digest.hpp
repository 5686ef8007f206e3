#pragma once

#include <array>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include <openssl/evp.h>

#include "driftbench/corpus.hpp"
#include "driftbench/error.hpp"

namespace driftbench {

/// Incremental SHA-256 over byte chunks.
class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
      throw Error(ErrorKind::data, "SHA-256 initialisation failed");
    }
  }

  Sha256& update(std::string_view bytes) {
    EVP_DigestUpdate(ctx_.get(), bytes.data(), bytes.size());
    return *this;
  }

  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_.get(), md.data(), &len);
    std::string out;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
      std::snprintf(buf, sizeof(buf), "%02x", md[i]);
      out += buf;
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

inline std::string sha256_hex(std::string_view bytes) { return Sha256().update(bytes).hex(); }

/// Digest over document ids and texts, in order.
inline std::string digest_documents(std::span<const Document> docs) {
  Sha256 h;
  for (const auto& doc : docs) {
    h.update(doc.id).update(std::string_view("\0", 1)).update(doc.text).update(std::string_view("\0", 1));
  }
  return h.hex();
}

/// Digest over tokenized streams (tokens separated by spaces, streams by NUL).
inline std::string digest_streams(std::span<const TokenStream> streams) {
  Sha256 h;
  for (const auto& stream : streams) {
    for (const auto& token : stream.tokens) h.update(token).update(" ");
    h.update(std::string_view("\0", 1));
  }
  return h.hex();
}

inline std::string digest_file(const std::filesystem::path& path) { return sha256_hex(read_file(path)); }

}  // namespace driftbench
