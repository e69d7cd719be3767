#ifndef CONTRACTIONS_CACHE_HPP_
#define CONTRACTIONS_CACHE_HPP_

// On-disk cache of enumerated families and rank certificates.  One JSON file
// per key; entries carry a schema version and a SHA-256 of their payload and
// are recomputed rather than trusted when either check fails.

#include <array>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "families.hpp"
#include "report.hpp"
#include "transformation.hpp"

namespace contractions {

  inline constexpr char const* kCacheDirEnv = "CONTRACTIONS_CACHE_DIR";
  inline constexpr int         kCacheSchemaVersion = 1;

  inline std::string sha256_hex(std::string_view data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int                               len = 0;
    EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr);
    std::string out;
    char        buf[3];
    for (unsigned i = 0; i < len; ++i) {
      std::snprintf(buf, sizeof(buf), "%02x", md[i]);
      out += buf;
    }
    return out;
  }

  struct CacheEntry {
    int            schema_version = kCacheSchemaVersion;
    std::string    key;
    nlohmann::json payload;
    std::string    checksum;
  };

  enum class CacheStatus { hit, miss, stale, corrupt };

  // Flag wins over the environment; no directory means caching is off.
  inline std::optional<std::filesystem::path>
  resolve_cache_dir(std::optional<std::string> const& flag) {
    if (flag && !flag->empty()) {
      return std::filesystem::path(*flag);
    }
    if (char const* env = std::getenv(kCacheDirEnv); env != nullptr && *env) {
      return std::filesystem::path(env);
    }
    return std::nullopt;
  }

  class Cache {
   public:
    using warning_handler = std::function<void(std::string const&)>;

    explicit Cache(std::filesystem::path dir, warning_handler warn = {})
        : _dir(std::move(dir)), _warn(std::move(warn)) {}

    [[nodiscard]] std::filesystem::path const& dir() const noexcept {
      return _dir;
    }

    [[nodiscard]] std::filesystem::path path_for(std::string const& key) const {
      std::string name;
      for (char c : key) {
        name += (std::isalnum(static_cast<unsigned char>(c)) || c == '-')
                    ? c
                    : (c == '*' ? 's' : '_');
      }
      return _dir / (name + "." + sha256_hex(key).substr(0, 8) + ".json");
    }

    void store(std::string const& key, nlohmann::json payload) const {
      std::filesystem::create_directories(_dir);
      CacheEntry e{kCacheSchemaVersion, key, std::move(payload), {}};
      e.checksum = sha256_hex(e.payload.dump());
      nlohmann::json j{{"schema_version", e.schema_version},
                       {"key", e.key},
                       {"payload", e.payload},
                       {"checksum", e.checksum}};
      auto const    final = path_for(key);
      auto const    tmp   = final.string() + ".tmp";
      {
        std::ofstream out(tmp, std::ios::trunc);
        out << j.dump(1) << '\n';
      }
      std::filesystem::rename(tmp, final);
    }

    // The stored payload when the entry is present, current and intact.
    [[nodiscard]] std::optional<nlohmann::json>
    load(std::string const& key, CacheStatus* status = nullptr) const {
      auto set = [&](CacheStatus s) {
        if (status != nullptr) {
          *status = s;
        }
      };
      auto const p = path_for(key);
      if (!std::filesystem::exists(p)) {
        set(CacheStatus::miss);
        return std::nullopt;
      }
      try {
        std::ifstream  in(p);
        nlohmann::json j = nlohmann::json::parse(in);
        if (j.at("schema_version").get<int>() != kCacheSchemaVersion) {
          set(CacheStatus::stale);
          return std::nullopt;
        }
        if (j.at("key").get<std::string>() != key
            || sha256_hex(j.at("payload").dump())
                   != j.at("checksum").get<std::string>()) {
          throw Error(ErrorCode::corrupt_cache, "checksum mismatch");
        }
        set(CacheStatus::hit);
        return j.at("payload");
      } catch (std::exception const& e) {
        if (_warn) {
          _warn("CorruptCache: ignoring " + p.string() + " (" + e.what() + ")");
        }
        set(CacheStatus::corrupt);
        return std::nullopt;
      }
    }

   private:
    std::filesystem::path _dir;
    warning_handler       _warn;
  };

  inline std::string family_cache_key(FamilyId const& id, std::size_t n,
                                       Method method) {
    return "family-" + to_spec(id) + "-n" + std::to_string(n) + "-"
           + (method == Method::filter ? "filter" : "construct");
  }

  // Enumerates through the cache when one is given.
  inline FamilySet cached_enumerate(Cache const*            cache,
                                    FamilyId const&         id,
                                    std::size_t             n,
                                    Method                  method,
                                    EnumerateOptions const& opts = {}) {
    if (cache == nullptr) {
      return enumerate(id, n, method, opts);
    }
    auto const key = family_cache_key(id, n, method);
    if (auto payload = cache->load(key)) {
      try {
        std::vector<Transformation> elems;
        for (auto const& lit : *payload) {
          elems.push_back(parse_transformation(lit.get<std::string>()));
        }
        return FamilySet(id, n, std::move(elems));
      } catch (std::exception const&) {
        // fall through and recompute
      }
    }
    auto fs = enumerate(id, n, method, opts);
    cache->store(key, literals(fs.elements()));
    return fs;
  }

}  // namespace contractions

#endif  // CONTRACTIONS_CACHE_HPP_
