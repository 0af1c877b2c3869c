#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "okrank/counting.hpp"

namespace okrank {

/// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view bytes);

/// On-disk RankTable store keyed by (stat, method, k, max_n, version).
///
/// Entries are binary: magic "OKRK1", length-prefixed key, record count,
/// (n, m, j, count) records, then an FNV-1a checksum of everything before it.
/// Anything that fails to parse is treated as a miss.
class TableCache {
public:
    /// An empty dir gives a disabled cache. If the directory cannot be
    /// created or written, a warning goes to `warn` and the cache disables itself.
    explicit TableCache(std::filesystem::path dir, std::ostream* warn = nullptr,
                        std::string version = OKRANK_VERSION);

    bool enabled() const { return enabled_; }

    std::string key(Stat stat, Method method, int k, int max_n) const;
    std::filesystem::path path_for(const std::string& key) const;

    std::optional<RankTable> load(Stat stat, Method method, int k, int max_n) const;

    /// Writes atomically (temp file + rename). Returns false on I/O failure.
    bool store(const RankTable& t) const;

private:
    std::filesystem::path dir_;
    std::string version_;
    bool enabled_ = false;
};

} // namespace okrank
