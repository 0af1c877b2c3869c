#include "okrank/cache.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <system_error>

namespace okrank {

namespace {

constexpr char kMagic[] = "OKRK1";
constexpr std::size_t kMagicLen = 5;

template <class T>
void put(std::string& buf, T v)
{
    char raw[sizeof(T)];
    std::memcpy(raw, &v, sizeof(T));
    buf.append(raw, sizeof(T));
}

template <class T>
bool get(std::string_view& in, T& v)
{
    if (in.size() < sizeof(T)) {
        return false;
    }
    std::memcpy(&v, in.data(), sizeof(T));
    in.remove_prefix(sizeof(T));
    return true;
}

std::string hex64(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

} // namespace

std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

TableCache::TableCache(std::filesystem::path dir, std::ostream* warn, std::string version)
    : dir_(std::move(dir)), version_(std::move(version))
{
    if (dir_.empty()) {
        return;
    }
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    const auto probe = dir_ / ".okrank-probe";
    bool ok = !ec;
    if (ok) {
        std::ofstream f(probe, std::ios::binary);
        ok = static_cast<bool>(f << "x");
    }
    std::filesystem::remove(probe, ec);
    if (!ok) {
        if (warn) {
            *warn << "warning: cache directory " << dir_ << " is not writable; cache disabled\n";
        }
        return;
    }
    enabled_ = true;
}

std::string TableCache::key(Stat stat, Method method, int k, int max_n) const
{
    return to_string(stat) + ";" + to_string(method) + ";" + std::to_string(k) + ";" + std::to_string(max_n) + ";" +
           version_;
}

std::filesystem::path TableCache::path_for(const std::string& key) const
{
    return dir_ / (hex64(fnv1a64(key)) + ".okrk");
}

std::optional<RankTable> TableCache::load(Stat stat, Method method, int k, int max_n) const
{
    if (!enabled_) {
        return std::nullopt;
    }
    const std::string want = key(stat, method, k, max_n);
    std::ifstream f(path_for(want), std::ios::binary);
    if (!f) {
        return std::nullopt;
    }
    const std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (data.size() < kMagicLen + sizeof(std::uint64_t) || data.compare(0, kMagicLen, kMagic) != 0) {
        return std::nullopt;
    }
    const std::string_view body(data.data(), data.size() - sizeof(std::uint64_t));
    std::uint64_t stored_sum = 0;
    std::memcpy(&stored_sum, data.data() + body.size(), sizeof stored_sum);
    if (stored_sum != fnv1a64(body)) {
        return std::nullopt;
    }
    std::string_view in = body.substr(kMagicLen);
    std::uint32_t key_len = 0;
    if (!get(in, key_len) || in.size() < key_len || in.substr(0, key_len) != want) {
        return std::nullopt;
    }
    in.remove_prefix(key_len);
    std::uint64_t count = 0;
    if (!get(in, count) || in.size() != count * (3 * sizeof(std::int32_t) + sizeof(std::int64_t))) {
        return std::nullopt;
    }
    RankTable t{stat, method, k, max_n, {}};
    for (std::uint64_t i = 0; i < count; ++i) {
        std::int32_t n = 0, m = 0, j = 0;
        std::int64_t c = 0;
        get(in, n);
        get(in, m);
        get(in, j);
        get(in, c);
        t.entries[{n, m, j}] = c;
    }
    return t;
}

bool TableCache::store(const RankTable& t) const
{
    if (!enabled_) {
        return false;
    }
    const std::string k = key(t.stat, t.method, t.k, t.max_n);
    std::string buf(kMagic, kMagicLen);
    put(buf, static_cast<std::uint32_t>(k.size()));
    buf += k;
    put(buf, static_cast<std::uint64_t>(t.entries.size()));
    for (const auto& [key, c] : t.entries) {
        put(buf, static_cast<std::int32_t>(key.n));
        put(buf, static_cast<std::int32_t>(key.m));
        put(buf, static_cast<std::int32_t>(key.j));
        put(buf, static_cast<std::int64_t>(c));
    }
    put(buf, fnv1a64(buf));

    const auto final_path = path_for(k);
    auto tmp = final_path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f.write(buf.data(), static_cast<std::streamsize>(buf.size()))) {
            return false;
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, final_path, ec);
    return !ec;
}

} // namespace okrank
