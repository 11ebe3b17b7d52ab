#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace mdsfeat {

/// FNV-1a 64-bit over raw bytes; used for cache keys and manifest content
/// hashes, not for anything security sensitive.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xCBF29CE484222325ULL);

std::string hash_hex(std::uint64_t h);

/// Hash of a file's contents; throws DataError when unreadable.
std::uint64_t hash_file(const std::filesystem::path& path);

} // namespace mdsfeat
