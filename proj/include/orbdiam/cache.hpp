#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "orbdiam/group.hpp"
#include "orbdiam/orbit.hpp"

namespace orbdiam {

/// Directory named by ORBDIAM_CACHE_DIR, or nullopt when unset or empty.
std::optional<std::filesystem::path> cache_dir_from_env();

/// FNV-1a over the generator matrices, Frobenius exponents and flips, in order.
std::uint64_t generators_hash(const std::vector<GroupElement>& gens);

/// Identity of a cached orbit. Two runs share a cache entry iff all fields agree.
struct OrbitCacheKey {
  std::string space_key;   // ClassicalSpace::key()
  std::string action_key;  // ActionInstance::key()
  std::uint64_t gens_hash = 0;
  std::vector<std::uint64_t> base;
  std::string stem() const;  // file name stem, hex digest of every field
};

/// Layout: <stem>.codes (point codes in orbit order, little-endian u64), <stem>.perms
/// (generator permutations, u32), <stem>.words (transversal words as varint sequences)
/// and <stem>.json (sidecar with the key fields and the size).
void save_orbit(const std::filesystem::path& dir, const OrbitCacheKey& key, const Orbit& orbit);

/// nullopt when absent or when the sidecar disagrees with `key`; throws std::runtime_error on
/// truncated files.
std::optional<Orbit> load_orbit(const std::filesystem::path& dir, const OrbitCacheKey& key);

}  // namespace orbdiam
