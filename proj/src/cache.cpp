#include "orbdiam/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace orbdiam {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

void fnv(std::uint64_t& h, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= kFnvPrime;
  }
}

void fnv(std::uint64_t& h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= kFnvPrime;
  }
  fnv(h, s.size());
}

template <class T>
void write_raw(const fs::path& p, const std::vector<T>& v) {
  std::ofstream out(p, std::ios::binary);
  out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(T)));
  if (!out) throw std::runtime_error("cannot write " + p.string());
}

template <class T>
std::vector<T> read_raw(const fs::path& p, std::size_t count) {
  std::ifstream in(p, std::ios::binary);
  std::vector<T> v(count);
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(count * sizeof(T)));
  if (!in || in.peek() != std::char_traits<char>::eof()) throw std::runtime_error("truncated cache file " + p.string());
  return v;
}

void put_varint(std::string& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

nlohmann::ordered_json sidecar(const OrbitCacheKey& key) {
  nlohmann::ordered_json j;
  j["space"] = nlohmann::ordered_json::parse(key.space_key);
  j["action"] = nlohmann::ordered_json::parse(key.action_key);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(key.gens_hash));
  j["gens_hash"] = buf;
  j["base"] = key.base;
  return j;
}

}  // namespace

std::optional<fs::path> cache_dir_from_env() {
  const char* d = std::getenv("ORBDIAM_CACHE_DIR");
  if (!d || !*d) return std::nullopt;
  return fs::path(d);
}

std::uint64_t generators_hash(const std::vector<GroupElement>& gens) {
  std::uint64_t h = kFnvOffset;
  for (const auto& g : gens) {
    fnv(h, static_cast<std::uint64_t>(g.mat.rows()));
    for (Elem e : g.mat.data()) fnv(h, e.value);
    fnv(h, g.frob);
    fnv(h, g.flip ? 1 : 0);
  }
  return h;
}

std::string OrbitCacheKey::stem() const {
  std::uint64_t h = kFnvOffset;
  fnv(h, space_key);
  fnv(h, action_key);
  fnv(h, gens_hash);
  for (auto w : base) fnv(h, w);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void save_orbit(const fs::path& dir, const OrbitCacheKey& key, const Orbit& orbit) {
  fs::create_directories(dir);
  const fs::path stem = dir / key.stem();
  std::vector<std::uint64_t> codes(orbit.code(0), orbit.code(0) + orbit.size() * orbit.width());
  std::vector<std::uint32_t> perms;
  perms.reserve(orbit.size() * orbit.num_gens());
  for (std::size_t s = 0; s < orbit.num_gens(); ++s) perms.insert(perms.end(), orbit.perm(s).begin(), orbit.perm(s).end());
  std::string words;
  for (std::uint32_t i = 0; i < orbit.size(); ++i) {
    auto w = orbit.word(i);
    put_varint(words, w.size());
    for (auto s : w) put_varint(words, s);
  }
  // Each file is written under a private name and renamed, so concurrent writers of one key
  // never interleave; the sidecar goes last and marks a complete entry.
  const std::string tmp = "." + std::to_string(std::random_device{}()) + ".tmp";
  auto place = [&](const char* ext, auto&& write) {
    fs::path final_path = fs::path(stem).concat(ext), tmp_path = fs::path(final_path).concat(tmp);
    write(tmp_path);
    fs::rename(tmp_path, final_path);
  };
  place(".codes", [&](const fs::path& p) { write_raw(p, codes); });
  place(".perms", [&](const fs::path& p) { write_raw(p, perms); });
  place(".words", [&](const fs::path& p) { std::ofstream(p, std::ios::binary) << words; });
  auto j = sidecar(key);
  j["size"] = orbit.size();
  j["width"] = orbit.width();
  j["num_gens"] = orbit.num_gens();
  place(".json", [&](const fs::path& p) { std::ofstream(p) << j.dump(1) << '\n'; });
}

std::optional<Orbit> load_orbit(const fs::path& dir, const OrbitCacheKey& key) {
  const fs::path stem = dir / key.stem();
  std::ifstream side(fs::path(stem).concat(".json"));
  if (!side) return std::nullopt;
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(side);
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
  auto want = sidecar(key);
  for (const auto& [k, v] : want.items())
    if (!j.contains(k) || j[k] != v) return std::nullopt;
  const auto size = j["size"].get<std::size_t>();
  const auto width = j["width"].get<std::size_t>();
  const auto ngens = j["num_gens"].get<std::size_t>();
  auto codes = read_raw<std::uint64_t>(fs::path(stem).concat(".codes"), size * width);
  auto flat = read_raw<std::uint32_t>(fs::path(stem).concat(".perms"), size * ngens);
  std::vector<std::vector<std::uint32_t>> perms(ngens);
  for (std::size_t s = 0; s < ngens; ++s) perms[s].assign(flat.begin() + s * size, flat.begin() + (s + 1) * size);
  return orbit_from_parts(width, std::move(codes), std::move(perms));
}

}  // namespace orbdiam
