#include "doctest.h"
#include "orbdiam/cache.hpp"
#include "orbdiam/orbital.hpp"

#include <filesystem>
#include <fstream>

using namespace orbdiam;
namespace fs = std::filesystem;

namespace {

ActionSpec sp4_points() {
  ActionSpec s;
  s.family = Family::Sp;
  s.n = 4;
  s.q = 3;
  s.t = 1;
  s.cls = {SubspaceTag::totally_singular, SubType::na, -1};
  return s;
}

fs::path fresh_dir(const char* name) {
  auto d = fs::temp_directory_path() / name;
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("orbit cache round trip") {
  auto dir = fresh_dir("orbdiam_cache_test");
  auto s = sp4_points();
  s.cache_dir = dir.string();
  auto A = make_action(s);
  REQUIRE(A.size() == 40);
  std::size_t files = std::distance(fs::directory_iterator(dir), fs::directory_iterator{});
  CHECK(files == 4);
  auto B = make_action(s);
  REQUIRE(B.size() == A.size());
  for (std::uint32_t i = 0; i < A.size(); ++i) CHECK(std::equal(A.orbit.code(i), A.orbit.code(i) + A.orbit.width(), B.orbit.code(i)));
  for (std::size_t g = 0; g < A.orbit.num_gens(); ++g) CHECK(A.orbit.perm(g) == B.orbit.perm(g));
  auto R1 = orbitals_enumerate(A, {Strategy::pair_bfs});
  auto R2 = orbitals_enumerate(B, {Strategy::pair_bfs});
  CHECK(R1.label == R2.label);

  s.budget = 10;
  CHECK_THROWS_AS(make_action(s), BudgetExceeded);
  fs::remove_all(dir);
}

TEST_CASE("orbit cache rejects mismatched and truncated entries") {
  auto dir = fresh_dir("orbdiam_cache_test2");
  auto s = sp4_points();
  s.cache_dir = dir.string();
  auto A = make_action(s);
  OrbitCacheKey key{A.space.key(), A.key(), generators_hash(A.gens.gens),
                    std::vector<std::uint64_t>(A.orbit.code(0), A.orbit.code(0) + A.orbit.width())};
  REQUIRE(load_orbit(dir, key).has_value());
  auto other = key;
  other.gens_hash ^= 1;
  CHECK_FALSE(load_orbit(dir, other).has_value());
  fs::resize_file(dir / (key.stem() + ".codes"), 8);
  CHECK_THROWS_AS(load_orbit(dir, key), std::runtime_error);
  fs::remove_all(dir);
}
