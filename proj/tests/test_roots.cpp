// Root systems, diagram automorphisms, and the relative projection with its
// fibers. Derived values are recomputed by brute-force projection oracles.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "relchev/relative_roots.hpp"

#include <set>

using namespace relchev;

namespace {

// independent oracle: project the simple-coefficient vector of every root by
// summing coordinates over the Gamma-orbits of J, then collect nonzero images
struct OracleProj {
  std::set<IVec> rel;
  std::map<IVec, std::vector<int>> fibers;  // image -> source root indices
};

OracleProj brute_projection(const RootSystem& rs, const std::vector<std::vector<int>>& orbits) {
  OracleProj o;
  for (size_t r = 0; r < rs.roots.size(); ++r) {
    IVec img(orbits.size(), 0);
    for (size_t k = 0; k < orbits.size(); ++k)
      for (int j : orbits[k]) img[k] += rs.simple_coeffs[r][static_cast<size_t>(j)];
    if (std::any_of(img.begin(), img.end(), [](int x) { return x != 0; })) {
      o.rel.insert(img);
      o.fibers[img].push_back(static_cast<int>(r));
    }
  }
  return o;
}

}  // namespace

TEST_CASE("root system construction") {
  RootSystem a2 = build_root_system('A', 2);
  CHECK(a2.roots.size() == 6);
  RootSystem c2 = build_root_system('C', 2);
  CHECK(c2.roots.size() == 8);
  // long roots of C_2 are +-2e_i
  int longs = 0;
  for (const auto& r : c2.roots)
    if (detail::ip(r, r) == 4) ++longs;
  CHECK(longs == 4);
  RootSystem a1 = build_root_system('A', 1);
  CHECK(a1.roots.size() == 2);
  CHECK(a1.simple.size() == 1);
}

TEST_CASE("heights") {
  RootSystem a2 = build_root_system('A', 2);
  const IVec& s0 = a2.roots[static_cast<size_t>(a2.simple[0])];
  CHECK(height(a2, s0) == 1);
  IVec high{1, 0, -1};  // alpha1 + alpha2 in the A_2 realization
  CHECK(height(a2, high) == 2);
  RootSystem c2 = build_root_system('C', 2);
  IVec twoe0{2, 0};  // 2*alpha1 + alpha2
  CHECK(height(c2, twoe0) == 3);
  CHECK_THROWS_AS(height(a2, IVec{5, 5, 5}), RingError);
}

TEST_CASE("diagram automorphism groups") {
  auto a3 = automorphism_group(build_root_system('A', 3));
  REQUIRE(a3.size() == 1);
  CHECK(a3[0].perm == IVec{2, 1, 0});
  CHECK(automorphism_group(build_root_system('C', 2)).empty());
  CHECK(automorphism_group(build_root_system('A', 1)).empty());
}

TEST_CASE("relative projection: A_3 with J={a2}") {
  RootSystem rs = build_root_system('A', 3);
  RelativeRootDatum d = relative_projection(rs, {1}, {});
  OracleProj o = brute_projection(rs, {{1}});
  CHECK(d.rel_roots.size() == o.rel.size());
  CHECK(d.rel_roots.size() == 2);
  for (const auto& v : d.rel_roots) CHECK(o.rel.count(v) == 1);
  // the positive relative root has a fiber of size 4
  IVec pos{1};
  CHECK(fiber(d, pos, 1).size() == 4);
  CHECK(fiber(d, pos, 1) == o.fibers.at(pos));
  // no doubled root here
  CHECK(fiber(d, pos, 2).empty());
}

TEST_CASE("relative projection: C_2 with J={a1} is BC_1") {
  RootSystem rs = build_root_system('C', 2);
  RelativeRootDatum d = relative_projection(rs, {0}, {});
  OracleProj o = brute_projection(rs, {{0}});
  std::vector<IVec> expect{{-2}, {-1}, {1}, {2}};
  CHECK(d.rel_roots == expect);
  CHECK(o.rel == std::set<IVec>(expect.begin(), expect.end()));
  CHECK(fiber(d, {1}, 1).size() == 2);
  CHECK(fiber(d, {1}, 2).size() == 1);
  CHECK(fiber(d, {1}, 1) == o.fibers.at(IVec{1}));
  // (alpha-bar, 2) fiber is exactly the long root 2a1+a2
  CHECK(fiber(d, {1}, 2) == std::vector<int>{rs.index_of({2, 0})});
}

TEST_CASE("relative projection: A_3 with J={a1,a3} and the flip is BC_1") {
  RootSystem rs = build_root_system('A', 3);
  RelativeRootDatum d = relative_projection(rs, {0, 2}, {{2, 1, 0}});
  OracleProj o = brute_projection(rs, {{0, 2}});
  std::vector<IVec> expect{{-2}, {-1}, {1}, {2}};
  CHECK(d.rel_roots == expect);
  CHECK(o.rel == std::set<IVec>(expect.begin(), expect.end()));
  // 2a-bar is the image of a1+a2+a3
  CHECK(fiber(d, {1}, 2) == std::vector<int>{rs.index_of({1, 0, 0, -1})});
}

TEST_CASE("relative heights and positivity") {
  RootSystem rs = build_root_system('A', 3);
  RelativeRootDatum d = relative_projection(rs, {1}, {});
  CHECK(relative_height(d, {1}) == 1);
  CHECK(relative_height(d, {-1}) == -1);
  CHECK(rel_is_positive({1}));
  CHECK(!rel_is_positive({-1}));
  RelativeRootDatum bc = relative_projection(build_root_system('C', 2), {0}, {});
  CHECK(relative_height(bc, {2}) == 2);
  CHECK_THROWS_AS(relative_height(bc, IVec{7}), RingError);
}

TEST_CASE("closedness of relative subsets") {
  RelativeRootDatum bc = relative_projection(build_root_system('C', 2), {0}, {});
  // all positives are closed
  std::vector<IVec> pos{{1}, {2}};
  CHECK(is_closed(bc, pos));
  // {a-bar} misses a-bar + a-bar = 2a-bar
  CHECK(!is_closed(bc, {{1}}));
  // {2a-bar} is closed: 4a-bar is not a relative root
  CHECK(is_closed(bc, {{2}}));
}

TEST_CASE("J must be Gamma-invariant") {
  RootSystem rs = build_root_system('A', 3);
  CHECK_THROWS_AS(relative_projection(rs, {0}, {{2, 1, 0}}), RingError);
}
