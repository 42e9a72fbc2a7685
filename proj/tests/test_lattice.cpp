#include "doctest.h"
#include "fusekit/catalog.hpp"
#include "fusekit/lattice.hpp"
#include "support/oracles.hpp"

using namespace fusekit;

TEST_CASE("quaternion group has 6 subgroups") {
  GroupPtr q8 = extraspecial_group(2, '-');
  auto lat = subgroup_lattice(q8);
  CHECK(lat->total_subgroups() == 6);
}

TEST_CASE("elementary abelian 3^2 has 6 subgroups") {
  GroupPtr g = elementary_abelian(3, 2);
  auto lat = subgroup_lattice(g);
  CHECK(lat->total_subgroups() == 6);
}

TEST_CASE("lattice matches the brute-force oracle on mixed groups") {
  for (const char* name : {"sym:4", "alt:5", "extraspecial:3+", "wreath:2", "sylS:6,2"}) {
    GroupPtr g = group_from_catalog(name);
    auto lat = subgroup_lattice(g);
    auto expect = oracle::all_subgroups(g);
    REQUIRE(lat->total_subgroups() == static_cast<int64_t>(expect.size()));
    for (const auto& set : expect) CHECK(lat->find(set).first >= 0);
  }
}

TEST_CASE("class count equals sum of normalizer indexes") {
  GroupPtr g = group_from_catalog("sym:4");
  auto lat = subgroup_lattice(g);
  int64_t total = 0;
  for (size_t c = 0; c < lat->class_count(); ++c) {
    Sub rep = lat->rep(static_cast<int>(c));
    Sub n = normalizer(rep);
    total += g->order() / n.order();
  }
  CHECK(total == lat->total_subgroups());
}

TEST_CASE("sylow 3 of alt(9): raw subgroup count pinned by the oracle") {
  GroupPtr g = group_from_catalog("sylA:9,3");
  auto expect = oracle::all_subgroups(g);
  auto lat = subgroup_lattice(g);
  CHECK(lat->total_subgroups() == static_cast<int64_t>(expect.size()));
  // frozen from the subset-closure oracle run on the 81-element group
  CHECK(lat->total_subgroups() == 50);
}

TEST_CASE("maximal subgroups of alt(5)") {
  GroupPtr a5 = alternating_group(5);
  auto lat = subgroup_lattice(a5);
  Sub whole = whole_group(a5);
  auto maxes = maximal_subgroups_in(*lat, whole);
  REQUIRE(maxes.size() == 3);
  CHECK(maxes[0].order() == 12);
  CHECK(maxes[1].order() == 10);
  CHECK(maxes[2].order() == 6);
}
