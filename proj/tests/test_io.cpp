#include "doctest.h"
#include "fusekit/catalog.hpp"
#include "fusekit/io.hpp"

using namespace fusekit;

TEST_CASE("datum parse rejects a proper first subgroup") {
  const char* text =
      "fusion p=2 group=extraspecial:2+\n"
      "subgroup P\n"
      "word g1\n"
      "autos P\n"
      "gen 1 -> g1\n";
  CHECK_THROWS_AS((void)parse_datum_text(text), Error);
}

TEST_CASE("datum parse rejects non-automorphism lines") {
  const char* text =
      "fusion p=2 group=extraspecial:2+\n"
      "subgroup S\n"
      "word g1\n"
      "word g2\n"
      "autos S\n"
      "gen 1 -> g2 gen 2 -> g2\n";  // not injective on generators
  CHECK_THROWS_AS((void)parse_datum_text(text), Error);
}

TEST_CASE("inner datum from a file") {
  const char* text =
      "fusion p=2 group=extraspecial:2+\n"
      "# the dihedral group with its inner maps\n"
      "subgroup S\n"
      "word g1\n"
      "word g2\n"
      "autos S\n"
      "gen 1 -> g1 gen 2 -> g2 g1^2\n"
      "gen 1 -> g1^3 gen 2 -> g2\n";
  ParsedDatum pd = parse_datum_text(text);
  CHECK(pd.data.members.size() == 1);
  CHECK(pd.data.autos[0].order() >= 1);
  std::string canon = serialize_datum(pd.data, pd.group_name, pd.member_names);
  ParsedDatum pd2 = parse_datum_text(canon);
  CHECK(serialize_datum(pd2.data, pd2.group_name, pd2.member_names) == canon);
}

TEST_CASE("extra named subgroups are query handles, not members") {
  const char* text =
      "fusion p=2 group=extraspecial:2+\n"
      "subgroup S\n"
      "word g1\n"
      "word g2\n"
      "autos S\n"
      "gen 1 -> g1 gen 2 -> g2 g1^2\n"
      "gen 1 -> g1^3 gen 2 -> g2\n"
      "subgroup Z\n"
      "word g1^2\n";
  ParsedDatum pd = parse_datum_text(text);
  CHECK(pd.data.members.size() == 1);
  REQUIRE(pd.named.count("Z") == 1);
  CHECK(pd.named.at("Z").order() == 2);
}
