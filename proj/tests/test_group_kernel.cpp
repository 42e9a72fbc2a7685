#include <algorithm>

#include "doctest.h"
#include "fusekit/caps.hpp"
#include "fusekit/catalog.hpp"
#include "fusekit/group.hpp"
#include "fusekit/isomorphism.hpp"
#include "fusekit/io.hpp"
#include "fusekit/morphism.hpp"

using namespace fusekit;

TEST_CASE("empty generating set gives the trivial group") {
  GroupPtr g = Group::from_generators(1, {});
  CHECK(g->order() == 1);
}

TEST_CASE("sym(3) from a transposition and a 3-cycle") {
  Perm a({1, 0, 2});
  Perm b({1, 2, 0});
  GroupPtr g = Group::from_generators(3, {a, b});
  CHECK(g->order() == 6);
  CHECK_FALSE(g->is_abelian());
  CHECK(g->is_soluble());
}

TEST_CASE("sylow 2-subgroup of alt(8) has order 64") {
  GroupPtr alt8 = alternating_group(8);
  CHECK(alt8->order() == 20160);
  Sub syl = sylow_subgroup(alt8, 2);
  CHECK(syl.order() == 64);
}

TEST_CASE("center and sylow of small groups") {
  GroupPtr es = extraspecial_group(3, '+');
  CHECK(es->order() == 27);
  CHECK(center(es).order() == 3);
  for (EltId x = 0; x < es->order(); ++x) CHECK(es->element_order(x) <= 3);

  GroupPtr s4 = symmetric_group(4);
  Sub syl2 = sylow_subgroup(s4, 2);
  CHECK(syl2.order() == 8);
  CHECK_FALSE(sub_is_abelian(syl2));
  CHECK_FALSE(sub_is_quaternion(syl2));  // dihedral

  GroupPtr s3 = symmetric_group(3);
  Sub syl3 = sylow_subgroup(s3, 3);
  Sub n = normalizer(syl3);
  CHECK(n.order() == 6);
}

TEST_CASE("quotient is the regular action on cosets") {
  GroupPtr s4 = symmetric_group(4);
  Sub v4 = sub_from_gens(s4, {s4->id_of(Perm({1, 0, 3, 2})), s4->id_of(Perm({2, 3, 0, 1}))});
  CHECK(v4.order() == 4);
  Quotient q = quotient(s4, v4);
  CHECK(q.group->order() == 6);
  for (EltId a : s4->generator_ids())
    for (EltId b : s4->generator_ids())
      CHECK(q.project[s4->mul(a, b)] == q.group->mul(q.project[a], q.project[b]));
}

TEST_CASE("quotient by non-normal subgroup fails") {
  GroupPtr s3 = symmetric_group(3);
  Sub c2 = sub_from_gens(s3, {s3->id_of(Perm({1, 0, 2}))});
  CHECK_THROWS_AS((void)quotient(s3, c2), Error);
}

TEST_CASE("induced automizer of a sylow in sym(3)") {
  GroupPtr s3 = symmetric_group(3);
  Sub syl3 = sylow_subgroup(s3, 3);
  AutSet a = induced_automizer(whole_group(s3), syl3);
  CHECK(a.order() == 2);
  GroupPtr c6 = cyclic_group(6);
  Sub c2 = sylow_subgroup(c6, 2);
  AutSet t = induced_automizer(whole_group(c6), c2);
  CHECK(t.order() == 1);
}

TEST_CASE("morphism composition and multiplicativity") {
  GroupPtr s4 = symmetric_group(4);
  Sub syl = sylow_subgroup(s4, 2);
  AutSet a = induced_automizer(whole_group(s4), syl);
  for (EltId c = 0; c < a.carrier->order(); ++c) {
    Morphism m = a.as_morphism(c);
    CHECK(m.is_multiplicative());
    Morphism inv = m.inverse();
    CHECK(m.then(inv).is_identity_map());
  }
}

TEST_CASE("group file format round trips") {
  GroupPtr g = extraspecial_group(3, '+');
  std::string text = serialize_group(g);
  GroupPtr h = parse_group_text(text);
  CHECK(h->order() == 27);
  CHECK(serialize_group(h) == text);
  CHECK_THROWS_AS((void)parse_group_text("perm 3\n1 2\n"), Error);
  CHECK_THROWS_AS((void)parse_group_text("perm 3\n1 1 2\n"), Error);
}

TEST_CASE("enumeration caps raise structured errors") {
  int64_t saved_enum = caps().enumeration;
  int64_t saved_aut = caps().automorphisms;
  caps().enumeration = 100;
  CHECK_THROWS_AS((void)symmetric_group(5), Error);
  caps().enumeration = saved_enum;
  caps().automorphisms = 1000;
  // Aut(2^4) has order 20160, well past the lowered cap
  bool threw = false;
  try {
    (void)automorphism_group(whole_group(elementary_abelian(2, 4)));
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::AutCapExceeded;
  }
  caps().automorphisms = saved_aut;
  CHECK(threw);
}

TEST_CASE("caps environment variable can only lower without the raise flag") {
  int64_t saved_enum = caps().enumeration;
  setenv("FUSEKIT_CAPS", "enum=500", 1);
  apply_caps_env(false);
  CHECK(caps().enumeration == 500);
  setenv("FUSEKIT_CAPS", "enum=999999999", 1);
  apply_caps_env(false);
  CHECK(caps().enumeration == 500);  // raising ignored
  apply_caps_env(true);
  CHECK(caps().enumeration == 999999999);
  unsetenv("FUSEKIT_CAPS");
  caps().enumeration = saved_enum;
}
