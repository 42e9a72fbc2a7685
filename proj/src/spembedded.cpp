#include "fusekit/spembedded.hpp"

#include <algorithm>
#include <functional>

#include "fusekit/error.hpp"
#include "fusekit/lattice.hpp"

namespace fusekit {

bool has_strongly_p_embedded_sub(const Sub& h, int p) {
  if (h.order() % p != 0) return false;
  Sub syl = sylow_subgroup_of(h, p);
  if (is_normal_in(h, syl)) return false;
  // connectivity of the Sylow intersection graph
  auto sylows = subgroup_conjugates(h, syl);
  size_t n = sylows.size();
  std::vector<int> comp(n);
  for (size_t i = 0; i < n; ++i) comp[i] = static_cast<int>(i);
  std::function<int(int)> findc = [&](int x) {
    while (comp[x] != x) {
      comp[x] = comp[comp[x]];
      x = comp[x];
    }
    return x;
  };
  EltId id = h.parent->identity();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      bool meet = false;
      auto a = sylows[i].begin();
      auto b = sylows[j].begin();
      while (a != sylows[i].end() && b != sylows[j].end()) {
        if (*a == *b) {
          if (*a != id) {
            meet = true;
            break;
          }
          ++a;
          ++b;
        } else if (*a < *b) {
          ++a;
        } else {
          ++b;
        }
      }
      if (meet) {
        int ra = findc(static_cast<int>(i));
        int rb = findc(static_cast<int>(j));
        if (ra != rb) comp[ra] = rb;
      }
    }
  int root0 = findc(0);
  for (size_t i = 1; i < n; ++i)
    if (findc(static_cast<int>(i)) != root0) return true;
  return false;
}

bool has_strongly_p_embedded(const GroupPtr& h, int p) {
  return has_strongly_p_embedded_sub(whole_group(h), p);
}

SylowShape sylow_shape_filter(const Sub& t, int p) {
  if (!is_p_group(t, p)) fail(ErrorCode::BadArgument, "sylow_shape_filter expects a p-group");
  if (sub_is_cyclic(t)) return SylowShape::Cyclic;
  if (p == 2 && sub_is_quaternion(t)) return SylowShape::Quaternion;
  if (t.order() >= static_cast<int64_t>(p) * p && is_elementary_abelian(t, p))
    return SylowShape::ElementaryAbelian;
  // at order p^3 the only remaining admissible shape is extraspecial, and
  // only for p in {2,3,5} (unitary, Ree and Suzuki contexts)
  if ((p == 2 || p == 3 || p == 5) && t.order() == static_cast<int64_t>(p) * p * p) {
    Sub z = center_of(t);
    if (z.order() == p && derived_subgroup(t).order() == p && !sub_is_abelian(t))
      return SylowShape::OtherAdmissible;
  }
  // every exceptional family beyond that has order at least p^6; do not
  // discriminate past desk scale
  int64_t p6 = 1;
  for (int i = 0; i < 6; ++i) p6 *= p;
  if (t.order() >= p6) return SylowShape::OtherAdmissible;
  return SylowShape::Inadmissible;
}

bool shape_admissible(SylowShape s) { return s != SylowShape::Inadmissible; }

std::string shape_name(SylowShape s) {
  switch (s) {
    case SylowShape::Cyclic:
      return "cyclic";
    case SylowShape::Quaternion:
      return "quaternion";
    case SylowShape::ElementaryAbelian:
      return "elementary-abelian";
    case SylowShape::OtherAdmissible:
      return "other-admissible";
    case SylowShape::Inadmissible:
      return "inadmissible";
  }
  return "?";
}

bool soluble_spe_filter(const Sub& k, int p) {
  if (!sub_is_soluble(k)) return true;  // filter does not apply
  Sub syl = sylow_subgroup_of(k, p);
  return sub_is_cyclic(syl) || (p == 2 && sub_is_quaternion(syl));
}

}  // namespace fusekit
