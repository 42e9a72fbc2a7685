#include "fusekit/morphism.hpp"

#include <algorithm>

#include "fusekit/error.hpp"

namespace fusekit {

Morphism Morphism::identity(const Sub& s) {
  Morphism m;
  m.src = s;
  m.dst = s;
  m.img = s.elems;
  return m;
}

Morphism Morphism::then(const Morphism& next) const {
  Morphism m;
  m.src = src;
  m.dst = next.dst;
  m.img.resize(img.size());
  for (size_t i = 0; i < img.size(); ++i) m.img[i] = next.img[next.src.position_of(img[i])];
  return m;
}

Morphism Morphism::inverse() const {
  Morphism m;
  m.src = dst;
  m.dst = src;
  m.img.resize(img.size());
  for (size_t i = 0; i < img.size(); ++i) m.img[dst.position_of(img[i])] = src.elems[i];
  return m;
}

Morphism Morphism::restrict_to(const Sub& smaller) const {
  Morphism m;
  m.src = smaller;
  std::vector<EltId> image;
  image.reserve(smaller.elems.size());
  m.img.resize(smaller.elems.size());
  for (size_t i = 0; i < smaller.elems.size(); ++i) {
    m.img[i] = img[src.position_of(smaller.elems[i])];
    image.push_back(m.img[i]);
  }
  std::sort(image.begin(), image.end());
  m.dst.parent = dst.parent;
  m.dst.elems = std::move(image);
  m.dst.gens = small_generating_set(*dst.parent, m.dst.elems);
  return m;
}

bool Morphism::is_identity_map() const {
  if (src.parent != dst.parent) return false;
  for (size_t i = 0; i < img.size(); ++i)
    if (img[i] != src.elems[i]) return false;
  return true;
}

bool Morphism::is_multiplicative() const {
  const Group& gs = *src.parent;
  const Group& gd = *dst.parent;
  for (size_t i = 0; i < src.elems.size(); ++i)
    for (size_t j = 0; j < src.elems.size(); ++j) {
      EltId xy = gs.mul(src.elems[i], src.elems[j]);
      if (apply(xy) != gd.mul(img[i], img[j])) return false;
    }
  return true;
}

Morphism AutSet::as_morphism(EltId carrier_elt) const {
  Morphism m;
  m.src = base;
  m.dst = base;
  const Perm& p = carrier->elem(carrier_elt);
  m.img.resize(base.elems.size());
  for (size_t i = 0; i < base.elems.size(); ++i) m.img[i] = base.elems[p[static_cast<int>(i)]];
  return m;
}

EltId AutSet::conjugation_class_of(EltId g) const {
  const Group& gp = *base.parent;
  std::vector<uint16_t> img(base.elems.size());
  for (size_t i = 0; i < base.elems.size(); ++i) {
    int pos = base.position_of(gp.conj(g, base.elems[i]));
    if (pos < 0) fail(ErrorCode::BadArgument, "element does not normalize the base subgroup");
    img[i] = static_cast<uint16_t>(pos);
  }
  return carrier->id_of(Perm(std::move(img)));
}

EltId carrier_id_of_map(const AutSet& a, const std::vector<EltId>& image_of_base) {
  std::vector<uint16_t> img(image_of_base.size());
  for (size_t i = 0; i < image_of_base.size(); ++i) {
    int pos = a.base.position_of(image_of_base[i]);
    if (pos < 0) fail(ErrorCode::BadArgument, "image leaves the base subgroup");
    img[i] = static_cast<uint16_t>(pos);
  }
  return a.carrier->id_of(Perm(std::move(img)));
}

AutSet induced_automizer(const Sub& ambient, const Sub& p) {
  const Group& g = *p.parent;
  Sub n = normalizer_in(ambient, p);
  std::vector<Perm> gens;
  for (EltId x : n.gens) {
    std::vector<uint16_t> img(p.elems.size());
    for (size_t i = 0; i < p.elems.size(); ++i)
      img[i] = static_cast<uint16_t>(p.position_of(g.conj(x, p.elems[i])));
    gens.emplace_back(std::move(img));
  }
  AutSet a;
  a.base = p;
  a.carrier = Group::from_generators(static_cast<int>(p.elems.size()), gens);
  return a;
}

Sub inner_automorphisms(const AutSet& a) {
  const Group& g = *a.base.parent;
  std::vector<EltId> ids;
  for (EltId x : a.base.gens) {
    std::vector<uint16_t> img(a.base.elems.size());
    for (size_t i = 0; i < a.base.elems.size(); ++i)
      img[i] = static_cast<uint16_t>(a.base.position_of(g.conj(x, a.base.elems[i])));
    ids.push_back(a.carrier->id_of(Perm(std::move(img))));
  }
  return sub_from_gens(a.carrier, ids);
}

Sub carrier_stabilizer_of_subgroup(const AutSet& a, const Sub& t) {
  std::vector<EltId> res;
  for (EltId c = 0; c < a.carrier->order(); ++c) {
    const Perm& p = a.carrier->elem(c);
    bool ok = true;
    for (EltId x : t.gens) {
      if (!t.contains(a.base.elems[p[a.base.position_of(x)]])) {
        ok = false;
        break;
      }
    }
    if (ok) res.push_back(c);
  }
  Sub s;
  s.parent = a.carrier;
  s.elems = std::move(res);
  s.gens = small_generating_set(*a.carrier, s.elems);
  return s;
}

AutSet restrict_automorphisms(const AutSet& a, const Sub& stab_elems, const Sub& t) {
  std::vector<Perm> gens;
  for (EltId c : stab_elems.gens) {
    const Perm& p = a.carrier->elem(c);
    std::vector<uint16_t> img(t.elems.size());
    for (size_t i = 0; i < t.elems.size(); ++i)
      img[i] = static_cast<uint16_t>(t.position_of(a.base.elems[p[a.base.position_of(t.elems[i])]]));
    gens.emplace_back(std::move(img));
  }
  AutSet r;
  r.base = t;
  r.carrier = Group::from_generators(static_cast<int>(t.elems.size()), gens);
  return r;
}

}  // namespace fusekit
