#include "fusekit/saturation.hpp"

#include <algorithm>

#include "fusekit/error.hpp"
#include "fusekit/queries.hpp"

namespace fusekit {

Sub extension_control_subgroup(const FusionSystem& f, const Morphism& alpha) {
  const Group& s = *f.group();
  Sub nsp = normalizer(alpha.src);
  AutSet aut_s_q = induced_automizer(whole_group(f.group()), alpha.dst);
  Morphism ainv = alpha.inverse();
  std::vector<EltId> result;
  for (EltId g : nsp.elems) {
    // alpha^{-1} c_g alpha as a map on Q = alpha.dst
    std::vector<uint16_t> img(alpha.dst.elems.size());
    bool ok = true;
    for (size_t i = 0; i < alpha.dst.elems.size(); ++i) {
      EltId back = ainv.img[i];  // element of P
      EltId conj = s.conj(g, back);
      int pos = alpha.src.position_of(conj);
      if (pos < 0) {
        ok = false;
        break;
      }
      int qpos = alpha.dst.position_of(alpha.img[pos]);
      img[i] = static_cast<uint16_t>(qpos);
    }
    if (!ok) continue;
    if (aut_s_q.carrier->try_id_of(Perm(std::move(img)))) result.push_back(g);
  }
  Sub out;
  out.parent = f.group();
  out.elems = std::move(result);
  out.gens = small_generating_set(s, out.elems);
  return out;
}

bool surjectivity_property(const FusionSystem& f, const Sub& p) {
  const FusionGraph& g = f.graph();
  Sub whole = whole_group(f.group());
  Sub nsp = normalizer(p);
  Sub csp = centralizer_in(whole, p);
  Sub floor = join(csp, p);  // C_S(P)P
  AutSet aut_p = f.automizer(p);

  for (const Sub& r : g.subgroups()) {
    if (r.elems.size() < floor.elems.size() || r.elems.size() > nsp.elems.size()) continue;
    if (!std::includes(r.elems.begin(), r.elems.end(), floor.elems.begin(), floor.elems.end()))
      continue;
    if (!std::includes(nsp.elems.begin(), nsp.elems.end(), r.elems.begin(), r.elems.end()))
      continue;
    AutSet aut_r = f.automizer(r);
    // N_{Aut_F(R)}(P), restricted to P
    Sub stab = carrier_stabilizer_of_subgroup(aut_r, p);
    AutSet restricted = restrict_automorphisms(aut_r, stab, p);
    AutSet aut_r_on_p = induced_automizer(r, p);
    std::vector<EltId> target_gens;
    for (EltId c : aut_r_on_p.carrier->generator_ids()) {
      auto id = aut_p.carrier->try_id_of(aut_r_on_p.carrier->elem(c));
      if (!id) return false;  // Aut_R(P) must embed in Aut_F(P)
      target_gens.push_back(*id);
    }
    Sub aut_r_p_sub = sub_from_gens(aut_p.carrier, target_gens);
    Sub target = normalizer_in(whole_group(aut_p.carrier), aut_r_p_sub);
    // image of the restriction inside Aut_F(P)
    std::vector<EltId> image_gens;
    for (EltId c : restricted.carrier->generator_ids()) {
      auto id = aut_p.carrier->try_id_of(restricted.carrier->elem(c));
      if (!id) return false;  // restriction escapes Aut_F(P): not generated consistently
      image_gens.push_back(*id);
    }
    Sub image = sub_from_gens(aut_p.carrier, image_gens);
    if (image.elems != target.elems) return false;
  }
  return true;
}

std::string failure_name(SaturationFailure f) {
  switch (f) {
    case SaturationFailure::None:
      return "none";
    case SaturationFailure::NotFullyAutomizedS:
      return "not-fully-automized-S";
    case SaturationFailure::NoSurjectiveRep:
      return "no-surjective-rep";
    case SaturationFailure::Generation:
      return "generation";
  }
  return "?";
}

SaturationReport is_saturated(const FusionSystem& f) {
  const FusionGraph& g = f.graph();
  SaturationReport report;

  // (1) S fully automized
  Sub whole = whole_group(f.group());
  int s_idx = g.subgroup_index(whole.elems);
  AutSet aut_f_s = f.rep_automizer(g.rep_index_of(s_idx));
  Sub inn = inner_automorphisms(aut_f_s);
  if (inn.order() != p_part(aut_f_s.order(), f.prime())) {
    report.verdict = false;
    report.failing_class = whole.elems;
    report.failing_condition = SaturationFailure::NotFullyAutomizedS;
    return report;
  }

  // datum members must be F-centric (generation condition diagnostic)
  for (const Sub& q : f.data().members) {
    if (!is_centric(f, q)) {
      report.verdict = false;
      report.failing_class = q.elems;
      report.failing_condition = SaturationFailure::Generation;
      return report;
    }
  }

  // (2) per component of F-centric subgroups
  for (const auto& comp : g.components()) {
    bool centric = true;
    for (int r : comp) {
      for (int m : g.orbit_members(r))
        if (!g.s_centric(m)) {
          centric = false;
          break;
        }
      if (!centric) break;
    }
    if (!centric) continue;
    int64_t best = 0;
    for (int r : comp) best = std::max(best, g.normalizer_order(r));
    std::vector<int> fully_normalized;
    for (int r : comp)
      if (g.normalizer_order(r) == best) fully_normalized.push_back(r);
    bool found = false;
    for (int r : fully_normalized) {
      if (surjectivity_property(f, g.subgroups()[r])) {
        found = true;
        break;
      }
    }
    if (!found) {
      report.verdict = false;
      report.failing_class = g.subgroups()[comp[0]].elems;
      report.failing_condition = SaturationFailure::NoSurjectiveRep;
      return report;
    }
  }

  report.verdict = true;
  return report;
}

}  // namespace fusekit
