#include "fusekit/queries.hpp"

#include <algorithm>

#include "fusekit/error.hpp"

namespace fusekit {

FusionClass fusion_class(const FusionSystem& f, const Sub& p) {
  const FusionGraph& g = f.graph();
  int idx = g.subgroup_index(p.elems);
  if (idx < 0) fail(ErrorCode::BadArgument, "not a subgroup");
  int comp = g.component_of(g.rep_index_of(idx));
  FusionClass out;
  for (int r : g.components()[comp]) {
    out.representatives.push_back(r);
    out.full_size += static_cast<int64_t>(g.orbit_members(r).size());
  }
  return out;
}

std::optional<Morphism> is_conjugate(const FusionSystem& f, const Sub& p, const Sub& r) {
  return f.conjugating_morphism(p, r);
}

bool is_s_centric(const GroupPtr& s, const Sub& p) {
  Sub cs = centralizer_in(whole_group(s), p);
  return cs.order() == center_of(p).order();
}

bool is_centric(const FusionSystem& f, const Sub& p) {
  const FusionGraph& g = f.graph();
  int idx = g.subgroup_index(p.elems);
  if (idx < 0) fail(ErrorCode::BadArgument, "not a subgroup");
  int comp = g.component_of(g.rep_index_of(idx));
  for (int r : g.components()[comp])
    for (int m : g.orbit_members(r))
      if (!g.s_centric(m)) return false;
  return true;
}

bool is_fully_normalized(const FusionSystem& f, const Sub& p) {
  const FusionGraph& g = f.graph();
  int idx = g.subgroup_index(p.elems);
  if (idx < 0) fail(ErrorCode::BadArgument, "not a subgroup");
  int64_t mine = g.normalizer_order(idx);
  int comp = g.component_of(g.rep_index_of(idx));
  for (int r : g.components()[comp])
    if (g.normalizer_order(r) > mine) return false;
  return true;
}

bool is_fully_centralized(const FusionSystem& f, const Sub& p) {
  const FusionGraph& g = f.graph();
  int idx = g.subgroup_index(p.elems);
  if (idx < 0) fail(ErrorCode::BadArgument, "not a subgroup");
  Sub whole = whole_group(f.group());
  auto cent = [&](int i) { return centralizer_in(whole, g.subgroups()[i]).order(); };
  int64_t mine = cent(idx);
  int comp = g.component_of(g.rep_index_of(idx));
  for (int r : g.components()[comp])
    if (cent(r) > mine) return false;
  return true;
}

bool is_fully_automized(const FusionSystem& f, const Sub& p) {
  AutSet a = f.automizer(p);
  AutSet aut_s = induced_automizer(whole_group(f.group()), p);
  return aut_s.order() == p_part(a.order(), f.prime());
}

bool is_weakly_closed(const FusionSystem& f, const Sub& p) {
  const FusionGraph& g = f.graph();
  int idx = g.subgroup_index(p.elems);
  if (idx < 0) fail(ErrorCode::BadArgument, "not a subgroup");
  int rep = g.rep_index_of(idx);
  return g.components()[g.component_of(rep)].size() == 1 && g.orbit_members(rep).size() == 1;
}

bool is_strongly_closed(const FusionSystem& f, const Sub& p) {
  for (EltId x : p.elems) {
    for (EltId y : element_class(f, x))
      if (!p.contains(y)) return false;
  }
  return true;
}

std::set<EltId> element_class(const FusionSystem& f, EltId g) {
  const FusionData& d = f.data();
  std::set<EltId> out = {g};
  std::vector<EltId> queue = {g};
  while (!queue.empty()) {
    EltId x = queue.back();
    queue.pop_back();
    for (size_t i = 0; i < d.members.size(); ++i) {
      int pos = d.members[i].position_of(x);
      if (pos < 0) continue;
      for (EltId c : d.autos[i].carrier->generator_ids()) {
        EltId y = d.members[i].elems[d.autos[i].carrier->elem(c)[pos]];
        if (out.insert(y).second) queue.push_back(y);
      }
    }
  }
  return out;
}

namespace {

Sub displacement_subgroup(const FusionSystem& f, bool hyperfocal) {
  const FusionData& d = f.data();
  const Group& s = *f.group();
  std::vector<EltId> gens;
  std::vector<char> seen(s.order(), 0);
  for (size_t i = 0; i < d.members.size(); ++i) {
    std::vector<EltId> carrier_gens;
    if (hyperfocal) {
      Sub res = p_residual(d.autos[i].carrier, f.prime());
      carrier_gens = res.gens;
    } else {
      carrier_gens.assign(d.autos[i].carrier->generator_ids().begin(),
                          d.autos[i].carrier->generator_ids().end());
    }
    for (EltId c : carrier_gens) {
      const Perm& perm = d.autos[i].carrier->elem(c);
      for (size_t pos = 0; pos < d.members[i].elems.size(); ++pos) {
        EltId x = d.members[i].elems[pos];
        EltId disp = s.mul(s.inv(x), d.members[i].elems[perm[pos]]);
        if (!seen[disp]) {
          seen[disp] = 1;
          gens.push_back(disp);
        }
      }
    }
  }
  Sub out;
  out.parent = f.group();
  out.elems = *closure_ids(s, gens, 0);
  out.gens = small_generating_set(s, out.elems);
  return out;
}

}  // namespace

Sub focal_subgroup(const FusionSystem& f) { return displacement_subgroup(f, false); }

Sub hyperfocal_subgroup(const FusionSystem& f) { return displacement_subgroup(f, true); }

Sub p_residual(const GroupPtr& g, int p) {
  std::vector<EltId> gens;
  for (EltId x = 0; x < g->order(); ++x)
    if (g->element_order(x) % p != 0) gens.push_back(x);
  Sub out;
  out.parent = g;
  out.elems = *closure_ids(*g, gens, 0);
  out.gens = small_generating_set(*g, out.elems);
  return out;
}

Sub core_subgroup(const FusionSystem& f) {
  const FusionData& d = f.data();
  const FusionGraph& g = f.graph();
  // intersection of all members
  Sub inter = d.members[0];
  for (size_t i = 1; i < d.members.size(); ++i) inter = intersection(inter, d.members[i]);
  // candidate subgroups of the intersection, largest first
  std::vector<int> cands;
  for (int i = 0; i < static_cast<int>(g.subgroups().size()); ++i) {
    const Sub& t = g.subgroups()[i];
    if (t.elems.size() > inter.elems.size()) continue;
    if (std::includes(inter.elems.begin(), inter.elems.end(), t.elems.begin(), t.elems.end()))
      cands.push_back(i);
  }
  std::sort(cands.begin(), cands.end(), [&](int a, int b) {
    const auto& sa = g.subgroups()[a].elems;
    const auto& sb = g.subgroups()[b].elems;
    if (sa.size() != sb.size()) return sa.size() > sb.size();
    return sa < sb;
  });
  for (int ci : cands) {
    const Sub& t = g.subgroups()[ci];
    bool invariant = true;
    for (size_t i = 0; i < d.members.size() && invariant; ++i) {
      for (EltId c : d.autos[i].carrier->generator_ids()) {
        const Perm& perm = d.autos[i].carrier->elem(c);
        bool fixed = true;
        for (EltId x : t.elems) {
          EltId y = d.members[i].elems[perm[d.members[i].position_of(x)]];
          if (!t.contains(y)) {
            fixed = false;
            break;
          }
        }
        if (!fixed) {
          invariant = false;
          break;
        }
      }
    }
    if (invariant) return t;
  }
  return trivial_subgroup(f.group());
}

AutSet h_subgroup(const FusionSystem& f, const Sub& p) {
  const FusionGraph& g = f.graph();
  int idx = g.subgroup_index(p.elems);
  if (idx < 0) fail(ErrorCode::BadArgument, "not a subgroup");
  if (p.order() == f.group()->order())
    fail(ErrorCode::PreconditionViolated, "h_subgroup is undefined for the whole group");
  if (!is_fully_normalized(f, p))
    fail(ErrorCode::NotFullyNormalized, "h_subgroup requires a fully normalized subgroup");

  // auxiliary datum: the fusion system generated by automizers of all
  // strictly larger subgroups, with members reduced to Aut_F(S)-orbit reps
  AutSet aut_f_s = f.rep_automizer(g.rep_index_of(g.subgroup_index(whole_group(f.group()).elems)));
  FusionData aux;
  aux.s = f.group();
  aux.p = f.prime();
  aux.members.push_back(whole_group(f.group()));
  aux.autos.push_back(aut_f_s);
  const Group& carrier_s = *aut_f_s.carrier;
  std::vector<char> used(g.subgroups().size(), 0);
  for (int r : g.representatives()) {
    if (used[r]) continue;
    const Sub& rs = g.subgroups()[r];
    if (rs.elems.size() <= p.elems.size() || rs.elems.size() == whole_group(f.group()).elems.size())
      continue;
    // orbit of this subgroup under Aut_F(S), marking every rep hit
    std::vector<std::vector<EltId>> orbit = {rs.elems};
    std::map<std::vector<EltId>, char> seen;
    seen[rs.elems] = 1;
    for (size_t k = 0; k < orbit.size(); ++k)
      for (EltId c : carrier_s.generator_ids()) {
        const Perm& perm = carrier_s.elem(c);
        std::vector<EltId> img(orbit[k].size());
        for (size_t t = 0; t < img.size(); ++t) img[t] = perm[orbit[k][t]];
        std::sort(img.begin(), img.end());
        if (seen.emplace(img, 1).second) orbit.push_back(img);
      }
    for (const auto& m : orbit) {
      int mi = g.subgroup_index(m);
      if (mi >= 0) used[g.rep_index_of(mi)] = 1;
    }
    aux.members.push_back(rs);
    aux.autos.push_back(f.rep_automizer(r));
  }
  FusionSystem aux_system(std::move(aux), /*require_centric=*/false);
  return aux_system.automizer(p);
}

}  // namespace fusekit
