#include "fusekit/search.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "fusekit/error.hpp"
#include "fusekit/lattice.hpp"
#include "fusekit/overgroups.hpp"
#include "fusekit/queries.hpp"
#include "fusekit/spembedded.hpp"

namespace fusekit {

namespace {

void emit(const SearchConfig& cfg, const std::string& line) {
  if (cfg.transcript_log && cfg.log) cfg.log(line);
}

int64_t ipow(int64_t b, int e) {
  int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::string factored_order(int64_t n) {
  std::string out = "[ ";
  bool first = true;
  for (int p : prime_divisors(n)) {
    int e = 0;
    int64_t m = n;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (!first) out += ", ";
    out += "<" + std::to_string(p) + ", " + std::to_string(e) + ">";
    first = false;
  }
  out += " ]";
  return out;
}

// recognizes the extraspecial group of order p^3 and exponent p (p odd)
bool is_pplus_1_2(const GroupPtr& s, int p) {
  if (p == 2) return false;
  if (s->order() != static_cast<int64_t>(p) * p * p) return false;
  if (s->is_abelian()) return false;
  for (EltId x = 0; x < s->order(); ++x)
    if (s->element_order(x) > p) return false;
  return center(s).order() == p;
}

}  // namespace

FilterVerdict group_filters(const GroupPtr& s, int p, const SearchConfig& cfg) {
  if (s->order() <= 1) return {false, "trivial group"};
  if (p_part(s->order(), p) != s->order()) return {false, "not a p-group"};
  if (s->is_abelian()) return {false, "abelian group"};
  if (p >= 5 && cfg.require_focal_full) {
    AutSet a = automorphism_group(whole_group(s));
    if (p_part(a.order(), p) == a.order())
      return {false, "automorphism group is a p-group and p >= 5"};
  }
  Sub z = center(s);
  if (s->order() / z.order() <= static_cast<int64_t>(p) * p) {
    if (!is_pplus_1_2(s, p)) return {false, "center has index at most p^2"};
  }
  return {true, ""};
}

namespace {

// Aut(S)-orbit representatives over all subgroups, datum-free
std::vector<int> aut_orbit_reps(const std::vector<Sub>& subs, const AutSet& aut_s,
                                std::vector<int>* rep_of_out,
                                std::vector<EltId>* witness_out) {
  const Group& carrier = *aut_s.carrier;
  std::map<std::vector<EltId>, int> index;
  for (size_t i = 0; i < subs.size(); ++i) index[subs[i].elems] = static_cast<int>(i);
  std::vector<int> rep_of(subs.size(), -1);
  std::vector<EltId> witness(subs.size(), carrier.identity());
  std::vector<int> reps;
  for (size_t i = 0; i < subs.size(); ++i) {
    if (rep_of[i] >= 0) continue;
    reps.push_back(static_cast<int>(i));
    rep_of[i] = static_cast<int>(i);
    std::vector<int> queue = {static_cast<int>(i)};
    for (size_t k = 0; k < queue.size(); ++k)
      for (EltId c : carrier.generator_ids()) {
        const Perm& perm = carrier.elem(c);
        std::vector<EltId> img(subs[queue[k]].elems.size());
        for (size_t t = 0; t < img.size(); ++t) img[t] = perm[subs[queue[k]].elems[t]];
        std::sort(img.begin(), img.end());
        int j = index.at(img);
        if (rep_of[j] < 0) {
          rep_of[j] = static_cast<int>(i);
          witness[j] = carrier.mul(witness[queue[k]], c);
          queue.push_back(j);
        }
      }
  }
  if (rep_of_out) *rep_of_out = rep_of;
  if (witness_out) *witness_out = witness;
  return reps;
}

}  // namespace

std::vector<Sub> potentially_essential(const GroupPtr& s, int p, const AutSet& aut_s) {
  Sub whole = whole_group(s);
  auto subs = subgroup_lattice(s)->all_subgroups();
  auto reps = aut_orbit_reps(subs, aut_s, nullptr, nullptr);
  std::vector<Sub> out;
  for (int ri : reps) {
    const Sub& e = subs[ri];
    if (e.order() == s->order() || e.order() == 1) continue;
    // (1) S-centric
    if (centralizer_in(whole, e).order() != center_of(e).order()) continue;
    int64_t out_s_order = normalizer(e).order() / (e.order() * centralizer_in(whole, e).order() /
                                                   center_of(e).order() / center_of(e).order() *
                                                   center_of(e).order());
    // |Out_S(E)| = |N_S(E)| / |E C_S(E)| ; E is S-centric so C_S(E) = Z(E) <= E
    out_s_order = normalizer(e).order() / e.order();
    // (6) Out_S(E) abelian of order at most p^2 when |S| <= p^8 (always here)
    if (out_s_order > static_cast<int64_t>(p) * p) continue;
    // (4) |E/Phi(E)| >= |Out_S(E)|^2
    Sub phi = frattini_subgroup(e);
    if (e.order() / phi.order() < out_s_order * out_s_order) continue;
    // the rest needs Aut(E)
    AutSet aut = automorphism_group(e);
    AutSet aut_se = induced_automizer(whole, e);
    std::vector<EltId> aut_s_ids;
    for (EltId c : aut_se.carrier->generator_ids())
      aut_s_ids.push_back(aut.carrier->id_of(aut_se.carrier->elem(c)));
    Sub aut_s_sub = sub_from_gens(aut.carrier, aut_s_ids);
    Sub inn = inner_automorphisms(aut);
    Quotient outq = quotient_of(whole_group(aut.carrier), inn);
    // image of Aut_S(E) in Out(E)
    std::vector<EltId> out_s_ids;
    for (EltId x : aut_s_sub.elems) out_s_ids.push_back(outq.project[x]);
    std::sort(out_s_ids.begin(), out_s_ids.end());
    out_s_ids.erase(std::unique(out_s_ids.begin(), out_s_ids.end()), out_s_ids.end());
    Sub out_s;
    out_s.parent = outq.group;
    out_s.elems = out_s_ids;
    out_s.gens = small_generating_set(*outq.group, out_s_ids);
    if (out_s.order() != out_s_order) fail(ErrorCode::BadArgument, "automizer bookkeeping failed");
    // (6) abelian
    if (!sub_is_abelian(out_s)) continue;
    // (3) admissible Sylow shape
    if (!shape_admissible(sylow_shape_filter(out_s, p))) continue;
    // (2) Out_S(E) meets O_p(Out(E)) trivially
    Sub syl = sylow_subgroup(outq.group, p);
    auto sylows = subgroup_conjugates(whole_group(outq.group), syl);
    std::vector<EltId> op = sylows[0];
    for (size_t i = 1; i < sylows.size(); ++i) {
      std::vector<EltId> meet;
      std::set_intersection(op.begin(), op.end(), sylows[i].begin(), sylows[i].end(),
                            std::back_inserter(meet));
      op = std::move(meet);
    }
    std::vector<EltId> meet;
    std::set_intersection(op.begin(), op.end(), out_s.elems.begin(), out_s.elems.end(),
                          std::back_inserter(meet));
    if (meet.size() > 1) continue;
    out.push_back(e);
  }
  std::sort(out.begin(), out.end(), [](const Sub& a, const Sub& b) {
    if (a.elems.size() != b.elems.size()) return a.elems.size() > b.elems.size();
    return a.elems < b.elems;
  });
  return out;
}

bool characteristic_core_filter(const GroupPtr& s, int p, const std::vector<Sub>& candidates) {
  if (candidates.empty()) return true;
  Sub whole = whole_group(s);
  std::vector<Sub> family;
  family.push_back(center(s));
  family.push_back(socle_of_p_group(whole, p));
  family.push_back(frattini_subgroup(whole));
  family.push_back(derived_subgroup(whole));
  for (const Sub& t : family) {
    if (t.order() <= 1) continue;
    bool trap = true;
    for (const Sub& e : candidates) {
      if (!e.contains_all(t)) {
        trap = false;
        break;
      }
      // characteristic in E: invariant under the full automorphism group
      AutSet aut = automorphism_group(e);
      for (EltId c : aut.carrier->generator_ids()) {
        Morphism m = aut.as_morphism(c);
        for (EltId x : t.elems)
          if (!t.contains(m.apply(x))) {
            trap = false;
            break;
          }
        if (!trap) break;
      }
      if (!trap) break;
    }
    if (trap) return true;
  }
  return false;
}

std::vector<ProtoEssential> proto_essentials(const GroupPtr& s, int p,
                                             const std::vector<Sub>& candidates) {
  Sub whole = whole_group(s);
  std::vector<ProtoEssential> out;
  for (const Sub& e : candidates) {
    ProtoEssential pe;
    pe.subgroup = e;
    pe.aut = automorphism_group(e);
    AutSet aut_se = induced_automizer(whole, e);
    std::vector<EltId> ids;
    for (EltId c : aut_se.carrier->generator_ids())
      ids.push_back(pe.aut.carrier->id_of(aut_se.carrier->elem(c)));
    pe.aut_s = sub_from_gens(pe.aut.carrier, ids);
    pe.inn = inner_automorphisms(pe.aut);

    // subgroups of Aut(E) with Aut_S(E) as a Sylow p-subgroup, then keep
    // those whose outer quotient has a strongly p-embedded subgroup, up to
    // N_{Aut(E)}(Aut_S(E))-conjugacy
    auto classes = overgroups_with_sylow(pe.aut.carrier, pe.aut_s, p);
    Sub nt = normalizer_in(whole_group(pe.aut.carrier), pe.aut_s);
    for (const Sub& k_class : classes) {
      // conjugates of this class containing Aut_S(E), up to N(T)-conjugacy
      auto orbit = subgroup_conjugates(whole_group(pe.aut.carrier), k_class);
      std::vector<std::vector<EltId>> containing;
      for (const auto& m : orbit)
        if (std::includes(m.begin(), m.end(), pe.aut_s.elems.begin(), pe.aut_s.elems.end()))
          containing.push_back(m);
      std::sort(containing.begin(), containing.end());
      std::vector<char> used(containing.size(), 0);
      for (size_t i = 0; i < containing.size(); ++i) {
        if (used[i]) continue;
        used[i] = 1;
        Sub k;
        k.parent = pe.aut.carrier;
        k.elems = containing[i];
        k.gens = small_generating_set(*pe.aut.carrier, k.elems);
        for (size_t j = i + 1; j < containing.size(); ++j) {
          if (used[j]) continue;
          Sub kj;
          kj.parent = pe.aut.carrier;
          kj.elems = containing[j];
          kj.gens = small_generating_set(*pe.aut.carrier, kj.elems);
          if (conjugating_element_in(nt, k, kj)) used[j] = 1;
        }
        if (!k.contains_all(pe.inn)) continue;  // Inn(E) <= Aut_S(E) <= K always
        Quotient outer = quotient_of(k, pe.inn);
        if (outer.group->order() == 1) continue;
        if (!soluble_spe_filter(whole_group(outer.group), p)) continue;
        if (!has_strongly_p_embedded(outer.group, p)) continue;
        pe.candidates.push_back(std::move(k));
      }
    }
    std::sort(pe.candidates.begin(), pe.candidates.end(), [](const Sub& a, const Sub& b) {
      if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size();
      return a.elems < b.elems;
    });
    if (!pe.candidates.empty()) out.push_back(std::move(pe));
  }
  return out;
}

std::vector<BorelGroup> borel_groups(const GroupPtr& s, int p, const AutSet& aut_s) {
  Sub inn = inner_automorphisms(aut_s);
  Quotient outq = quotient_of(whole_group(aut_s.carrier), inn);
  auto outlat = subgroup_lattice(outq.group);
  std::vector<Sub> b0_reps;
  for (size_t c = 0; c < outlat->class_count(); ++c) {
    Sub rep = outlat->rep(static_cast<int>(c));
    if (rep.order() % p == 0) continue;
    b0_reps.push_back(rep);
  }
  std::sort(b0_reps.begin(), b0_reps.end(), [](const Sub& a, const Sub& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elems < b.elems;
  });

  auto autlat = subgroup_lattice(aut_s.carrier);
  std::vector<BorelGroup> out;
  for (const Sub& b0 : b0_reps) {
    // preimage of B0 in Aut(S)
    std::vector<EltId> pre;
    for (EltId x = 0; x < aut_s.carrier->order(); ++x)
      if (b0.contains(outq.project[x])) pre.push_back(x);
    // a complement to Inn(S) inside the preimage
    std::optional<Sub> complement;
    for (const auto& set : autlat->subgroups_within(pre)) {
      if (static_cast<int64_t>(set.size()) != b0.order()) continue;
      std::vector<EltId> meet;
      std::set_intersection(set.begin(), set.end(), inn.elems.begin(), inn.elems.end(),
                            std::back_inserter(meet));
      if (meet.size() == 1) {
        Sub k;
        k.parent = aut_s.carrier;
        k.elems = set;
        k.gens = small_generating_set(*aut_s.carrier, set);
        complement = std::move(k);
        break;
      }
    }
    if (!complement)
      fail(ErrorCode::BorelNotConstructed,
           "no complement found for a p'-class of order " + std::to_string(b0.order()));
    // Borel group on the elements of S: right translations and the complement
    std::vector<Perm> gens;
    for (EltId x : s->generator_ids()) {
      std::vector<uint16_t> img(s->order());
      for (EltId y = 0; y < s->order(); ++y) img[y] = static_cast<uint16_t>(s->mul(y, x));
      gens.emplace_back(std::move(img));
    }
    for (EltId c : complement->gens) gens.push_back(aut_s.carrier->elem(c));
    BorelGroup bg;
    bg.b = Group::from_generators(static_cast<int>(s->order()), gens);
    if (bg.b->order() != s->order() * b0.order())
      fail(ErrorCode::BorelNotConstructed, "borel group has unexpected order");
    // Aut_B(S) = <Inn(S), K>
    std::vector<EltId> abs_gens = inn.gens;
    abs_gens.insert(abs_gens.end(), complement->gens.begin(), complement->gens.end());
    Sub abs_sub = sub_from_gens(aut_s.carrier, abs_gens);
    std::vector<Perm> abs_perms;
    for (EltId c : abs_sub.gens) abs_perms.push_back(aut_s.carrier->elem(c));
    BorelGroup& ref = out.emplace_back(std::move(bg));
    ref.aut_b_s.base = whole_group(s);
    ref.aut_b_s.carrier = Group::from_generators(static_cast<int>(s->order()), abs_perms);
    ref.quotient_order = b0.order();
  }
  return out;
}

// ---------------------------------------------------------------------------
// the per-Borel assembly machinery
// ---------------------------------------------------------------------------

namespace {

struct BClassProto {
  Sub subgroup;                  // B-class representative in S
  AutSet aut;                    // Aut(E) for this copy
  Sub aut_s;                     // Aut_S(E) in aut.carrier
  Sub aut_b;                     // Aut_B(E) in aut.carrier
  Sub inn;
  std::vector<Sub> star;         // surviving candidates containing Aut_B(E)
};

// conjugate an automizer candidate along an automorphism alpha of S mapping
// E to E' (both given with their Aut carriers)
Sub transport_candidate(const Sub& k, const AutSet& from, const AutSet& to,
                        const Morphism& alpha_restricted) {
  std::vector<EltId> gens;
  for (EltId c : k.gens) {
    Morphism m = alpha_restricted.inverse().then(from.as_morphism(c)).then(alpha_restricted);
    gens.push_back(carrier_id_of_map(to, m.img));
  }
  return sub_from_gens(to.carrier, gens);
}

struct BClassProto;

// orbit of a subgroup of S under the maps of one automizer candidate
std::vector<std::vector<EltId>> candidate_orbit(const Sub& q, const AutSet& aut,
                                                const Sub& k, const std::vector<EltId>& start) {
  std::vector<std::vector<EltId>> orbit = {start};
  std::map<std::vector<EltId>, char> seen{{start, 1}};
  for (size_t i = 0; i < orbit.size(); ++i)
    for (EltId c : k.gens) {
      const Perm& perm = aut.carrier->elem(c);
      std::vector<EltId> img(orbit[i].size());
      for (size_t t = 0; t < img.size(); ++t)
        img[t] = q.elems[perm[q.position_of(orbit[i][t])]];
      std::sort(img.begin(), img.end());
      if (seen.emplace(img, 1).second) orbit.push_back(img);
    }
  return orbit;
}

}  // namespace

namespace detail {

struct CandidateDatum {
  const GroupPtr& s;
  int p;
  const Sub& whole;
  const AutSet& aut_b_s;                       // A(S) for this datum
  std::vector<const Sub*> members;             // proper members, in S
  std::vector<const AutSet*> auts;             // full Aut(E) carriers, parallel
  std::vector<const Sub*> ks;                  // chosen automizers, parallel
  std::vector<const Sub*> aut_s_subs;          // Aut_S(E) inside the carriers
};

// compatibility conditions plus the focal and core requirements, evaluated on
// the raw datum pieces before the expensive graph construction
bool datum_prechecks_pass(const CandidateDatum& cd, const SearchConfig& cfg) {
  const Group& s = *cd.s;
  size_t n = cd.members.size();

  // restriction condition for members with large normalizer
  int64_t maxmem = 0;
  for (size_t i = 0; i < n; ++i) maxmem = std::max(maxmem, cd.members[i]->order());
  for (size_t i = 0; i < n; ++i) {
    Sub nse = normalizer(*cd.members[i]);
    bool applies = nse.order() > maxmem;
    if (nse.order() == maxmem) {
      bool conj_into = false;
      for (size_t j = 0; j < n && !conj_into; ++j) {
        if (cd.members[j]->order() != nse.order()) continue;
        // A(S)-orbit of N_S(Q) against member j
        std::vector<std::vector<EltId>> orbit = {nse.elems};
        std::map<std::vector<EltId>, char> seen{{nse.elems, 1}};
        for (size_t k = 0; k < orbit.size() && !conj_into; ++k)
          for (EltId c : cd.aut_b_s.carrier->generator_ids()) {
            const Perm& perm = cd.aut_b_s.carrier->elem(c);
            std::vector<EltId> img(orbit[k].size());
            for (size_t t = 0; t < img.size(); ++t) img[t] = perm[orbit[k][t]];
            std::sort(img.begin(), img.end());
            if (img == cd.members[j]->elems) {
              conj_into = true;
              break;
            }
            if (seen.emplace(img, 1).second) orbit.push_back(img);
          }
      }
      applies = !conj_into;
    }
    if (!applies) continue;
    // N_{K}(Aut_S(Q)) must equal the restrictions of N_{A(S)}(Q)
    Sub lhs = normalizer_in(*cd.ks[i], *cd.aut_s_subs[i]);
    // restrictions of A(S)-elements stabilizing Q
    Sub stab = carrier_stabilizer_of_subgroup(cd.aut_b_s, *cd.members[i]);
    AutSet restr = restrict_automorphisms(cd.aut_b_s, stab, *cd.members[i]);
    std::vector<EltId> rhs_ids;
    for (EltId c : restr.carrier->generator_ids())
      rhs_ids.push_back(cd.auts[i]->carrier->id_of(restr.carrier->elem(c)));
    Sub rhs = sub_from_gens(cd.auts[i]->carrier, rhs_ids);
    if (lhs.elems != rhs.elems) return false;
  }

  // normalizer-order monotonicity for nested pairs
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Sub& small = *cd.members[i];
      const Sub& big = *cd.members[j];
      if (small.order() >= big.order()) continue;
      if (!big.contains_all(small)) continue;
      int64_t bound = normalizer(small).order();
      for (const auto& img : candidate_orbit(big, *cd.auts[j], *cd.ks[j], small.elems)) {
        Sub moved;
        moved.parent = cd.s;
        moved.elems = img;
        moved.gens = small_generating_set(s, img);
        if (normalizer(moved).order() > bound) return false;
      }
    }

  // Sylow condition on restrictions to a common invariant subgroup
  {
    Sub inter = cd.whole;
    for (size_t i = 0; i < n; ++i) inter = intersection(inter, *cd.members[i]);
    auto lat = subgroup_lattice(cd.s);
    for (const auto& tset : lat->subgroups_within(inter.elems)) {
      if (tset.size() <= 1) continue;
      Sub t;
      t.parent = cd.s;
      t.elems = tset;
      t.gens = small_generating_set(s, tset);
      // invariance under every assigned automizer and under A(S)
      bool invariant = true;
      auto stable_under = [&](const Sub& q, const AutSet& aut, const std::vector<EltId>& gens) {
        for (EltId c : gens) {
          const Perm& perm = aut.carrier->elem(c);
          for (EltId x : t.elems)
            if (!t.contains(q.elems[perm[q.position_of(x)]])) return false;
        }
        return true;
      };
      if (!stable_under(cd.whole, cd.aut_b_s,
                        {cd.aut_b_s.carrier->generator_ids().begin(),
                         cd.aut_b_s.carrier->generator_ids().end()}))
        invariant = false;
      for (size_t i = 0; i < n && invariant; ++i)
        if (!stable_under(*cd.members[i], *cd.auts[i], cd.ks[i]->gens)) invariant = false;
      if (!invariant) continue;
      // restrictions generate a group in which Aut_S(T) must be a Sylow
      std::vector<Perm> gens;
      auto restrict_gen = [&](const Sub& q, const AutSet& aut, EltId c) {
        const Perm& perm = aut.carrier->elem(c);
        std::vector<uint16_t> img(t.elems.size());
        for (size_t u = 0; u < t.elems.size(); ++u)
          img[u] = static_cast<uint16_t>(t.position_of(q.elems[perm[q.position_of(t.elems[u])]]));
        gens.emplace_back(std::move(img));
      };
      for (EltId c : cd.aut_b_s.carrier->generator_ids()) restrict_gen(cd.whole, cd.aut_b_s, c);
      for (size_t i = 0; i < n; ++i)
        for (EltId c : cd.ks[i]->gens) restrict_gen(*cd.members[i], *cd.auts[i], c);
      GroupPtr l = Group::from_generators(static_cast<int>(t.elems.size()), gens);
      AutSet aut_s_t = induced_automizer(cd.whole, t);
      if (aut_s_t.order() != p_part(l->order(), cd.p)) return false;
    }
  }

  // focal subgroup must reach S; no nontrivial common invariant subgroup
  {
    std::vector<EltId> disp_gens;
    std::vector<char> seen(s.order(), 0);
    auto add_displacements = [&](const Sub& q, const AutSet& aut, const std::vector<EltId>& gens) {
      for (EltId c : gens) {
        const Perm& perm = aut.carrier->elem(c);
        for (size_t pos = 0; pos < q.elems.size(); ++pos) {
          EltId d = s.mul(s.inv(q.elems[pos]), q.elems[perm[pos]]);
          if (!seen[d]) {
            seen[d] = 1;
            disp_gens.push_back(d);
          }
        }
      }
    };
    add_displacements(cd.whole, cd.aut_b_s,
                      {cd.aut_b_s.carrier->generator_ids().begin(),
                       cd.aut_b_s.carrier->generator_ids().end()});
    for (size_t i = 0; i < n; ++i) add_displacements(*cd.members[i], *cd.auts[i], cd.ks[i]->gens);
    if (cfg.require_focal_full) {
      auto closed = closure_ids(s, disp_gens, 0);
      if (static_cast<int64_t>(closed->size()) != s.order()) return false;
    }
    if (cfg.require_trivial_core) {
      Sub inter = cd.whole;
      for (size_t i = 0; i < n; ++i) inter = intersection(inter, *cd.members[i]);
      auto lat = subgroup_lattice(cd.s);
      for (const auto& tset : lat->subgroups_within(inter.elems)) {
        if (tset.size() <= 1) continue;
        Sub t;
        t.parent = cd.s;
        t.elems = tset;
        t.gens = small_generating_set(s, tset);
        bool moved = false;
        auto check_moved = [&](const Sub& q, const AutSet& aut, const std::vector<EltId>& gens) {
          for (EltId c : gens) {
            const Perm& perm = aut.carrier->elem(c);
            for (EltId x : t.elems)
              if (!t.contains(q.elems[perm[q.position_of(x)]])) return true;
          }
          return false;
        };
        if (check_moved(cd.whole, cd.aut_b_s,
                        {cd.aut_b_s.carrier->generator_ids().begin(),
                         cd.aut_b_s.carrier->generator_ids().end()}))
          moved = true;
        for (size_t i = 0; i < n && !moved; ++i)
          if (check_moved(*cd.members[i], *cd.auts[i], cd.ks[i]->gens)) moved = true;
        if (!moved) return false;
      }
    }
  }
  return true;
}

}  // namespace detail

SystemRecord describe_system(const FusionSystemPtr& f, int borel_index) {
  SystemRecord rec;
  rec.system = f;
  rec.borel_index = borel_index;
  const FusionData& d = f->data();
  std::vector<std::pair<int64_t, int64_t>> rows;
  for (size_t i = 1; i < d.members.size(); ++i)
    rows.push_back({d.members[i].order(), d.autos[i].order() / inner_automorphisms(d.autos[i]).order()});
  std::sort(rows.begin(), rows.end(), [](auto& a, auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (auto& [o, a] : rows) {
    rec.essential_orders.push_back(o);
    rec.outer_orders.push_back(a);
  }
  rec.out_s_order = d.autos[0].order() / inner_automorphisms(d.autos[0]).order();
  rec.core_order = core_subgroup(*f).order();
  rec.focal_index = f->group()->order() / focal_subgroup(*f).order();
  return rec;
}

std::string render_table(const std::vector<SystemRecord>& records) {
  std::ostringstream os;
  os << "[\n";
  for (size_t i = 0; i < records.size(); ++i) {
    const SystemRecord& r = records[i];
    os << "    Fusion System with " << r.essential_orders.size()
       << " F-classes of essential subgroups\n";
    os << "    They have orders: [ ";
    for (size_t k = 0; k < r.essential_orders.size(); ++k)
      os << (k ? ", " : "") << r.essential_orders[k];
    os << " ] Out_F(E)  have orders: [ ";
    for (size_t k = 0; k < r.outer_orders.size(); ++k) os << (k ? ", " : "") << r.outer_orders[k];
    os << " ]\n";
    os << "    Out_F(S) has order  " << r.out_s_order << ", core order " << r.core_order
       << ", focal index " << r.focal_index << (i + 1 < records.size() ? "," : "") << "\n";
  }
  os << "]\n";
  return os.str();
}

SearchResult all_fusion_systems(const GroupPtr& s, int p, const SearchConfig& cfg) {
  SearchResult result;
  FilterVerdict verdict = group_filters(s, p, cfg);
  if (!verdict.proceed) {
    emit(cfg, "Group rejected: " + verdict.reason);
    return result;
  }

  Sub whole = whole_group(s);
  AutSet aut_s = automorphism_group(whole);

  // centric counts for the transcript (raw and up to S-conjugacy)
  {
    auto subs = subgroup_lattice(s)->all_subgroups();
    std::set<std::vector<EltId>> reps_seen;
    for (const Sub& x : subs) {
      if (centralizer_in(whole, x).order() != center_of(x).order()) continue;
      ++result.centric_count_raw;
      auto orbit = subgroup_conjugates(whole, x);
      std::sort(orbit.begin(), orbit.end());
      reps_seen.insert(orbit[0]);
    }
    result.centric_count_classes = static_cast<int64_t>(reps_seen.size());
  }
  emit(cfg, "The group has " + std::to_string(result.centric_count_classes) + " centric subgroups");

  auto pot = potentially_essential(s, p, aut_s);
  if (cfg.require_trivial_core && characteristic_core_filter(s, p, pot)) {
    emit(cfg, "The set ProtoEssentialAutClasses has 0 elements");
    return result;
  }
  auto protos = proto_essentials(s, p, pot);
  result.proto_class_count = static_cast<int>(protos.size());
  emit(cfg, "The set ProtoEssentialAutClasses has " + std::to_string(protos.size()) + " elements");
  if (protos.empty()) return result;

  auto borels = borel_groups(s, p, aut_s);
  result.borel_count = static_cast<int>(borels.size());
  emit(cfg, "This group has  " + std::to_string(borels.size()) + "  Borel groups");

  // all subgroups and their Aut(S)-orbits, for expansion to B-classes
  auto subs = subgroup_lattice(s)->all_subgroups();
  std::map<std::vector<EltId>, int> sub_index;
  for (size_t i = 0; i < subs.size(); ++i) sub_index[subs[i].elems] = static_cast<int>(i);

  std::vector<SystemRecord> found;

  for (size_t bi = 0; bi < borels.size(); ++bi) {
    const BorelGroup& borel = borels[bi];
    emit(cfg, "**********************************************");
    emit(cfg, " Borel " + std::to_string(bi + 1) + " of " + std::to_string(borels.size()) + " " +
                  factored_order(borel.b->order()));
    emit(cfg, "**********************************************");

    // expand proto representatives to B-classes
    std::vector<BClassProto> pb;
    for (const ProtoEssential& pe : protos) {
      // Aut(S)-orbit of the representative, partitioned under Aut_B(S)
      std::vector<std::vector<EltId>> orbit;
      std::vector<EltId> wit;  // Aut(S)-carrier witness per member
      {
        std::map<std::vector<EltId>, char> seen;
        orbit.push_back(pe.subgroup.elems);
        wit.push_back(aut_s.carrier->identity());
        seen[pe.subgroup.elems] = 1;
        for (size_t k = 0; k < orbit.size(); ++k)
          for (EltId c : aut_s.carrier->generator_ids()) {
            const Perm& perm = aut_s.carrier->elem(c);
            std::vector<EltId> img(orbit[k].size());
            for (size_t t = 0; t < img.size(); ++t) img[t] = perm[orbit[k][t]];
            std::sort(img.begin(), img.end());
            if (seen.emplace(img, 1).second) {
              orbit.push_back(img);
              wit.push_back(aut_s.carrier->mul(wit[k], c));
            }
          }
      }
      // partition under Aut_B(S)
      std::map<std::vector<EltId>, int> pos;
      for (size_t i = 0; i < orbit.size(); ++i) pos[orbit[i]] = static_cast<int>(i);
      std::vector<char> used(orbit.size(), 0);
      for (size_t i = 0; i < orbit.size(); ++i) {
        if (used[i]) continue;
        // orbit of member i under Aut_B(S); representative = canonical min
        std::vector<int> members = {static_cast<int>(i)};
        used[i] = 1;
        for (size_t k = 0; k < members.size(); ++k)
          for (EltId c : borel.aut_b_s.carrier->generator_ids()) {
            const Perm& perm = borel.aut_b_s.carrier->elem(c);
            std::vector<EltId> img(orbit[members[k]].size());
            for (size_t t = 0; t < img.size(); ++t) img[t] = perm[orbit[members[k]][t]];
            std::sort(img.begin(), img.end());
            int j = pos.at(img);
            if (!used[j]) {
              used[j] = 1;
              members.push_back(j);
            }
          }
        int best = members[0];
        for (int m : members)
          if (orbit[m] < orbit[best]) best = m;
        BClassProto bc;
        bc.subgroup.parent = s;
        bc.subgroup.elems = orbit[best];
        bc.subgroup.gens = small_generating_set(*s, bc.subgroup.elems);
        bc.aut = automorphism_group(bc.subgroup);
        AutSet aut_se = induced_automizer(whole, bc.subgroup);
        std::vector<EltId> ids;
        for (EltId c : aut_se.carrier->generator_ids())
          ids.push_back(bc.aut.carrier->id_of(aut_se.carrier->elem(c)));
        bc.aut_s = sub_from_gens(bc.aut.carrier, ids);
        bc.inn = inner_automorphisms(bc.aut);
        // Aut_B(E): restrictions of Borel elements normalizing E
        {
          std::vector<EltId> bgens;
          Sub e_in_b;
          e_in_b.parent = borel.b;
          for (EltId x : bc.subgroup.elems) {
            std::vector<uint16_t> img(s->order());
            for (EltId y = 0; y < s->order(); ++y) img[y] = static_cast<uint16_t>(s->mul(y, x));
            e_in_b.elems.push_back(borel.b->id_of(Perm(std::move(img))));
          }
          std::sort(e_in_b.elems.begin(), e_in_b.elems.end());
          e_in_b.gens = small_generating_set(*borel.b, e_in_b.elems);
          Sub nbe = normalizer(e_in_b);
          std::vector<EltId> abe_ids;
          for (EltId bgen : nbe.gens) {
            // conjugation by a Borel element, read as a map on E <= S:
            // x -> image of x under b^{-1} r_x b, recovered at the identity
            const Perm& bp = borel.b->elem(bgen);
            const Perm& bpi = borel.b->elem(borel.b->inv(bgen));
            std::vector<EltId> img(bc.subgroup.elems.size());
            for (size_t t = 0; t < bc.subgroup.elems.size(); ++t) {
              // apply b^{-1} then right-translation by x then b to the
              // identity element of S
              EltId idpt = s->identity();
              EltId u = bpi[idpt];
              EltId v = s->mul(u, bc.subgroup.elems[t]);
              img[t] = bp[v];
            }
            abe_ids.push_back(carrier_id_of_map(bc.aut, img));
          }
          bc.aut_b = sub_from_gens(bc.aut.carrier, abe_ids);
        }
        // transport the candidate list along the witness automorphism
        {
          const Perm& alpha = aut_s.carrier->elem(wit[best]);
          Morphism restricted;
          restricted.src = pe.subgroup;
          restricted.dst = bc.subgroup;
          restricted.img.resize(pe.subgroup.elems.size());
          for (size_t t = 0; t < pe.subgroup.elems.size(); ++t)
            restricted.img[t] = alpha[pe.subgroup.elems[t]];
          for (const Sub& k : pe.candidates) {
            Sub moved = transport_candidate(k, pe.aut, bc.aut, restricted);
            // exclusion and extension tests against this Borel
            auto orbit_k = subgroup_conjugates(whole_group(bc.aut.carrier), moved);
            std::sort(orbit_k.begin(), orbit_k.end());
            for (const auto& cand : orbit_k) {
              if (!std::includes(cand.begin(), cand.end(), bc.aut_b.elems.begin(),
                                 bc.aut_b.elems.end()))
                continue;
              Sub l;
              l.parent = bc.aut.carrier;
              l.elems = cand;
              l.gens = small_generating_set(*bc.aut.carrier, cand);
              bc.star.push_back(std::move(l));
            }
          }
          std::sort(bc.star.begin(), bc.star.end(), [](const Sub& a, const Sub& b) {
            if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size();
            return a.elems < b.elems;
          });
          bc.star.erase(std::unique(bc.star.begin(), bc.star.end(),
                                    [](const Sub& a, const Sub& b) { return a.elems == b.elems; }),
                        bc.star.end());
        }
        pb.push_back(std::move(bc));
      }
    }
    std::sort(pb.begin(), pb.end(), [](const BClassProto& a, const BClassProto& b) {
      if (a.subgroup.order() != b.subgroup.order()) return a.subgroup.order() > b.subgroup.order();
      return a.subgroup.elems < b.subgroup.elems;
    });

    {
      std::string orders;
      for (const auto& bc : pb) orders += " " + std::to_string(bc.subgroup.order());
      emit(cfg, "There are " + std::to_string(pb.size()) +
                    " proto-essential subgroups before the extension test");
      emit(cfg, "They have orders" + orders);
    }

    // large proto-essentials additionally require Aut_B(E) = N_L(Aut_S(E))
    int64_t max_order = 0;
    for (const auto& bc : pb) max_order = std::max(max_order, bc.subgroup.order());
    for (auto& bc : pb) {
      Sub nse = normalizer(bc.subgroup);
      bool large = nse.order() > max_order;
      if (nse.order() == max_order) {
        bool conj_to_member = false;
        for (const auto& other : pb) {
          if (other.subgroup.order() != nse.order()) continue;
          Sub o = other.subgroup;
          if (conjugating_element_in(whole, nse, o) ||
              [&] {
                // Aut_B(S)-orbit comparison
                AutSet abs = borel.aut_b_s;
                std::vector<std::vector<EltId>> orbit = {nse.elems};
                std::map<std::vector<EltId>, char> seen{{nse.elems, 1}};
                for (size_t k = 0; k < orbit.size(); ++k)
                  for (EltId c : abs.carrier->generator_ids()) {
                    const Perm& perm = abs.carrier->elem(c);
                    std::vector<EltId> img(orbit[k].size());
                    for (size_t t = 0; t < img.size(); ++t) img[t] = perm[orbit[k][t]];
                    std::sort(img.begin(), img.end());
                    if (img == o.elems) return true;
                    if (seen.emplace(img, 1).second) orbit.push_back(img);
                  }
                return false;
              }()) {
            conj_to_member = true;
            break;
          }
        }
        large = !conj_to_member;
      }
      if (!large) continue;
      std::vector<Sub> kept;
      for (const Sub& l : bc.star) {
        Sub nl = normalizer_in(l, bc.aut_s);
        if (nl.elems == bc.aut_b.elems) kept.push_back(l);
      }
      bc.star = std::move(kept);
    }
    pb.erase(std::remove_if(pb.begin(), pb.end(),
                            [](const BClassProto& bc) { return bc.star.empty(); }),
             pb.end());
    emit(cfg, std::to_string(pb.size()) + " proto-essentials which pass both the  strongly p-embedded");
    emit(cfg, "and extension tests");

    // forbidden pairs under the p-closed pruning rule
    int64_t pp3 = ipow(p, p + 3);
    std::set<std::pair<int, int>> forbidden;
    if (s->order() < pp3) {
      for (size_t i = 0; i < pb.size(); ++i)
        for (size_t j = 0; j < pb.size(); ++j) {
          if (i == j) continue;
          const Sub& e1 = pb[i].subgroup;
          const Sub& e2 = pb[j].subgroup;
          if (e1.order() != e2.order() * p) continue;
          if (!e1.contains_all(e2)) continue;
          Sub nse2 = normalizer(e2);
          if (nse2.elems != e1.elems) continue;
          // for every candidate automizer of E1, the core of E2 under it is
          // too large, so the pair cannot occur together
          bool all_forbidden = true;
          for (const Sub& l : pb[i].star) {
            // X = intersection of E2-images under L
            std::vector<EltId> x = e2.elems;
            std::vector<std::vector<EltId>> orbit = {e2.elems};
            std::map<std::vector<EltId>, char> seen{{e2.elems, 1}};
            for (size_t k = 0; k < orbit.size(); ++k)
              for (EltId c : l.gens) {
                const Perm& perm = pb[i].aut.carrier->elem(c);
                std::vector<EltId> img(orbit[k].size());
                for (size_t t = 0; t < img.size(); ++t)
                  img[t] = e1.elems[perm[e1.position_of(orbit[k][t])]];
                std::sort(img.begin(), img.end());
                if (seen.emplace(img, 1).second) orbit.push_back(img);
              }
            for (const auto& m : orbit) {
              std::vector<EltId> meet;
              std::set_intersection(x.begin(), x.end(), m.begin(), m.end(),
                                    std::back_inserter(meet));
              x = std::move(meet);
            }
            if (e1.order() / static_cast<int64_t>(x.size()) > static_cast<int64_t>(p) * p) {
              all_forbidden = false;
              break;
            }
          }
          if (all_forbidden) forbidden.insert({static_cast<int>(i), static_cast<int>(j)});
        }
    }
    emit(cfg, "The number of forbidden pairs of essential subgroups is  " +
                  std::to_string(forbidden.size()));

    // enumerate automizer sequences: subsets descending by size
    std::vector<int> idx(pb.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    std::vector<std::vector<int>> subsets;
    for (int size = static_cast<int>(pb.size()); size >= 1; --size) {
      std::vector<int> pick;
      std::function<void(int, int)> rec = [&](int from, int need) {
        if (need == 0) {
          subsets.push_back(pick);
          return;
        }
        for (int i = from; i <= static_cast<int>(pb.size()) - need; ++i) {
          pick.push_back(i);
          rec(i + 1, need - 1);
          pick.pop_back();
        }
      };
      rec(0, size);
    }

    // datum-level duplicate removal: canonical keys of the datum and of its
    // images under automorphisms of S normalizing Aut_B(S)
    Sub absub;
    {
      std::vector<EltId> ids;
      for (EltId c : borel.aut_b_s.carrier->generator_ids())
        ids.push_back(aut_s.carrier->id_of(borel.aut_b_s.carrier->elem(c)));
      absub = sub_from_gens(aut_s.carrier, ids);
    }
    Sub norm_abs = normalizer(absub);
    std::set<std::string> seen_keys;
    auto datum_key = [&](const std::vector<int>& members, const std::vector<const Sub*>& ks,
                         const Perm* alpha) {
      // canonical string of (member set, automizer element maps), sorted
      std::vector<std::string> parts;
      for (size_t i = 0; i < members.size(); ++i) {
        const BClassProto& bc = pb[members[i]];
        std::vector<EltId> mset(bc.subgroup.elems.size());
        for (size_t t = 0; t < mset.size(); ++t)
          mset[t] = alpha ? (*alpha)[bc.subgroup.elems[t]] : bc.subgroup.elems[t];
        std::vector<int> order_map(mset.size());
        for (size_t t = 0; t < mset.size(); ++t) order_map[t] = static_cast<int>(t);
        std::vector<EltId> sorted_m = mset;
        std::sort(sorted_m.begin(), sorted_m.end());
        std::vector<std::string> maps;
        for (EltId kc : ks[i]->elems) {
          const Perm& kp = bc.aut.carrier->elem(kc);
          // image vector over sorted_m
          std::string m;
          for (EltId x : sorted_m) {
            // position of preimage of x in mset
            EltId pre = -1;
            for (size_t t = 0; t < mset.size(); ++t)
              if (mset[t] == x) {
                pre = static_cast<EltId>(t);
                break;
              }
            EltId y = mset[kp[pre]];
            m += std::to_string(y) + ",";
          }
          maps.push_back(std::move(m));
        }
        std::sort(maps.begin(), maps.end());
        std::string part;
        for (EltId x : sorted_m) part += std::to_string(x) + ".";
        part += "|";
        for (auto& m : maps) part += m + ";";
        parts.push_back(std::move(part));
      }
      std::sort(parts.begin(), parts.end());
      std::string key;
      for (auto& pc : parts) key += pc + "#";
      return key;
    };

    for (const auto& subset : subsets) {
      // skip subsets containing a forbidden pair
      bool bad = false;
      for (size_t a = 0; a < subset.size() && !bad; ++a)
        for (size_t b = 0; b < subset.size(); ++b)
          if (a != b && forbidden.count({subset[a], subset[b]})) {
            bad = true;
            break;
          }
      if (bad) continue;

      // assignments: product over the subset of the candidate lists
      std::vector<std::vector<const Sub*>> assignments;
      {
        std::vector<const Sub*> cur(subset.size());
        std::function<void(size_t)> rec = [&](size_t level) {
          if (level == subset.size()) {
            assignments.push_back(cur);
            return;
          }
          for (const Sub& k : pb[subset[level]].star) {
            cur[level] = &k;
            rec(level + 1);
          }
        };
        rec(0);
      }

      // per-assignment cheap checks and duplicate removal
      struct Candidate {
        std::vector<int> members;
        std::vector<const Sub*> ks;
      };
      std::vector<Candidate> batch;
      for (const auto& ks : assignments) {
        // duplicate removal under automorphisms normalizing Aut_B(S)
        std::string key = datum_key(subset, ks, nullptr);
        if (seen_keys.count(key)) continue;
        for (EltId a : norm_abs.elems) {
          const Perm& alpha = aut_s.carrier->elem(a);
          seen_keys.insert(datum_key(subset, ks, &alpha));
        }
        batch.push_back({subset, ks});
      }

      // compatibility, focal and core checks
      std::vector<Candidate> survivors;
      for (const auto& cand : batch) {
        detail::CandidateDatum cd{s, p, whole, borel.aut_b_s, {}, {}, {}, {}};
        for (size_t k = 0; k < cand.members.size(); ++k) {
          const BClassProto& bc = pb[cand.members[k]];
          cd.members.push_back(&bc.subgroup);
          cd.auts.push_back(&bc.aut);
          cd.ks.push_back(cand.ks[k]);
          cd.aut_s_subs.push_back(&bc.aut_s);
        }
        if (!detail::datum_prechecks_pass(cd, cfg)) continue;
        survivors.push_back(cand);
      }
      if (survivors.empty()) continue;

      {
        std::string orders;
        for (int m : subset) orders += " " + std::to_string(pb[m].subgroup.order());
        emit(cfg, "Checking " + std::to_string(survivors.size()) + " automizer sequences with " +
                      std::to_string(subset.size()) + " essentials of orders:" + orders);
      }

      // expensive phase: build each system and test saturation
      std::vector<int> sat_flags(survivors.size(), -1);
      std::vector<FusionSystemPtr> systems(survivors.size());
      auto run_one = [&](size_t i) {
        const Candidate& cand = survivors[i];
        FusionData d;
        d.s = s;
        d.p = p;
        d.members.push_back(whole);
        AutSet a0 = borel.aut_b_s;
        d.autos.push_back(a0);
        for (size_t k = 0; k < cand.members.size(); ++k) {
          const BClassProto& bc = pb[cand.members[k]];
          d.members.push_back(bc.subgroup);
          std::vector<Perm> gens;
          for (EltId c : cand.ks[k]->gens) gens.push_back(bc.aut.carrier->elem(c));
          AutSet ak;
          ak.base = bc.subgroup;
          ak.carrier = Group::from_generators(static_cast<int>(bc.subgroup.elems.size()), gens);
          d.autos.push_back(ak);
        }
        FusionSystemPtr sys = std::make_shared<FusionSystem>(std::move(d));
        systems[i] = sys;
        SaturationReport rep = is_saturated(*sys);
        sat_flags[i] = rep.verdict ? 1 : 0;
      };
      if (cfg.jobs > 1 && survivors.size() > 1) {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        int nthreads = std::min<int>(cfg.jobs, static_cast<int>(survivors.size()));
        for (int t = 0; t < nthreads; ++t)
          pool.emplace_back([&] {
            while (true) {
              size_t i = next.fetch_add(1);
              if (i >= survivors.size()) break;
              run_one(i);
            }
          });
        for (auto& th : pool) th.join();
      } else {
        for (size_t i = 0; i < survivors.size(); ++i) run_one(i);
      }
      for (size_t i = 0; i < survivors.size(); ++i) {
        emit(cfg, std::string("Executed saturation test: result is ") +
                      (sat_flags[i] == 1 ? "true" : "false"));
        if (sat_flags[i] == 1) found.push_back(describe_system(systems[i], static_cast<int>(bi + 1)));
      }
    }
  }

  // final duplicate removal by datum isomorphism
  std::vector<SystemRecord> unique;
  for (auto& rec : found) {
    bool dup = false;
    for (auto& known : unique) {
      if (datum_isomorphism(*known.system, *rec.system)) {
        dup = true;
        break;
      }
    }
    if (!dup) unique.push_back(std::move(rec));
  }
  result.systems = std::move(unique);
  return result;
}

bool is_essential_in(const FusionSystem& f, const Sub& p) {
  if (p.order() == f.group()->order()) return false;
  if (!is_centric(f, p)) return false;
  if (!is_fully_normalized(f, p)) return false;
  AutSet a = f.automizer(p);
  Sub inn = inner_automorphisms(a);
  Quotient outq = quotient_of(whole_group(a.carrier), inn);
  return has_strongly_p_embedded(outq.group, f.prime());
}

bool is_pearl(const FusionSystem& f, const Sub& p) {
  int pr = f.prime();
  if (!is_essential_in(f, p)) return false;
  if (p.order() == static_cast<int64_t>(pr) * pr) return true;
  return p.order() == static_cast<int64_t>(pr) * pr * pr && !sub_is_abelian(p);
}

namespace {

FusionSystemPtr rebuild_checked(FusionData d) {
  auto sys = std::make_shared<FusionSystem>(std::move(d));
  SaturationReport rep = is_saturated(*sys);
  if (!rep.verdict)
    fail(ErrorCode::PreconditionViolated, "constructed subsystem is not saturated");
  return sys;
}

}  // namespace

FusionSystemPtr prune_system(const FusionSystem& f, const Sub& p, const AutSet& k) {
  const FusionData& d = f.data();
  int member = -1;
  for (size_t i = 1; i < d.members.size(); ++i)
    if (d.members[i].elems == p.elems) member = static_cast<int>(i);
  if (member < 0) fail(ErrorCode::PreconditionViolated, "subgroup is not a datum member");
  if (!is_essential_in(f, p)) fail(ErrorCode::PreconditionViolated, "subgroup is not essential");
  // minimality: no proper subgroup is S-centric
  Sub whole = whole_group(f.group());
  for (const Sub& q : f.graph().subgroups()) {
    if (q.elems.size() >= p.elems.size() || q.elems.size() == 0) continue;
    if (!std::includes(p.elems.begin(), p.elems.end(), q.elems.begin(), q.elems.end())) continue;
    if (q.order() > 1 && centralizer_in(whole, q).order() == center_of(q).order())
      fail(ErrorCode::PreconditionViolated, "a proper subgroup is S-centric");
  }
  // H_F(P) <= K <= Aut_F(P)
  AutSet h = h_subgroup(f, p);
  AutSet aut_p = f.automizer(p);
  auto contains_all_of = [](const AutSet& big, const AutSet& small) {
    for (EltId c : small.carrier->generator_ids())
      if (!big.carrier->try_id_of(small.carrier->elem(c))) return false;
    return true;
  };
  if (!contains_all_of(k, h) || !contains_all_of(aut_p, k))
    fail(ErrorCode::PreconditionViolated, "automizer outside [H_F(P), Aut_F(P)]");
  FusionData nd = d;
  nd.autos[member] = k;
  return rebuild_checked(std::move(nd));
}

FusionSystemPtr prune_pearl(const FusionSystem& f, const Sub& p) {
  const FusionData& d = f.data();
  int member = -1;
  for (size_t i = 1; i < d.members.size(); ++i)
    if (d.members[i].elems == p.elems) member = static_cast<int>(i);
  if (member < 0) fail(ErrorCode::PreconditionViolated, "subgroup is not a datum member");
  if (!is_pearl(f, p)) fail(ErrorCode::PreconditionViolated, "subgroup is not a pearl");
  FusionData nd;
  nd.s = d.s;
  nd.p = d.p;
  for (size_t i = 0; i < d.members.size(); ++i) {
    if (static_cast<int>(i) == member) continue;
    nd.members.push_back(d.members[i]);
    nd.autos.push_back(d.autos[i]);
  }
  return rebuild_checked(std::move(nd));
}

FusionSystemPtr shrink_system(const FusionSystem& f, const Sub& e, int steps) {
  if (steps < 1) fail(ErrorCode::BadArgument, "steps must be at least 1");
  if (!is_essential_in(f, e)) fail(ErrorCode::PreconditionViolated, "subgroup is not essential");
  const FusionGraph& g = f.graph();
  // not contained in any other essential subgroup
  for (const Sub& q : g.subgroups()) {
    if (q.elems.size() <= e.elems.size()) continue;
    if (q.elems.size() == static_cast<size_t>(f.group()->order())) continue;
    if (!std::includes(q.elems.begin(), q.elems.end(), e.elems.begin(), e.elems.end())) continue;
    if (is_essential_in(f, q))
      fail(ErrorCode::PreconditionViolated, "subgroup lies in another essential subgroup");
  }
  Sub whole = whole_group(f.group());
  Sub s1 = normalizer(e);
  // no proper subgroup of E may be S_1-centric
  for (const Sub& q : g.subgroups()) {
    if (q.elems.size() >= e.elems.size() || q.order() == 1) continue;
    if (!std::includes(e.elems.begin(), e.elems.end(), q.elems.begin(), q.elems.end())) continue;
    if (centralizer_in(s1, q).order() == center_of(q).order())
      fail(ErrorCode::PreconditionViolated, "a proper subgroup of E is S_1-centric");
  }
  // A = N_{Aut_F(S)}(E), C a complement to N_{Inn(S)}(E) in A
  int s_idx = g.subgroup_index(whole.elems);
  AutSet aut_f_s = f.rep_automizer(g.rep_index_of(s_idx));
  Sub a = carrier_stabilizer_of_subgroup(aut_f_s, e);
  Sub inn = inner_automorphisms(aut_f_s);
  Sub n_inn = intersection(a, inn);
  std::optional<Sub> complement;
  auto lat = subgroup_lattice(aut_f_s.carrier);
  for (const auto& set : lat->subgroups_within(a.elems)) {
    if (static_cast<int64_t>(set.size()) != a.order() / n_inn.order()) continue;
    std::vector<EltId> meet;
    std::set_intersection(set.begin(), set.end(), n_inn.elems.begin(), n_inn.elems.end(),
                          std::back_inserter(meet));
    if (meet.size() == 1) {
      Sub c;
      c.parent = aut_f_s.carrier;
      c.elems = set;
      c.gens = small_generating_set(*aut_f_s.carrier, set);
      complement = std::move(c);
      break;
    }
  }
  if (!complement) fail(ErrorCode::PreconditionViolated, "no complement in the normalizer part");

  // iterated normalizers
  Sub si = s1;
  for (int i = 1; i < steps; ++i) si = normalizer(si);

  // standalone copy of S_i
  std::vector<Perm> gens;
  for (EltId x : si.gens) gens.push_back(f.group()->elem(x));
  GroupPtr root = Group::from_generators(f.group()->degree(), gens);
  auto into_root = [&](const Sub& h) {
    Sub out;
    out.parent = root;
    out.elems.reserve(h.elems.size());
    for (EltId x : h.elems) out.elems.push_back(root->id_of(f.group()->elem(x)));
    std::sort(out.elems.begin(), out.elems.end());
    out.gens = small_generating_set(*root, out.elems);
    return out;
  };
  Sub whole_root = whole_group(root);
  Sub e_root = into_root(e);

  // A(S_i) = <Inn(S_i), C_i> where C_i is C restricted to S_i
  std::vector<Perm> asgens;
  for (EltId x : si.gens) {
    // inner automorphism of the copy
    std::vector<uint16_t> img(root->order());
    for (EltId y = 0; y < root->order(); ++y) {
      EltId y_in_s = f.group()->id_of(root->elem(y));
      img[y] = static_cast<uint16_t>(root->id_of(f.group()->elem(f.group()->conj(x, y_in_s))));
    }
    asgens.emplace_back(std::move(img));
  }
  for (EltId c : complement->gens) {
    const Perm& cp = aut_f_s.carrier->elem(c);
    std::vector<uint16_t> img(root->order());
    for (EltId y = 0; y < root->order(); ++y) {
      EltId y_in_s = f.group()->id_of(root->elem(y));
      img[y] = static_cast<uint16_t>(root->id_of(f.group()->elem(cp[y_in_s])));
    }
    asgens.emplace_back(std::move(img));
  }
  FusionData nd;
  nd.s = root;
  nd.p = f.prime();
  nd.members.push_back(whole_root);
  AutSet as;
  as.base = whole_root;
  as.carrier = Group::from_generators(static_cast<int>(root->order()), asgens);
  nd.autos.push_back(as);
  // Aut_F(E) carried over
  AutSet aut_e = f.automizer(e);
  std::vector<Perm> egens;
  for (EltId c : aut_e.carrier->generator_ids()) {
    Morphism m = aut_e.as_morphism(c);
    std::vector<uint16_t> img(e_root.elems.size());
    for (size_t t = 0; t < e_root.elems.size(); ++t) {
      EltId x_in_s = f.group()->id_of(root->elem(e_root.elems[t]));
      EltId y_in_s = m.apply(x_in_s);
      img[t] = static_cast<uint16_t>(e_root.position_of(root->id_of(f.group()->elem(y_in_s))));
    }
    egens.emplace_back(std::move(img));
  }
  AutSet ae;
  ae.base = e_root;
  ae.carrier = Group::from_generators(static_cast<int>(e_root.elems.size()), egens);
  nd.members.push_back(e_root);
  nd.autos.push_back(ae);
  return rebuild_checked(std::move(nd));
}

}  // namespace fusekit
