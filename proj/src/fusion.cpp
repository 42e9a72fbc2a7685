#include "fusekit/fusion.hpp"

#include <algorithm>
#include <functional>

#include "fusekit/error.hpp"
#include "fusekit/lattice.hpp"
#include "fusekit/spembedded.hpp"

namespace fusekit {

namespace {

// orbit of a subgroup-index set under an automorphism action, with witnesses
struct AutOrbit {
  std::vector<int> members;       // subgroup indices
  std::vector<EltId> witness;     // carrier elt: root * w = member
  std::vector<EltId> stab_gens;   // Schreier generators of the root stabilizer
};

Morphism morphism_between(const Sub& src, const Sub& dst, const std::vector<EltId>& image) {
  Morphism m;
  m.src = src;
  m.dst = dst;
  m.img = image;
  return m;
}

}  // namespace

void validate_fusion_data(const FusionData& d, bool require_centric) {
  if (!d.s) fail(ErrorCode::SemanticError, "fusion datum has no underlying group");
  if (d.members.empty() || d.members.size() != d.autos.size())
    fail(ErrorCode::SemanticError, "fusion datum must pair members with automizers");
  if (d.members[0].order() != d.s->order())
    fail(ErrorCode::SemanticError, "the first datum member must be the whole group");
  if (d.s->order() % d.p == 0 && p_part(d.s->order(), d.p) != d.s->order())
    fail(ErrorCode::SemanticError, "underlying group is not a p-group");
  Sub whole = whole_group(d.s);
  for (size_t i = 0; i < d.members.size(); ++i) {
    const Sub& q = d.members[i];
    if (q.parent.get() != d.s.get())
      fail(ErrorCode::SemanticError, "datum member lives in a different group");
    if (d.autos[i].base.elems != q.elems)
      fail(ErrorCode::SemanticError, "automizer base does not match its member");
    if (require_centric) {
      Sub cs = centralizer_in(whole, q);
      Sub z = center_of(q);
      if (cs.order() != z.order())
        fail(ErrorCode::SemanticError,
             "datum member " + std::to_string(i) + " is not S-centric");
    }
    // Aut_S(Q) <= A(Q), verified generator-wise
    AutSet aut_s = induced_automizer(whole, q);
    for (EltId c : aut_s.carrier->generator_ids()) {
      const Perm& perm = aut_s.carrier->elem(c);
      if (!d.autos[i].carrier->try_id_of(perm))
        fail(ErrorCode::SemanticError,
             "datum member " + std::to_string(i) + " does not carry Aut_S(Q)");
    }
    // every carrier element must be an automorphism; spot-check generators
    for (EltId c : d.autos[i].carrier->generator_ids()) {
      Morphism m = d.autos[i].as_morphism(c);
      if (!m.is_multiplicative())
        fail(ErrorCode::SemanticError, "automizer carrier contains a non-automorphism");
    }
  }
  // no two members in one A(S)-orbit
  const AutSet& as = d.autos[0];
  for (size_t i = 1; i < d.members.size(); ++i)
    for (size_t j = i + 1; j < d.members.size(); ++j) {
      if (d.members[i].order() != d.members[j].order()) continue;
      // orbit of member i under A(S)
      std::vector<std::vector<EltId>> orbit = {d.members[i].elems};
      std::vector<char> hit(1, 1);
      std::map<std::vector<EltId>, char> seen;
      seen[d.members[i].elems] = 1;
      for (size_t k = 0; k < orbit.size(); ++k) {
        for (EltId c : as.carrier->generator_ids()) {
          const Perm& perm = as.carrier->elem(c);
          std::vector<EltId> img(orbit[k].size());
          for (size_t t = 0; t < img.size(); ++t) img[t] = perm[orbit[k][t]];
          std::sort(img.begin(), img.end());
          if (img == d.members[j].elems)
            fail(ErrorCode::SemanticError, "two datum members lie in one A(S)-orbit");
          if (seen.emplace(img, 1).second) orbit.push_back(std::move(img));
        }
      }
    }
}

FusionSystem::FusionSystem(FusionData data, bool require_centric) : data_(std::move(data)) {
  validate_fusion_data(data_, require_centric);
}

int FusionGraph::subgroup_index(const std::vector<EltId>& set) const {
  auto it = index_.find(set);
  return it == index_.end() ? -1 : it->second;
}

const FusionGraph& FusionSystem::graph() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (!graph_) build_graph();
  return *graph_;
}

void FusionSystem::build_graph() const {
  auto g = std::make_unique<FusionGraph>();
  const GroupPtr& s = data_.s;
  Sub whole = whole_group(s);

  g->subs_ = subgroup_lattice(s)->all_subgroups();
  for (size_t i = 0; i < g->subs_.size(); ++i) g->index_[g->subs_[i].elems] = static_cast<int>(i);

  int n = static_cast<int>(g->subs_.size());
  g->s_centric_.resize(n);
  g->normalizer_order_.resize(n);
  for (int i = 0; i < n; ++i) {
    Sub cs = centralizer_in(whole, g->subs_[i]);
    Sub z = center_of(g->subs_[i]);
    g->s_centric_[i] = cs.order() == z.order() ? 1 : 0;
    g->normalizer_order_[i] = normalizer(g->subs_[i]).order();
  }

  // A(S)-orbits on all subgroups, datum members first so they represent
  const AutSet& as = data_.autos[0];
  const Group& asc = *as.carrier;
  g->rep_of_.assign(n, -1);
  g->to_rep_.assign(n, asc.identity());
  auto apply_aut = [&](int sub_idx, EltId c) {
    const Perm& perm = asc.elem(c);
    std::vector<EltId> img(g->subs_[sub_idx].elems.size());
    for (size_t t = 0; t < img.size(); ++t) img[t] = perm[g->subs_[sub_idx].elems[t]];
    std::sort(img.begin(), img.end());
    int idx = g->subgroup_index(img);
    if (idx < 0) fail(ErrorCode::SemanticError, "automorphism image is not a subgroup");
    return idx;
  };
  auto orbit_from = [&](int root) {
    g->rep_of_[root] = root;
    g->to_rep_[root] = asc.identity();
    std::vector<int> queue = {root};
    for (size_t k = 0; k < queue.size(); ++k) {
      for (EltId c : asc.generator_ids()) {
        int img = apply_aut(queue[k], c);
        if (g->rep_of_[img] < 0) {
          g->rep_of_[img] = root;
          g->to_rep_[img] = asc.mul(g->to_rep_[queue[k]], c);
          queue.push_back(img);
        }
      }
    }
    g->orbit_of_[root] = std::move(queue);
  };
  for (const Sub& m : data_.members) {
    int idx = g->subgroup_index(m.elems);
    if (idx < 0) fail(ErrorCode::SemanticError, "datum member is not a subgroup");
    if (g->rep_of_[idx] >= 0)
      fail(ErrorCode::SemanticError, "two datum members lie in one A(S)-orbit");
    orbit_from(idx);
  }
  for (int i = 0; i < n; ++i)
    if (g->rep_of_[i] < 0) orbit_from(i);
  for (int i = 0; i < n; ++i)
    if (g->rep_of_[i] == i) g->reps_.push_back(i);

  // union-find over representatives
  std::map<int, int> parent;
  for (int r : g->reps_) parent[r] = r;
  std::function<int(int)> findc = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  // edges: for each member Q, orbits of A(Q) on the subgroups of Q
  for (size_t mi = 0; mi < data_.members.size(); ++mi) {
    const Sub& q = data_.members[mi];
    const AutSet& aq = data_.autos[mi];
    const Group& aqc = *aq.carrier;
    // subgroup indices inside q
    std::vector<int> inside;
    for (int i = 0; i < n; ++i)
      if (g->subs_[i].elems.size() <= q.elems.size() &&
          std::includes(q.elems.begin(), q.elems.end(), g->subs_[i].elems.begin(),
                        g->subs_[i].elems.end()))
        inside.push_back(i);
    auto apply_q = [&](int sub_idx, EltId c) {
      const Perm& perm = aqc.elem(c);
      std::vector<EltId> img(g->subs_[sub_idx].elems.size());
      for (size_t t = 0; t < img.size(); ++t)
        img[t] = q.elems[perm[q.position_of(g->subs_[sub_idx].elems[t])]];
      std::sort(img.begin(), img.end());
      return g->subgroup_index(img);
    };
    std::map<int, char> visited;
    for (int start : inside) {
      if (visited.count(start)) continue;
      // orbit with witnesses
      std::vector<int> omember = {start};
      std::vector<EltId> owit = {aqc.identity()};
      std::map<int, int> pos_in_orbit;
      pos_in_orbit[start] = 0;
      visited[start] = 1;
      for (size_t k = 0; k < omember.size(); ++k) {
        for (EltId c : aqc.generator_ids()) {
          int img = apply_q(omember[k], c);
          if (!pos_in_orbit.count(img)) {
            pos_in_orbit[img] = static_cast<int>(omember.size());
            omember.push_back(img);
            owit.push_back(aqc.mul(owit[k], c));
            visited[img] = 1;
          }
        }
      }
      // first member per representative
      std::map<int, int> first_of_rep;  // rep -> orbit position
      for (size_t k = 0; k < omember.size(); ++k) {
        int rep = g->rep_of_[omember[k]];
        if (!first_of_rep.count(rep)) first_of_rep[rep] = static_cast<int>(k);
      }
      // connect every pair of touched representatives
      for (auto ita = first_of_rep.begin(); ita != first_of_rep.end(); ++ita)
        for (auto itb = std::next(ita); itb != first_of_rep.end(); ++itb) {
          int ra = ita->first, rb = itb->first;
          int ka = ita->second, kb = itb->second;
          int ua = findc(ra), ub = findc(rb);
          if (ua != ub) parent[ua] = ub;
          std::pair<int, int> key = {std::min(ra, rb), std::max(ra, rb)};
          if (g->edges_.count(key)) continue;
          // label: rep_a -> member_a -> member_b -> rep_b
          int xa = omember[ka], xb = omember[kb];
          // transversal morphisms rep -> member under A(S)
          auto transversal = [&](int sub_idx) {
            const Perm& perm = asc.elem(g->to_rep_[sub_idx]);
            const Sub& rep_sub = g->subs_[g->rep_of_[sub_idx]];
            std::vector<EltId> img(rep_sub.elems.size());
            for (size_t t = 0; t < img.size(); ++t) img[t] = perm[rep_sub.elems[t]];
            return morphism_between(rep_sub, g->subs_[sub_idx], img);
          };
          Morphism beta_a = transversal(xa);
          Morphism beta_b = transversal(xb);
          // map xa -> xb inside q: carrier element owit[ka]^{-1} * owit[kb]
          EltId mu = aqc.mul(aqc.inv(owit[ka]), owit[kb]);
          const Perm& muperm = aqc.elem(mu);
          std::vector<EltId> img(g->subs_[xa].elems.size());
          for (size_t t = 0; t < img.size(); ++t)
            img[t] = q.elems[muperm[q.position_of(g->subs_[xa].elems[t])]];
          Morphism mid = morphism_between(g->subs_[xa], g->subs_[xb], img);
          Morphism label = beta_a.then(mid).then(beta_b.inverse());
          if (ra > rb) label = label.inverse();
          g->edges_.emplace(key, std::move(label));
        }
    }
  }

  // components
  std::map<int, int> comp_index;
  for (int r : g->reps_) {
    int root = findc(r);
    if (!comp_index.count(root)) {
      comp_index[root] = static_cast<int>(g->comps_.size());
      g->comps_.push_back({});
    }
    g->comp_of_[r] = comp_index[root];
    g->comps_[comp_index[root]].push_back(r);
  }

  // spanning tree per component (breadth-first from the minimal rep)
  for (const auto& comp : g->comps_) {
    std::map<int, std::vector<int>> adj;
    for (const auto& [key, label] : g->edges_) {
      adj[key.first].push_back(key.second);
      adj[key.second].push_back(key.first);
    }
    int root = comp[0];
    g->tree_[root] = {root, 0};
    std::vector<int> queue = {root};
    for (size_t k = 0; k < queue.size(); ++k) {
      auto it = adj.find(queue[k]);
      if (it == adj.end()) continue;
      std::vector<int> nb = it->second;
      std::sort(nb.begin(), nb.end());
      for (int x : nb) {
        if (g->tree_.count(x)) continue;
        g->tree_[x] = {queue[k], g->tree_[queue[k]].second + 1};
        queue.push_back(x);
      }
    }
  }

  graph_ = std::move(g);
}

Morphism FusionSystem::transversal_morphism(int sub_idx) const {
  const FusionGraph& g = *graph_;
  const AutSet& as = data_.autos[0];
  const Perm& perm = as.carrier->elem(g.to_rep_[sub_idx]);
  const Sub& rep_sub = g.subs_[g.rep_of_[sub_idx]];
  std::vector<EltId> img(rep_sub.elems.size());
  for (size_t t = 0; t < img.size(); ++t) img[t] = perm[rep_sub.elems[t]];
  return morphism_between(rep_sub, g.subs_[sub_idx], img);
}

Morphism FusionSystem::rep_theta(int rep_x, int rep_y) const {
  const FusionGraph& g = graph();
  if (rep_x == rep_y) return Morphism::identity(g.subs_[rep_x]);
  std::lock_guard<std::mutex> lock(mu_);
  std::function<Morphism(int, int)> compute = [&](int a, int b) -> Morphism {
    if (a == b) return Morphism::identity(g.subs_[a]);
    std::pair<int, int> key = {a, b};
    auto it = theta_cache_.find(key);
    if (it != theta_cache_.end()) return it->second;
    std::pair<int, int> rkey = {b, a};
    it = theta_cache_.find(rkey);
    if (it != theta_cache_.end()) return it->second.inverse();
    Morphism out;
    std::pair<int, int> ekey = {std::min(a, b), std::max(a, b)};
    auto eit = g.edges_.find(ekey);
    if (eit != g.edges_.end()) {
      out = a < b ? eit->second : eit->second.inverse();
    } else {
      auto ta = g.tree_.find(a);
      auto tb = g.tree_.find(b);
      if (ta == g.tree_.end() || tb == g.tree_.end() ||
          g.comp_of_.at(a) != g.comp_of_.at(b))
        fail(ErrorCode::NotConjugate, "subgroups are not conjugate in the fusion system");
      if (tb->second.second > 0) {
        int pb = tb->second.first;
        out = compute(a, pb).then(compute(pb, b));
      } else {
        int pa = ta->second.first;
        out = compute(a, pa).then(compute(pa, b));
      }
    }
    theta_cache_[key] = out;
    return out;
  };
  return compute(rep_x, rep_y);
}

Morphism FusionSystem::index_theta(int x, int y) const {
  const FusionGraph& g = graph();
  int rx = g.rep_of_[x], ry = g.rep_of_[y];
  if (g.comp_of_.at(rx) != g.comp_of_.at(ry))
    fail(ErrorCode::NotConjugate, "subgroups are not conjugate in the fusion system");
  Morphism beta = transversal_morphism(x);
  Morphism delta = transversal_morphism(y);
  return beta.inverse().then(rep_theta(rx, ry)).then(delta);
}

Morphism FusionSystem::theta(const Sub& x, const Sub& y) const {
  const FusionGraph& g = graph();
  int xi = g.subgroup_index(x.elems);
  int yi = g.subgroup_index(y.elems);
  if (xi < 0 || yi < 0) fail(ErrorCode::BadArgument, "not subgroups of the underlying group");
  return index_theta(xi, yi);
}

std::optional<Morphism> FusionSystem::conjugating_morphism(const Sub& x, const Sub& y) const {
  const FusionGraph& g = graph();
  int xi = g.subgroup_index(x.elems);
  int yi = g.subgroup_index(y.elems);
  if (xi < 0 || yi < 0) fail(ErrorCode::BadArgument, "not subgroups of the underlying group");
  if (g.comp_of_.at(g.rep_of_[xi]) != g.comp_of_.at(g.rep_of_[yi])) return std::nullopt;
  return index_theta(xi, yi);
}

bool FusionSystem::are_conjugate(const Sub& x, const Sub& y) const {
  return conjugating_morphism(x, y).has_value();
}

AutSet FusionSystem::rep_automizer(int rep_idx) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = automizer_cache_.find(rep_idx);
    if (it != automizer_cache_.end()) return it->second;
  }
  const FusionGraph& g = graph();
  const Sub& base = g.subs_[rep_idx];
  int comp = g.comp_of_.at(rep_idx);
  const std::vector<int>& comp_reps = g.comps_[comp];

  std::vector<Perm> gen_perms;
  std::unordered_map<Perm, char, PermHash> gen_seen;
  Perm idperm = Perm::identity(static_cast<int>(base.elems.size()));
  gen_seen.emplace(idperm, 1);
  std::vector<Perm> closure_elems = {idperm};
  std::unordered_map<Perm, char, PermHash> closure_set;
  closure_set.emplace(idperm, 1);
  auto add_gen = [&](const Morphism& m) {
    std::vector<uint16_t> img(base.elems.size());
    for (size_t t = 0; t < img.size(); ++t)
      img[t] = static_cast<uint16_t>(base.position_of(m.img[t]));
    Perm p(std::move(img));
    if (closure_set.count(p)) return;
    gen_perms.push_back(p);
    // re-close
    closure_elems = {idperm};
    closure_set.clear();
    closure_set.emplace(idperm, 1);
    for (size_t i = 0; i < closure_elems.size(); ++i)
      for (const Perm& q : gen_perms) {
        Perm r = closure_elems[i].then(q);
        if (closure_set.emplace(r, 1).second) closure_elems.push_back(std::move(r));
      }
  };

  // holonomy generators: theta cycles through pairs of component vertices
  for (int x : comp_reps)
    for (int y : comp_reps) {
      if (x == y || x == rep_idx || y == rep_idx) continue;
      add_gen(rep_theta(rep_idx, x).then(rep_theta(x, y)).then(rep_theta(y, rep_idx)));
    }

  // automizer generators from the datum members
  const AutSet& as = data_.autos[0];
  const Group& asc = *as.carrier;
  for (size_t mi = 0; mi < data_.members.size(); ++mi) {
    const Sub& q = data_.members[mi];
    const AutSet& aq = data_.autos[mi];
    const Group& aqc = *aq.carrier;
    auto apply_q = [&](int sub_idx, EltId c) {
      const Perm& perm = aqc.elem(c);
      std::vector<EltId> img(g.subs_[sub_idx].elems.size());
      for (size_t t = 0; t < img.size(); ++t)
        img[t] = q.elems[perm[q.position_of(g.subs_[sub_idx].elems[t])]];
      std::sort(img.begin(), img.end());
      return g.subgroup_index(img);
    };
    // subgroup indices inside q whose representative lies in this component
    std::vector<int> inside;
    for (int i = 0; i < static_cast<int>(g.subs_.size()); ++i)
      if (g.comp_of_.count(g.rep_of_[i]) && g.comp_of_.at(g.rep_of_[i]) == comp &&
          g.subs_[i].elems.size() <= q.elems.size() &&
          std::includes(q.elems.begin(), q.elems.end(), g.subs_[i].elems.begin(),
                        g.subs_[i].elems.end()))
        inside.push_back(i);
    std::map<int, char> visited;
    for (int start : inside) {
      if (visited.count(start)) continue;
      std::vector<int> omember = {start};
      std::vector<EltId> owit = {aqc.identity()};
      std::map<int, int> pos_in_orbit = {{start, 0}};
      visited[start] = 1;
      for (size_t k = 0; k < omember.size(); ++k)
        for (EltId c : aqc.generator_ids()) {
          int img = apply_q(omember[k], c);
          if (!pos_in_orbit.count(img)) {
            pos_in_orbit[img] = static_cast<int>(omember.size());
            omember.push_back(img);
            owit.push_back(aqc.mul(owit[k], c));
            visited[img] = 1;
          }
        }
      // Schreier generators of the stabilizer of the orbit root
      std::vector<EltId> stab;
      std::map<EltId, char> stab_seen;
      for (size_t k = 0; k < omember.size(); ++k)
        for (EltId c : aqc.generator_ids()) {
          int img = apply_q(omember[k], c);
          EltId sg = aqc.mul(aqc.mul(owit[k], c), aqc.inv(owit[pos_in_orbit[img]]));
          if (stab_seen.emplace(sg, 1).second) stab.push_back(sg);
        }
      for (size_t k = 0; k < omember.size(); ++k) {
        int xp = omember[k];
        // candidates rho: conjugated stabilizer generators, then the
        // transversal maps onto every orbit member
        std::vector<std::pair<EltId, int>> rhos;
        for (EltId sg : stab)
          rhos.push_back({aqc.mul(aqc.mul(aqc.inv(owit[k]), sg), owit[k]), xp});
        for (size_t k2 = 0; k2 < omember.size(); ++k2)
          rhos.push_back({aqc.mul(aqc.inv(owit[k]), owit[k2]), omember[k2]});
        Morphism beta = transversal_morphism(xp);
        Morphism theta_in = rep_theta(rep_idx, g.rep_of_[xp]).then(beta);
        for (auto [rho, yp] : rhos) {
          const Perm& rp = aqc.elem(rho);
          std::vector<EltId> img(g.subs_[xp].elems.size());
          for (size_t t = 0; t < img.size(); ++t)
            img[t] = q.elems[rp[q.position_of(g.subs_[xp].elems[t])]];
          Morphism mid = morphism_between(g.subs_[xp], g.subs_[yp], img);
          Morphism delta = transversal_morphism(yp);
          Morphism back = delta.inverse().then(rep_theta(g.rep_of_[yp], rep_idx));
          add_gen(theta_in.then(mid).then(back));
        }
      }
    }
  }

  AutSet result;
  result.base = base;
  result.carrier = Group::from_generators(static_cast<int>(base.elems.size()), gen_perms);

  std::lock_guard<std::mutex> lock(mu_);
  automizer_cache_.emplace(rep_idx, result);
  return result;
}

AutSet FusionSystem::automizer(const Sub& p) const {
  const FusionGraph& g = graph();
  int idx = g.subgroup_index(p.elems);
  if (idx < 0) fail(ErrorCode::BadArgument, "not a subgroup of the underlying group");
  AutSet rep_aut = rep_automizer(g.rep_of_[idx]);
  if (g.rep_of_[idx] == idx) return rep_aut;
  // conjugate back along the transversal
  Morphism beta = transversal_morphism(idx);
  std::vector<Perm> gens;
  const Sub& psub = g.subs_[idx];
  for (EltId c : rep_aut.carrier->generator_ids()) {
    Morphism m = beta.inverse().then(rep_aut.as_morphism(c)).then(beta);
    std::vector<uint16_t> img(psub.elems.size());
    for (size_t t = 0; t < img.size(); ++t)
      img[t] = static_cast<uint16_t>(psub.position_of(m.img[t]));
    gens.emplace_back(std::move(img));
  }
  AutSet out;
  out.base = psub;
  out.carrier = Group::from_generators(static_cast<int>(psub.elems.size()), gens);
  return out;
}

std::optional<Perm> datum_isomorphism(const FusionSystem& a, const FusionSystem& b) {
  if (a.group().get() != b.group().get())
    fail(ErrorCode::BadArgument, "datum isomorphism requires one underlying group");
  const FusionData& da = a.data();
  const FusionData& db = b.data();
  if (da.members.size() != db.members.size()) return std::nullopt;
  // class invariants: multisets of (order, automizer order)
  auto profile = [](const FusionData& d) {
    std::vector<std::pair<int64_t, int64_t>> v;
    for (size_t i = 0; i < d.members.size(); ++i)
      v.push_back({d.members[i].order(), d.autos[i].order()});
    std::sort(v.begin(), v.end());
    return v;
  };
  if (profile(da) != profile(db)) return std::nullopt;

  AutSet aut_s = automorphism_group(whole_group(da.s));
  std::map<std::vector<EltId>, int> b_member_index;
  for (size_t i = 0; i < db.members.size(); ++i) b_member_index[db.members[i].elems] = static_cast<int>(i);

  for (EltId t = 0; t < aut_s.carrier->order(); ++t) {
    const Perm& theta = aut_s.carrier->elem(t);
    bool ok = true;
    for (size_t i = 0; i < da.members.size() && ok; ++i) {
      std::vector<EltId> img(da.members[i].elems.size());
      for (size_t k = 0; k < img.size(); ++k) img[k] = theta[da.members[i].elems[k]];
      std::sort(img.begin(), img.end());
      auto it = b_member_index.find(img);
      if (it == b_member_index.end()) {
        ok = false;
        break;
      }
      int j = it->second;
      if (da.autos[i].order() != db.autos[j].order()) {
        ok = false;
        break;
      }
      // A1(Q)^theta == A2(Q theta): generators conjugate into the carrier
      const Sub& qa = da.members[i];
      const Sub& qb = db.members[j];
      for (EltId c : da.autos[i].carrier->generator_ids()) {
        const Perm& m = da.autos[i].carrier->elem(c);
        std::vector<uint16_t> conj(qb.elems.size());
        for (size_t k = 0; k < qb.elems.size(); ++k) {
          // theta^{-1} then m then theta, expressed on qb positions
          EltId pre = 0;
          // find preimage of qb.elems[k] under theta
          // theta is a bijection on ids; invert pointwise
          // (kept simple: scan qa for the preimage)
          int pos = -1;
          for (size_t u = 0; u < qa.elems.size(); ++u)
            if (theta[qa.elems[u]] == qb.elems[k]) {
              pos = static_cast<int>(u);
              break;
            }
          if (pos < 0) {
            ok = false;
            break;
          }
          pre = qa.elems[m[pos]];
          conj[k] = static_cast<uint16_t>(qb.position_of(theta[pre]));
        }
        if (!ok) break;
        if (!db.autos[j].carrier->try_id_of(Perm(std::move(conj)))) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return theta;
  }
  return std::nullopt;
}

namespace {

// translate an automizer computed in one parent group into the standalone
// copy of its base
AutSet translate_autset(const AutSet& a, const GroupPtr& root) {
  Sub base;
  base.parent = root;
  base.elems.resize(a.base.elems.size());
  for (size_t i = 0; i < a.base.elems.size(); ++i)
    base.elems[i] = root->id_of(a.base.parent->elem(a.base.elems[i]));
  std::sort(base.elems.begin(), base.elems.end());
  base.gens = small_generating_set(*root, base.elems);
  // position translation old -> new
  std::vector<int> newpos(a.base.elems.size());
  for (size_t i = 0; i < a.base.elems.size(); ++i)
    newpos[i] = base.position_of(root->id_of(a.base.parent->elem(a.base.elems[i])));
  std::vector<Perm> gens;
  for (EltId c : a.carrier->generator_ids()) {
    const Perm& p = a.carrier->elem(c);
    std::vector<uint16_t> img(base.elems.size());
    for (size_t i = 0; i < a.base.elems.size(); ++i) img[newpos[i]] = static_cast<uint16_t>(newpos[p[i]]);
    gens.emplace_back(std::move(img));
  }
  AutSet out;
  out.base = base;
  out.carrier = Group::from_generators(static_cast<int>(base.elems.size()), gens);
  return out;
}

}  // namespace

FusionData group_datum(const GroupPtr& gg, int p) {
  Sub syl = sylow_subgroup(gg, p);
  std::vector<Perm> sgens;
  for (EltId x : syl.gens) sgens.push_back(gg->elem(x));
  GroupPtr s = Group::from_generators(gg->degree(), sgens);

  Sub whole_g = whole_group(gg);
  auto lat = subgroup_lattice(s);
  auto subs = lat->all_subgroups();

  // essential subgroups: S-centric, fully normalized, F-centric, with
  // strongly p-embedded outer automizer in G
  std::vector<Sub> essentials;      // in g coordinates
  std::vector<std::vector<EltId>> seen_orbit_members;  // g-coordinate sets already covered
  Sub s_in_g;
  s_in_g.parent = gg;
  s_in_g.elems.resize(s->order());
  for (EltId i = 0; i < s->order(); ++i) s_in_g.elems[i] = gg->id_of(s->elem(i));
  std::sort(s_in_g.elems.begin(), s_in_g.elems.end());
  s_in_g.gens = syl.gens;

  for (const Sub& e_root : subs) {
    if (e_root.order() == s->order() || e_root.order() == 1) continue;
    // into g coordinates
    Sub e;
    e.parent = gg;
    e.elems.resize(e_root.elems.size());
    for (size_t i = 0; i < e_root.elems.size(); ++i) e.elems[i] = gg->id_of(s->elem(e_root.elems[i]));
    std::sort(e.elems.begin(), e.elems.end());
    e.gens = small_generating_set(*gg, e.elems);
    bool covered = false;
    for (const auto& m : seen_orbit_members)
      if (m == e.elems) {
        covered = true;
        break;
      }
    if (covered) continue;
    // S-centric first (cheap)
    Sub cs = centralizer_in(s_in_g, e);
    if (cs.order() != center_of(e).order()) continue;
    // orbit under G
    auto orbit = subgroup_conjugates(whole_g, e);
    // members inside S
    std::vector<std::vector<EltId>> in_s;
    for (const auto& m : orbit)
      if (std::includes(s_in_g.elems.begin(), s_in_g.elems.end(), m.begin(), m.end()))
        in_s.push_back(m);
    for (const auto& m : in_s) seen_orbit_members.push_back(m);
    // F-centric: every conjugate inside S is S-centric
    bool fcentric = true;
    int64_t best_norm = 0;
    std::vector<EltId> best;
    for (const auto& m : in_s) {
      Sub ms;
      ms.parent = gg;
      ms.elems = m;
      ms.gens = small_generating_set(*gg, m);
      Sub c = centralizer_in(s_in_g, ms);
      if (c.order() != center_of(ms).order()) {
        fcentric = false;
        break;
      }
      int64_t norm = normalizer_in(s_in_g, ms).order();
      if (norm > best_norm || (norm == best_norm && (best.empty() || m < best))) {
        best_norm = norm;
        best = m;
      }
    }
    if (!fcentric) continue;
    // fully normalized representative
    Sub rep;
    rep.parent = gg;
    rep.elems = best;
    rep.gens = small_generating_set(*gg, best);
    // strongly p-embedded outer automizer
    AutSet aut_g = induced_automizer(whole_g, rep);
    Sub inn = inner_automorphisms(aut_g);
    Quotient out = quotient_of(whole_group(aut_g.carrier), inn);
    if (!has_strongly_p_embedded(out.group, p)) continue;
    essentials.push_back(rep);
  }

  std::sort(essentials.begin(), essentials.end(), [](const Sub& a, const Sub& b) {
    if (a.elems.size() != b.elems.size()) return a.elems.size() > b.elems.size();
    return a.elems < b.elems;
  });

  FusionData d;
  d.s = s;
  d.p = p;
  d.members.push_back(whole_group(s));
  d.autos.push_back(translate_autset(induced_automizer(whole_g, s_in_g), s));
  for (const Sub& e : essentials) {
    AutSet a = translate_autset(induced_automizer(whole_g, e), s);
    d.members.push_back(a.base);
    d.autos.push_back(a);
  }
  return d;
}

FusionSystemPtr group_fusion_system(const GroupPtr& g, int p) {
  return std::make_shared<FusionSystem>(group_datum(g, p));
}

FusionSystemPtr transport_system(const FusionSystem& f, const GroupPtr& target) {
  const FusionData& d = f.data();
  auto iso = find_isomorphism(whole_group(d.s), whole_group(target));
  if (!iso) fail(ErrorCode::BadArgument, "underlying groups are not isomorphic");
  FusionData nd;
  nd.s = target;
  nd.p = d.p;
  for (size_t i = 0; i < d.members.size(); ++i) {
    Sub m;
    m.parent = target;
    m.elems.resize(d.members[i].elems.size());
    for (size_t t = 0; t < m.elems.size(); ++t) m.elems[t] = iso->apply(d.members[i].elems[t]);
    std::sort(m.elems.begin(), m.elems.end());
    m.gens = small_generating_set(*target, m.elems);
    std::vector<Perm> gens;
    for (EltId c : d.autos[i].carrier->generator_ids()) {
      Morphism a = d.autos[i].as_morphism(c);
      std::vector<uint16_t> img(m.elems.size());
      for (size_t t = 0; t < m.elems.size(); ++t) {
        // theta^{-1}, then the automorphism, then theta
        EltId back = d.members[i].elems[0];
        int pos = -1;
        for (size_t u = 0; u < d.members[i].elems.size(); ++u)
          if (iso->apply(d.members[i].elems[u]) == m.elems[t]) {
            pos = static_cast<int>(u);
            break;
          }
        back = a.img[pos];
        img[t] = static_cast<uint16_t>(m.position_of(iso->apply(back)));
      }
      gens.emplace_back(std::move(img));
    }
    AutSet as;
    as.base = m;
    as.carrier = Group::from_generators(static_cast<int>(m.elems.size()), gens);
    nd.members.push_back(std::move(m));
    nd.autos.push_back(std::move(as));
  }
  return std::make_shared<FusionSystem>(std::move(nd));
}

bool systems_isomorphic(const FusionSystem& a, const FusionSystem& b) {
  if (a.group().get() == b.group().get()) return datum_isomorphism(a, b).has_value();
  if (a.group()->order() != b.group()->order()) return false;
  if (!are_isomorphic(a.group(), b.group())) return false;
  FusionSystemPtr moved = transport_system(b, a.group());
  return datum_isomorphism(a, *moved).has_value();
}

}  // namespace fusekit
