#include "support/oracles.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "fusekit/error.hpp"

namespace fusekit::oracle {

namespace {

uint64_t set_hash(const std::vector<EltId>& v) {
  uint64_t acc = 1469598103934665603ULL;
  for (EltId x : v) {
    acc ^= static_cast<uint64_t>(x) + 0x9e3779b97f4a7c15ULL;
    acc *= 1099511628211ULL;
  }
  return acc;
}

struct SetPool {
  std::vector<std::vector<EltId>> sets;
  std::unordered_map<uint64_t, std::vector<int>> index;

  int find(const std::vector<EltId>& v) const {
    auto it = index.find(set_hash(v));
    if (it == index.end()) return -1;
    for (int i : it->second)
      if (sets[i] == v) return i;
    return -1;
  }
  int insert(std::vector<EltId> v) {
    int at = find(v);
    if (at >= 0) return at;
    at = static_cast<int>(sets.size());
    index[set_hash(v)].push_back(at);
    sets.push_back(std::move(v));
    return at;
  }
};

std::vector<EltId> closure_of(const Group& g, std::vector<EltId> seed) {
  std::sort(seed.begin(), seed.end());
  seed.erase(std::unique(seed.begin(), seed.end()), seed.end());
  std::vector<char> member(g.order(), 0);
  std::vector<EltId> work;
  auto add = [&](EltId x) {
    if (!member[x]) {
      member[x] = 1;
      work.push_back(x);
    }
  };
  add(g.identity());
  for (EltId x : seed) add(x);
  for (size_t i = 0; i < work.size(); ++i)
    for (size_t j = 0; j < work.size(); ++j) {
      add(g.mul(work[i], work[j]));
      if (work.size() > static_cast<size_t>(g.order())) break;
    }
  std::sort(work.begin(), work.end());
  return work;
}

}  // namespace

std::vector<std::vector<EltId>> all_subgroups(const GroupPtr& g) {
  SetPool pool;
  pool.insert({g->identity()});
  // cyclic subgroups
  for (EltId x = 0; x < g->order(); ++x) {
    std::vector<EltId> cyc;
    EltId y = x;
    while (true) {
      cyc.push_back(y);
      if (y == g->identity()) break;
      y = g->mul(y, x);
    }
    std::sort(cyc.begin(), cyc.end());
    pool.insert(std::move(cyc));
  }
  // join closure over all pairs
  for (size_t i = 0; i < pool.sets.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      std::vector<EltId> seed = pool.sets[i];
      seed.insert(seed.end(), pool.sets[j].begin(), pool.sets[j].end());
      pool.insert(closure_of(*g, std::move(seed)));
    }
  }
  auto out = pool.sets;
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

int64_t automorphism_count(const GroupPtr& g) {
  const Group& gr = *g;
  int64_t n = gr.order();
  if (n == 1) return 1;
  // fixed generating sequence: first element of maximal order, extend greedily
  std::vector<EltId> gens;
  std::vector<EltId> have = {gr.identity()};
  while (static_cast<int64_t>(have.size()) < n) {
    EltId best = -1;
    int bo = -1;
    for (EltId x = 0; x < n; ++x) {
      if (std::binary_search(have.begin(), have.end(), x)) continue;
      if (gr.element_order(x) > bo) {
        bo = gr.element_order(x);
        best = x;
      }
    }
    gens.push_back(best);
    std::vector<EltId> cl = *closure_ids(gr, gens, 0);
    have = cl;
  }
  // canonical word for every element: BFS over right multiplication
  std::vector<std::vector<int>> word(n);
  std::vector<char> seen(n, 0);
  std::vector<EltId> queue = {gr.identity()};
  seen[gr.identity()] = 1;
  for (size_t i = 0; i < queue.size(); ++i)
    for (size_t k = 0; k < gens.size(); ++k) {
      EltId y = gr.mul(queue[i], gens[k]);
      if (!seen[y]) {
        seen[y] = 1;
        word[y] = word[queue[i]];
        word[y].push_back(static_cast<int>(k));
        queue.push_back(y);
      }
    }
  // enumerate image tuples
  int64_t count = 0;
  std::vector<EltId> img(gens.size());
  std::function<void(size_t)> rec = [&](size_t level) {
    if (level == gens.size()) {
      // build the full candidate map via canonical words
      std::vector<EltId> phi(n);
      for (EltId x = 0; x < n; ++x) {
        EltId v = gr.identity();
        for (int k : word[x]) v = gr.mul(v, img[k]);
        phi[x] = v;
      }
      // bijectivity
      std::vector<char> used(n, 0);
      for (EltId x = 0; x < n; ++x) {
        if (used[phi[x]]) return;
        used[phi[x]] = 1;
      }
      // full multiplicativity
      for (EltId a = 0; a < n; ++a)
        for (EltId b = 0; b < n; ++b)
          if (phi[gr.mul(a, b)] != gr.mul(phi[a], phi[b])) return;
      ++count;
      return;
    }
    int want = gr.element_order(gens[level]);
    for (EltId cand = 0; cand < n; ++cand) {
      if (gr.element_order(cand) != want) continue;
      img[level] = cand;
      rec(level + 1);
    }
  };
  rec(0);
  return count;
}

std::vector<Sub> overgroups_with_sylow(const GroupPtr& g, const Sub& t, int p) {
  // enumerate all overgroups of the fixed t by join closure with coset reps
  SetPool pool;
  std::vector<EltId> base = t.elems;
  pool.insert(base);
  for (size_t i = 0; i < pool.sets.size(); ++i) {
    std::vector<EltId> current = pool.sets[i];
    if (current.size() == static_cast<size_t>(g->order())) continue;
    std::vector<char> covered(g->order(), 0);
    for (EltId x : current) covered[x] = 1;
    for (EltId x = 0; x < g->order(); ++x) {
      if (covered[x]) continue;
      for (EltId h : current) covered[g->mul(h, x)] = 1;
      std::vector<EltId> seed = current;
      seed.push_back(x);
      std::vector<EltId> joined = *closure_ids(*g, seed, 0);
      pool.insert(std::move(joined));
    }
  }
  // Sylow condition and conjugacy reduction
  std::vector<std::vector<EltId>> keep;
  for (auto& set : pool.sets)
    if (p_part(static_cast<int64_t>(set.size()), p) == t.order()) keep.push_back(set);
  std::sort(keep.begin(), keep.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<Sub> out;
  for (auto& set : keep) {
    Sub h;
    h.parent = g;
    h.elems = set;
    h.gens = small_generating_set(*g, set);
    bool dup = false;
    for (const Sub& known : out) {
      if (known.order() != h.order()) continue;
      if (conjugating_element(known, h)) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(std::move(h));
  }
  return out;
}

bool has_strongly_p_embedded(const GroupPtr& h, int p) {
  if (h->order() % p != 0) return false;
  auto subs = all_subgroups(h);
  for (auto& mset : subs) {
    if (mset.size() == static_cast<size_t>(h->order())) continue;
    if (static_cast<int64_t>(mset.size()) % p != 0) continue;
    Sub m;
    m.parent = h;
    m.elems = mset;
    m.gens = small_generating_set(*h, mset);
    bool good = true;
    for (EltId g = 0; g < h->order() && good; ++g) {
      if (m.contains(g)) continue;
      // |M cap M^g| must be coprime to p
      std::vector<EltId> conj(mset.size());
      for (size_t i = 0; i < mset.size(); ++i) conj[i] = h->conj(g, mset[i]);
      std::sort(conj.begin(), conj.end());
      std::vector<EltId> inter;
      std::set_intersection(mset.begin(), mset.end(), conj.begin(), conj.end(),
                            std::back_inserter(inter));
      if (static_cast<int64_t>(inter.size()) % p == 0) good = false;
    }
    if (good) return true;
  }
  return false;
}

// ---- fusion closure oracle --------------------------------------------------

int FusionClosure::subgroup_index(const std::vector<EltId>& set) const {
  for (size_t i = 0; i < subgroups.size(); ++i)
    if (subgroups[i] == set) return static_cast<int>(i);
  return -1;
}

std::vector<std::vector<EltId>> FusionClosure::isos(int i, int j) const {
  std::vector<std::vector<EltId>> out;
  for (const auto& img : morphisms[i]) {
    std::vector<EltId> sorted = img;
    std::sort(sorted.begin(), sorted.end());
    if (sorted == subgroups[j]) out.push_back(img);
  }
  return out;
}

bool FusionClosure::conjugate(int i, int j) const { return !isos(i, j).empty(); }

std::vector<std::vector<EltId>> FusionClosure::automizer(int i) const { return isos(i, i); }

std::vector<int> FusionClosure::conjugacy_class_of(int i) const {
  std::vector<int> out;
  for (size_t j = 0; j < subgroups.size(); ++j)
    if (subgroups[j].size() == subgroups[i].size() && conjugate(i, static_cast<int>(j)))
      out.push_back(static_cast<int>(j));
  return out;
}

std::set<EltId> FusionClosure::element_class(EltId x) const {
  std::set<EltId> out;
  for (size_t i = 0; i < subgroups.size(); ++i) {
    auto pos = std::lower_bound(subgroups[i].begin(), subgroups[i].end(), x);
    if (pos == subgroups[i].end() || *pos != x) continue;
    size_t at = pos - subgroups[i].begin();
    for (const auto& img : morphisms[i]) out.insert(img[at]);
  }
  return out;
}

FusionClosure fusion_closure(const GroupPtr& s,
                             const std::vector<std::vector<EltId>>& members,
                             const std::vector<std::vector<std::vector<EltId>>>& auto_gens) {
  FusionClosure fc;
  fc.s = s;
  fc.subgroups = all_subgroups(s);
  size_t n = fc.subgroups.size();
  fc.morphisms.assign(n, {});

  auto subgroup_of = [&](const std::vector<EltId>& set) {
    int i = fc.subgroup_index(set);
    if (i < 0) fail(ErrorCode::BadArgument, "image is not a subgroup");
    return i;
  };

  struct Item {
    int src;
    int dst;
    std::vector<EltId> img;
  };
  std::vector<Item> queue;
  std::vector<std::vector<int>> by_source(n), by_target(n);  // indexes into queue
  auto push = [&](int src, std::vector<EltId> img) {
    auto [it, fresh] = fc.morphisms[src].emplace(img);
    if (!fresh) return;
    std::vector<EltId> sorted = img;
    std::sort(sorted.begin(), sorted.end());
    int dst = subgroup_of(sorted);
    int qi = static_cast<int>(queue.size());
    queue.push_back({src, dst, std::move(img)});
    by_source[src].push_back(qi);
    by_target[dst].push_back(qi);
  };

  // identity on every subgroup (inclusions are restrictions of it)
  for (size_t i = 0; i < n; ++i) push(static_cast<int>(i), fc.subgroups[i]);

  // restrictions of every datum automorphism generator to every subgroup
  for (size_t m = 0; m < members.size(); ++m) {
    const auto& q = members[m];
    std::vector<EltId> full_map(s->order(), -1);
    for (const auto& gen_map : auto_gens[m]) {
      for (size_t i = 0; i < q.size(); ++i) full_map[q[i]] = gen_map[i];
      for (size_t i = 0; i < n; ++i) {
        const auto& x = fc.subgroups[i];
        if (x.size() > q.size()) continue;
        if (!std::includes(q.begin(), q.end(), x.begin(), x.end())) continue;
        std::vector<EltId> img(x.size());
        for (size_t k = 0; k < x.size(); ++k) img[k] = full_map[x[k]];
        push(static_cast<int>(i), std::move(img));
      }
    }
  }

  // close under composition: when an item is processed, pair it with every
  // earlier item; later items pick up pairs with this one when processed
  auto compose = [&](const Item& first, const Item& second) {
    // first: a -> b, second: b -> c
    std::vector<EltId> comp(first.img.size());
    const auto& mid = fc.subgroups[second.src];
    for (size_t k = 0; k < first.img.size(); ++k) {
      auto pos = std::lower_bound(mid.begin(), mid.end(), first.img[k]);
      comp[k] = second.img[pos - mid.begin()];
    }
    push(first.src, std::move(comp));
  };
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    Item item = queue[qi];
    for (size_t k = 0; k < by_source[item.dst].size(); ++k) {
      Item other = queue[by_source[item.dst][k]];
      compose(item, other);
    }
    for (size_t k = 0; k < by_target[item.src].size(); ++k) {
      Item other = queue[by_target[item.src][k]];
      compose(other, item);
    }
  }
  return fc;
}

}  // namespace fusekit::oracle

// ---- randomized fusion data --------------------------------------------------

#include "fusekit/isomorphism.hpp"
#include "fusekit/morphism.hpp"

namespace fusekit::oracle {

FusionData random_datum(const GroupPtr& s, int p, Rng& rng) {
  Sub whole = whole_group(s);
  AutSet aut = automorphism_group(whole);
  Sub inn = inner_automorphisms(aut);

  FusionData d;
  d.s = s;
  d.p = p;

  // random A(S) >= Inn(S)
  std::vector<EltId> top_gens = inn.gens;
  int extra = rng.below(3);
  for (int i = 0; i < extra; ++i) top_gens.push_back(rng.below(static_cast<int>(aut.order())));
  Sub as_sub = sub_from_gens(aut.carrier, top_gens);
  std::vector<Perm> as_perms;
  for (EltId c : as_sub.gens) as_perms.push_back(aut.carrier->elem(c));
  AutSet as;
  as.base = whole;
  as.carrier = Group::from_generators(static_cast<int>(s->order()), as_perms);
  d.members.push_back(whole);
  d.autos.push_back(as);

  // candidate proper S-centric subgroups
  auto subs = all_subgroups(s);
  std::vector<Sub> centric;
  for (const auto& set : subs) {
    if (set.size() == static_cast<size_t>(s->order())) continue;
    Sub q;
    q.parent = s;
    q.elems = set;
    q.gens = small_generating_set(*s, set);
    if (centralizer_in(whole, q).order() == center_of(q).order()) centric.push_back(std::move(q));
  }
  int want = centric.empty() ? 0 : rng.below(3);
  for (int k = 0; k < want && !centric.empty(); ++k) {
    const Sub& q = centric[rng.below(static_cast<int>(centric.size()))];
    // reject members meeting an existing member's A(S)-orbit
    bool clash = false;
    for (size_t i = 1; i < d.members.size() && !clash; ++i) {
      if (d.members[i].order() != q.order()) continue;
      std::vector<std::vector<EltId>> orbit = {d.members[i].elems};
      std::set<std::vector<EltId>> seen{d.members[i].elems};
      for (size_t t = 0; t < orbit.size() && !clash; ++t)
        for (EltId c : as.carrier->generator_ids()) {
          const Perm& perm = as.carrier->elem(c);
          std::vector<EltId> img(orbit[t].size());
          for (size_t u = 0; u < img.size(); ++u) img[u] = perm[orbit[t][u]];
          std::sort(img.begin(), img.end());
          if (img == q.elems) {
            clash = true;
            break;
          }
          if (seen.insert(img).second) orbit.push_back(img);
        }
    }
    if (clash) continue;
    AutSet qaut = automorphism_group(q);
    AutSet aut_sq = induced_automizer(whole, q);
    std::vector<EltId> qgens;
    for (EltId c : aut_sq.carrier->generator_ids())
      qgens.push_back(qaut.carrier->id_of(aut_sq.carrier->elem(c)));
    int qextra = rng.below(3);
    for (int i = 0; i < qextra; ++i) qgens.push_back(rng.below(static_cast<int>(qaut.order())));
    Sub ksub = sub_from_gens(qaut.carrier, qgens);
    std::vector<Perm> kperms;
    for (EltId c : ksub.gens) kperms.push_back(qaut.carrier->elem(c));
    AutSet ak;
    ak.base = q;
    ak.carrier = Group::from_generators(static_cast<int>(q.elems.size()), kperms);
    d.members.push_back(q);
    d.autos.push_back(ak);
  }
  return d;
}

DatumView datum_view(const FusionData& d) {
  DatumView v;
  for (size_t i = 0; i < d.members.size(); ++i) {
    v.members.push_back(d.members[i].elems);
    std::vector<std::vector<EltId>> gens;
    for (EltId c : d.autos[i].carrier->generator_ids()) {
      const Perm& perm = d.autos[i].carrier->elem(c);
      std::vector<EltId> img(d.members[i].elems.size());
      for (size_t t = 0; t < img.size(); ++t) img[t] = d.members[i].elems[perm[t]];
      gens.push_back(std::move(img));
    }
    v.auto_gens.push_back(std::move(gens));
  }
  return v;
}

}  // namespace fusekit::oracle

namespace fusekit::oracle {

std::string verify_system_against_closure(const FusionSystemPtr& f) {
  auto view = datum_view(f->data());
  auto fc = fusion_closure(f->group(), view.members, view.auto_gens);
  const FusionGraph& g = f->graph();
  if (fc.subgroups.size() != g.subgroups().size()) return "subgroup counts differ";
  for (size_t i = 0; i < fc.subgroups.size(); ++i) {
    for (size_t j = i; j < fc.subgroups.size(); ++j) {
      if (fc.subgroups[i].size() != fc.subgroups[j].size()) continue;
      int gi = g.subgroup_index(fc.subgroups[i]);
      int gj = g.subgroup_index(fc.subgroups[j]);
      bool graph_conj = g.component_of(g.rep_index_of(gi)) == g.component_of(g.rep_index_of(gj));
      if (graph_conj != fc.conjugate(static_cast<int>(i), static_cast<int>(j)))
        return "conjugacy mismatch at pair " + std::to_string(i) + "," + std::to_string(j);
    }
  }
  for (size_t i = 0; i < fc.subgroups.size(); ++i) {
    Sub x;
    x.parent = f->group();
    x.elems = fc.subgroups[i];
    x.gens = small_generating_set(*f->group(), x.elems);
    AutSet a = f->automizer(x);
    auto expected = fc.automizer(static_cast<int>(i));
    if (a.order() != static_cast<int64_t>(expected.size()))
      return "automizer order mismatch at subgroup " + std::to_string(i) + ": graph " +
             std::to_string(a.order()) + " closure " + std::to_string(expected.size());
    for (EltId c = 0; c < a.carrier->order(); ++c) {
      Morphism m = a.as_morphism(c);
      if (std::find(expected.begin(), expected.end(), m.img) == expected.end())
        return "automizer element outside the closure at subgroup " + std::to_string(i);
    }
  }
  return "";
}

}  // namespace fusekit::oracle
