#include "fusekit/overgroups.hpp"

#include <algorithm>
#include <mutex>

#include "fusekit/error.hpp"
#include "fusekit/lattice.hpp"

namespace fusekit {

Sub subnormal_closure(const Sub& g, const Sub& t) {
  const Group& gr = *t.parent;
  Sub cur = g;
  while (true) {
    // normal closure of t in cur
    std::vector<EltId> gens = t.gens;
    std::vector<EltId> closed = *closure_ids(gr, gens, 0);
    for (bool grew = true; grew;) {
      grew = false;
      std::vector<EltId> extra;
      for (EltId x : cur.gens)
        for (EltId s : gens)
          if (!std::binary_search(closed.begin(), closed.end(), gr.conj(x, s)))
            extra.push_back(gr.conj(x, s));
      if (!extra.empty()) {
        gens.insert(gens.end(), extra.begin(), extra.end());
        closed = *closure_ids(gr, gens, 0);
        grew = true;
      }
    }
    if (closed.size() == cur.elems.size()) return cur;
    Sub next;
    next.parent = t.parent;
    next.elems = std::move(closed);
    next.gens = small_generating_set(gr, next.elems);
    cur = std::move(next);
  }
}

namespace {

// Standalone copy of a subgroup on the parent's permutation domain, memoized
// so lattices computed for it are shared across calls.
GroupPtr rerooted(const Sub& h) {
  static std::mutex mu;
  struct Entry {
    const Group* parent;
    std::vector<EltId> set;
    GroupPtr group;
  };
  static std::vector<Entry> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    for (const auto& e : cache)
      if (e.parent == h.parent.get() && e.set == h.elems) return e.group;
  }
  std::vector<Perm> gens;
  for (EltId x : h.gens) gens.push_back(h.parent->elem(x));
  GroupPtr g = Group::from_generators(h.parent->degree(), gens);
  std::lock_guard<std::mutex> lock(mu);
  cache.push_back({h.parent.get(), h.elems, g});
  return g;
}

Sub map_into(const GroupPtr& target, const Sub& src) {
  Sub out;
  out.parent = target;
  out.elems.reserve(src.elems.size());
  for (EltId x : src.elems) out.elems.push_back(target->id_of(src.parent->elem(x)));
  std::sort(out.elems.begin(), out.elems.end());
  out.gens.reserve(src.gens.size());
  for (EltId x : src.gens) out.gens.push_back(target->id_of(src.parent->elem(x)));
  return out;
}

Sub conjugate_sub(const Sub& h, EltId by) {
  const Group& g = *h.parent;
  Sub out;
  out.parent = h.parent;
  out.elems.resize(h.elems.size());
  for (size_t i = 0; i < h.elems.size(); ++i) out.elems[i] = g.conj(by, h.elems[i]);
  std::sort(out.elems.begin(), out.elems.end());
  out.gens.resize(h.gens.size());
  for (size_t i = 0; i < h.gens.size(); ++i) out.gens[i] = g.conj(by, h.gens[i]);
  return out;
}

// orbit of t under conjugation by ambient, with conjugating witnesses
struct OrbitEntry {
  std::vector<EltId> set;
  EltId by;  // t^by = set
};
std::vector<OrbitEntry> orbit_with_witness(const Sub& ambient, const Sub& t) {
  const Group& g = *t.parent;
  std::vector<OrbitEntry> orbit;
  std::unordered_map<uint64_t, std::vector<int>> seen;
  auto find = [&](const std::vector<EltId>& v) -> int {
    auto it = seen.find(id_set_hash(v));
    if (it == seen.end()) return -1;
    for (int i : it->second)
      if (orbit[i].set == v) return i;
    return -1;
  };
  orbit.push_back({t.elems, g.identity()});
  seen[id_set_hash(t.elems)].push_back(0);
  for (size_t i = 0; i < orbit.size(); ++i)
    for (EltId x : ambient.gens) {
      std::vector<EltId> img(orbit[i].set.size());
      for (size_t j = 0; j < img.size(); ++j) img[j] = g.conj(x, orbit[i].set[j]);
      std::sort(img.begin(), img.end());
      if (find(img) >= 0) continue;
      EltId by = g.mul(orbit[i].by, x);
      seen[id_set_hash(img)].push_back(static_cast<int>(orbit.size()));
      orbit.push_back({std::move(img), by});
    }
  return orbit;
}

// all subgroups of the small group n that contain t with t as Sylow
// p-subgroup, up to n-conjugacy (join closure; n is a bounded normalizer)
std::vector<Sub> sylow_overgroups_small(const Sub& n, const Sub& t, int p) {
  const Group& g = *t.parent;
  std::vector<std::vector<EltId>> sets;
  std::unordered_map<uint64_t, std::vector<int>> seen;
  auto insert = [&](std::vector<EltId> v) {
    uint64_t h = id_set_hash(v);
    for (int i : seen[h])
      if (sets[i] == v) return;
    seen[h].push_back(static_cast<int>(sets.size()));
    sets.push_back(std::move(v));
  };
  insert(t.elems);
  for (size_t i = 0; i < sets.size(); ++i) {
    std::vector<EltId> cur = sets[i];
    std::vector<char> covered(g.order(), 0);
    for (EltId x : cur) covered[x] = 1;
    std::vector<EltId> curgens = small_generating_set(g, cur);
    for (EltId x : n.elems) {
      if (covered[x]) continue;
      for (EltId h : cur) covered[g.mul(h, x)] = 1;
      std::vector<EltId> jg = curgens;
      jg.push_back(x);
      insert(*closure_ids(g, jg, 0));
    }
  }
  std::vector<Sub> out;
  for (auto& set : sets) {
    if (p_part(static_cast<int64_t>(set.size()), p) != t.order()) continue;
    Sub h;
    h.parent = t.parent;
    h.elems = std::move(set);
    h.gens = small_generating_set(g, h.elems);
    bool dup = false;
    for (const Sub& known : out)
      if (known.order() == h.order() && conjugating_element_in(n, known, h)) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(std::move(h));
  }
  std::sort(out.begin(), out.end(), [](const Sub& a, const Sub& b) {
    if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size();
    return a.elems < b.elems;
  });
  return out;
}

}  // namespace

std::vector<Sub> overgroups_with_sylow(const GroupPtr& g, const Sub& t, int p) {
  if (!is_p_group(t, p)) fail(ErrorCode::BadArgument, "t must be a p-group");

  // work inside the subnormal closure, re-rooted so its lattice is shared
  Sub top = subnormal_closure(whole_group(g), t);
  GroupPtr root = rerooted(top);
  auto lat = subgroup_lattice(root);
  Sub t_root = map_into(root, t);

  // recursive descent through maximal subgroups of subnormal closures
  std::vector<Sub> closures;  // members all contain t_root
  std::unordered_map<uint64_t, std::vector<int>> seen;
  std::vector<int> work;
  auto insert_closure = [&](Sub s) {
    uint64_t h = id_set_hash(s.elems);
    for (int i : seen[h])
      if (closures[i].elems == s.elems) return;
    seen[h].push_back(static_cast<int>(closures.size()));
    work.push_back(static_cast<int>(closures.size()));
    closures.push_back(std::move(s));
  };
  insert_closure(subnormal_closure(whole_group(root), t_root));
  while (!work.empty()) {
    int idx = work.back();
    work.pop_back();
    Sub x = closures[idx];
    if (x.order() == t_root.order()) continue;
    auto maxes = maximal_subgroups_in(*lat, x);
    auto orbit = orbit_with_witness(x, t_root);
    for (const Sub& m : maxes) {
      // conjugates of t inside m, up to m-conjugacy
      std::vector<OrbitEntry> inside;
      for (const auto& e : orbit)
        if (std::includes(m.elems.begin(), m.elems.end(), e.set.begin(), e.set.end()))
          inside.push_back(e);
      std::vector<char> used(inside.size(), 0);
      for (size_t i = 0; i < inside.size(); ++i) {
        if (used[i]) continue;
        used[i] = 1;
        Sub ti;
        ti.parent = root;
        ti.elems = inside[i].set;
        ti.gens = small_generating_set(*root, ti.elems);
        for (size_t j = i + 1; j < inside.size(); ++j) {
          if (used[j]) continue;
          Sub tj;
          tj.parent = root;
          tj.elems = inside[j].set;
          tj.gens = small_generating_set(*root, tj.elems);
          if (conjugating_element_in(m, ti, tj)) used[j] = 1;
        }
        // subnormal closure of this conjugate in m, mapped back so it
        // contains t itself
        Sub cls = subnormal_closure(m, ti);
        Sub back = conjugate_sub(cls, root->inv(inside[i].by));
        back.gens = small_generating_set(*root, back.elems);
        insert_closure(std::move(back));
      }
    }
  }

  // Sylow filter
  std::vector<Sub> sylow_members;
  for (const Sub& x : closures)
    if (p_part(x.order(), p) == t_root.order()) sylow_members.push_back(x);

  // completion with normalizer-side factors: H0 * M for M <= N_{N(t)}(H0)
  // with t in Syl_p(M)
  Sub ngt = normalizer_in(whole_group(g), t);
  std::vector<Sub> results;
  auto add_result = [&](Sub h) {
    if (p_part(h.order(), p) != t.order()) return;
    for (const Sub& known : results)
      if (known.order() == h.order() && conjugating_element(known, h)) return;
    results.push_back(std::move(h));
  };
  for (const Sub& h0_root : sylow_members) {
    // back to g-coordinates
    Sub h0;
    h0.parent = g;
    h0.elems.reserve(h0_root.elems.size());
    for (EltId x : h0_root.elems) h0.elems.push_back(g->id_of(root->elem(x)));
    std::sort(h0.elems.begin(), h0.elems.end());
    h0.gens.clear();
    for (EltId x : h0_root.gens) h0.gens.push_back(g->id_of(root->elem(x)));
    Sub n = normalizer_in(ngt, h0);
    for (const Sub& m : sylow_overgroups_small(n, t, p)) {
      std::vector<EltId> gens = h0.gens;
      gens.insert(gens.end(), m.gens.begin(), m.gens.end());
      Sub prod = sub_from_gens(g, gens);
      prod.gens = small_generating_set(*g, prod.elems);
      add_result(std::move(prod));
    }
  }
  std::sort(results.begin(), results.end(), [](const Sub& a, const Sub& b) {
    if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size();
    return a.elems < b.elems;
  });
  return results;
}

}  // namespace fusekit
