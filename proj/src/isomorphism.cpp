#include "fusekit/isomorphism.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

#include "fusekit/caps.hpp"
#include "fusekit/error.hpp"
#include "fusekit/lattice.hpp"

namespace fusekit {

std::string Fingerprint::to_string() const {
  std::string s = "order=" + std::to_string(order) + " z=" + std::to_string(center_order) +
                  " der=" + std::to_string(derived_order) + " dl=" + std::to_string(derived_length) +
                  " profile=";
  for (auto& [o, c] : order_profile) s += std::to_string(o) + "^" + std::to_string(c) + " ";
  return s;
}

Fingerprint fingerprint_of(const Sub& h) {
  const Group& g = *h.parent;
  Fingerprint f;
  f.order = h.order();
  std::map<int, int64_t> prof;
  for (EltId x : h.elems) prof[g.element_order(x)]++;
  f.order_profile.assign(prof.begin(), prof.end());
  f.center_order = center_of(h).order();
  Sub d = derived_subgroup(h);
  f.derived_order = d.order();
  f.abelian = f.derived_order == 1;
  Sub cur = h;
  while (cur.order() > 1) {
    Sub nxt = derived_subgroup(cur);
    if (nxt.order() == cur.order()) {
      f.derived_length = -1;  // not soluble
      break;
    }
    ++f.derived_length;
    cur = std::move(nxt);
  }
  return f;
}

namespace {

// Greedy minimal generating sequence: maximal element order first, then
// repeatedly the maximal-order element outside the closure so far.
std::vector<EltId> generating_sequence(const Sub& p) {
  const Group& g = *p.parent;
  std::vector<EltId> seq;
  std::vector<EltId> have = {g.identity()};
  while (have.size() < p.elems.size()) {
    EltId best = -1;
    int best_order = -1;
    for (EltId x : p.elems) {
      if (std::binary_search(have.begin(), have.end(), x)) continue;
      int o = g.element_order(x);
      if (o > best_order) {
        best_order = o;
        best = x;
      }
    }
    seq.push_back(best);
    std::vector<EltId> gens = seq;
    have = *closure_ids(g, gens, 0);
  }
  return seq;
}

struct SearchContext {
  const Group* gsrc;
  const Group* gdst;
  const Sub* src;
  const Sub* dst;
  std::vector<EltId> seq;                       // generating sequence of src
  std::vector<std::vector<EltId>> candidates;   // per level, by invariants
  std::vector<int64_t> partial_order;           // |<g1..gi>|
  // per-element invariant: (order, centralizer order within the subgroup)
  // computed once per side
};

std::vector<std::pair<int, int64_t>> element_invariants(const Sub& h) {
  const Group& g = *h.parent;
  std::vector<std::pair<int, int64_t>> inv(h.elems.size());
  for (size_t i = 0; i < h.elems.size(); ++i) {
    int64_t cent = 0;
    for (EltId y : h.elems)
      if (g.mul(h.elems[i], y) == g.mul(y, h.elems[i])) ++cent;
    inv[i] = {g.element_order(h.elems[i]), cent};
  }
  return inv;
}

// Extends the partial map by one generator image pair; returns false on
// conflict.  map/used are rolled back by the caller via the trail.
bool propagate(const SearchContext& ctx, std::vector<EltId>& map, std::vector<char>& used,
               const std::vector<EltId>& gens_src, const std::vector<EltId>& gens_img,
               std::vector<EltId>& trail) {
  const Group& gs = *ctx.gsrc;
  const Group& gd = *ctx.gdst;
  std::vector<EltId> stack;
  for (EltId x : ctx.src->elems)
    if (map[x] >= 0) stack.push_back(x);
  for (size_t i = 0; i < stack.size(); ++i) {
    EltId a = stack[i];
    for (size_t k = 0; k < gens_src.size(); ++k) {
      EltId an = gs.mul(a, gens_src[k]);
      EltId bn = gd.mul(map[a], gens_img[k]);
      if (map[an] >= 0) {
        if (map[an] != bn) return false;
      } else {
        if (used[bn]) return false;  // injectivity
        map[an] = bn;
        used[bn] = 1;
        trail.push_back(an);
        stack.push_back(an);
      }
    }
  }
  return true;
}

// Depth-first enumeration.  The callback receives the full map (indexed by
// source parent ids); return true from it to stop the search.
bool dfs(SearchContext& ctx, size_t level, std::vector<EltId>& map, std::vector<char>& used,
         std::vector<std::vector<EltId>>& images,
         const std::function<bool(const std::vector<EltId>&)>& emit) {
  if (level == ctx.seq.size()) return emit(map);
  for (EltId cand : ctx.candidates[level]) {
    if (used[cand]) continue;
    std::vector<EltId> trail;
    map[ctx.seq[level]] = cand;
    used[cand] = 1;
    trail.push_back(ctx.seq[level]);
    images[level] = {cand};
    std::vector<EltId> gens_src(ctx.seq.begin(), ctx.seq.begin() + level + 1);
    std::vector<EltId> gens_img;
    for (size_t i = 0; i <= level; ++i) gens_img.push_back(map[ctx.seq[i]]);
    bool ok = propagate(ctx, map, used, gens_src, gens_img, trail);
    if (ok) {
      // the closure of the partial assignment must have the right order
      int64_t mapped = 0;
      for (EltId x : ctx.src->elems)
        if (map[x] >= 0) ++mapped;
      ok = mapped == ctx.partial_order[level];
    }
    if (ok && dfs(ctx, level + 1, map, used, images, emit)) return true;
    for (EltId x : trail) {
      used[map[x]] = 0;
      map[x] = -1;
    }
  }
  return false;
}

// Runs the backtracking search mapping src into dst.  emit is called per
// complete isomorphism found; returning true stops enumeration.
void iso_search(const Sub& src, const Sub& dst,
                const std::function<bool(const std::vector<EltId>&)>& emit) {
  if (src.order() != dst.order()) return;
  if (src.order() == 1) {
    std::vector<EltId> map(src.parent->order(), -1);
    map[src.parent->identity()] = dst.parent->identity();
    emit(map);
    return;
  }
  SearchContext ctx;
  ctx.gsrc = src.parent.get();
  ctx.gdst = dst.parent.get();
  ctx.src = &src;
  ctx.dst = &dst;
  ctx.seq = generating_sequence(src);

  auto inv_src = element_invariants(src);
  auto inv_dst = element_invariants(dst);

  ctx.candidates.resize(ctx.seq.size());
  for (size_t l = 0; l < ctx.seq.size(); ++l) {
    auto want = inv_src[src.position_of(ctx.seq[l])];
    for (size_t j = 0; j < dst.elems.size(); ++j)
      if (inv_dst[j] == want) ctx.candidates[l].push_back(dst.elems[j]);
  }
  ctx.partial_order.resize(ctx.seq.size());
  for (size_t l = 0; l < ctx.seq.size(); ++l) {
    std::vector<EltId> gens(ctx.seq.begin(), ctx.seq.begin() + l + 1);
    ctx.partial_order[l] = static_cast<int64_t>(closure_ids(*src.parent, gens, 0)->size());
  }

  std::vector<EltId> map(src.parent->order(), -1);
  std::vector<char> used(dst.parent->order(), 0);
  map[src.parent->identity()] = dst.parent->identity();
  used[dst.parent->identity()] = 1;
  std::vector<std::vector<EltId>> images(ctx.seq.size());
  dfs(ctx, 0, map, used, images, emit);
}

}  // namespace

AutSet automorphism_group(const Sub& p) {
  static std::mutex mu;
  struct Key {
    const Group* g;
    uint64_t hash;
    std::vector<EltId> set;
  };
  static std::vector<std::pair<Key, AutSet>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    uint64_t h = id_set_hash(p.elems);
    for (auto& [k, v] : cache)
      if (k.g == p.parent.get() && k.hash == h && k.set == p.elems) return v;
  }

  int64_t cap = caps().automorphisms;
  int deg = static_cast<int>(p.elems.size());
  std::vector<Perm> found_gens;
  std::unordered_map<Perm, char, PermHash> closure_set;
  Perm idp = Perm::identity(deg);
  closure_set.emplace(idp, 1);
  int64_t count = 0;

  iso_search(p, p, [&](const std::vector<EltId>& map) {
    ++count;
    if (count > cap)
      fail(ErrorCode::AutCapExceeded,
           "automorphism enumeration passed the cap; found at least " + std::to_string(count - 1));
    std::vector<uint16_t> img(deg);
    for (int i = 0; i < deg; ++i) img[i] = static_cast<uint16_t>(p.position_of(map[p.elems[i]]));
    Perm a(std::move(img));
    if (closure_set.find(a) == closure_set.end()) {
      // new automorphism outside the group generated so far: adjoin it
      found_gens.push_back(a);
      std::vector<Perm> worklist;
      worklist.push_back(idp);
      std::unordered_map<Perm, char, PermHash> fresh;
      fresh.emplace(idp, 1);
      for (size_t i = 0; i < worklist.size(); ++i)
        for (const Perm& g : found_gens) {
          Perm q = worklist[i].then(g);
          if (fresh.emplace(q, 1).second) worklist.push_back(std::move(q));
        }
      closure_set = std::move(fresh);
    }
    return false;
  });

  AutSet a;
  a.base = p;
  a.carrier = Group::from_generators(deg, found_gens);
  if (a.carrier->order() != count)
    fail(ErrorCode::BadArgument, "automorphism closure mismatch");

  std::lock_guard<std::mutex> lock(mu);
  cache.push_back({{p.parent.get(), id_set_hash(p.elems), p.elems}, a});
  return a;
}

std::optional<Morphism> find_isomorphism(const Sub& a, const Sub& b) {
  if (fingerprint_of(a) != fingerprint_of(b)) return std::nullopt;
  std::optional<Morphism> out;
  iso_search(a, b, [&](const std::vector<EltId>& map) {
    Morphism m;
    m.src = a;
    m.dst = b;
    m.img.resize(a.elems.size());
    for (size_t i = 0; i < a.elems.size(); ++i) m.img[i] = map[a.elems[i]];
    out = std::move(m);
    return true;
  });
  return out;
}

bool are_isomorphic(const GroupPtr& a, const GroupPtr& b) {
  if (a->order() != b->order()) return false;
  return find_isomorphism(whole_group(a), whole_group(b)).has_value();
}

}  // namespace fusekit
