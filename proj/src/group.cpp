#include "fusekit/group.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>

#include "fusekit/caps.hpp"
#include "fusekit/error.hpp"

namespace fusekit {

namespace {
constexpr size_t kTableLimit = 1024;  // build a full mult table up to this order
}

Caps& caps() {
  static Caps c;
  return c;
}

void apply_caps_env(bool allow_raise) {
  const char* env = std::getenv("FUSEKIT_CAPS");
  if (!env) return;
  std::string s(env);
  size_t pos = 0;
  while (pos < s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    std::string item = s.substr(pos, comma - pos);
    size_t eq = item.find('=');
    if (eq != std::string::npos) {
      std::string key = item.substr(0, eq);
      int64_t val = std::strtoll(item.c_str() + eq + 1, nullptr, 10);
      if (val > 0) {
        if (key == "enum" && (allow_raise || val < caps().enumeration)) caps().enumeration = val;
        if (key == "aut" && (allow_raise || val < caps().automorphisms)) caps().automorphisms = val;
      }
    }
    pos = comma + 1;
  }
}

GroupPtr Group::from_generators(int degree, const std::vector<Perm>& perms) {
  if (degree < 1) fail(ErrorCode::BadArgument, "degree must be positive");
  for (const Perm& p : perms) {
    if (p.degree() != degree) fail(ErrorCode::BadArgument, "generator degree mismatch");
    std::vector<char> hit(degree, 0);
    for (int i = 0; i < degree; ++i) {
      if (hit[p[i]]) fail(ErrorCode::BadArgument, "generator is not a bijection");
      hit[p[i]] = 1;
    }
  }

  std::vector<Perm> elems;
  std::unordered_map<Perm, int, PermHash> seen;
  Perm id = Perm::identity(degree);
  elems.push_back(id);
  seen.emplace(id, 0);
  size_t cap = static_cast<size_t>(caps().enumeration);
  for (size_t i = 0; i < elems.size(); ++i) {
    for (const Perm& g : perms) {
      Perm q = elems[i].then(g);
      if (seen.emplace(q, 1).second) {
        elems.push_back(std::move(q));
        if (elems.size() > cap)
          fail(ErrorCode::EnumerationCapExceeded, "group closure exceeds enumeration cap");
      }
    }
  }
  std::sort(elems.begin(), elems.end());

  auto g = std::shared_ptr<Group>(new Group());
  g->degree_ = degree;
  g->gens_ = perms;
  g->elems_ = std::move(elems);
  g->index_.reserve(g->elems_.size() * 2);
  for (size_t i = 0; i < g->elems_.size(); ++i) g->index_.emplace(g->elems_[i], static_cast<EltId>(i));
  g->identity_ = g->index_.at(id);
  g->inv_.resize(g->elems_.size());
  g->orders_.resize(g->elems_.size());
  for (size_t i = 0; i < g->elems_.size(); ++i) {
    g->inv_[i] = g->index_.at(g->elems_[i].inverse());
    g->orders_[i] = g->elems_[i].order();
  }
  for (const Perm& p : perms) g->gen_ids_.push_back(g->index_.at(p));
  if (g->gen_ids_.empty()) g->gen_ids_.push_back(g->identity_);

  if (g->elems_.size() <= kTableLimit) {
    size_t n = g->elems_.size();
    g->table_.resize(n * n);
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b)
        g->table_[a * n + b] = g->index_.at(g->elems_[a].then(g->elems_[b]));
  }
  return g;
}

EltId Group::id_of(const Perm& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) fail(ErrorCode::BadArgument, "permutation is not a group member");
  return it->second;
}

std::optional<EltId> Group::try_id_of(const Perm& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

EltId Group::mul_slow(EltId a, EltId b) const { return index_.at(elems_[a].then(elems_[b])); }

EltId Group::power(EltId a, int64_t e) const {
  int n = orders_[a];
  e %= n;
  if (e < 0) e += n;
  EltId r = identity_;
  EltId base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

bool Group::is_abelian() const {
  for (EltId a : gen_ids_)
    for (EltId b : gen_ids_)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

// ---- Sub ------------------------------------------------------------------

bool Sub::contains(EltId x) const { return std::binary_search(elems.begin(), elems.end(), x); }

bool Sub::contains_all(const Sub& other) const {
  return std::includes(elems.begin(), elems.end(), other.elems.begin(), other.elems.end());
}

int Sub::position_of(EltId x) const {
  auto it = std::lower_bound(elems.begin(), elems.end(), x);
  if (it == elems.end() || *it != x) return -1;
  return static_cast<int>(it - elems.begin());
}

Sub whole_group(const GroupPtr& g) {
  Sub s;
  s.parent = g;
  s.elems.resize(g->order());
  for (size_t i = 0; i < s.elems.size(); ++i) s.elems[i] = static_cast<EltId>(i);
  s.gens.assign(g->generator_ids().begin(), g->generator_ids().end());
  return s;
}

Sub trivial_subgroup(const GroupPtr& g) {
  Sub s;
  s.parent = g;
  s.elems = {g->identity()};
  s.gens = {g->identity()};
  return s;
}

std::optional<std::vector<EltId>> closure_ids(const Group& g, const std::vector<EltId>& gens,
                                              size_t max_size) {
  std::vector<char> member(g.order(), 0);
  std::vector<EltId> out;
  out.push_back(g.identity());
  member[g.identity()] = 1;
  for (EltId x : gens) {
    if (!member[x]) {
      member[x] = 1;
      out.push_back(x);
      if (max_size && out.size() > max_size) return std::nullopt;
    }
  }
  for (size_t i = 0; i < out.size(); ++i) {
    for (EltId x : gens) {
      EltId y = g.mul(out[i], x);
      if (!member[y]) {
        member[y] = 1;
        out.push_back(y);
        if (max_size && out.size() > max_size) return std::nullopt;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Sub sub_from_gens(const GroupPtr& g, const std::vector<EltId>& gens) {
  Sub s;
  s.parent = g;
  s.elems = *closure_ids(*g, gens, 0);
  s.gens = gens.empty() ? std::vector<EltId>{g->identity()} : gens;
  return s;
}

Sub sub_from_elements(const GroupPtr& g, std::vector<EltId> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  Sub s;
  s.parent = g;
  s.gens = small_generating_set(*g, elems);
  s.elems = std::move(elems);
  auto closed = closure_ids(*g, s.gens, 0);
  if (*closed != s.elems) fail(ErrorCode::BadArgument, "element set is not closed");
  return s;
}

std::vector<EltId> small_generating_set(const Group& g, const std::vector<EltId>& elems) {
  if (elems.size() <= 1) return {g.identity()};
  // greedy: repeatedly adjoin an element of maximal order outside the closure
  std::vector<EltId> gens;
  std::vector<EltId> have = {g.identity()};
  while (have.size() < elems.size()) {
    EltId best = -1;
    int best_order = -1;
    for (EltId x : elems) {
      if (std::binary_search(have.begin(), have.end(), x)) continue;
      int o = g.element_order(x);
      if (o > best_order) {
        best_order = o;
        best = x;
      }
    }
    gens.push_back(best);
    have = *closure_ids(g, gens, 0);
  }
  return gens;
}

Sub normalizer_in(const Sub& ambient, const Sub& h) {
  const Group& g = *h.parent;
  std::vector<EltId> res;
  for (EltId x : ambient.elems) {
    bool ok = true;
    for (EltId gen : h.gens) {
      if (!h.contains(g.conj(x, gen))) {
        ok = false;
        break;
      }
    }
    if (ok) res.push_back(x);
  }
  Sub s;
  s.parent = h.parent;
  s.elems = std::move(res);
  s.gens = small_generating_set(g, s.elems);
  return s;
}

Sub normalizer(const Sub& h) { return normalizer_in(whole_group(h.parent), h); }

Sub centralizer_in(const Sub& ambient, const Sub& h) {
  const Group& g = *h.parent;
  std::vector<EltId> res;
  for (EltId x : ambient.elems) {
    bool ok = true;
    for (EltId gen : h.gens) {
      if (g.mul(x, gen) != g.mul(gen, x)) {
        ok = false;
        break;
      }
    }
    if (ok) res.push_back(x);
  }
  Sub s;
  s.parent = h.parent;
  s.elems = std::move(res);
  s.gens = small_generating_set(g, s.elems);
  return s;
}

Sub centralizer(const Sub& h) { return centralizer_in(whole_group(h.parent), h); }

Sub center(const GroupPtr& g) { return centralizer(whole_group(g)); }

Sub center_of(const Sub& h) { return centralizer_in(h, h); }

namespace {

// [H,H] as ids: commutators of elems against gens, then normal closure in H.
std::vector<EltId> derived_ids(const Group& g, const std::vector<EltId>& elems,
                               const std::vector<EltId>& gens) {
  std::vector<char> mark(g.order(), 0);
  std::vector<EltId> cgens;
  for (EltId a : elems)
    for (EltId b : gens) {
      EltId c = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
      if (!mark[c]) {
        mark[c] = 1;
        cgens.push_back(c);
      }
    }
  std::vector<EltId> cur = *closure_ids(g, cgens, 0);
  // stabilize under conjugation by H's generators
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<EltId> extra;
    for (EltId x : gens)
      for (EltId s : cgens) {
        EltId c = g.conj(x, s);
        if (!std::binary_search(cur.begin(), cur.end(), c)) extra.push_back(c);
      }
    if (!extra.empty()) {
      cgens.insert(cgens.end(), extra.begin(), extra.end());
      cur = *closure_ids(g, cgens, 0);
      changed = true;
    }
  }
  return cur;
}

}  // namespace

Sub derived_subgroup(const Sub& h) {
  const Group& g = *h.parent;
  Sub s;
  s.parent = h.parent;
  s.elems = derived_ids(g, h.elems, h.gens);
  s.gens = small_generating_set(g, s.elems);
  return s;
}

bool sub_is_soluble(const Sub& h) {
  Sub cur = h;
  while (cur.order() > 1) {
    Sub d = derived_subgroup(cur);
    if (d.order() == cur.order()) return false;
    cur = std::move(d);
  }
  return true;
}

bool Group::is_soluble() const {
  if (soluble_ < 0) {
    std::vector<EltId> all(elems_.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<EltId>(i);
    std::vector<EltId> cur = all;
    std::vector<EltId> gens = gen_ids_;
    int verdict = 1;
    while (cur.size() > 1) {
      std::vector<EltId> d = derived_ids(*this, cur, gens);
      if (d.size() == cur.size()) {
        verdict = 0;
        break;
      }
      cur = std::move(d);
      gens = small_generating_set(*this, cur);
    }
    soluble_ = verdict;
  }
  return soluble_ == 1;
}

Sub frattini_subgroup(const Sub& h) {
  // for a p-group: Phi(h) = h' h^p
  const Group& g = *h.parent;
  auto primes = prime_divisors(h.order());
  if (primes.size() > 1) fail(ErrorCode::BadArgument, "frattini_subgroup expects a p-group");
  int p = primes.empty() ? 2 : primes[0];
  Sub der = derived_subgroup(h);
  std::vector<EltId> gens = der.gens;
  for (EltId x : h.elems) gens.push_back(g.power(x, p));
  Sub s;
  s.parent = h.parent;
  s.elems = *closure_ids(g, gens, 0);
  s.gens = small_generating_set(g, s.elems);
  return s;
}

Sub socle_of_p_group(const Sub& h, int p) {
  const Group& g = *h.parent;
  Sub z = center_of(h);
  std::vector<EltId> elems;
  for (EltId x : z.elems)
    if (g.power(x, p) == g.identity()) elems.push_back(x);
  return sub_from_elements(h.parent, std::move(elems));
}

Sub sylow_subgroup_of(const Sub& h, int p) {
  const Group& g = *h.parent;
  int64_t target = p_part(h.order(), p);
  Sub cur = trivial_subgroup(h.parent);
  while (cur.order() < target) {
    Sub n = normalizer_in(h, cur);
    // below full Sylow order, N_h(cur)/cur has order divisible by p, so some
    // x outside cur has x^p inside it
    EltId pick = -1;
    for (EltId x : n.elems) {
      if (cur.contains(x)) continue;
      if (cur.contains(g.power(x, p))) {
        pick = x;
        break;
      }
    }
    if (pick < 0) fail(ErrorCode::BadArgument, "sylow climb stalled");
    std::vector<EltId> gens = cur.gens;
    gens.push_back(pick);
    cur = sub_from_gens(h.parent, gens);
    cur.gens = small_generating_set(g, cur.elems);
  }
  return cur;
}

Sub sylow_subgroup(const GroupPtr& g, int p) { return sylow_subgroup_of(whole_group(g), p); }

Sub intersection(const Sub& a, const Sub& b) {
  Sub s;
  s.parent = a.parent;
  std::set_intersection(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(),
                        std::back_inserter(s.elems));
  s.gens = small_generating_set(*a.parent, s.elems);
  return s;
}

Sub join(const Sub& a, const Sub& b) {
  std::vector<EltId> gens = a.gens;
  gens.insert(gens.end(), b.gens.begin(), b.gens.end());
  Sub s = sub_from_gens(a.parent, gens);
  s.gens = small_generating_set(*a.parent, s.elems);
  return s;
}

bool is_normal_in(const Sub& ambient, const Sub& h) {
  const Group& g = *h.parent;
  for (EltId x : ambient.gens)
    for (EltId gen : h.gens)
      if (!h.contains(g.conj(x, gen))) return false;
  return true;
}

bool is_p_group(const Sub& h, int p) { return p_part(h.order(), p) == h.order(); }

bool is_elementary_abelian(const Sub& h, int p) {
  if (!is_p_group(h, p)) return false;
  const Group& g = *h.parent;
  for (EltId x : h.elems)
    if (g.element_order(x) > p) return false;
  return sub_is_abelian(h);
}

bool sub_is_abelian(const Sub& h) {
  const Group& g = *h.parent;
  for (EltId a : h.gens)
    for (EltId b : h.gens)
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

bool sub_is_cyclic(const Sub& h) {
  const Group& g = *h.parent;
  for (EltId x : h.elems)
    if (g.element_order(x) == h.order()) return true;
  return false;
}

bool sub_is_quaternion(const Sub& h) {
  int64_t n = h.order();
  if (n < 8 || (n & (n - 1)) != 0) return false;
  if (sub_is_cyclic(h)) return false;
  const Group& g = *h.parent;
  int invol = 0;
  for (EltId x : h.elems)
    if (g.element_order(x) == 2) ++invol;
  return invol == 1;
}

namespace {

uint64_t hash_id_set(const std::vector<EltId>& v) {
  uint64_t acc = 1469598103934665603ULL;
  for (EltId x : v) {
    acc ^= static_cast<uint64_t>(x) + 0x9e3779b97f4a7c15ULL;
    acc *= 1099511628211ULL;
  }
  return acc;
}

}  // namespace

std::vector<std::vector<EltId>> subgroup_conjugates(const Sub& ambient, const Sub& h) {
  const Group& g = *h.parent;
  std::vector<std::vector<EltId>> orbit;
  std::unordered_map<uint64_t, std::vector<int>> seen;
  auto push_if_new = [&](std::vector<EltId> v) {
    uint64_t key = hash_id_set(v);
    auto& bucket = seen[key];
    for (int idx : bucket)
      if (orbit[idx] == v) return;
    bucket.push_back(static_cast<int>(orbit.size()));
    orbit.push_back(std::move(v));
  };
  push_if_new(h.elems);
  for (size_t i = 0; i < orbit.size(); ++i) {
    for (EltId x : ambient.gens) {
      std::vector<EltId> img(orbit[i].size());
      for (size_t j = 0; j < img.size(); ++j) img[j] = g.conj(x, orbit[i][j]);
      std::sort(img.begin(), img.end());
      push_if_new(std::move(img));
    }
  }
  return orbit;
}

std::optional<EltId> conjugating_element_in(const Sub& ambient, const Sub& h, const Sub& k) {
  if (h.order() != k.order()) return std::nullopt;
  if (h.elems == k.elems) return h.parent->identity();
  const Group& g = *h.parent;
  struct Node {
    std::vector<EltId> set;
    EltId by;  // h^by == set
  };
  std::vector<Node> orbit;
  std::unordered_map<uint64_t, std::vector<int>> seen;
  auto find = [&](const std::vector<EltId>& v) -> int {
    auto it = seen.find(hash_id_set(v));
    if (it == seen.end()) return -1;
    for (int idx : it->second)
      if (orbit[idx].set == v) return idx;
    return -1;
  };
  orbit.push_back({h.elems, g.identity()});
  seen[hash_id_set(h.elems)].push_back(0);
  for (size_t i = 0; i < orbit.size(); ++i) {
    for (EltId x : ambient.gens) {
      std::vector<EltId> img(orbit[i].set.size());
      for (size_t j = 0; j < img.size(); ++j) img[j] = g.conj(x, orbit[i].set[j]);
      std::sort(img.begin(), img.end());
      if (find(img) >= 0) continue;
      EltId by = g.mul(orbit[i].by, x);
      if (img == k.elems) return by;
      seen[hash_id_set(img)].push_back(static_cast<int>(orbit.size()));
      orbit.push_back({std::move(img), by});
    }
  }
  return std::nullopt;
}

std::optional<EltId> conjugating_element(const Sub& h, const Sub& k) {
  return conjugating_element_in(whole_group(h.parent), h, k);
}

Quotient quotient_of(const Sub& h, const Sub& n) {
  const Group& g = *h.parent;
  if (!h.contains_all(n)) fail(ErrorCode::BadArgument, "quotient kernel not contained");
  if (!is_normal_in(h, n)) fail(ErrorCode::NotNormal, "quotient by non-normal subgroup");

  Quotient q;
  if (n.order() == 1 && h.order() == g.order()) {
    q.group = h.parent;
    q.project.resize(g.order());
    q.coset_rep.resize(g.order());
    for (EltId x = 0; x < g.order(); ++x) {
      q.project[x] = x;
      q.coset_rep[x] = x;
    }
    return q;
  }
  if (n.order() == 1) {
    // faithful copy of h on its own elements (regular action)
    std::vector<EltId> pos(g.order(), -1);
    for (size_t i = 0; i < h.elems.size(); ++i) pos[h.elems[i]] = static_cast<EltId>(i);
    std::vector<Perm> gens;
    for (EltId x : h.gens) {
      std::vector<uint16_t> img(h.elems.size());
      for (size_t i = 0; i < h.elems.size(); ++i)
        img[i] = static_cast<uint16_t>(pos[g.mul(h.elems[i], x)]);
      gens.emplace_back(std::move(img));
    }
    q.group = Group::from_generators(static_cast<int>(h.elems.size()), gens);
    q.project.assign(g.order(), -1);
    q.coset_rep.assign(q.group->order(), -1);
    for (EltId x : h.elems) {
      std::vector<uint16_t> img(h.elems.size());
      for (size_t i = 0; i < h.elems.size(); ++i)
        img[i] = static_cast<uint16_t>(pos[g.mul(h.elems[i], x)]);
      q.project[x] = q.group->id_of(Perm(std::move(img)));
      q.coset_rep[q.project[x]] = x;
    }
    return q;
  }

  // label cosets of n in h by discovery order over sorted elements
  std::vector<EltId> coset_of(g.order(), -1);
  std::vector<EltId> reps;
  for (EltId x : h.elems) {
    if (coset_of[x] >= 0) continue;
    EltId c = static_cast<EltId>(reps.size());
    reps.push_back(x);
    for (EltId m : n.elems) coset_of[g.mul(m, x)] = c;  // coset n*x
  }
  std::vector<Perm> gens;
  for (EltId y : h.gens) {
    std::vector<uint16_t> img(reps.size());
    for (size_t c = 0; c < reps.size(); ++c)
      img[c] = static_cast<uint16_t>(coset_of[g.mul(reps[c], y)]);
    gens.emplace_back(std::move(img));
  }
  q.group = Group::from_generators(static_cast<int>(reps.size()), gens);
  if (q.group->order() != h.order() / n.order())
    fail(ErrorCode::BadArgument, "quotient order mismatch");
  q.project.assign(g.order(), -1);
  q.coset_rep.assign(q.group->order(), -1);
  for (EltId x : h.elems) {
    std::vector<uint16_t> img(reps.size());
    for (size_t c = 0; c < reps.size(); ++c)
      img[c] = static_cast<uint16_t>(coset_of[g.mul(reps[c], x)]);
    q.project[x] = q.group->id_of(Perm(std::move(img)));
    if (q.coset_rep[q.project[x]] < 0) q.coset_rep[q.project[x]] = x;
  }
  return q;
}

Quotient quotient(const GroupPtr& g, const Sub& n) { return quotient_of(whole_group(g), n); }

int64_t p_part(int64_t n, int p) {
  int64_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

std::vector<int> prime_divisors(int64_t n) {
  std::vector<int> ps;
  for (int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      ps.push_back(static_cast<int>(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) ps.push_back(static_cast<int>(n));
  return ps;
}

}  // namespace fusekit
