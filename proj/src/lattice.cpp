#include "fusekit/lattice.hpp"

#include <algorithm>
#include <mutex>

#include "fusekit/caps.hpp"
#include "fusekit/error.hpp"

namespace fusekit {

uint64_t id_set_hash(const std::vector<EltId>& v) {
  uint64_t acc = 1469598103934665603ULL;
  for (EltId x : v) {
    acc ^= static_cast<uint64_t>(x) + 0x9e3779b97f4a7c15ULL;
    acc *= 1099511628211ULL;
  }
  return acc;
}

int64_t Lattice::total_subgroups() const {
  int64_t n = 0;
  for (const auto& c : classes_) n += static_cast<int64_t>(c.members.size());
  return n;
}

Sub Lattice::rep(int class_idx) const {
  Sub s;
  s.parent = g_;
  s.elems = classes_[class_idx].members[0];
  s.gens = classes_[class_idx].rep_gens;
  return s;
}

Sub Lattice::member(int class_idx, int member_idx) const {
  Sub s;
  s.parent = g_;
  s.elems = classes_[class_idx].members[member_idx];
  s.gens = small_generating_set(*g_, s.elems);
  return s;
}

std::pair<int, int> Lattice::find(const std::vector<EltId>& set) const {
  auto it = index_.find(id_set_hash(set));
  if (it == index_.end()) return {-1, -1};
  for (auto [c, m] : it->second)
    if (classes_[c].members[m] == set) return {c, m};
  return {-1, -1};
}

std::vector<Sub> Lattice::all_subgroups() const {
  std::vector<Sub> out;
  for (size_t c = 0; c < classes_.size(); ++c)
    for (size_t m = 0; m < classes_[c].members.size(); ++m) {
      Sub s;
      s.parent = g_;
      s.elems = classes_[c].members[m];
      s.gens = small_generating_set(*g_, s.elems);
      out.push_back(std::move(s));
    }
  std::sort(out.begin(), out.end(), [](const Sub& a, const Sub& b) {
    if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size();
    return a.elems < b.elems;
  });
  return out;
}

std::vector<std::vector<EltId>> Lattice::subgroups_within(
    const std::vector<EltId>& ambient_set) const {
  std::vector<std::vector<EltId>> out;
  for (const auto& c : classes_)
    for (const auto& m : c.members) {
      if (m.size() > ambient_set.size()) continue;
      if (std::includes(ambient_set.begin(), ambient_set.end(), m.begin(), m.end()))
        out.push_back(m);
    }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

void Lattice::insert_orbit(std::vector<EltId> set) {
  if (find(set).first >= 0) return;
  const Group& g = *g_;
  Class cls;
  cls.members.push_back(std::move(set));
  std::unordered_map<uint64_t, std::vector<int>> seen;
  seen[id_set_hash(cls.members[0])].push_back(0);
  for (size_t i = 0; i < cls.members.size(); ++i) {
    for (EltId x : g.generator_ids()) {
      std::vector<EltId> img(cls.members[i].size());
      for (size_t j = 0; j < img.size(); ++j) img[j] = g.conj(x, cls.members[i][j]);
      std::sort(img.begin(), img.end());
      uint64_t h = id_set_hash(img);
      auto& bucket = seen[h];
      bool dup = false;
      for (int idx : bucket)
        if (cls.members[idx] == img) {
          dup = true;
          break;
        }
      if (!dup) {
        bucket.push_back(static_cast<int>(cls.members.size()));
        cls.members.push_back(std::move(img));
      }
    }
  }
  std::sort(cls.members.begin(), cls.members.end());
  cls.rep_gens = small_generating_set(g, cls.members[0]);
  int ci = static_cast<int>(classes_.size());
  for (size_t m = 0; m < cls.members.size(); ++m)
    index_[id_set_hash(cls.members[m])].push_back({ci, static_cast<int>(m)});
  classes_.push_back(std::move(cls));
  worklist_.push_back(ci);
  int64_t cap = caps().enumeration;
  if (total_subgroups() > cap)
    fail(ErrorCode::EnumerationCapExceeded, "subgroup lattice exceeds enumeration cap");
}

void Lattice::run() {
  const Group& g = *g_;
  const int64_t n = g.order();

  // cyclic subgroups
  insert_orbit({g.identity()});
  {
    std::vector<char> covered(n, 0);
    covered[g.identity()] = 1;
    for (EltId x = 0; x < n; ++x) {
      if (covered[x]) continue;
      std::vector<EltId> cyc;
      EltId y = x;
      while (y != g.identity()) {
        cyc.push_back(y);
        y = g.mul(y, x);
      }
      cyc.push_back(g.identity());
      for (EltId z : cyc)
        if (g.element_order(z) == g.element_order(x)) covered[z] = 1;
      std::sort(cyc.begin(), cyc.end());
      insert_orbit(std::move(cyc));
    }
  }

  bool soluble = g.is_soluble();
  size_t cursor = 0;
  while (cursor < worklist_.size()) {
    int ci = worklist_[cursor++];
    std::vector<EltId> set = classes_[ci].members[0];
    std::vector<EltId> gens = classes_[ci].rep_gens;
    if (static_cast<int64_t>(set.size()) == n) continue;

    // a proper subgroup has at most half the group order, so closures past
    // half can only finish at the whole group and are cut off early
    size_t half = static_cast<size_t>(n) / 2;
    if (soluble) {
      // extend by normalizer elements (cyclic extension layer)
      Sub h;
      h.parent = g_;
      h.elems = set;
      h.gens = gens;
      Sub nh = normalizer(h);
      for (EltId x : nh.elems) {
        if (h.contains(x)) continue;
        std::vector<EltId> jg = gens;
        jg.push_back(x);
        auto join_set = closure_ids(g, jg, half);
        if (join_set) insert_orbit(std::move(*join_set));
      }
    } else {
      // join with double-coset representatives
      std::vector<char> covered(n, 0);
      for (EltId h1 : set) covered[h1] = 1;
      std::vector<EltId> hx(set.size());
      for (EltId x = 0; x < n; ++x) {
        if (covered[x]) continue;
        // mark the double coset H x H, one right coset at a time
        for (size_t j = 0; j < set.size(); ++j) hx[j] = g.mul(set[j], x);
        for (EltId h2 : set) {
          EltId r = g.mul(x, h2);
          if (covered[r]) continue;
          for (EltId e : hx) covered[g.mul(e, h2)] = 1;
        }
        std::vector<EltId> jg = gens;
        jg.push_back(x);
        auto join_set = closure_ids(g, jg, half);
        if (join_set) insert_orbit(std::move(*join_set));
      }
    }
  }

  // whole group
  {
    std::vector<EltId> all(n);
    for (EltId i = 0; i < n; ++i) all[i] = i;
    insert_orbit(std::move(all));
  }

  // canonical class order: by order, then by representative element set
  std::vector<int> perm(classes_.size());
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    if (classes_[a].members[0].size() != classes_[b].members[0].size())
      return classes_[a].members[0].size() < classes_[b].members[0].size();
    return classes_[a].members[0] < classes_[b].members[0];
  });
  std::vector<Class> sorted;
  sorted.reserve(classes_.size());
  for (int idx : perm) sorted.push_back(std::move(classes_[idx]));
  classes_ = std::move(sorted);
  index_.clear();
  for (size_t c = 0; c < classes_.size(); ++c)
    for (size_t m = 0; m < classes_[c].members.size(); ++m)
      index_[id_set_hash(classes_[c].members[m])].push_back(
          {static_cast<int>(c), static_cast<int>(m)});
}

std::shared_ptr<const Lattice> Lattice::build(const GroupPtr& g) {
  auto lat = std::make_shared<Lattice>(g);
  lat->run();
  return lat;
}

std::shared_ptr<const Lattice> subgroup_lattice(const GroupPtr& g) {
  static std::mutex mu;
  static std::unordered_map<const Group*, std::shared_ptr<const Lattice>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(g.get());
    if (it != cache.end()) return it->second;
  }
  auto lat = Lattice::build(g);
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(g.get(), lat);
  return it->second;
}

std::vector<std::vector<std::vector<EltId>>> classes_within(const Lattice& lat,
                                                            const Sub& ambient) {
  const Group& g = *lat.group();
  auto inside = lat.subgroups_within(ambient.elems);
  std::unordered_map<uint64_t, std::vector<int>> pos;
  for (size_t i = 0; i < inside.size(); ++i) pos[id_set_hash(inside[i])].push_back(static_cast<int>(i));
  auto locate = [&](const std::vector<EltId>& v) -> int {
    auto it = pos.find(id_set_hash(v));
    if (it == pos.end()) return -1;
    for (int i : it->second)
      if (inside[i] == v) return i;
    return -1;
  };
  std::vector<char> used(inside.size(), 0);
  std::vector<std::vector<std::vector<EltId>>> out;
  for (size_t i = 0; i < inside.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::vector<EltId>> orbit;
    orbit.push_back(inside[i]);
    used[i] = 1;
    for (size_t k = 0; k < orbit.size(); ++k) {
      for (EltId x : ambient.gens) {
        std::vector<EltId> img(orbit[k].size());
        for (size_t j = 0; j < img.size(); ++j) img[j] = g.conj(x, orbit[k][j]);
        std::sort(img.begin(), img.end());
        int loc = locate(img);
        if (loc >= 0 && !used[loc]) {
          used[loc] = 1;
          orbit.push_back(std::move(img));
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

std::vector<Sub> maximal_subgroups_in(const Lattice& lat, const Sub& ambient) {
  auto cls = classes_within(lat, ambient);
  auto inside = lat.subgroups_within(ambient.elems);  // sorted by size then set
  std::vector<Sub> out;
  for (const auto& orbit : cls) {
    const auto& repset = orbit[0];
    if (repset.size() == ambient.elems.size()) continue;
    // maximality is an ambient-conjugacy class property, so testing the
    // representative against all strictly intermediate subgroups suffices
    bool maximal = true;
    for (const auto& sup : inside) {
      if (sup.size() <= repset.size()) continue;
      if (sup.size() == ambient.elems.size()) break;
      if (sup.size() % repset.size() != 0) continue;
      if (std::includes(sup.begin(), sup.end(), repset.begin(), repset.end())) {
        maximal = false;
        break;
      }
    }
    if (maximal) {
      Sub s;
      s.parent = lat.group();
      s.elems = repset;
      s.gens = small_generating_set(*lat.group(), s.elems);
      out.push_back(std::move(s));
    }
  }
  std::sort(out.begin(), out.end(), [](const Sub& a, const Sub& b) {
    if (a.elems.size() != b.elems.size()) return a.elems.size() > b.elems.size();
    return a.elems < b.elems;
  });
  return out;
}

}  // namespace fusekit
