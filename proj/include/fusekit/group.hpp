#ifndef FUSEKIT_GROUP_HPP
#define FUSEKIT_GROUP_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "fusekit/perm.hpp"

namespace fusekit {

using EltId = int32_t;

class Group;
using GroupPtr = std::shared_ptr<const Group>;

// A concrete finite permutation group with its full element list materialized.
// Elements are interned: EltId is the index into the lexicographically sorted
// element list, so all "first"/"minimal" choices downstream are deterministic.
// Immutable after construction; safe to share across threads.
class Group {
 public:
  // Builds the group generated by perms (all of one degree).  Fails with
  // EnumerationCapExceeded if the closure passes the enumeration cap.
  static GroupPtr from_generators(int degree, const std::vector<Perm>& perms);

  int degree() const { return degree_; }
  int64_t order() const { return static_cast<int64_t>(elems_.size()); }
  const std::vector<Perm>& elements() const { return elems_; }
  const Perm& elem(EltId i) const { return elems_[i]; }
  const std::vector<EltId>& generator_ids() const { return gen_ids_; }
  EltId identity() const { return identity_; }

  EltId id_of(const Perm& p) const;              // fails if not a member
  std::optional<EltId> try_id_of(const Perm& p) const;

  EltId mul(EltId a, EltId b) const {
    if (!table_.empty()) return table_[static_cast<size_t>(a) * elems_.size() + b];
    return mul_slow(a, b);
  }
  EltId inv(EltId a) const { return inv_[a]; }
  EltId conj(EltId g, EltId x) const { return mul(mul(inv_[g], x), g); }  // g^-1 x g
  EltId power(EltId a, int64_t e) const;
  int element_order(EltId a) const { return orders_[a]; }

  bool is_abelian() const;
  bool is_soluble() const;

 private:
  Group() = default;
  EltId mul_slow(EltId a, EltId b) const;

  int degree_ = 0;
  std::vector<Perm> gens_;
  std::vector<EltId> gen_ids_;
  std::vector<Perm> elems_;
  std::unordered_map<Perm, EltId, PermHash> index_;
  std::vector<EltId> inv_;
  std::vector<int> orders_;
  std::vector<EltId> table_;  // full multiplication table for small groups
  EltId identity_ = 0;
  mutable int soluble_ = -1;  // memoized verdict, set under no lock hazard (idempotent)
};

// A subgroup of a fixed parent group, stored as a sorted element-id list.
struct Sub {
  GroupPtr parent;
  std::vector<EltId> elems;  // sorted, closed under product and inverse
  std::vector<EltId> gens;   // generating subset (may equal elems for tiny groups)

  int64_t order() const { return static_cast<int64_t>(elems.size()); }
  bool contains(EltId x) const;
  bool contains_all(const Sub& other) const;
  bool same_set(const Sub& other) const { return elems == other.elems; }
  int position_of(EltId x) const;  // index into elems, -1 if absent
};

// ---- kernel operations -----------------------------------------------------

Sub whole_group(const GroupPtr& g);
Sub trivial_subgroup(const GroupPtr& g);

// Closure of the given generator ids inside g.  max_size == 0 means no bound;
// otherwise returns nullopt as soon as the closure would exceed max_size.
std::optional<std::vector<EltId>> closure_ids(const Group& g, const std::vector<EltId>& gens,
                                              size_t max_size = 0);

Sub sub_from_gens(const GroupPtr& g, const std::vector<EltId>& gens);
Sub sub_from_elements(const GroupPtr& g, std::vector<EltId> elems);  // verifies closure

// Reduces to a small generating set (greedy, deterministic).
std::vector<EltId> small_generating_set(const Group& g, const std::vector<EltId>& elems);

Sub normalizer(const Sub& h);                  // N_parent(h)
Sub normalizer_in(const Sub& ambient, const Sub& h);
Sub centralizer(const Sub& h);                 // C_parent(h)
Sub centralizer_in(const Sub& ambient, const Sub& h);
Sub center(const GroupPtr& g);
Sub center_of(const Sub& h);                   // Z(h)
Sub derived_subgroup(const Sub& h);
Sub frattini_subgroup(const Sub& h);           // h must be a p-group
Sub socle_of_p_group(const Sub& h, int p);     // Omega_1(Z(h))
Sub sylow_subgroup(const GroupPtr& g, int p);
Sub sylow_subgroup_of(const Sub& h, int p);
Sub intersection(const Sub& a, const Sub& b);
Sub join(const Sub& a, const Sub& b);

bool is_normal_in(const Sub& ambient, const Sub& h);
bool is_p_group(const Sub& h, int p);
bool is_elementary_abelian(const Sub& h, int p);
bool sub_is_abelian(const Sub& h);
bool sub_is_soluble(const Sub& h);
bool sub_is_cyclic(const Sub& h);
bool sub_is_quaternion(const Sub& h);  // generalized quaternion 2-group

// Conjugacy of subgroups inside their parent: returns g with h^g == k.
std::optional<EltId> conjugating_element(const Sub& h, const Sub& k);
std::optional<EltId> conjugating_element_in(const Sub& ambient, const Sub& h, const Sub& k);

// Orbit of a subgroup under conjugation by ambient generators.
std::vector<std::vector<EltId>> subgroup_conjugates(const Sub& ambient, const Sub& h);

// Quotient g/n as a permutation group via the regular action on right cosets,
// together with the canonical projection (element id -> quotient element id).
struct Quotient {
  GroupPtr group;
  std::vector<EltId> project;       // indexed by parent element id
  std::vector<EltId> coset_rep;     // indexed by quotient element id
};
Quotient quotient(const GroupPtr& g, const Sub& n);
Quotient quotient_of(const Sub& h, const Sub& n);  // h/n, n normal in h

int64_t p_part(int64_t n, int p);
std::vector<int> prime_divisors(int64_t n);

}  // namespace fusekit

#endif
