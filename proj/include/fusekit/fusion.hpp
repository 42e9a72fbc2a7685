#ifndef FUSEKIT_FUSION_HPP
#define FUSEKIT_FUSION_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "fusekit/isomorphism.hpp"
#include "fusekit/morphism.hpp"

namespace fusekit {

// A fusion datum on a finite p-group S: a sequence of S-centric subgroups
// headed by S itself, plus an automizer assignment Aut_S(Q) <= A(Q) <= Aut(Q),
// with no two members in one A(S)-orbit.  The generated fusion system is the
// smallest one containing every assigned automorphism.
struct FusionData {
  GroupPtr s;
  int p = 2;
  std::vector<Sub> members;   // members[0] is the whole group
  std::vector<AutSet> autos;  // autos[i] acts on members[i]
};

// Validates the datum invariants.  When require_centric is false the centric
// condition is skipped (used for internally generated auxiliary data).
void validate_fusion_data(const FusionData& d, bool require_centric = true);

class FusionSystem;
using FusionSystemPtr = std::shared_ptr<FusionSystem>;

// The labeled fusion graph: vertices are A(S)-orbit representatives of all
// subgroups of S (containing every datum member), edges join representatives
// linked by a datum automorphism, with a concrete morphism stored per edge,
// fixed at first discovery.
class FusionGraph {
 public:
  const std::vector<Sub>& subgroups() const { return subs_; }
  int subgroup_index(const std::vector<EltId>& set) const;
  int rep_index_of(int sub_idx) const { return rep_of_[sub_idx]; }
  // carrier element of A(S) mapping the representative onto this subgroup
  EltId transversal_of(int sub_idx) const { return to_rep_[sub_idx]; }
  const std::vector<int>& representatives() const { return reps_; }
  bool is_representative(int sub_idx) const { return rep_of_[sub_idx] == sub_idx; }
  int component_of(int rep_idx) const { return comp_of_.at(rep_idx); }
  const std::vector<std::vector<int>>& components() const { return comps_; }
  // orbit members (subgroup indices) of a representative
  const std::vector<int>& orbit_members(int rep_idx) const { return orbit_of_.at(rep_idx); }
  bool s_centric(int sub_idx) const { return s_centric_[sub_idx] != 0; }
  int64_t normalizer_order(int sub_idx) const { return normalizer_order_[sub_idx]; }

 private:
  friend class FusionSystem;
  std::vector<Sub> subs_;
  std::map<std::vector<EltId>, int> index_;
  std::vector<int> rep_of_;
  std::vector<EltId> to_rep_;
  std::vector<int> reps_;
  std::map<int, std::vector<int>> orbit_of_;
  std::map<int, int> comp_of_;
  std::vector<std::vector<int>> comps_;
  std::map<std::pair<int, int>, Morphism> edges_;  // key (min rep, max rep)
  std::map<int, std::pair<int, int>> tree_;        // rep -> (parent rep, depth)
  std::vector<char> s_centric_;
  std::vector<int64_t> normalizer_order_;
};

// A fusion system presented by a datum.  The graph, the automizer cache and
// the saturation verdict are built lazily; all values are immutable once
// computed, so a system can be shared across threads.
class FusionSystem {
 public:
  explicit FusionSystem(FusionData data, bool require_centric = true);

  const FusionData& data() const { return data_; }
  const GroupPtr& group() const { return data_.s; }
  int prime() const { return data_.p; }
  const FusionGraph& graph() const;

  // Aut_F(P) for any P <= S, generated through the labeled graph.
  AutSet automizer(const Sub& p) const;
  // concrete F-isomorphism between two F-conjugate subgroups
  Morphism theta(const Sub& x, const Sub& y) const;
  std::optional<Morphism> conjugating_morphism(const Sub& x, const Sub& y) const;
  bool are_conjugate(const Sub& x, const Sub& y) const;

  // theta between graph representatives (by subgroup index)
  Morphism rep_theta(int rep_x, int rep_y) const;
  // decorated theta between arbitrary subgroup indices in one component
  Morphism index_theta(int x, int y) const;

  AutSet rep_automizer(int rep_idx) const;  // cached per representative

 private:
  void build_graph() const;
  Morphism transversal_morphism(int sub_idx) const;  // rep -> subgroup

  FusionData data_;
  mutable std::mutex mu_;
  mutable std::unique_ptr<FusionGraph> graph_;
  mutable std::map<int, AutSet> automizer_cache_;
  mutable std::map<std::pair<int, int>, Morphism> theta_cache_;
};

// Searches Aut(S) for an isomorphism of fusion data: theta with
// members2 = members1 * theta and A2(Q theta) = A1(Q)^theta.
std::optional<Perm> datum_isomorphism(const FusionSystem& a, const FusionSystem& b);

// Builds a datum whose automizers are the induced automizers Aut_G(Q).
FusionData group_datum(const GroupPtr& g, int p);

// The fusion system of a finite group on one of its Sylow p-subgroups.
FusionSystemPtr group_fusion_system(const GroupPtr& g, int p);

// Moves a system onto an isomorphic copy of its underlying group.
FusionSystemPtr transport_system(const FusionSystem& f, const GroupPtr& target);

// Datum isomorphism after moving both systems onto one copy when needed.
bool systems_isomorphic(const FusionSystem& a, const FusionSystem& b);

}  // namespace fusekit

#endif
