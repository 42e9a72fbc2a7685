#ifndef FUSEKIT_LATTICE_HPP
#define FUSEKIT_LATTICE_HPP

#include <memory>
#include <unordered_map>
#include <vector>

#include "fusekit/group.hpp"

namespace fusekit {

// All subgroups of a group, organized into conjugacy classes with every
// conjugate materialized.  Built bottom-up from cyclic subgroups by
// normalizer extensions; for non-soluble groups a join-completion pass over
// double-coset representatives picks up the perfect layers.
class Lattice {
 public:
  struct Class {
    std::vector<std::vector<EltId>> members;  // sorted element-id sets, lex order
    std::vector<EltId> rep_gens;              // generators of members[0]
  };

  explicit Lattice(GroupPtr g) : g_(std::move(g)) {}

  const GroupPtr& group() const { return g_; }
  const std::vector<Class>& classes() const { return classes_; }
  size_t class_count() const { return classes_.size(); }
  int64_t total_subgroups() const;

  Sub rep(int class_idx) const;
  Sub member(int class_idx, int member_idx) const;

  // class/member of an exact element set; (-1,-1) if absent (i.e. not a subgroup)
  std::pair<int, int> find(const std::vector<EltId>& set) const;
  int class_of(const std::vector<EltId>& set) const { return find(set).first; }

  // every subgroup (raw), in deterministic order
  std::vector<Sub> all_subgroups() const;

  // every subgroup contained in the given ambient subgroup
  std::vector<std::vector<EltId>> subgroups_within(const std::vector<EltId>& ambient_set) const;

  static std::shared_ptr<const Lattice> build(const GroupPtr& g);

 private:
  void insert_orbit(std::vector<EltId> set);
  void run();

  GroupPtr g_;
  std::vector<Class> classes_;
  std::unordered_map<uint64_t, std::vector<std::pair<int, int>>> index_;
  std::vector<int> worklist_;
};

// Process-wide memoized lattice per group object.
std::shared_ptr<const Lattice> subgroup_lattice(const GroupPtr& g);

// Conjugacy classes of subgroups of a proper ambient subgroup, up to
// ambient-conjugacy, read off a lattice of the full group.
std::vector<std::vector<std::vector<EltId>>> classes_within(const Lattice& lat, const Sub& ambient);

// Representatives of the maximal subgroups of ambient up to ambient-conjugacy.
std::vector<Sub> maximal_subgroups_in(const Lattice& lat, const Sub& ambient);

uint64_t id_set_hash(const std::vector<EltId>& v);

}  // namespace fusekit

#endif
