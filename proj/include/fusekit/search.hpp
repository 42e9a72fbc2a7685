#ifndef FUSEKIT_SEARCH_HPP
#define FUSEKIT_SEARCH_HPP

#include <functional>
#include <string>
#include <vector>

#include "fusekit/fusion.hpp"
#include "fusekit/saturation.hpp"

namespace fusekit {

struct SearchConfig {
  bool require_trivial_core = true;  // defaults reproduce the headline search
  bool require_focal_full = true;
  int jobs = 1;
  bool transcript_log = false;
  std::function<void(const std::string&)> log;  // line sink (no newline)
};

struct FilterVerdict {
  bool proceed = false;
  std::string reason;
};

// Group-level exclusion tests run before any expensive computation.
FilterVerdict group_filters(const GroupPtr& s, int p, const SearchConfig& cfg);

// Aut(S)-class representatives of the potentially essential subgroups.
std::vector<Sub> potentially_essential(const GroupPtr& s, int p, const AutSet& aut_s);

// True when S must be rejected: some nontrivial subgroup from the standard
// characteristic family lies characteristically in S and in every candidate.
bool characteristic_core_filter(const GroupPtr& s, int p, const std::vector<Sub>& candidates);

struct ProtoEssential {
  Sub subgroup;                 // subgroup of S (Aut(S)-class representative)
  AutSet aut;                   // full Aut(E)
  Sub aut_s;                    // Aut_S(E) inside aut.carrier
  Sub inn;                      // Inn(E) inside aut.carrier
  std::vector<Sub> candidates;  // automizer candidates K <= aut.carrier
};

// Computes the automizer candidate sets over the potentially essential list;
// subgroups with no candidate are dropped.
std::vector<ProtoEssential> proto_essentials(const GroupPtr& s, int p,
                                             const std::vector<Sub>& candidates);

struct BorelGroup {
  GroupPtr b;           // S x| K on the elements of S
  AutSet aut_b_s;       // <Inn(S), K> acting on S
  int64_t quotient_order = 1;  // |B : S|
};

// p'-subgroup classes of Out(S) realized as Borel groups S x| K.
std::vector<BorelGroup> borel_groups(const GroupPtr& s, int p, const AutSet& aut_s);

struct SystemRecord {
  FusionSystemPtr system;
  std::vector<int64_t> essential_orders;  // descending
  std::vector<int64_t> outer_orders;      // |Out_F(E)|, parallel
  int64_t out_s_order = 1;
  int64_t core_order = 1;
  int64_t focal_index = 1;
  int borel_index = 0;
};

struct SearchResult {
  std::vector<SystemRecord> systems;
  int64_t centric_count_raw = 0;
  int64_t centric_count_classes = 0;
  int proto_class_count = 0;
  int borel_count = 0;
};

SearchResult all_fusion_systems(const GroupPtr& s, int p, const SearchConfig& cfg = {});

SystemRecord describe_system(const FusionSystemPtr& f, int borel_index = 0);

// Renders result records in the table layout the CLI prints.
std::string render_table(const std::vector<SystemRecord>& records);

// Subsystem constructors.  Each validates its hypotheses (PreconditionViolated
// otherwise) and checks that the result is saturated.
FusionSystemPtr prune_system(const FusionSystem& f, const Sub& p, const AutSet& k);
FusionSystemPtr prune_pearl(const FusionSystem& f, const Sub& p);
FusionSystemPtr shrink_system(const FusionSystem& f, const Sub& e, int steps);

bool is_essential_in(const FusionSystem& f, const Sub& p);
bool is_pearl(const FusionSystem& f, const Sub& p);

}  // namespace fusekit

#endif
