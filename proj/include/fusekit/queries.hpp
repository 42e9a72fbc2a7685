#ifndef FUSEKIT_QUERIES_HPP
#define FUSEKIT_QUERIES_HPP

#include <optional>
#include <set>

#include "fusekit/fusion.hpp"

namespace fusekit {

// One fusion-conjugacy class: its graph representatives and the number of
// subgroups in the full class.
struct FusionClass {
  std::vector<int> representatives;  // subgroup indices of the graph reps
  int64_t full_size = 0;
};

FusionClass fusion_class(const FusionSystem& f, const Sub& p);

std::optional<Morphism> is_conjugate(const FusionSystem& f, const Sub& p, const Sub& r);

bool is_s_centric(const GroupPtr& s, const Sub& p);
bool is_centric(const FusionSystem& f, const Sub& p);        // F-centric
bool is_fully_normalized(const FusionSystem& f, const Sub& p);
bool is_fully_centralized(const FusionSystem& f, const Sub& p);
bool is_fully_automized(const FusionSystem& f, const Sub& p);
bool is_weakly_closed(const FusionSystem& f, const Sub& p);
bool is_strongly_closed(const FusionSystem& f, const Sub& p);

// orbit of an element under the fusion system (breadth-first closure under
// restricted datum generators)
std::set<EltId> element_class(const FusionSystem& f, EltId g);

Sub focal_subgroup(const FusionSystem& f);
Sub hyperfocal_subgroup(const FusionSystem& f);

// O_p(F): the largest subgroup invariant under every datum automorphism and
// contained in every member
Sub core_subgroup(const FusionSystem& f);

// H_F(P): automorphisms of P generated by restrictions of morphisms passing
// through strictly larger subgroups.  Requires P fully normalized, P < S.
AutSet h_subgroup(const FusionSystem& f, const Sub& p);

// O^p of a carrier group: generated by all elements of order prime to p.
Sub p_residual(const GroupPtr& g, int p);

}  // namespace fusekit

#endif
