#ifndef FUSEKIT_CATALOG_HPP
#define FUSEKIT_CATALOG_HPP

#include <string>
#include <vector>

#include "fusekit/group.hpp"

namespace fusekit {

// Maximal-class metabelian presentation parameters.  The constructed group is
// checked to have order p^r and nilpotency class r-1.
struct BlackburnParams {
  int p = 3;       // odd prime
  int r = 4;       // >= 4
  int alpha = 0, beta = 0, gamma = 0, delta = 0;  // residues mod p
};

GroupPtr blackburn_group(const BlackburnParams& params);

GroupPtr extraspecial_group(int p, char sign = '+');  // p^{1+2}; sign matters for p=2
GroupPtr wreath_cyclic(int p);                        // C_p wr C_p on p^2 points
GroupPtr symmetric_group(int n);
GroupPtr alternating_group(int n);
GroupPtr sylow_of_symmetric(int n, int p);
GroupPtr sylow_of_alternating(int n, int p);
GroupPtr cyclic_group(int n);
GroupPtr elementary_abelian(int p, int rank);

// Bundled constructions addressed by tag: alt:n, sym:n, psl3_3, psu4_2,
// sylnorm:n,p (Sylow normalizer in Sym(n)).  UnknownTag otherwise.
GroupPtr named_group(const std::string& tag);

// Parses a catalog name: "blackburn:p,r,a,b,c,d", "extraspecial:p+",
// "extraspecial:p-", "wreath:p", "sylA:n,p", "sylS:n,p", "alt:n", "sym:n",
// "cyclic:n", "file:<path>", or a named tag.
GroupPtr group_from_catalog(const std::string& name);

std::vector<std::string> catalog_names();

int nilpotency_class(const GroupPtr& g);

}  // namespace fusekit

#endif
