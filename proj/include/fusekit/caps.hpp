#ifndef FUSEKIT_CAPS_HPP
#define FUSEKIT_CAPS_HPP

#include <cstdint>

namespace fusekit {

// Resource caps. Element enumeration and automorphism enumeration are hard
// correctness boundaries: operations that would pass a cap raise
// EnumerationCapExceeded / AutCapExceeded instead of degrading silently.
struct Caps {
  int64_t enumeration = 1000000;  // max group order we will materialize
  int64_t automorphisms = 1000000;  // max |Aut(P)| we will enumerate
};

// Process-wide caps.  The FUSEKIT_CAPS environment variable ("enum=N,aut=M")
// may lower these; raising past the defaults needs an explicit CLI flag.
Caps& caps();

// Applies FUSEKIT_CAPS if set.  Values above the defaults are ignored unless
// allow_raise is true.
void apply_caps_env(bool allow_raise = false);

}  // namespace fusekit

#endif
