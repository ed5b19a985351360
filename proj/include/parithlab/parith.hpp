#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "parithlab/eigensystems.hpp"
#include "parithlab/levelmaps.hpp"

namespace parithlab {

// p-arithmetic homology dimensions of one smooth representation, localized
// at one eigensystem, in degrees 0..3.
struct ParithProfile {
  RepSpec rep;
  std::string eigensystem_id;
  std::array<int, 4> dims{};
  std::vector<int> predicted;  // expected nonzero degrees
  bool match = false;

  std::vector<int> nonzero() const;
};

// Non-owning view of the computed weight spaces (prime field, shared (p,N)).
struct WeightGrid {
  std::vector<const HomologySpace*> spaces;

  const HomologySpace* find(int r, int a) const;
  // True when every weight 0 <= r <= p-1, 0 <= a <= p-2 is present.
  bool full(std::uint32_t p) const;
};

// The modules U = coker(psi~) and V = ker(phi~) at twist a = 0, carrying the
// induced operators needed for every twist (twisting only rescales the
// away-from-p eigenvalue constraints).
struct HasseData {
  HasseModules mods;
  std::vector<std::uint32_t> ells;
  MatrixFq TpU, SpU, TpV, SpV;
  std::vector<MatrixFq> TlU, SlU, TlV, SlV;
};

// Assemble U/V from the three homology spaces at weight (p-1, 0):
// level Np trivial, level N trivial, level N Sym^{p-1}.
HasseData build_hasse_data(const HomologySpace& np, const HomologySpace& triv,
                           const HomologySpace& sym,
                           const std::vector<std::uint32_t>& ells);

// Generic representation pi(r, lambda, omega^a unr b): degree i+1 equals
// Tor_i of the weight-(r, a+r) space localized at the eigensystem, taken at
// the character (lambda b, b^2).  The eigensystem must be non-Eisenstein.
ParithProfile profile_generic(const WeightGrid& grid, const EigenData& ed,
                              const Eigensystem& es, const RepSpec& rep);

// Steinberg twist St (x) omega^a unr b: degrees 1 and 2 are the eigenquotient
// and eigenspace of U at (T - b, S - b^2); degrees 0 and 3 vanish.
ParithProfile profile_steinberg(const HasseData& hd, const EigenData& ed,
                                const Eigensystem& es, const RepSpec& rep);

// Character omega^a unr b of the determinant: degrees 2 and 3 from V,
// degrees 0 and 1 vanish.
ParithProfile profile_trivial(const HasseData& hd, const EigenData& ed,
                              const Eigensystem& es, const RepSpec& rep);

// Dispatch on rep.kind.
ParithProfile profile(const WeightGrid& grid, const HasseData& hd,
                      const EigenData& ed, const Eigensystem& es,
                      const RepSpec& rep);

// Candidate representations read off the occurrences of an eigensystem:
// generic ones for every square root of sigma (skipping the reducible
// (r, lambda) pairs), Steinberg and trivial twists for every weight-(p-1)
// occurrence with tau^2 = sigma.
std::vector<RepSpec> candidate_reps(const Fq& F, const Eigensystem& es,
                                    std::uint32_t p);

struct ConsistencyReport {
  std::vector<ParithProfile> profiles;
  bool partial = false;  // weight grid incomplete

  bool all_match() const;
};

// Profiles and prediction matches for every (non-Eisenstein eigensystem,
// candidate rep) pair on the grid.
ConsistencyReport consistency_report(const WeightGrid& grid,
                                     const HasseData& hd, const EigenData& ed);

}  // namespace parithlab
