#pragma once

#include <memory>
#include <vector>

#include "parithlab/eigensystems.hpp"
#include "parithlab/parith.hpp"

namespace parithlab {

struct SessionConfig {
  std::uint32_t p = 5;
  std::uint32_t N = 11;
  std::uint32_t B = 0;          // prime bound; 0 = Sturm-type default
  std::vector<Weight> weights;  // empty = full grid (all r, all a)

  void validate() const;  // p >= 5 prime, N >= 3, gcd(p, N) = 1
};

// Sturm-type prime bound ceil((r + 2) * index / 12) for the largest weight
// on the grid; index = [PSL_2(Z) : image of Gamma_1(N)].
std::uint32_t sturm_bound(std::uint32_t N, int rmax);

// Owns the weight spaces, the extracted eigensystem data and (on demand)
// the U/V modules of one (p, N) computation.
struct Session {
  SessionConfig cfg;
  Fq F;  // prime field
  std::vector<std::unique_ptr<HomologySpace>> owned;
  WeightGrid grid;
  std::vector<std::uint32_t> ells;
  EigenData eigen;
  std::unique_ptr<HasseData> hasse;  // null until ensure_hasse()

  static Session build(const SessionConfig& cfg);
  void ensure_hasse();
  const Eigensystem& system_by_id(const std::string& id) const;
};

}  // namespace parithlab
