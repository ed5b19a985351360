#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "parithlab/manin.hpp"

namespace parithlab {

// Directory for on-disk Hecke matrices.  An explicit setting wins over the
// PARITHLAB_CACHE environment variable; empty means caching is disabled.
void set_cache_dir(const std::string& dir);
std::string cache_dir();

// Key of one cached matrix.  N records the full level (N*p for spaces that
// carry the level structure at p); q is the field size.
struct CacheKey {
  std::uint32_t p = 0;
  std::uint32_t N = 0;
  int r = 0;
  int a = 0;
  std::string label;
  std::uint64_t q = 0;
};

CacheKey cache_key(const HomologySpace& space, const std::string& label);
std::string cache_filename(const CacheKey& key);

// Text format: header `parithlab-mat v1 p N r a label q rows cols`, then one
// `row col value` line per nonzero entry (value = canonical encoding of the
// field element); bit-exact round trip.
void save_matrix(std::ostream& os, const CacheKey& key, const MatrixFq& m);
MatrixFq load_matrix(std::istream& is, const CacheKey& expect, const Fq& F);

// Disk layer used by hecke(): load if present, else nullopt; store writes
// atomically (temp file + rename).  No-ops when caching is disabled.
std::optional<MatrixFq> disk_cache_load(const HomologySpace& space,
                                        const std::string& label);
void disk_cache_store(const HomologySpace& space, const std::string& label,
                      const MatrixFq& m);

}  // namespace parithlab
