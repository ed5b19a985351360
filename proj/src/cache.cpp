#include "parithlab/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace parithlab {

namespace {
std::string g_cache_dir;
bool g_cache_dir_set = false;
}  // namespace

void set_cache_dir(const std::string& dir) {
  g_cache_dir = dir;
  g_cache_dir_set = true;
}

std::string cache_dir() {
  if (g_cache_dir_set) return g_cache_dir;
  const char* env = std::getenv("PARITHLAB_CACHE");
  return env ? std::string(env) : std::string();
}

CacheKey cache_key(const HomologySpace& space, const std::string& label) {
  CacheKey key;
  key.p = space.F.p();
  key.N = space.level.N * (space.level.with_p ? space.F.p() : 1);
  key.r = space.weight.r;
  key.a = space.weight.a;
  key.label = label;
  key.q = 1;
  for (int i = 0; i < space.F.degree(); ++i) key.q *= space.F.p();
  return key;
}

std::string cache_filename(const CacheKey& key) {
  std::ostringstream oss;
  oss << "p" << key.p << "-N" << key.N << "-r" << key.r << "-a" << key.a
      << "-" << key.label << "-q" << key.q << ".mat";
  return oss.str();
}

void save_matrix(std::ostream& os, const CacheKey& key, const MatrixFq& m) {
  os << "parithlab-mat v1 " << key.p << " " << key.N << " " << key.r << " "
     << key.a << " " << key.label << " " << key.q << " " << m.rows() << " "
     << m.cols() << "\n";
  const Fq& F = m.field();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!F.is_zero(m.at(i, j)))
        os << i << " " << j << " " << F.encode(m.at(i, j)) << "\n";
}

MatrixFq load_matrix(std::istream& is, const CacheKey& expect, const Fq& F) {
  std::string magic, version, label;
  std::uint32_t p = 0, N = 0;
  int r = 0, a = 0, rows = 0, cols = 0;
  std::uint64_t q = 0;
  is >> magic >> version >> p >> N >> r >> a >> label >> q >> rows >> cols;
  if (!is || magic != "parithlab-mat" || version != "v1")
    throw std::runtime_error("cache: bad matrix header");
  if (p != expect.p || N != expect.N || r != expect.r || a != expect.a ||
      label != expect.label || q != expect.q)
    throw std::runtime_error("cache: key mismatch in " +
                             cache_filename(expect));
  MatrixFq m(F, rows, cols);
  int i = 0, j = 0;
  std::uint64_t v = 0;
  while (is >> i >> j >> v) {
    if (i < 0 || i >= rows || j < 0 || j >= cols)
      throw std::runtime_error("cache: entry out of range");
    m.set(i, j, F.decode(v));
  }
  return m;
}

std::optional<MatrixFq> disk_cache_load(const HomologySpace& space,
                                        const std::string& label) {
  std::string dir = cache_dir();
  if (dir.empty()) return std::nullopt;
  CacheKey key = cache_key(space, label);
  std::ifstream in(dir + "/" + cache_filename(key));
  if (!in) return std::nullopt;
  return load_matrix(in, key, space.F);
}

void disk_cache_store(const HomologySpace& space, const std::string& label,
                      const MatrixFq& m) {
  std::string dir = cache_dir();
  if (dir.empty()) return;
  CacheKey key = cache_key(space, label);
  std::string path = dir + "/" + cache_filename(key);
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;  // unwritable cache dir: skip silently
    save_matrix(out, key, m);
  }
  std::rename(tmp.c_str(), path.c_str());
}

}  // namespace parithlab
