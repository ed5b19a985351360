#include "parithlab/session.hpp"

#include <numeric>
#include <stdexcept>

namespace parithlab {

namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

void SessionConfig::validate() const {
  if (p < 5 || !is_prime(p))
    throw std::invalid_argument("config: p must be a prime >= 5");
  if (N < 3) throw std::invalid_argument("config: N must be >= 3");
  if (std::gcd(p, N) != 1)
    throw std::invalid_argument("config: N must be coprime to p");
  for (const Weight& w : weights)
    if (w.r < 0 || w.r > static_cast<int>(p) - 1 || w.a < 0 ||
        w.a > static_cast<int>(p) - 2)
      throw std::invalid_argument("config: weight outside 0<=r<=p-1, 0<=a<=p-2");
}

std::uint32_t sturm_bound(std::uint32_t N, int rmax) {
  // Index of the image of Gamma_1(N) in PSL_2(Z).
  std::uint64_t index = static_cast<std::uint64_t>(N) * N;
  std::uint32_t m = N;
  for (std::uint32_t q = 2; q <= m; ++q) {
    if (m % q != 0) continue;
    index = index / (static_cast<std::uint64_t>(q) * q) *
            (static_cast<std::uint64_t>(q) * q - 1);
    while (m % q == 0) m /= q;
  }
  if (N > 2) index /= 2;
  return static_cast<std::uint32_t>(
      ((rmax + 2) * index + 11) / 12);
}

Session Session::build(const SessionConfig& cfg) {
  cfg.validate();
  Session s;
  s.cfg = cfg;
  s.F = Fq(cfg.p, 1);

  std::vector<Weight> ws = cfg.weights;
  if (ws.empty())
    for (int r = 0; r <= static_cast<int>(cfg.p) - 1; ++r)
      for (int a = 0; a <= static_cast<int>(cfg.p) - 2; ++a)
        ws.push_back({r, a});

  int rmax = 0;
  for (const Weight& w : ws) rmax = std::max(rmax, w.r);
  std::uint32_t B = cfg.B ? cfg.B : sturm_bound(cfg.N, rmax);
  s.ells = hecke_primes(cfg.p, cfg.N, B);
  if (s.ells.empty())
    throw std::invalid_argument("config: prime bound admits no Hecke primes");

  for (const Weight& w : ws) {
    s.owned.push_back(std::make_unique<HomologySpace>(
        build_space({cfg.N, false}, w, s.F)));
    s.grid.spaces.push_back(s.owned.back().get());
  }
  s.eigen = extract(s.grid.spaces, s.ells);
  return s;
}

void Session::ensure_hasse() {
  if (hasse) return;
  const int p1 = static_cast<int>(cfg.p) - 1;
  auto space_at = [&](int r, int a) -> const HomologySpace* {
    if (const HomologySpace* sp = grid.find(r, a)) return sp;
    owned.push_back(
        std::make_unique<HomologySpace>(build_space({cfg.N, false}, {r, a}, F)));
    return owned.back().get();
  };
  const HomologySpace* triv = space_at(0, 0);
  const HomologySpace* sym = space_at(p1, 0);
  owned.push_back(
      std::make_unique<HomologySpace>(build_space({cfg.N, true}, {0, 0}, F)));
  const HomologySpace* np = owned.back().get();
  hasse = std::make_unique<HasseData>(build_hasse_data(*np, *triv, *sym, ells));
}

const Eigensystem& Session::system_by_id(const std::string& id) const {
  for (const Eigensystem& es : eigen.systems)
    if (es.id == id) return es;
  throw std::invalid_argument("session: unknown eigensystem id " + id);
}

}  // namespace parithlab
