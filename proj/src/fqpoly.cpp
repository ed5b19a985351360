#include "parithlab/fqpoly.hpp"

#include <algorithm>

namespace parithlab {
namespace poly {
namespace {

// Small deterministic PRNG for equal-degree splitting.
struct SplitMix {
  std::uint64_t s;
  std::uint64_t next() {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

std::uint64_t field_size(const Fq& F) {
  std::uint64_t q = 1;
  for (int i = 0; i < F.degree(); ++i) q *= F.p();
  return q;
}

}  // namespace

FqPoly trim(FqPoly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

int deg(const FqPoly& f) { return static_cast<int>(f.size()) - 1; }

bool is_zero(const FqPoly& f) { return f.empty(); }

FqPoly constant(const Fq& F, FqElem c) {
  (void)F;
  if (c == 0) return {};
  return {c};
}

FqPoly monomial(const Fq& F, int n) {
  FqPoly f(n + 1, F.zero());
  f[n] = F.one();
  return f;
}

FqPoly add(const Fq& F, const FqPoly& a, const FqPoly& b) {
  FqPoly r(std::max(a.size(), b.size()), F.zero());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
  return trim(std::move(r));
}

FqPoly sub(const Fq& F, const FqPoly& a, const FqPoly& b) {
  FqPoly r(std::max(a.size(), b.size()), F.zero());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
  return trim(std::move(r));
}

FqPoly scale(const Fq& F, const FqPoly& a, FqElem c) {
  if (c == 0) return {};
  FqPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
  return trim(std::move(r));
}

FqPoly mul(const Fq& F, const FqPoly& a, const FqPoly& b) {
  if (a.empty() || b.empty()) return {};
  FqPoly r(a.size() + b.size() - 1, F.zero());
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  return trim(std::move(r));
}

std::pair<FqPoly, FqPoly> divmod(const Fq& F, const FqPoly& a, const FqPoly& b) {
  if (b.empty()) throw std::domain_error("poly::divmod by zero");
  FqPoly rem = a;
  int db = deg(b);
  if (deg(a) < db) return {{}, a};
  FqPoly quo(deg(a) - db + 1, F.zero());
  FqElem lead_inv = F.inv(b.back());
  for (int i = deg(a); i >= db; --i) {
    if (rem.size() <= static_cast<size_t>(i) || rem[i] == 0) continue;
    FqElem c = F.mul(rem[i], lead_inv);
    quo[i - db] = c;
    for (int j = 0; j <= db; ++j)
      rem[i - db + j] = F.sub(rem[i - db + j], F.mul(c, b[j]));
  }
  return {trim(std::move(quo)), trim(std::move(rem))};
}

FqPoly mod(const Fq& F, const FqPoly& a, const FqPoly& b) {
  return divmod(F, a, b).second;
}

FqPoly monic(const Fq& F, const FqPoly& a) {
  if (a.empty()) return a;
  return scale(F, a, F.inv(a.back()));
}

FqPoly gcd(const Fq& F, FqPoly a, FqPoly b) {
  while (!b.empty()) {
    FqPoly r = mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

FqPoly derivative(const Fq& F, const FqPoly& a) {
  if (a.size() <= 1) return {};
  FqPoly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i)
    r[i - 1] = F.mul(a[i], F.from_int(static_cast<long long>(i)));
  return trim(std::move(r));
}

FqPoly powmod(const Fq& F, const FqPoly& base, std::uint64_t e, const FqPoly& m) {
  FqPoly r = constant(F, F.one());
  FqPoly b = mod(F, base, m);
  while (e) {
    if (e & 1) r = mod(F, mul(F, r, b), m);
    b = mod(F, mul(F, b, b), m);
    e >>= 1;
  }
  return r;
}

FqElem eval(const Fq& F, const FqPoly& a, FqElem x) {
  FqElem r = F.zero();
  for (size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
  return r;
}

bool is_irreducible(const Fq& F, const FqPoly& f) {
  int n = deg(f);
  if (n <= 0) return false;
  if (n == 1) return true;
  std::uint64_t q = field_size(F);
  FqPoly x = monomial(F, 1);
  // x^{q^n} == x mod f, and gcd(x^{q^{n/t}} - x, f) == 1 for prime t | n.
  std::vector<FqPoly> powers(n + 1);  // powers[i] = x^{q^i} mod f
  powers[0] = mod(F, x, f);
  for (int i = 1; i <= n; ++i) powers[i] = powmod(F, powers[i - 1], q, f);
  if (!sub(F, powers[n], powers[0]).empty()) return false;
  for (int t = 2; t <= n; ++t) {
    if (n % t != 0) continue;
    bool prime = true;
    for (int u = 2; u * u <= t; ++u)
      if (t % u == 0) prime = false;
    if (!prime) continue;
    FqPoly g = gcd(F, sub(F, powers[n / t], powers[0]), f);
    if (deg(g) != 0) return false;
  }
  return true;
}

namespace {

// Equal-degree factorization of a squarefree product of degree-d irreducibles.
void edf(const Fq& F, const FqPoly& f, int d, SplitMix& rng,
         std::vector<FqPoly>& out) {
  int n = deg(f);
  if (n == d) {
    out.push_back(monic(F, f));
    return;
  }
  std::uint64_t q = field_size(F);
  // (q^d - 1) / 2, q odd.
  std::uint64_t e = 1;
  for (int i = 0; i < d; ++i) e *= q;
  e = (e - 1) / 2;
  for (;;) {
    FqPoly a(n, F.zero());
    for (int i = 0; i < n; ++i) a[i] = F.decode(rng.next() % q);
    a = trim(std::move(a));
    if (deg(a) < 1) continue;
    FqPoly g = gcd(F, a, f);
    if (deg(g) > 0 && deg(g) < n) {
      edf(F, g, d, rng, out);
      edf(F, divmod(F, f, g).first, d, rng, out);
      return;
    }
    FqPoly b = powmod(F, a, e, f);
    b = sub(F, b, constant(F, F.one()));
    g = gcd(F, b, f);
    if (deg(g) > 0 && deg(g) < n) {
      edf(F, g, d, rng, out);
      edf(F, divmod(F, f, g).first, d, rng, out);
      return;
    }
  }
}

void factor_squarefree(const Fq& F, FqPoly f, int mult,
                       std::vector<std::pair<FqPoly, int>>& out) {
  // Distinct-degree then equal-degree splitting.
  std::uint64_t q = field_size(F);
  SplitMix rng{0x5eedULL ^ (q * 0x1000193ull) ^ static_cast<std::uint64_t>(deg(f))};
  FqPoly x = monomial(F, 1);
  FqPoly h = mod(F, x, f);
  int d = 0;
  while (deg(f) > 0) {
    ++d;
    if (2 * d > deg(f)) {
      out.emplace_back(monic(F, f), mult);
      return;
    }
    h = powmod(F, h, q, f);
    FqPoly g = gcd(F, sub(F, h, x), f);
    if (deg(g) > 0) {
      std::vector<FqPoly> parts;
      edf(F, g, d, rng, parts);
      for (auto& part : parts) out.emplace_back(part, mult);
      f = divmod(F, f, g).first;
      h = mod(F, h, f);
    }
  }
}

}  // namespace

std::vector<std::pair<FqPoly, int>> factor(const Fq& F, const FqPoly& f) {
  std::vector<std::pair<FqPoly, int>> out;
  FqPoly g = monic(F, f);
  if (deg(g) <= 0) return out;
  // Squarefree decomposition (Yun, adapted for char p).
  int mult = 1;
  while (deg(g) > 0) {
    FqPoly gp = derivative(F, g);
    if (is_zero(gp)) {
      // g is a p-th power: g(x) = h(x^p) and coefficients are q-th... for
      // F_{p^d}, the p-th root of a coefficient is c^{p^{d*?}}; use c^{q/p}
      // (Frobenius inverse composed appropriately): c ^ (q/p * ... ) —
      // since c -> c^p is the Frobenius, its inverse is c -> c^{q/p}.
      std::uint64_t q = field_size(F);
      std::uint64_t e = q / F.p();
      FqPoly h((deg(g)) / F.p() + 1, F.zero());
      for (size_t i = 0; i < h.size(); ++i) h[i] = F.pow(g[i * F.p()], e == 0 ? 1 : e);
      g = trim(std::move(h));
      mult *= F.p();
      continue;
    }
    FqPoly c = gcd(F, g, gp);
    FqPoly w = divmod(F, g, c).first;  // product of factors with mult not div by p
    int i = 1;
    while (deg(w) > 0) {
      FqPoly y = gcd(F, w, c);
      FqPoly fi = divmod(F, w, y).first;  // factors of multiplicity exactly i
      if (deg(fi) > 0) factor_squarefree(F, fi, mult * i, out);
      w = std::move(y);
      c = divmod(F, c, w).first;
      ++i;
    }
    g = std::move(c);
    if (deg(g) > 0 && is_zero(derivative(F, g))) continue;
    if (deg(g) > 0) {
      // Remaining part has p-th-power multiplicities; recurse.
      auto rest = factor(F, g);
      for (auto& [fac, m] : rest) out.emplace_back(fac, m * mult);
      break;
    }
  }
  std::sort(out.begin(), out.end());
  // Merge equal factors.
  std::vector<std::pair<FqPoly, int>> merged;
  for (auto& [fac, m] : out) {
    if (!merged.empty() && merged.back().first == fac)
      merged.back().second += m;
    else
      merged.emplace_back(fac, m);
  }
  return merged;
}

std::vector<std::pair<FqElem, int>> roots(const Fq& F, const FqPoly& f) {
  std::vector<std::pair<FqElem, int>> out;
  for (auto& [fac, m] : factor(F, f))
    if (deg(fac) == 1) out.emplace_back(F.neg(fac[0]), m);
  return out;
}

}  // namespace poly
}  // namespace parithlab
