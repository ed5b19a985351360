#include "parithlab/heckeop.hpp"

#include <numeric>
#include <stdexcept>

#include "parithlab/cache.hpp"

namespace parithlab {

std::string HeckeLabel::name() const {
  switch (kind) {
    case Kind::Tl: return "T" + std::to_string(ell);
    case Kind::Sl: return "S" + std::to_string(ell);
    case Kind::Diamond: return "D" + std::to_string(ell);
    case Kind::Tp: return "Tp";
    case Kind::Sp: return "Sp";
  }
  return "?";
}

std::vector<IMat> heilbronn_merel(long long n) {
  std::vector<IMat> out;
  for (long long a = 1; a <= n; ++a) {
    long long q = n / a;
    if (q * a == n) {
      long long d = q;
      for (long long b = 0; b < a; ++b) out.push_back(IMat{a, b, 0, d});
      for (long long c = 1; c < d; ++c) out.push_back(IMat{a, 0, c, d});
    }
    for (long long d = q + 1; d <= n; ++d) {
      long long bc = a * d - n;
      for (long long c = bc / a + 1; c < d; ++c)
        if (bc % c == 0) out.push_back(IMat{a, bc / c, c, d});
    }
  }
  return out;
}

MatrixFq symbol_operator(const HomologySpace& space,
                         const std::vector<IMat>& mats, bool allow_drop) {
  const Fq& F = space.F;
  const int r = space.weight.r;
  MatrixFq out(F, space.dim, space.dim);
#pragma omp parallel for schedule(dynamic)
  for (int b = 0; b < space.dim; ++b) {
    auto [sym, mono] = space.gen_decompose(space.free_gens[b]);
    SymVector q = SymVector::zero(F, r);
    q.coeffs[mono] = F.one();
    std::vector<FqElem> col(space.dim, F.zero());
    for (const IMat& m : mats) {
      auto dst = space.table.apply(sym, m);
      if (!dst) {
        if (!allow_drop)
          throw std::logic_error("symbol_operator: unexpected dropped symbol");
        continue;
      }
      space.accumulate(col, *dst, coeff_apply(F, q, m), F.one());
    }
    for (int i = 0; i < space.dim; ++i) out.set(i, b, col[i]);
  }
  return out;
}

MatrixFq diamond_action(const HomologySpace& space, std::uint32_t u) {
  // <u> is induced by left multiplication with a lift of diag(u, u^{-1})
  // mod N that is trivial mod p: the symbol's pair scales by u^{-1}, its
  // P^1(F_p) part and the coefficient are untouched.  Left multiplication
  // commutes with the relations, so this is exact on generators.  This
  // orientation is the one under which the degeneracy/transfer composites
  // at p come out as T and S^{-1}T.
  const Fq& F = space.F;
  const SymbolTable& t = space.table;
  const std::uint32_t N = space.level.N;
  if (std::gcd(u % N, N) != 1)
    throw std::invalid_argument("diamond: unit not coprime to N");
  std::uint32_t uinv = 1;
  while (static_cast<std::uint64_t>(uinv) * (u % N) % N != 1) ++uinv;
  u = uinv;
  const int r = space.weight.r;
  MatrixFq out(F, space.dim, space.dim);
  for (int b = 0; b < space.dim; ++b) {
    auto [sym, mono] = space.gen_decompose(space.free_gens[b]);
    int pair_idx = sym / t.p1count();
    int z = sym % t.p1count();
    auto [c, d] = t.pairs[pair_idx];
    size_t uc = static_cast<size_t>(c) * u % N;
    size_t ud = static_cast<size_t>(d) * u % N;
    int pi = t.pair_index[uc * N + ud];
    if (pi < 0) throw std::logic_error("diamond: symbol degenerated");
    SymVector q = SymVector::zero(F, r);
    q.coeffs[mono] = F.one();
    std::vector<FqElem> col(space.dim, F.zero());
    space.accumulate(col, t.index(pi, z), q, F.one());
    for (int i = 0; i < space.dim; ++i) out.set(i, b, col[i]);
  }
  return out;
}

namespace {

// a^e in F for a nonnegative normalized exponent mod p-1.
FqElem unit_power(const Fq& F, std::uint32_t base, long long e) {
  long long m = F.p() - 1;
  e = ((e % m) + m) % m;
  return F.pow(F.from_int(base), static_cast<std::uint64_t>(e));
}

}  // namespace

MatrixFq hecke(const HomologySpace& space, const HeckeLabel& label) {
  auto it = space.hecke_cache.find(label.name());
  if (it != space.hecke_cache.end()) return it->second;

  if (auto cached = disk_cache_load(space, label.name())) {
    space.hecke_cache.emplace(label.name(), *cached);
    return *cached;
  }

  const Fq& F = space.F;
  const std::uint32_t p = F.p();
  const std::uint32_t N = space.level.N;
  const int r = space.weight.r;
  const int a = space.weight.a;
  MatrixFq m;
  switch (label.kind) {
    case HeckeLabel::Kind::Tl: {
      if (label.ell == p || label.ell % N == 0 || std::gcd(label.ell, N) != 1)
        throw std::invalid_argument("T_ell requires ell coprime to p*N");
      m = symbol_operator(space, heilbronn_merel(label.ell), false)
              .scaled(unit_power(F, label.ell, a));
      break;
    }
    case HeckeLabel::Kind::Sl: {
      if (label.ell == p || std::gcd(label.ell, N) != 1)
        throw std::invalid_argument("S_ell requires ell coprime to p*N");
      m = diamond_action(space, label.ell % N)
              .scaled(unit_power(F, label.ell, r + 2LL * a));
      break;
    }
    case HeckeLabel::Kind::Diamond:
      m = diamond_action(space, label.ell);
      break;
    case HeckeLabel::Kind::Tp: {
      m = symbol_operator(space, heilbronn_merel(p), space.level.with_p);
      if (!space.level.with_p) {
        // The operator T at p of the degeneracy/transfer identities is the
        // classical Heilbronn sum twisted by the diamond operator at p.
        m = matmul_parallel(diamond_action(space, p % N), m);
      }
      break;
    }
    case HeckeLabel::Kind::Sp:
      m = diamond_action(space, p % N);
      break;
  }
  space.hecke_cache.emplace(label.name(), m);
  disk_cache_store(space, label.name(), m);
  return m;
}

}  // namespace parithlab
