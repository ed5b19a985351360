#include "parithlab/manin.hpp"

#include <cassert>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace parithlab {

namespace {

long long mod_ll(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

// Extended gcd: returns g and x, y with a*x + b*y = g.
long long egcd_ll(long long a, long long b, long long& x, long long& y) {
  if (b == 0) {
    x = (a < 0) ? -1 : 1;
    y = 0;
    return a < 0 ? -a : a;
  }
  long long x1, y1;
  long long g = egcd_ll(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

long long inv_mod(long long a, long long m) {
  long long x, y;
  long long g = egcd_ll(mod_ll(a, m), m, x, y);
  if (g != 1) throw std::logic_error("inv_mod: not invertible");
  return mod_ll(x, m);
}

// x ≡ a (mod m), x ≡ b (mod n) with gcd(m, n) = 1.
long long crt_ll(long long a, long long m, long long b, long long n) {
  long long t = mod_ll((b - a) % n, n);
  long long x = a + m * ((t * inv_mod(m % n, n)) % n);
  return mod_ll(x, m * n);
}

std::vector<long long> prime_divisors(long long n) {
  std::vector<long long> out;
  for (long long q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

long long euler_phi(long long n) {
  long long r = n;
  for (long long q : prime_divisors(n)) r = r / q * (q - 1);
  return r;
}

// Coprime integer lift of a residue pair (c, d) mod M with gcd(c, d, M) = 1.
std::pair<long long, long long> coprime_lift(long long c, long long d,
                                             long long M) {
  c = mod_ll(c, M);
  d = mod_ll(d, M);
  long long cc = (c == 0) ? M : c;
  for (long long t = 0; t <= 4 * cc + 8; ++t) {
    long long dd = d + t * M;
    if (std::gcd(cc, dd) == 1) return {cc, dd};
  }
  throw std::logic_error("coprime_lift: no lift found");
}

// SL2(Z) matrix with the given coprime bottom row.
IMat complete_row(long long c, long long d) {
  long long x, y;
  long long g = egcd_ll(d, c, x, y);
  if (g != 1) throw std::logic_error("complete_row: row not coprime");
  // x*d + y*c = 1, so the matrix [[x, -y], [c, d]] has determinant 1.
  return IMat{x, -y, c, d};
}

}  // namespace

IMat lift_sl2z(long long a, long long b, long long c, long long d,
               long long M) {
  if (mod_ll(a * d - b * c, M) != 1)
    throw std::invalid_argument("lift_sl2z: determinant not 1 mod M");
  auto [cc, dd] = coprime_lift(c, d, M);
  long long x2, y2;
  egcd_ll(cc, dd, x2, y2);  // x2*cc + y2*dd = 1
  long long x, y;
  egcd_ll(dd, cc, x, y);  // x*dd + y*cc = 1
  y = -y;                 // now x*dd - y*cc = 1; top row candidate (x, y)
  long long s =
      mod_ll(x2 % M * mod_ll(a - x, M) % M + y2 % M * mod_ll(b - y, M) % M, M);
  IMat out{x + s * cc, y + s * dd, cc, dd};
  if (out.det() != 1 || mod_ll(out.a - a, M) != 0 || mod_ll(out.b - b, M) != 0)
    throw std::logic_error("lift_sl2z: lift failed");
  return out;
}

SymVector coeff_apply(const Fq& F, const SymVector& q, const IMat& m) {
  // Q(m00 x + m01 y, m10 x + m11 y) is the natural substitution by the
  // columns of the transpose.
  GL2Elt g = GL2Elt::from_ints(F.p(), m.a, m.c, m.b, m.d);
  return act_sym(F, g, q, ActMode::NaturalOnSym);
}

std::optional<int> SymbolTable::from_row(long long c, long long d) const {
  long long cN = mod_ll(c, N), dN = mod_ll(d, N);
  int pi = pair_index[static_cast<size_t>(cN) * N + dN];
  if (pi < 0) return std::nullopt;
  if (!with_p) return index(pi, 0);
  long long cp = mod_ll(c, p), dp = mod_ll(d, p);
  if (cp == 0 && dp == 0) return std::nullopt;
  int z = p1_label(p, static_cast<std::uint32_t>(cp),
                   static_cast<std::uint32_t>(dp));
  return index(pi, z);
}

std::optional<int> SymbolTable::apply(int sym, const IMat& m) const {
  const IMat& L = lifts[sym];
  long long c = L.c * m.a + L.d * m.c;
  long long d = L.c * m.b + L.d * m.d;
  return from_row(c, d);
}

SymbolTable build_symbol_table(std::uint32_t N, std::uint32_t p, bool with_p) {
  SymbolTable t;
  t.N = N;
  t.p = p;
  t.with_p = with_p;
  t.pair_index.assign(static_cast<size_t>(N) * N, -1);
  for (std::uint32_t c = 0; c < N; ++c)
    for (std::uint32_t d = 0; d < N; ++d)
      if (std::gcd(std::gcd(c, d), N) == 1) {
        t.pair_index[static_cast<size_t>(c) * N + d] =
            static_cast<int>(t.pairs.size());
        t.pairs.emplace_back(c, d);
      }
  long long M = with_p ? static_cast<long long>(N) * p : N;
  t.lifts.resize(t.size());
  for (size_t pi = 0; pi < t.pairs.size(); ++pi) {
    auto [c, d] = t.pairs[pi];
    for (int z = 0; z < t.p1count(); ++z) {
      long long rc = c, rd = d;
      if (with_p) {
        long long zc = (z == static_cast<int>(p)) ? 1 : z;
        long long zd = (z == static_cast<int>(p)) ? 0 : 1;
        rc = crt_ll(c, N, zc, p);
        rd = crt_ll(d, N, zd, p);
      }
      auto [cc, dd] = coprime_lift(rc, rd, M);
      t.lifts[t.index(static_cast<int>(pi), z)] = complete_row(cc, dd);
    }
  }
  return t;
}

CuspClasses cusp_classes(const Level& level, std::uint32_t p, int r) {
  long long M = level.with_p ? static_cast<long long>(level.N) * p : level.N;
  CuspClasses cc;
  cc.M = M;
  cc.cls.assign(static_cast<size_t>(M) * M, -1);
  cc.sgn.assign(static_cast<size_t>(M) * M, 1);

  // Signed moves: generators of the image of the group mod M, plus -I with
  // sign (-1)^r.
  std::vector<std::pair<IMat, int>> moves;
  auto add_gen = [&](const IMat& g) {
    moves.emplace_back(g, 1);
    moves.emplace_back(g.adjugate(), 1);  // inverse for det 1
  };
  if (!level.with_p) {
    add_gen(IMat{1, 1, 0, 1});
  } else {
    long long N = level.N;
    auto crt_mat = [&](const IMat& mN, const IMat& mp) {
      return IMat{crt_ll(mN.a, N, mp.a, p), crt_ll(mN.b, N, mp.b, p),
                  crt_ll(mN.c, N, mp.c, p), crt_ll(mN.d, N, mp.d, p)};
    };
    IMat id{1, 0, 0, 1};
    add_gen(crt_mat(IMat{1, 1, 0, 1}, id));
    add_gen(crt_mat(id, IMat{1, 1, 0, 1}));
    // Torus generator of the Borel mod p.
    long long u = 2;
    while (u < p) {
      long long pow = u % p;
      int ord = 1;
      while (pow != 1) pow = pow * u % p, ++ord;
      if (ord == static_cast<int>(p) - 1) break;
      ++u;
    }
    add_gen(crt_mat(id, IMat{u, 0, 0, inv_mod(u, p)}));
  }
  moves.emplace_back(IMat{-1, 0, 0, -1}, (r % 2 == 0) ? 1 : -1);

  std::vector<char> alive;
  for (long long a = 0; a < M; ++a)
    for (long long c = 0; c < M; ++c) {
      if (std::gcd(std::gcd(a, c), M) != 1) continue;
      size_t root = static_cast<size_t>(a) * M + c;
      if (cc.cls[root] != -1) continue;
      int id = cc.nclasses++;
      alive.push_back(1);
      cc.cls[root] = id;
      cc.sgn[root] = 1;
      std::queue<std::pair<long long, long long>> q;
      q.emplace(a, c);
      while (!q.empty()) {
        auto [va, vc] = q.front();
        q.pop();
        int s = cc.sgn[static_cast<size_t>(va) * M + vc];
        for (const auto& [m, msgn] : moves) {
          long long wa = mod_ll(m.a * va + m.b * vc, M);
          long long wc = mod_ll(m.c * va + m.d * vc, M);
          size_t wi = static_cast<size_t>(wa) * M + wc;
          int ws = s * msgn;
          if (cc.cls[wi] == -1) {
            cc.cls[wi] = id;
            cc.sgn[wi] = ws;
            q.emplace(wa, wc);
          } else if (cc.sgn[wi] != ws) {
            alive[id] = 0;
          }
        }
      }
    }
  cc.row.assign(cc.nclasses, -1);
  for (int i = 0; i < cc.nclasses; ++i)
    if (alive[i]) cc.row[i] = cc.live++;
  return cc;
}

std::optional<std::pair<int, int>> CuspClasses::lookup(long long a,
                                                       long long c) const {
  size_t i = static_cast<size_t>(mod_ll(a, M)) * M + mod_ll(c, M);
  int id = cls[i];
  if (id < 0) throw std::logic_error("cusp lookup: vector not primitive");
  if (row[id] < 0) return std::nullopt;
  return std::make_pair(row[id], sgn[i]);
}

void HomologySpace::accumulate(std::vector<FqElem>& out, int sym,
                               const SymVector& q, FqElem scale) const {
  for (int i = 0; i <= weight.r; ++i) {
    FqElem c = F.mul(scale, q.coeffs[i]);
    if (F.is_zero(c)) continue;
    const FqElem* row = proj.row(gen_index(sym, i));
    for (int b = 0; b < dim; ++b)
      out[b] = F.add(out[b], F.mul(c, row[b]));
  }
}

HomologySpace build_space(const Level& level, const Weight& weight,
                          const Fq& F) {
  const std::uint32_t p = F.p();
  if (level.N < 3) throw std::invalid_argument("level: N >= 3 required");
  if (std::gcd(level.N, p) != 1)
    throw std::invalid_argument("level: N must be coprime to p");
  if (weight.r < 0 || weight.r >= static_cast<int>(p))
    throw std::invalid_argument("weight: r out of range");
  if (level.with_p && weight.r != 0)
    throw std::invalid_argument("weight: r = 0 required with Gamma_0(p) part");

  HomologySpace sp;
  sp.level = level;
  sp.weight = weight;
  sp.F = F;
  sp.table = build_symbol_table(level.N, p, level.with_p);
  const int r = weight.r;
  const int nsym = sp.table.size();
  sp.ngens = nsym * (r + 1);

  const IMat sigma{0, -1, 1, 0};
  const IMat tau{0, -1, 1, -1};
  const IMat tau2 = tau * tau;

  MatrixFq R(F, 2 * sp.ngens, sp.ngens);
  auto add_terms = [&](int rrow, int sym, const IMat& m, const SymVector& q) {
    auto dst = sp.table.apply(sym, m);
    if (!dst) throw std::logic_error("relation action dropped a symbol");
    SymVector qm = coeff_apply(F, q, m);
    for (int j = 0; j <= r; ++j) {
      int g = *dst * (r + 1) + j;
      R.set(rrow, g, F.add(R.at(rrow, g), qm.coeffs[j]));
    }
  };
  for (int s = 0; s < nsym; ++s)
    for (int i = 0; i <= r; ++i) {
      SymVector q = SymVector::zero(F, r);
      q.coeffs[i] = F.one();
      int g = s * (r + 1) + i;
      R.set(2 * g, g, F.add(R.at(2 * g, g), F.one()));
      add_terms(2 * g, s, sigma, q);
      R.set(2 * g + 1, g, F.add(R.at(2 * g + 1, g), F.one()));
      add_terms(2 * g + 1, s, tau, q);
      add_terms(2 * g + 1, s, tau2, q);
    }

  EchelonResult er = echelon(R);
  std::vector<char> is_pivot(sp.ngens, 0);
  for (int c : er.pivot_cols) is_pivot[c] = 1;
  for (int g = 0; g < sp.ngens; ++g)
    if (!is_pivot[g]) sp.free_gens.push_back(g);
  sp.dim = static_cast<int>(sp.free_gens.size());

  sp.proj = MatrixFq(F, sp.ngens, sp.dim);
  for (int b = 0; b < sp.dim; ++b) sp.proj.set(sp.free_gens[b], b, F.one());
  for (int i = 0; i < er.rank; ++i) {
    int g = er.pivot_cols[i];
    for (int b = 0; b < sp.dim; ++b)
      sp.proj.set(g, b, F.neg(er.rref.at(i, sp.free_gens[b])));
  }

  // Boundary on generators: the symbol with lift g = [[a,b],[c,d]] and
  // coefficient Q contributes Q(1,0) at the cusp (a, c) minus Q(0,1) at the
  // cusp (b, d).
  sp.cusps = cusp_classes(level, p, r);
  MatrixFq dgen(F, sp.cusps.live, sp.ngens);
  for (int s = 0; s < nsym; ++s) {
    const IMat& L = sp.table.lift(s);
    auto c1 = sp.cusps.lookup(L.a, L.c);
    auto c2 = sp.cusps.lookup(L.b, L.d);
    if (c1) {
      int g = s * (r + 1) + 0;  // Q(1,0) = 1 only for the x^r monomial
      FqElem v = (c1->second == 1) ? F.one() : F.neg(F.one());
      dgen.set(c1->first, g, F.add(dgen.at(c1->first, g), v));
    }
    if (c2) {
      int g = s * (r + 1) + r;  // Q(0,1) = 1 only for the y^r monomial
      FqElem v = (c2->second == 1) ? F.neg(F.one()) : F.one();
      dgen.set(c2->first, g, F.add(dgen.at(c2->first, g), v));
    }
  }
  // The boundary must kill every relation, so it descends to the quotient.
  if (!matmul_serial(dgen, R.transpose()).is_zero())
    throw std::logic_error("boundary map does not kill the relations");

  sp.boundary = MatrixFq(F, sp.cusps.live, sp.dim);
  for (int b = 0; b < sp.dim; ++b)
    for (int i = 0; i < sp.cusps.live; ++i)
      sp.boundary.set(i, b, dgen.at(i, sp.free_gens[b]));
  sp.cuspidal = echelon(sp.boundary).kernel;

  if (r == 0) {
    long long g = genus_formula(level, p);
    long long c = cusp_count_formula(level, p);
    if (sp.cusps.live != sp.cusps.nclasses || sp.cusps.live != c ||
        sp.dim != 2 * g + c - 1 ||
        rank_of(sp.boundary) != sp.cusps.live - 1)
      throw std::runtime_error(
          "presentation dimension mismatch against genus/cusp formulas");
  }
  return sp;
}

long long gamma1_index(std::uint32_t N) {
  long long mu = static_cast<long long>(N) * N;
  for (long long q : prime_divisors(N)) mu = mu / (q * q) * (q * q - 1);
  return mu;
}

long long cusp_count_formula(const Level& level, std::uint32_t) {
  long long N = level.N;
  long long c;
  if (N == 4) {
    c = 3;
  } else {
    long long s = 0;
    for (long long d = 1; d <= N; ++d)
      if (N % d == 0) s += euler_phi(d) * euler_phi(N / d);
    c = s / 2;
  }
  return level.with_p ? 2 * c : c;
}

long long genus_formula(const Level& level, std::uint32_t p) {
  long long mu_bar = gamma1_index(level.N) / 2;
  if (level.with_p) mu_bar *= (p + 1);
  long long eps3 = 0;
  if (level.N == 3) eps3 = level.with_p ? (p % 3 == 1 ? 2 : 0) : 1;
  long long eps_inf = cusp_count_formula(level, p);
  long long twelve_g = 12 + mu_bar - 4 * eps3 - 6 * eps_inf;
  if (twelve_g % 12 != 0)
    throw std::logic_error("genus formula: non-integral result");
  return twelve_g / 12;
}

}  // namespace parithlab
