#include "parithlab/levelmaps.hpp"

#include <numeric>
#include <stdexcept>

namespace parithlab {

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

SymVector const_one(const Fq& F) {
  SymVector v = SymVector::zero(F, 0);
  v.coeffs[0] = F.one();
  return v;
}

// P^1(F_p) row-class label moved by right multiplication.
P1Point label_apply(std::uint32_t p, P1Point z, const IMat& m) {
  long long x = (z == static_cast<int>(p)) ? 1 : z;
  long long y = (z == static_cast<int>(p)) ? 0 : 1;
  long long c = ((x * m.a + y * m.c) % p + p) % p;
  long long d = ((x * m.b + y * m.d) % p + p) % p;
  return p1_label(p, static_cast<std::uint32_t>(c),
                  static_cast<std::uint32_t>(d));
}

}  // namespace

Rat rat(long long num, long long den) {
  if (den == 0) return Rat{1, 0};
  if (num == 0) return Rat{0, 1};
  long long g = std::gcd(num < 0 ? -num : num, den < 0 ? -den : den);
  num /= g;
  den /= g;
  if (den < 0) num = -num, den = -den;
  return Rat{num, den};
}

std::vector<IMat> path_from_infinity(const Rat& x) {
  if (x.den == 0) return {};
  long long num = x.num, den = x.den;
  std::vector<long long> digits;
  while (den != 0) {
    long long a = floor_div(num, den);
    digits.push_back(a);
    long long rem = num - a * den;
    num = den;
    den = rem;
  }
  std::vector<IMat> out;
  long long p2 = 0, p1 = 1, q2 = 1, q1 = 0;  // convergents p_{k-2}, p_{k-1}
  long long s = -1;                          // (-1)^{k-1}
  for (long long a : digits) {
    long long pk = a * p1 + p2, qk = a * q1 + q2;
    out.push_back(IMat{pk, s * p1, qk, s * q1});
    p2 = p1; p1 = pk; q2 = q1; q1 = qk;
    s = -s;
  }
  return out;
}

std::vector<FqElem> symbols_of_path(const HomologySpace& space,
                                    const Rat& from, const Rat& to) {
  if (space.weight.r != 0)
    throw std::invalid_argument("symbols_of_path: trivial weight required");
  const Fq& F = space.F;
  std::vector<FqElem> out(space.dim, F.zero());
  SymVector one = const_one(F);
  auto add = [&](const Rat& x, FqElem sign) {
    for (const IMat& m : path_from_infinity(x)) {
      if (m.det() != 1) throw std::logic_error("path matrix not unimodular");
      auto sym = space.table.from_row(m.c, m.d);
      if (!sym) throw std::logic_error("path symbol degenerated");
      space.accumulate(out, *sym, one, sign);
    }
  };
  add(to, F.one());
  add(from, F.neg(F.one()));
  return out;
}

namespace {

void check_level_pair(const HomologySpace& with_p_space,
                      const HomologySpace& plain_space) {
  if (!with_p_space.level.with_p || plain_space.level.with_p ||
      with_p_space.level.N != plain_space.level.N ||
      with_p_space.weight.r != 0 || plain_space.weight.r != 0)
    throw std::invalid_argument("degeneracy/transfer: level mismatch");
}

// Lifts in Gamma_1(N) hitting the p+1 row classes mod p.  Cosets of the
// lower-triangular-mod-p subgroup are classified by the bottom row; cosets
// of the upper-triangular-mod-p subgroup by the top row.
std::vector<IMat> p1_coset_lifts(std::uint32_t N, std::uint32_t p,
                                 bool top_row) {
  long long M = static_cast<long long>(N) * p;
  auto crt = [&](long long xN, long long xp) {
    long long x = xN;
    while (x % p != ((xp % p + p) % p)) x += N;
    return x % M;
  };
  std::vector<IMat> out;
  for (std::uint32_t z = 0; z <= p; ++z) {
    IMat mp;
    if (top_row)
      mp = (z < p) ? IMat{static_cast<long long>(z), 1, -1, 0}
                   : IMat{1, 0, 0, 1};
    else
      mp = (z < p) ? IMat{1, 0, static_cast<long long>(z), 1}
                   : IMat{0, -1, 1, 0};
    out.push_back(lift_sl2z(crt(1, mp.a), crt(0, mp.b), crt(0, mp.c),
                            crt(1, mp.d), M));
  }
  return out;
}

}  // namespace

MatrixFq degeneracy(const HomologySpace& dst, const HomologySpace& src,
                    DegVariant variant) {
  check_level_pair(src, dst);
  const Fq& F = src.F;
  const long long p = F.p();
  MatrixFq out(F, dst.dim, src.dim);
  SymVector one = const_one(F);
  for (int b = 0; b < src.dim; ++b) {
    int sym = src.free_gens[b];
    const IMat& L = src.table.lift(sym);
    std::vector<FqElem> col(dst.dim, F.zero());
    if (variant == DegVariant::One) {
      auto t = dst.table.from_row(L.c, L.d);
      if (!t) throw std::logic_error("degeneracy: symbol degenerated");
      dst.accumulate(col, *t, one, F.one());
    } else {
      col = symbols_of_path(dst, rat(p * L.b, L.d), rat(p * L.a, L.c));
    }
    for (int i = 0; i < dst.dim; ++i) out.set(i, b, col[i]);
  }
  return out;
}

MatrixFq transfer(const HomologySpace& dst, const HomologySpace& src,
                  DegVariant variant) {
  check_level_pair(dst, src);
  const Fq& F = src.F;
  const long long p = F.p();
  std::vector<IMat> reps =
      p1_coset_lifts(src.level.N, F.p(), variant == DegVariant::P);
  MatrixFq out(F, dst.dim, src.dim);
  SymVector one = const_one(F);
  for (int b = 0; b < src.dim; ++b) {
    const IMat& L = src.table.lift(src.free_gens[b]);
    std::vector<FqElem> col(dst.dim, F.zero());
    for (const IMat& rep : reps) {
      IMat h = rep * L;
      if (variant == DegVariant::One) {
        auto t = dst.table.from_row(h.c, h.d);
        if (!t) throw std::logic_error("transfer: symbol degenerated");
        dst.accumulate(col, *t, one, F.one());
      } else {
        auto part =
            symbols_of_path(dst, rat(h.b, p * h.d), rat(h.a, p * h.c));
        for (int i = 0; i < dst.dim; ++i) col[i] = F.add(col[i], part[i]);
      }
    }
    for (int i = 0; i < dst.dim; ++i) out.set(i, b, col[i]);
  }
  return out;
}

MatrixFq steinberg_intertwiner(const Fq& F) {
  const int p = static_cast<int>(F.p());
  const IMat sigma{0, -1, 1, 0};
  const IMat tau{0, -1, 1, -1};
  // Action matrices on the sum-zero part of Map(P^1, k) in the basis
  // e_i = delta_{z_i} - delta_{z_0} (labels 1..p), and on Sym^{p-1}.
  auto action_v0 = [&](const IMat& u) {
    MatrixFq A(F, p, p);
    for (int i = 1; i <= p; ++i) {
      P1Point wi = label_apply(F.p(), i, u);
      P1Point w0 = label_apply(F.p(), 0, u);
      if (wi != 0) A.set(wi - 1, i - 1, F.add(A.at(wi - 1, i - 1), F.one()));
      if (w0 != 0)
        A.set(w0 - 1, i - 1, F.sub(A.at(w0 - 1, i - 1), F.one()));
    }
    return A;
  };
  auto action_sym = [&](const IMat& u) {
    MatrixFq B(F, p, p);
    for (int i = 0; i < p; ++i) {
      SymVector q = SymVector::zero(F, p - 1);
      q.coeffs[i] = F.one();
      SymVector qu = coeff_apply(F, q, u);
      for (int j = 0; j < p; ++j) B.set(j, i, qu.coeffs[j]);
    }
    return B;
  };
  // Solve Phi * A_u = B_u * Phi for u in {sigma, tau}; the solution space is
  // one-dimensional (both sides are the Steinberg module).
  MatrixFq K(F, 2 * p * p, p * p);
  int row = 0;
  for (const IMat& u : {sigma, tau}) {
    MatrixFq A = action_v0(u), B = action_sym(u);
    for (int m = 0; m < p; ++m)
      for (int j = 0; j < p; ++j, ++row) {
        for (int n = 0; n < p; ++n)
          K.set(row, m * p + n, F.add(K.at(row, m * p + n), A.at(n, j)));
        for (int k = 0; k < p; ++k)
          K.set(row, k * p + j, F.sub(K.at(row, k * p + j), B.at(m, k)));
      }
  }
  EchelonResult er = echelon(K);
  if (er.kernel.cols() != 1)
    throw std::logic_error("steinberg_intertwiner: solution not unique");
  MatrixFq phi(F, p, p);
  for (int m = 0; m < p; ++m)
    for (int n = 0; n < p; ++n) phi.set(m, n, er.kernel.at(m * p + n, 0));
  if (rank_of(phi) != p)
    throw std::logic_error("steinberg_intertwiner: singular solution");
  return phi;
}

ShapiroMap shapiro(const HomologySpace& space_np,
                   const HomologySpace& space_triv,
                   const HomologySpace& space_sym) {
  const Fq& F = space_np.F;
  const int p = static_cast<int>(F.p());
  if (!space_np.level.with_p || space_triv.level.with_p ||
      space_sym.level.with_p || space_np.level.N != space_triv.level.N ||
      space_np.level.N != space_sym.level.N || space_triv.weight.r != 0 ||
      space_sym.weight.r != p - 1)
    throw std::invalid_argument("shapiro: space mismatch");

  MatrixFq phi = steinberg_intertwiner(F);
  const int dtriv = space_triv.dim, dsym = space_sym.dim;
  const int ngens = space_np.ngens;
  MatrixFq G(F, dtriv + dsym, ngens);
  SymVector one = const_one(F);
  for (int s = 0; s < ngens; ++s) {
    int z = s % (p + 1);
    const IMat& L = space_np.table.lift(s);
    auto tpair = space_triv.table.from_row(L.c, L.d);
    auto spair = space_sym.table.from_row(L.c, L.d);
    if (!tpair || !spair) throw std::logic_error("shapiro: bad symbol");
    // Constant part of delta_z is 1 (the p+1 point sum reduces to 1 mod p);
    // the sum-zero part is delta_z - 1.
    std::vector<FqElem> ct(dtriv, F.zero());
    space_triv.accumulate(ct, *tpair, one, F.one());
    std::vector<FqElem> a(p, F.neg(F.one()));
    if (z >= 1) a[z - 1] = F.add(a[z - 1], F.one());
    SymVector q = SymVector::zero(F, p - 1);
    for (int m = 0; m < p; ++m) {
      FqElem acc = F.zero();
      for (int n = 0; n < p; ++n) acc = F.add(acc, F.mul(phi.at(m, n), a[n]));
      q.coeffs[m] = acc;
    }
    std::vector<FqElem> cs(dsym, F.zero());
    space_sym.accumulate(cs, *spair, q, F.one());
    for (int i = 0; i < dtriv; ++i) G.set(i, s, ct[i]);
    for (int i = 0; i < dsym; ++i) G.set(dtriv + i, s, cs[i]);
  }

  ShapiroMap out;
  out.to_triv = MatrixFq(F, dtriv, space_np.dim);
  out.to_sym = MatrixFq(F, dsym, space_np.dim);
  for (int b = 0; b < space_np.dim; ++b) {
    int g = space_np.free_gens[b];
    for (int i = 0; i < dtriv; ++i) out.to_triv.set(i, b, G.at(i, g));
    for (int i = 0; i < dsym; ++i) out.to_sym.set(i, b, G.at(dtriv + i, g));
  }
  // Descent: the generator-level map must factor through the quotient.
  if (!(matmul_parallel(out.full(), space_np.proj.transpose()) == G))
    throw std::logic_error("shapiro: map does not descend");
  if (dtriv + dsym != space_np.dim || rank_of(out.full()) != space_np.dim)
    throw std::logic_error("shapiro: not an isomorphism");
  return out;
}

MatrixFq phi_tilde(const ShapiroMap& sh, const MatrixFq& deg_p,
                   const HomologySpace& target) {
  const Fq& F = deg_p.field();
  const int dtriv = sh.to_triv.rows(), dsym = sh.to_sym.rows();
  MatrixFq inv = inverse(sh.full());
  MatrixFq block(F, inv.rows(), dsym);
  for (int i = 0; i < inv.rows(); ++i)
    for (int j = 0; j < dsym; ++j) block.set(i, j, inv.at(i, dtriv + j));
  MatrixFq out = matmul_parallel(deg_p, block);
  // The image must contain the cuspidal subspace: the cokernel, if any, is
  // carried by boundary (Eisenstein) classes only.
  if (rank_of(hstack(out, target.cuspidal)) != rank_of(out))
    throw std::logic_error("phi_tilde: cuspidal class escapes the image");
  return out;
}

MatrixFq psi_tilde(const ShapiroMap& sh, const MatrixFq& transfer_p) {
  const Fq& F = transfer_p.field();
  const int dtriv = sh.to_triv.rows(), dsym = sh.to_sym.rows();
  MatrixFq prod = matmul_parallel(sh.full(), transfer_p);
  MatrixFq out(F, dsym, dtriv);
  for (int i = 0; i < dsym; ++i)
    for (int j = 0; j < dtriv; ++j)
      out.set(i, j, F.neg(prod.at(dtriv + i, j)));
  if (rank_of(out) != dtriv) throw std::logic_error("psi_tilde: not injective");
  return out;
}

HasseModules hasse_modules(const MatrixFq& psi, const MatrixFq& phi) {
  const Fq& F = psi.field();
  const int dsym = psi.rows();
  HasseModules h;
  h.psi = psi;
  h.phi = phi;
  EchelonResult er = echelon(psi.transpose());
  std::vector<char> is_pivot(dsym, 0);
  for (int c : er.pivot_cols) is_pivot[c] = 1;
  std::vector<int> free_cols;
  for (int j = 0; j < dsym; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  const int du = static_cast<int>(free_cols.size());
  h.piU = MatrixFq(F, du, dsym);
  h.iotaU = MatrixFq(F, dsym, du);
  for (int fi = 0; fi < du; ++fi) {
    h.piU.set(fi, free_cols[fi], F.one());
    h.iotaU.set(free_cols[fi], fi, F.one());
    for (int i = 0; i < er.rank; ++i)
      h.piU.set(fi, er.pivot_cols[i], F.neg(er.rref.at(i, free_cols[fi])));
  }
  if (!matmul_serial(h.piU, psi).is_zero())
    throw std::logic_error("hasse_modules: quotient projection broken");
  h.Vbasis = echelon(phi).kernel;
  return h;
}

MatrixFq induce_on_U(const HasseModules& h, const MatrixFq& op) {
  if (!matmul_serial(h.piU, matmul_serial(op, h.psi)).is_zero())
    throw std::logic_error("induce_on_U: operator not equivariant");
  return matmul_serial(h.piU, matmul_serial(op, h.iotaU));
}

MatrixFq induce_on_V(const HasseModules& h, const MatrixFq& op) {
  return solve(h.Vbasis, matmul_serial(op, h.Vbasis));
}

}  // namespace parithlab
