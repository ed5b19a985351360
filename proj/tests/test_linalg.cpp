#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <numeric>

#include "parithlab/fq.hpp"
#include "parithlab/fqpoly.hpp"
#include "parithlab/matrix.hpp"
#include "parithlab/tor.hpp"

using namespace parithlab;

namespace {

// Deterministic RNG for property tests; fixed seeds throughout.
struct Rng {
  std::uint64_t s;
  std::uint64_t next() {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

MatrixFq random_matrix(const Fq& F, int rows, int cols, Rng& rng) {
  std::uint64_t q = 1;
  for (int i = 0; i < F.degree(); ++i) q *= F.p();
  MatrixFq m(F, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.set(i, j, F.decode(rng.next() % q));
  return m;
}

FqPoly poly_from_ints(const Fq& F, std::initializer_list<long long> cs) {
  FqPoly f;
  for (long long c : cs) f.push_back(F.from_int(c));
  return poly::trim(std::move(f));
}

}  // namespace

TEST_CASE("Fq prime field arithmetic") {
  Fq F(7, 1);
  CHECK(F.add(F.from_int(5), F.from_int(4)) == F.from_int(2));
  CHECK(F.mul(F.from_int(3), F.from_int(5)) == F.from_int(1));
  CHECK(F.inv(F.from_int(3)) == F.from_int(5));
  CHECK(F.neg(F.from_int(2)) == F.from_int(5));
  CHECK(F.pow(F.from_int(3), 6) == F.one());  // Fermat
}

TEST_CASE("Fq extension field axioms") {
  for (int d : {2, 3, 4}) {
    Fq F(5, d);
    std::uint64_t q = 1;
    for (int i = 0; i < d; ++i) q *= 5;
    // Sample a subset of the field; full loops for d = 2.
    std::uint64_t step = d == 2 ? 1 : 97;
    for (std::uint64_t ia = 1; ia < q; ia += step) {
      FqElem a = F.decode(ia);
      CHECK(F.mul(a, F.inv(a)) == F.one());
      CHECK(F.pow(a, q - 1) == F.one());
    }
    // Frobenius is additive: (a+b)^5 = a^5 + b^5.
    Rng rng{42};
    for (int t = 0; t < 50; ++t) {
      FqElem a = F.decode(rng.next() % q), b = F.decode(rng.next() % q);
      CHECK(F.pow(F.add(a, b), 5) == F.add(F.pow(a, 5), F.pow(b, 5)));
      CHECK(F.mul(a, b) == F.mul(b, a));
    }
  }
}

TEST_CASE("Fq modulus is irreducible and minimal") {
  Fq F2(3, 2);
  // Smallest monic irreducible quadratic over F_3 by (c1, c0) order: x^2 + 1.
  CHECK(F2.modulus() == std::vector<std::uint32_t>{1, 0});
  Fq F3(2, 3);
  // Over F_2: x^3 + x + 1 (x^3+1 = (x+1)(x^2+x+1) is reducible).
  CHECK(F3.modulus() == std::vector<std::uint32_t>{1, 1, 0});
}

TEST_CASE("poly divmod and gcd") {
  Fq F(5, 1);
  FqPoly a = poly_from_ints(F, {1, 0, 2, 3});  // 3x^3 + 2x^2 + 1
  FqPoly b = poly_from_ints(F, {2, 1});        // x + 2
  auto [q, r] = poly::divmod(F, a, b);
  CHECK(poly::add(F, poly::mul(F, q, b), r) == a);
  CHECK(poly::deg(r) < poly::deg(b));
  // gcd((x-1)(x-2), (x-1)(x-3)) = x - 1
  FqPoly f = poly::mul(F, poly_from_ints(F, {4, 1}), poly_from_ints(F, {3, 1}));
  FqPoly g = poly::mul(F, poly_from_ints(F, {4, 1}), poly_from_ints(F, {2, 1}));
  CHECK(poly::gcd(F, f, g) == poly_from_ints(F, {4, 1}));
}

TEST_CASE("poly factor recovers known factorizations") {
  Fq F(5, 1);
  // (x^2 + 2)(x + 1)^2 x^3 over F_5; x^2 + 2 irreducible (-2 = 3 not a QR mod 5).
  FqPoly f = poly_from_ints(F, {2, 0, 1});
  FqPoly g = poly_from_ints(F, {1, 1});
  FqPoly h = poly::mul(F, f, poly::mul(F, g, g));
  h = poly::mul(F, h, poly::monomial(F, 3));
  auto fac = poly::factor(F, h);
  REQUIRE(fac.size() == 3);
  int total_deg = 0;
  FqPoly prod = poly::constant(F, F.one());
  for (auto& [p, m] : fac) {
    CHECK(poly::is_irreducible(F, p));
    total_deg += poly::deg(p) * m;
    for (int i = 0; i < m; ++i) prod = poly::mul(F, prod, p);
  }
  CHECK(total_deg == poly::deg(h));
  CHECK(prod == poly::monic(F, h));
}

TEST_CASE("poly factor handles p-th power multiplicities") {
  Fq F(3, 1);
  // (x + 1)^3 = x^3 + 1 over F_3 has zero derivative.
  FqPoly f = poly_from_ints(F, {1, 0, 0, 1});
  auto fac = poly::factor(F, f);
  REQUIRE(fac.size() == 1);
  CHECK(fac[0].first == poly_from_ints(F, {1, 1}));
  CHECK(fac[0].second == 3);
}

TEST_CASE("poly factor over an extension field") {
  Fq F(5, 2);
  // x^2 - x splits; x^2 + 2 (irreducible over F_5) splits over F_25.
  FqPoly f = poly_from_ints(F, {2, 0, 1});
  auto rts = poly::roots(F, f);
  REQUIRE(rts.size() == 2);
  for (auto& [r, m] : rts) {
    CHECK(m == 1);
    CHECK(poly::eval(F, f, r) == F.zero());
  }
}

TEST_CASE("poly factor property: random products reassemble") {
  Fq F(7, 1);
  Rng rng{7};
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + static_cast<int>(rng.next() % 8);
    FqPoly f(n + 1, F.zero());
    for (int i = 0; i < n; ++i) f[i] = F.from_int(static_cast<long long>(rng.next() % 7));
    f[n] = F.one();
    auto fac = poly::factor(F, f);
    FqPoly prod = poly::constant(F, F.one());
    for (auto& [p, m] : fac)
      for (int i = 0; i < m; ++i) prod = poly::mul(F, prod, p);
    CHECK(prod == f);
  }
}

TEST_CASE("echelon: identity and zero") {
  Fq F(5, 1);
  auto e = echelon(MatrixFq::identity(F, 4));
  CHECK(e.rank == 4);
  CHECK(e.kernel.cols() == 0);
  auto z = echelon(MatrixFq(F, 3, 5));
  CHECK(z.rank == 0);
  CHECK(z.kernel.cols() == 5);
}

TEST_CASE("echelon: rank matches transposed recomputation, random 20x20 over F5") {
  Fq F(5, 1);
  Rng rng{20250501};
  for (int trial = 0; trial < 10; ++trial) {
    MatrixFq m = random_matrix(F, 20, 20, rng);
    auto e = echelon(m);
    CHECK(e.rank == rank_of(m.transpose()));
    CHECK(e.rank + e.kernel.cols() == 20);
    // Kernel columns really lie in the kernel.
    CHECK(matmul_serial(m, e.kernel).is_zero());
  }
}

TEST_CASE("echelon result independent of row order") {
  Fq F(5, 1);
  Rng rng{99};
  MatrixFq m = random_matrix(F, 8, 12, rng);
  // Kill a couple rows to force rank deficiency.
  for (int j = 0; j < 12; ++j) { m.set(3, j, m.at(1, j)); m.set(6, j, F.zero()); }
  auto e1 = echelon(m);
  // Random row permutation.
  std::vector<int> perm(8);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = 7; i > 0; --i) std::swap(perm[i], perm[rng.next() % (i + 1)]);
  MatrixFq mp(F, 8, 12);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 12; ++j) mp.set(i, j, m.at(perm[i], j));
  auto e2 = echelon(mp);
  CHECK(e1.rank == e2.rank);
  CHECK(e1.rref == e2.rref);  // RREF is canonical
}

TEST_CASE("matmul serial and parallel agree") {
  Fq F(11, 1);
  Rng rng{5};
  for (int trial = 0; trial < 5; ++trial) {
    MatrixFq a = random_matrix(F, 17, 23, rng);
    MatrixFq b = random_matrix(F, 23, 9, rng);
    CHECK(matmul_serial(a, b) == matmul_parallel(a, b));
  }
}

TEST_CASE("solve and inverse round-trip") {
  Fq F(13, 1);
  Rng rng{13};
  for (int trial = 0; trial < 5; ++trial) {
    MatrixFq m = random_matrix(F, 6, 6, rng);
    if (rank_of(m) < 6) continue;
    MatrixFq inv = inverse(m);
    CHECK(matmul_serial(m, inv) == MatrixFq::identity(F, 6));
    MatrixFq b = random_matrix(F, 6, 2, rng);
    MatrixFq x = solve(m, b);
    CHECK(matmul_serial(m, x) == b);
  }
}

TEST_CASE("charpoly: companion matrix and Cayley-Hamilton") {
  Fq F(7, 1);
  // Companion matrix of f(x) = x^3 + 2x + 5.
  MatrixFq c(F, 3, 3);
  c.set(1, 0, F.one());
  c.set(2, 1, F.one());
  c.set(0, 2, F.neg(F.from_int(5)));
  c.set(1, 2, F.neg(F.from_int(2)));
  CHECK(charpoly(c) == poly_from_ints(F, {5, 2, 0, 1}));
  Rng rng{77};
  for (int trial = 0; trial < 5; ++trial) {
    MatrixFq m = random_matrix(F, 5, 5, rng);
    FqPoly cp = charpoly(m);
    REQUIRE(poly::deg(cp) == 5);
    CHECK(cp.back() == F.one());
    // Cayley-Hamilton: cp(m) = 0.
    MatrixFq acc(F, 5, 5);
    MatrixFq pw = MatrixFq::identity(F, 5);
    for (size_t i = 0; i < cp.size(); ++i) {
      acc = acc + pw.scaled(cp[i]);
      pw = matmul_serial(pw, m);
    }
    CHECK(acc.is_zero());
  }
}

TEST_CASE("eigen_scan: diagonal, companion over F7, nilpotent") {
  Fq F(7, 1);
  MatrixFq d(F, 3, 3);
  d.set(0, 0, F.from_int(2));
  d.set(1, 1, F.from_int(2));
  d.set(2, 2, F.from_int(5));
  auto es = eigen_scan(d);
  CHECK(es.field.degree() == 1);
  REQUIRE(es.values.size() == 2);
  CHECK(es.values[0] == std::pair<FqElem, int>(F.from_int(2), 2));
  CHECK(es.values[1] == std::pair<FqElem, int>(F.from_int(5), 1));

  // Companion of x^2 + 1 over F_7: -1 is not a QR mod 7, so splitting needs F_49.
  MatrixFq c(F, 2, 2);
  c.set(1, 0, F.one());
  c.set(0, 1, F.neg(F.one()));
  auto ec = eigen_scan(c);
  CHECK(ec.field.degree() == 2);
  REQUIRE(ec.values.size() == 2);
  for (auto& [lam, m] : ec.values) {
    CHECK(m == 1);
    // Root substitution: lam^2 + 1 = 0.
    CHECK(ec.field.add(ec.field.mul(lam, lam), ec.field.one()) == ec.field.zero());
  }

  MatrixFq nil(F, 4, 4);
  for (int i = 0; i + 1 < 4; ++i) nil.set(i, i + 1, F.one());
  auto en = eigen_scan(nil);
  REQUIRE(en.values.size() == 1);
  CHECK(en.values[0] == std::pair<FqElem, int>(FqElem(0), 4));
}

TEST_CASE("koszul_tor: trivial cases") {
  Fq F(5, 1);
  TSModule empty{MatrixFq(F, 0, 0), MatrixFq(F, 0, 0)};
  auto p0 = koszul_tor(empty, F.zero(), F.one());
  CHECK(p0 == TorProfile{0, 0, 0});
  // 1-dim, T = tau, S = sigma scalars: profile (1, 2, 1).
  MatrixFq t(F, 1, 1), s(F, 1, 1);
  t.set(0, 0, F.from_int(3));
  s.set(0, 0, F.from_int(2));
  auto p1 = koszul_tor(TSModule{t, s}, F.from_int(3), F.from_int(2));
  CHECK(p1 == TorProfile{1, 2, 1});
  // Off the eigenvalue: everything vanishes.
  auto p2 = koszul_tor(TSModule{t, s}, F.from_int(1), F.from_int(2));
  CHECK(p2 == TorProfile{0, 0, 0});
}

namespace {

// Independently assembled Koszul complex with shuffled index conventions:
// d1': V^2 -> V, (v, w) -> (S - sigma) v + (T - tau) w  (slots swapped)
// d2': V -> V^2, v -> (-(T - tau) v, (S - sigma) v)
// Same homology dims; assembled as explicit block matrices and row-reduced.
TorProfile brute_tor(const TSModule& m, FqElem tau, FqElem sigma) {
  const Fq& F = m.T.field();
  int n = m.dim();
  MatrixFq A = m.T - MatrixFq::identity(F, n).scaled(tau);
  MatrixFq B = m.S - MatrixFq::identity(F, n).scaled(sigma);
  MatrixFq d1 = hstack(B, A);
  MatrixFq d2 = vstack(A.scaled(F.neg(F.one())), B);
  int r1 = rank_of(d1), r2 = rank_of(d2);
  TorProfile p;
  p.d0 = n - r1;
  p.d1 = (2 * n - r1) - r2;
  p.d2 = n - r2;
  return p;
}

}  // namespace

TEST_CASE("koszul_tor agrees with brute-force assembly, 100 random commuting pairs over F5") {
  Fq F(5, 1);
  Rng rng{555};
  int done = 0;
  while (done < 100) {
    // Commuting pair: T = polynomial in a random M, S = invertible polynomial in M.
    MatrixFq m = random_matrix(F, 6, 6, rng);
    MatrixFq t(F, 6, 6), s(F, 6, 6);
    MatrixFq pw = MatrixFq::identity(F, 6);
    for (int i = 0; i < 3; ++i) {
      t = t + pw.scaled(F.from_int(static_cast<long long>(rng.next() % 5)));
      s = s + pw.scaled(F.from_int(static_cast<long long>(rng.next() % 5)));
      pw = matmul_serial(pw, m);
    }
    if (rank_of(s) < 6) continue;
    TSModule mod{t, s};
    FqElem tau = F.from_int(static_cast<long long>(rng.next() % 5));
    FqElem sigma = F.from_int(static_cast<long long>(rng.next() % 5));
    auto got = koszul_tor(mod, tau, sigma);
    auto want = brute_tor(mod, tau, sigma);
    CHECK(got == want);
    CHECK(got.d1 == got.d0 + got.d2);
    ++done;
  }
}

TEST_CASE("localize: trivial and diagonal cases; idempotent") {
  Fq F(7, 1);
  CHECK(localize({}, F, 5).cols() == 5);
  MatrixFq a(F, 4, 4), b(F, 4, 4);
  // a = diag(1,1,2,2), b = diag(3,4,3,4): constraints (a,1),(b,3) cut to e_0.
  a.set(0, 0, F.from_int(1)); a.set(1, 1, F.from_int(1));
  a.set(2, 2, F.from_int(2)); a.set(3, 3, F.from_int(2));
  b.set(0, 0, F.from_int(3)); b.set(1, 1, F.from_int(4));
  b.set(2, 2, F.from_int(3)); b.set(3, 3, F.from_int(4));
  MatrixFq v = localize({{a, F.from_int(1)}, {b, F.from_int(3)}}, F, 4);
  REQUIRE(v.cols() == 1);
  CHECK(v.at(0, 0) != 0);
  CHECK(v.at(1, 0) == 0);
  CHECK(v.at(2, 0) == 0);
  CHECK(v.at(3, 0) == 0);
  // Idempotence: localizing again on the restricted operators keeps dim.
  MatrixFq ra = restrict_to(a, v);
  MatrixFq rv = localize({{ra, F.from_int(1)}}, F, v.cols());
  CHECK(rv.cols() == v.cols());
}

TEST_CASE("localize captures generalized (not just strict) eigenvectors") {
  Fq F(5, 1);
  // Jordan block J_2(3) ⊕ diag(1): generalized eigenspace of 3 is 2-dim.
  MatrixFq j(F, 3, 3);
  j.set(0, 0, F.from_int(3)); j.set(0, 1, F.one()); j.set(1, 1, F.from_int(3));
  j.set(2, 2, F.one());
  MatrixFq v = localize({{j, F.from_int(3)}}, F, 3);
  CHECK(v.cols() == 2);
}
