#include "parithlab/gl2.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace parithlab {
namespace {

constexpr int kInfVal = std::numeric_limits<int>::max() / 2;

BigInt pow_p(std::uint32_t p, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

int val_or_inf(const PRat& x) { return x.is_zero() ? kInfVal : x.e; }

// Extended gcd: returns g = gcd(a, b) >= 0 with s*a + t*b = g.
BigInt egcd(BigInt a, BigInt b, BigInt& s, BigInt& t) {
  BigInt s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    BigInt q = a / b, r = a - q * b;
    a = b; b = r;
    BigInt s2 = s0 - q * s1; s0 = s1; s1 = s2;
    BigInt t2 = t0 - q * t1; t0 = t1; t1 = t2;
  }
  if (a < 0) { a = -a; s0 = -s0; t0 = -t0; }
  s = s0; t = t0;
  return a;
}

BigInt mod_pos(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt s, t;
  BigInt g = egcd(mod_pos(a, m), m, s, t);
  if (g != 1) throw std::domain_error("mod_inverse: not invertible");
  return mod_pos(s, m);
}

}  // namespace

PRat prat(std::uint32_t p, BigInt n, int e) {
  if (n == 0) return PRat{0, 0};
  while (n % p == 0) { n /= p; ++e; }
  return PRat{std::move(n), e};
}

PRat prat_add(std::uint32_t p, const PRat& x, const PRat& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  int e = std::min(x.e, y.e);
  return prat(p, x.a * pow_p(p, x.e - e) + y.a * pow_p(p, y.e - e), e);
}

PRat prat_sub(std::uint32_t p, const PRat& x, const PRat& y) {
  return prat_add(p, x, prat_neg(y));
}

PRat prat_mul(std::uint32_t p, const PRat& x, const PRat& y) {
  if (x.is_zero() || y.is_zero()) return PRat{0, 0};
  (void)p;
  return PRat{x.a * y.a, x.e + y.e};
}

PRat prat_neg(const PRat& x) { return PRat{-x.a, x.e}; }

int prat_val(const PRat& x) {
  if (x.is_zero()) throw std::domain_error("prat_val of zero");
  return x.e;
}

bool prat_integral(const PRat& x) { return x.is_zero() || x.e >= 0; }

std::uint32_t prat_mod_p(std::uint32_t p, const PRat& x) {
  if (!prat_integral(x)) throw std::domain_error("prat_mod_p: not integral");
  if (x.is_zero() || x.e > 0) return 0;
  return static_cast<std::uint32_t>(mod_pos(x.a, BigInt(p)));
}

GL2Elt GL2Elt::from_ints(std::uint32_t p, long long a, long long b,
                         long long c, long long d) {
  GL2Elt g;
  g.p = p;
  g.m[0][0] = prat(p, a);
  g.m[0][1] = prat(p, b);
  g.m[1][0] = prat(p, c);
  g.m[1][1] = prat(p, d);
  return g;
}

GL2Elt GL2Elt::identity(std::uint32_t p) { return from_ints(p, 1, 0, 0, 1); }
GL2Elt GL2Elt::alpha(std::uint32_t p) { return from_ints(p, 1, 0, 0, p); }
GL2Elt GL2Elt::beta(std::uint32_t p) { return from_ints(p, p, 0, 0, p); }
GL2Elt GL2Elt::w(std::uint32_t p) { return from_ints(p, 0, 1, 1, 0); }

PRat GL2Elt::det() const {
  return prat_sub(p, prat_mul(p, m[0][0], m[1][1]), prat_mul(p, m[0][1], m[1][0]));
}

GL2Elt GL2Elt::operator*(const GL2Elt& o) const {
  if (p != o.p) throw std::invalid_argument("GL2Elt: different p");
  GL2Elt r;
  r.p = p;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r.m[i][j] = prat_add(p, prat_mul(p, m[i][0], o.m[0][j]),
                           prat_mul(p, m[i][1], o.m[1][j]));
  return r;
}

GL2Elt GL2Elt::inverse() const {
  PRat d = det();
  if (d.is_zero()) throw std::domain_error("GL2Elt::inverse: singular");
  if (d.a != 1 && d.a != -1)
    throw std::domain_error("GL2Elt::inverse: det not of the form ±p^k");
  PRat dinv{d.a, -d.e};  // 1/det, since d.a = ±1
  GL2Elt r;
  r.p = p;
  r.m[0][0] = prat_mul(p, m[1][1], dinv);
  r.m[0][1] = prat_mul(p, prat_neg(m[0][1]), dinv);
  r.m[1][0] = prat_mul(p, prat_neg(m[1][0]), dinv);
  r.m[1][1] = prat_mul(p, m[0][0], dinv);
  return r;
}

bool GL2Elt::operator==(const GL2Elt& o) const {
  if (p != o.p) return false;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (!(m[i][j] == o.m[i][j])) return false;
  return true;
}

std::string GL2Elt::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < 2; ++i) {
    os << "[";
    for (int j = 0; j < 2; ++j) {
      os << m[i][j].a << "*p^" << m[i][j].e;
      if (j == 0) os << ", ";
    }
    os << "]";
    if (i == 0) os << ", ";
  }
  os << "]";
  return os.str();
}

bool in_Gplus(const GL2Elt& g) {
  if (g.det().is_zero()) return false;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (!prat_integral(g.m[i][j])) return false;
  return true;
}

bool in_Gminus(const GL2Elt& g) {
  PRat d = g.det();
  if (d.is_zero()) return false;
  // Inverse integral iff every adjugate entry has valuation >= v(det).
  int vd = d.e;
  const PRat* adj[4] = {&g.m[1][1], &g.m[0][1], &g.m[1][0], &g.m[0][0]};
  for (const PRat* e : adj)
    if (!e->is_zero() && e->e < vd) return false;
  return true;
}

bool in_K(const GL2Elt& g) {
  if (!in_Gplus(g)) return false;
  return g.det().e == 0;
}

bool in_I(const GL2Elt& g) {
  if (!in_K(g)) return false;
  return g.m[1][0].is_zero() || g.m[1][0].e >= 1;
}

std::array<std::array<std::uint32_t, 2>, 2> reduce_mod_p(const GL2Elt& g) {
  if (!in_Gplus(g)) throw std::domain_error("reduce_mod_p: not integral");
  std::array<std::array<std::uint32_t, 2>, 2> r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = prat_mod_p(g.p, g.m[i][j]);
  return r;
}

std::array<std::array<std::uint32_t, 2>, 2> reduce_inverse_mod_p(const GL2Elt& g) {
  if (!in_Gminus(g)) throw std::domain_error("reduce_inverse_mod_p: not in G-");
  // g^{-1} = adj(g)/det(g); shift p-powers out of det and invert its unit.
  PRat d = g.det();
  BigInt P(g.p);
  BigInt uinv = mod_inverse(d.a, P);
  const PRat* adj[2][2] = {{&g.m[1][1], &g.m[0][1]}, {&g.m[1][0], &g.m[0][0]}};
  int sign[2][2] = {{1, -1}, {-1, 1}};
  std::array<std::array<std::uint32_t, 2>, 2> r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      PRat shifted = *adj[i][j];
      if (!shifted.is_zero()) shifted.e -= d.e;  // integral since g in G-
      BigInt v = BigInt(prat_mod_p(g.p, shifted)) * uinv * sign[i][j];
      r[i][j] = static_cast<std::uint32_t>(mod_pos(v, P).convert_to<long long>());
    }
  return r;
}

P1Point p1_label(std::uint32_t p, std::uint32_t c, std::uint32_t d) {
  c %= p; d %= p;
  if (d != 0) {
    BigInt inv = mod_inverse(BigInt(d), BigInt(p));
    return static_cast<P1Point>(mod_pos(BigInt(c) * inv, BigInt(p)).convert_to<long long>());
  }
  if (c == 0) throw std::invalid_argument("p1_label: (0, 0)");
  return static_cast<P1Point>(p);
}

bool CosetRep::operator<(const CosetRep& o) const {
  return std::tie(tag, m, n, u.e, u.a, p1) <
         std::tie(o.tag, o.m, o.n, o.u.e, o.u.a, o.p1);
}

GL2Elt CosetRep::matrix(std::uint32_t p) const {
  GL2Elt h;
  h.p = p;
  h.m[0][0] = PRat{1, m};
  h.m[0][1] = u;
  h.m[1][0] = PRat{0, 0};
  h.m[1][1] = PRat{1, n};
  if (tag == SubgroupTag::K) return h;
  GL2Elt L = p1 < static_cast<P1Point>(p)
                 ? GL2Elt::from_ints(p, 1, 0, p1, 1)
                 : GL2Elt::w(p);
  return L * h;
}

CosetRep canonicalize(const GL2Elt& g, SubgroupTag tag) {
  std::uint32_t p = g.p;
  PRat d = g.det();
  if (d.is_zero()) throw std::domain_error("canonicalize: singular matrix");
  int v00 = val_or_inf(g.m[0][0]);
  int v10 = val_or_inf(g.m[1][0]);
  int mm = std::min(v00, v10);
  if (mm >= kInfVal) throw std::domain_error("canonicalize: zero first column");
  int nn = d.e - mm;
  int i = (v00 <= v10) ? 0 : 1;
  CosetRep rep;
  rep.tag = SubgroupTag::K;
  rep.m = mm;
  rep.n = nn;
  // u ≡ p^m * g[i][1] / g[i][0]  (mod p^n), pivot row has valuation m.
  const PRat& num = g.m[i][1];
  if (num.is_zero() || num.e >= nn + (g.m[i][0].e - mm)) {
    rep.u = PRat{0, 0};
  } else {
    int e1 = num.e;  // pivot denominator has valuation exactly m
    BigInt M = pow_p(p, nn - e1);
    BigInt c = mod_pos(num.a * mod_inverse(g.m[i][0].a, M), M);
    rep.u = PRat{std::move(c), e1};
  }
  if (tag == SubgroupTag::K) return rep;
  // Residual K-part k = g * h^{-1} is integral; its bottom row mod p gives
  // the P^1 label of the I-coset.
  GL2Elt k = g * rep.matrix(p).inverse();
  if (!in_K(k)) throw std::logic_error("canonicalize: residual not in K");
  rep.tag = SubgroupTag::I;
  rep.p1 = p1_label(p, prat_mod_p(p, k.m[1][0]), prat_mod_p(p, k.m[1][1]));
  return rep;
}

std::pair<GL2Elt, GL2Elt> iwasawa(const GL2Elt& g) {
  std::uint32_t p = g.p;
  if (g.det().is_zero()) throw std::domain_error("iwasawa: singular matrix");
  // First column scaled to coprime integers (a, c); x in SL2(Z) clears c.
  const PRat& g00 = g.m[0][0];
  const PRat& g10 = g.m[1][0];
  int e = std::min(val_or_inf(g00), val_or_inf(g10));
  BigInt a = g00.is_zero() ? BigInt(0) : g00.a * pow_p(p, g00.e - e);
  BigInt c = g10.is_zero() ? BigInt(0) : g10.a * pow_p(p, g10.e - e);
  BigInt s, t;
  BigInt d = egcd(a, c, s, t);  // s*a + t*c = d
  GL2Elt x;
  x.p = p;
  x.m[0][0] = prat(p, a / d);
  x.m[0][1] = prat(p, -t);
  x.m[1][0] = prat(p, c / d);
  x.m[1][1] = prat(p, s);
  GL2Elt b = x.inverse() * g;
  if (!b.m[1][0].is_zero()) throw std::logic_error("iwasawa: not triangular");
  return {x, b};
}

std::vector<GL2Elt> cosets_K_mod_I(std::uint32_t p) {
  std::vector<GL2Elt> reps;
  for (std::uint32_t j = 0; j < p; ++j)
    reps.push_back(GL2Elt::from_ints(p, 1, 0, j, 1));
  reps.push_back(GL2Elt::w(p));
  return reps;
}

SymVector SymVector::estar(const Fq& F, int r) {
  SymVector v = zero(F, r);
  v.coeffs[0] = F.one();
  return v;
}

bool SymVector::is_zero() const {
  for (FqElem c : coeffs)
    if (c != 0) return false;
  return true;
}

namespace {

// Q(x, y) -> Q(a x + b y, c x + d y) over F.
SymVector subst(const Fq& F, const SymVector& v, FqElem a, FqElem b, FqElem c,
                FqElem d) {
  int r = v.r;
  // Powers of the two linear forms, as coefficient vectors in x, y.
  std::vector<std::vector<FqElem>> pw1(r + 1), pw2(r + 1);
  pw1[0] = {F.one()};
  pw2[0] = {F.one()};
  for (int k = 1; k <= r; ++k) {
    pw1[k].assign(k + 1, F.zero());
    pw2[k].assign(k + 1, F.zero());
    for (int i = 0; i < k; ++i) {
      pw1[k][i] = F.add(pw1[k][i], F.mul(pw1[k - 1][i], a));
      pw1[k][i + 1] = F.add(pw1[k][i + 1], F.mul(pw1[k - 1][i], b));
      pw2[k][i] = F.add(pw2[k][i], F.mul(pw2[k - 1][i], c));
      pw2[k][i + 1] = F.add(pw2[k][i + 1], F.mul(pw2[k - 1][i], d));
    }
  }
  SymVector out = SymVector::zero(F, r);
  for (int i = 0; i <= r; ++i) {
    if (v.coeffs[i] == 0) continue;
    // Term c_i * (ax+by)^{r-i} (cx+dy)^i; convolve exponent distributions.
    for (int j = 0; j <= r - i; ++j) {
      if (pw1[r - i][j] == 0) continue;
      FqElem f = F.mul(v.coeffs[i], pw1[r - i][j]);
      for (int k = 0; k <= i; ++k)
        out.coeffs[j + k] =
            F.add(out.coeffs[j + k], F.mul(f, pw2[i][k]));
    }
  }
  return out;
}

FqElem red(const Fq& F, std::uint32_t p, const PRat& x) {
  return F.from_prime_field(prat_mod_p(p, x));
}

}  // namespace

SymVector act_sym(const Fq& F, const GL2Elt& g, const SymVector& v, ActMode mode) {
  if (F.p() != g.p) throw std::invalid_argument("act_sym: p mismatch");
  if (mode == ActMode::NaturalOnSym) {
    if (!in_Gplus(g)) throw std::domain_error("act_sym: natural mode needs G+");
    // Basis vectors map by the columns of g mod p.
    return subst(F, v, red(F, g.p, g.m[0][0]), red(F, g.p, g.m[1][0]),
                 red(F, g.p, g.m[0][1]), red(F, g.p, g.m[1][1]));
  }
  if (!in_Gminus(g)) throw std::domain_error("act_sym: dual mode needs G-");
  // Precompose the polynomial function with g^{-1} mod p (rows).
  auto h = reduce_inverse_mod_p(g);
  return subst(F, v, F.from_prime_field(h[0][0]), F.from_prime_field(h[0][1]),
               F.from_prime_field(h[1][0]), F.from_prime_field(h[1][1]));
}

FqElem sym_eval_p1(const Fq& F, const SymVector& v, P1Point pt) {
  if (pt == static_cast<P1Point>(F.p())) return v.coeffs[0];  // (1 : 0)
  FqElem x = F.from_prime_field(static_cast<std::uint32_t>(pt));
  // Q(j, 1) = sum c_i j^{r-i}, Horner starting from the x^r coefficient.
  FqElem acc = F.zero();
  for (int i = 0; i <= v.r; ++i) acc = F.add(F.mul(acc, x), v.coeffs[i]);
  return acc;
}

}  // namespace parithlab
