#include "parithlab/eigensystems.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "parithlab/heckeop.hpp"

namespace parithlab {

std::pair<FqElem, FqElem> Eigensystem::at(std::uint32_t ell) const {
  for (const auto& [l, ts] : away)
    if (l == ell) return ts;
  throw std::invalid_argument("eigensystem: no data at ell");
}

std::vector<std::uint32_t> hecke_primes(std::uint32_t p, std::uint32_t N,
                                        std::uint32_t bound) {
  std::vector<std::uint32_t> out;
  std::vector<char> sieve(bound + 1, 1);
  for (std::uint32_t n = 2; n <= bound; ++n) {
    if (!sieve[n]) continue;
    for (std::uint32_t m = 2 * n; m <= bound; m += n) sieve[m] = 0;
    if (n != p && std::gcd(n, N) == 1) out.push_back(n);
  }
  return out;
}

namespace {

struct Blk {
  std::vector<FqElem> labels;
  MatrixFq basis;
};

std::vector<Blk> simultaneous_blocks(const Fq& E,
                                     const std::vector<MatrixFq>& ops,
                                     int dim) {
  std::vector<Blk> blocks{{{}, MatrixFq::identity(E, dim)}};
  for (const MatrixFq& op : ops) {
    std::vector<Blk> next;
    for (const Blk& blk : blocks) {
      MatrixFq restr = restrict_to(op, blk.basis);
      // Roots stay in E: the block is invariant and the ambient operator
      // splits over E by the choice of field.
      auto roots = poly::roots(E, charpoly(restr));
      std::sort(roots.begin(), roots.end(), [&](const auto& x, const auto& y) {
        return E.encode(x.first) < E.encode(y.first);
      });
      int total = 0;
      for (const auto& [lam, mult] : roots) {
        (void)lam;
        total += mult;
      }
      if (total != restr.rows())
        throw std::logic_error("extract: eigenvalue escapes the shared field");
      for (const auto& [lam, mult] : roots) {
        (void)mult;
        MatrixFq gk = generalized_kernel(restr, lam);
        Blk nb{blk.labels, matmul_serial(blk.basis, gk)};
        nb.labels.push_back(lam);
        next.push_back(std::move(nb));
      }
    }
    blocks = std::move(next);
  }
  return blocks;
}

}  // namespace

EigenData extract(const std::vector<const HomologySpace*>& spaces,
                  const std::vector<std::uint32_t>& ells) {
  if (spaces.empty()) throw std::invalid_argument("extract: no spaces");
  const Fq& F0 = spaces[0]->F;
  if (F0.degree() != 1)
    throw std::invalid_argument("extract: spaces must be over the prime field");
  for (const HomologySpace* s : spaces)
    if (!(s->F == F0) || s->level.N != spaces[0]->level.N)
      throw std::invalid_argument("extract: mismatched spaces");

  // Operator list per space, and the shared splitting field.
  std::vector<HeckeLabel> labels;
  for (std::uint32_t ell : ells) {
    labels.push_back(HeckeLabel::T(ell));
    labels.push_back(HeckeLabel::S(ell));
  }
  labels.push_back(HeckeLabel::Tp());
  labels.push_back(HeckeLabel::Sp());

  int d = 1;
  for (const HomologySpace* s : spaces) {
    if (s->dim == 0) continue;
    for (const HeckeLabel& lb : labels)
      d = std::lcm(d, splitting_degree(hecke(*s, lb)));
  }
  if (d > Fq::kMaxDegree)
    throw std::runtime_error("extract: splitting field degree exceeds cap");
  Fq E(F0.p(), d);

  EigenData out;
  out.field = E;
  out.ells = ells;

  const size_t naway = 2 * ells.size();
  std::map<std::vector<std::uint64_t>, Eigensystem> merged;

  for (const HomologySpace* s : spaces) {
    if (s->dim == 0) continue;
    std::vector<MatrixFq> ops;
    for (const HeckeLabel& lb : labels) ops.push_back(hecke(*s, lb).lift_to(E));
    std::vector<Blk> blocks = simultaneous_blocks(E, ops, s->dim);

    int total = 0;
    MatrixFq boundary_e = s->boundary.lift_to(E);
    for (Blk& blk : blocks) {
      total += blk.basis.cols();
      std::vector<std::uint64_t> key;
      for (size_t i = 0; i < naway; ++i) key.push_back(E.encode(blk.labels[i]));
      Eigensystem& es = merged[key];
      if (es.away.empty())
        for (size_t i = 0; i < ells.size(); ++i)
          es.away.push_back({ells[i], {blk.labels[2 * i], blk.labels[2 * i + 1]}});
      Occurrence occ;
      occ.weight = s->weight;
      occ.tau = blk.labels[naway];
      occ.sigma = blk.labels[naway + 1];
      occ.mult = blk.basis.cols();
      occ.basis = std::move(blk.basis);
      if (boundary_e.rows() > 0 &&
          !matmul_serial(boundary_e, occ.basis).is_zero())
        es.eisenstein = true;
      es.occurrences.push_back(std::move(occ));
    }
    if (total != s->dim)
      throw std::logic_error("extract: block multiplicities do not sum to dim");
  }

  int idx = 0;
  for (auto& [key, es] : merged) {
    (void)key;
    std::ostringstream oss;
    oss << "es-" << idx++;
    es.id = oss.str();
    out.systems.push_back(std::move(es));
  }
  return out;
}

std::vector<std::pair<std::vector<FqElem>, int>> joint_spectrum(
    const std::vector<MatrixFq>& ops, const Fq& E) {
  if (ops.empty()) throw std::invalid_argument("joint_spectrum: no operators");
  std::vector<MatrixFq> lifted;
  for (const MatrixFq& op : ops) lifted.push_back(op.lift_to(E));
  std::vector<std::pair<std::vector<FqElem>, int>> out;
  for (const Blk& blk : simultaneous_blocks(E, lifted, ops[0].rows()))
    out.push_back({blk.labels, blk.basis.cols()});
  std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
    for (size_t i = 0; i < x.first.size(); ++i) {
      if (x.first[i] != y.first[i])
        return E.encode(x.first[i]) < E.encode(y.first[i]);
    }
    return false;
  });
  return out;
}

int h0_dimension(const Fq& F, int r) {
  // Coinvariants of Sym^r(k^2)^dual under sigma and tau, which generate the
  // image of the level group in SL_2(F_p).
  const IMat sigma{0, -1, 1, 0};
  const IMat tau{0, -1, 1, -1};
  MatrixFq rel(F, 2 * (r + 1), r + 1);
  for (int i = 0; i <= r; ++i) {
    SymVector q = SymVector::zero(F, r);
    q.coeffs[i] = F.one();
    SymVector qs = coeff_apply(F, q, sigma);
    SymVector qt = coeff_apply(F, q, tau);
    for (int j = 0; j <= r; ++j) {
      rel.set(i, j, F.sub(qs.coeffs[j], q.coeffs[j]));
      rel.set(r + 1 + i, j, F.sub(qt.coeffs[j], q.coeffs[j]));
    }
  }
  return r + 1 - rank_of(rel);
}

bool sqrt_in_field(const Fq& F, FqElem a, FqElem& root) {
  std::uint64_t q = 1;
  for (int i = 0; i < F.degree(); ++i) q *= F.p();
  for (std::uint64_t i = 0; i < q; ++i) {
    FqElem x = F.decode(i);
    if (F.mul(x, x) == a) {
      root = x;
      return true;
    }
  }
  return false;
}

LocalShape classify_local(const Fq& F, const Eigensystem& es,
                          const Occurrence& occ, bool weight0_computed) {
  const int p1 = static_cast<int>(F.p()) - 1;
  LocalShape sh;
  sh.r = occ.weight.r;
  sh.a = ((occ.weight.a - occ.weight.r) % p1 + p1) % p1;  // s = a + r
  sh.tau = occ.tau;
  sh.sigma = occ.sigma;
  if (F.is_zero(occ.sigma))
    throw std::invalid_argument("classify_local: sigma must be a unit");
  sh.b_in_field = sqrt_in_field(F, occ.sigma, sh.b);
  if (sh.b_in_field && !F.is_zero(occ.tau))
    sh.lambda = F.mul(occ.tau, F.inv(sh.b));

  if (F.is_zero(occ.tau)) {
    sh.kind = ShapeKind::Supersingular;
    return sh;
  }
  // lambda = +-1 iff tau^2 = sigma, independently of the choice of root.
  bool unit_lambda = F.mul(occ.tau, occ.tau) == occ.sigma;
  if (unit_lambda && (occ.weight.r == 0 || occ.weight.r == p1)) {
    sh.kind = ShapeKind::Steinberg;
    if (occ.weight.r == 0) {
      sh.ram = Ramification::Peu;  // weight-0 contribution forces peu
    } else {
      bool weight0_match = false;
      for (const Occurrence& o : es.occurrences)
        if (o.weight.r == 0 && ((o.weight.a - sh.a) % p1 + p1) % p1 == 0 &&
            o.tau == occ.tau && o.sigma == occ.sigma)
          weight0_match = true;
      if (weight0_match)
        sh.ram = Ramification::Peu;
      else
        sh.ram = weight0_computed ? Ramification::Tres
                                  : Ramification::Undetermined;
    }
    return sh;
  }
  sh.kind = ShapeKind::OrdinaryPS;
  return sh;
}

std::string RepSpec::name(const Fq& F) const {
  std::ostringstream oss;
  switch (kind) {
    case Kind::Pi:
      oss << "pi(" << r << "," << F.encode(lambda) << "," << a << ","
          << F.encode(b) << ")";
      break;
    case Kind::Steinberg:
      oss << "steinberg(" << a << "," << F.encode(b) << ")";
      break;
    case Kind::Trivial:
      oss << "trivial(" << a << "," << F.encode(b) << ")";
      break;
  }
  return oss.str();
}

std::vector<int> predict(const Fq& F, const RepSpec& rep,
                         const Eigensystem& es, int p1) {
  auto has_occ = [&](int r, int a, FqElem tau, FqElem sigma) {
    for (const Occurrence& o : es.occurrences)
      if (o.weight.r == r && ((o.weight.a - a) % p1 + p1) % p1 == 0 &&
          o.tau == tau && o.sigma == sigma)
        return true;
    return false;
  };
  FqElem b2 = F.mul(rep.b, rep.b);
  switch (rep.kind) {
    case RepSpec::Kind::Pi: {
      // Occurrence at weight (r, a + r) with (T, S) = (lambda b, b^2) is
      // equivalent to nonzero p-arithmetic homology in degrees {1,2,3}.
      FqElem tau = F.mul(rep.lambda, rep.b);
      if (has_occ(rep.r, (rep.a + rep.r) % p1, tau, b2)) return {1, 2, 3};
      return {};
    }
    case RepSpec::Kind::Steinberg:
      // Any extension of chi omega^{-1} by chi contributes at weight p-1
      // with eigenvalues (b, b^2).
      if (has_occ(p1, rep.a % p1, rep.b, b2)) return {1, 2};
      return {};
    case RepSpec::Kind::Trivial:
      if (has_occ(p1, rep.a % p1, rep.b, b2)) return {2, 3};
      return {};
  }
  return {};
}

}  // namespace parithlab
