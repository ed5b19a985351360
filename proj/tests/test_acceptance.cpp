// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.  Each criterion is independent; failures do not stop the run.

#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "parithlab/ecurve.hpp"
#include "parithlab/levelmaps.hpp"
#include "parithlab/parith.hpp"
#include "parithlab/session.hpp"
#include "parithlab/smooth.hpp"

using namespace parithlab;

namespace {

struct Rng {
  std::uint64_t s;
  std::uint64_t next() {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % (hi - lo + 1));
  }
};

GL2Elt random_g(std::uint32_t p, Rng& rng) {
  GL2Elt g = GL2Elt::identity(p);
  for (int step = 0; step < 5; ++step) {
    switch (rng.next() % 5) {
      case 0: g = g * GL2Elt::from_ints(p, 1, rng.range(-6, 6), 0, 1); break;
      case 1: g = g * GL2Elt::from_ints(p, 1, 0, rng.range(-6, 6), 1); break;
      case 2: g = g * GL2Elt::w(p); break;
      case 3: g = g * GL2Elt::alpha(p); break;
      default: g = g * GL2Elt::beta(p).inverse(); break;
    }
  }
  return g;
}

int failures = 0;

void criterion(int n, const std::string& what,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  std::printf("criterion %2d [%s]: %s%s%s\n", n, what.c_str(),
              ok ? "PASS" : "FAIL", detail.empty() ? "" : " — ",
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

Session session_7_11() {
  SessionConfig cfg;
  cfg.p = 7;
  cfg.N = 11;
  cfg.B = 13;
  cfg.weights = {{0, 0}, {6, 0}};
  return Session::build(cfg);
}

const Eigensystem* curve_system(const Session& s, const CurveData& c) {
  const Fq& E = s.eigen.field;
  for (const Eigensystem& es : s.eigen.systems) {
    bool match = true;
    for (const auto& [ell, ts] : es.away)
      if (ts.first != E.from_int(ap(c, ell)) || ts.second != E.one())
        match = false;
    if (match) return &es;
  }
  return nullptr;
}

// Non-Eisenstein joint eigenvalue multiset (full label tuples with
// multiplicity) of a commuting family, Eisenstein systems identified by
// their away labels against the extraction data.
std::map<std::vector<std::uint64_t>, int> noneis_spectrum(
    const std::vector<MatrixFq>& ops, const EigenData& ed) {
  const Fq& E = ed.field;
  std::map<std::vector<std::uint64_t>, bool> eis;
  for (const Eigensystem& es : ed.systems) {
    std::vector<std::uint64_t> key;
    for (const auto& [l, ts] : es.away) {
      key.push_back(E.encode(ts.first));
      key.push_back(E.encode(ts.second));
    }
    eis[key] = es.eisenstein;
  }
  std::map<std::vector<std::uint64_t>, int> out;
  for (const auto& [labels, mult] : joint_spectrum(ops, E)) {
    std::vector<std::uint64_t> away;
    for (size_t i = 0; i + 2 < labels.size(); ++i)
      away.push_back(E.encode(labels[i]));
    auto it = eis.find(away);
    if (it == eis.end())
      throw std::logic_error("U/V eigensystem missing from extraction data");
    if (it->second) continue;
    std::vector<std::uint64_t> key;
    for (FqElem x : labels) key.push_back(E.encode(x));
    out[key] += mult;
  }
  return out;
}

bool hasse_criterion(std::uint32_t p, std::string& detail) {
  SessionConfig cfg;
  cfg.p = p;
  cfg.N = 11;
  cfg.B = 13;
  cfg.weights = {{0, 0}, {static_cast<int>(p) - 1, 0}};
  Session s = Session::build(cfg);
  s.ensure_hasse();
  const HasseData& hd = *s.hasse;
  const HomologySpace* triv = s.grid.find(0, 0);

  // psi~ injective; phi~ surjective up to the boundary (Eisenstein) line:
  // corank exactly 1 and the image contains the whole cuspidal subspace.
  int rpsi = rank_of(hd.mods.psi);
  int rphi = rank_of(hd.mods.phi);
  bool inj = rpsi == triv->dim;
  bool surj = rphi == triv->dim - 1 &&
              rank_of(hstack(hd.mods.phi, triv->cuspidal)) == rphi;

  std::vector<MatrixFq> uops, vops;
  for (size_t i = 0; i < hd.ells.size(); ++i) {
    uops.push_back(hd.TlU[i]);
    uops.push_back(hd.SlU[i]);
    vops.push_back(hd.TlV[i]);
    vops.push_back(hd.SlV[i]);
  }
  uops.push_back(hd.TpU);
  uops.push_back(hd.SpU);
  vops.push_back(hd.TpV);
  vops.push_back(hd.SpV);
  auto mu = noneis_spectrum(uops, s.eigen);
  auto mv = noneis_spectrum(vops, s.eigen);
  int du = 0, dv = 0;
  for (const auto& [k, m] : mu) du += m;
  for (const auto& [k, m] : mv) dv += m;

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "p=%u rank(psi)=%d rank(phi)=%d/%d nonEis dimU=%d dimV=%d "
                "multisets %s",
                p, rpsi, rphi, triv->dim, du, dv,
                mu == mv ? "equal" : "DIFFER");
  detail += buf;
  return inj && surj && du == dv && mu == mv;
}

}  // namespace

int main() {
  criterion(1, "boundary eigensystem calibration", [](std::string& detail) {
    Fq F(7, 1);
    HomologySpace sp = build_space({11, false}, {0, 0}, F);
    EigenData ed = extract({&sp}, {2, 3, 5, 13});
    const Fq& E = ed.field;
    for (const Eigensystem& es : ed.systems) {
      bool boundary = true;
      for (const auto& [ell, ts] : es.away) {
        // T_ell = 1 + ell and ell * S_ell = ell.
        if (ts.first != E.from_int(1 + ell)) boundary = false;
        if (E.mul(E.from_int(ell), ts.second) != E.from_int(ell))
          boundary = false;
      }
      if (boundary) {
        detail = "system " + es.id + ", eisenstein flag set: " +
                 (es.eisenstein ? "yes" : "no");
        return es.eisenstein;
      }
    }
    detail = "no boundary system found";
    return false;
  });

  criterion(2, "presentation dimension 2g + c - 1", [](std::string& detail) {
    Fq F(7, 1);
    HomologySpace sp = build_space({11, false}, {0, 0}, F);
    long long g = genus_formula({11, false}, 7);
    long long c = cusp_count_formula({11, false}, 7);
    detail = "dim=" + std::to_string(sp.dim) + " g=" + std::to_string(g) +
             " c=" + std::to_string(c);
    return g == 1 && c == 10 && sp.dim == 11 && sp.dim == 2 * g + c - 1;
  });

  criterion(3, "elliptic eigensystem 11a1 mod 7", [](std::string& detail) {
    Fq F(7, 1);
    HomologySpace sp = build_space({11, false}, {0, 0}, F);
    EigenData ed = extract({&sp}, {2, 3, 5, 13});
    const Fq& E = ed.field;
    const CurveData& c = curve_by_label("11a1");
    for (const Eigensystem& es : ed.systems) {
      bool match = !es.eisenstein;
      for (const auto& [ell, ts] : es.away)
        if (ts.first != E.from_int(ap(c, ell)) || ts.second != E.one())
          match = false;
      if (!match) continue;
      const Occurrence& o = es.occurrences[0];
      detail = "system " + es.id;
      return o.tau == E.from_int(5) && o.tau == E.from_int(ap(c, 7)) &&
             o.sigma == E.one();
    }
    detail = "no matching non-Eisenstein system";
    return false;
  });

  criterion(4, "generic profile pi(0,5,0,1) and its twin",
            [](std::string& detail) {
    Session s = session_7_11();
    const Fq& E = s.eigen.field;
    const Eigensystem* es = curve_system(s, curve_by_label("11a1"));
    if (!es || es->eisenstein) {
      detail = "11a1 system not found";
      return false;
    }
    RepSpec rep{RepSpec::Kind::Pi, 0, E.from_int(5), 0, E.one()};
    RepSpec twin{RepSpec::Kind::Pi, 6, E.from_int(5), 0, E.one()};
    ParithProfile pr = profile_generic(s.grid, s.eigen, *es, rep);
    ParithProfile pt = profile_generic(s.grid, s.eigen, *es, twin);
    char buf[96];
    std::snprintf(buf, sizeof buf, "dims=(%d,%d,%d,%d) twin=(%d,%d,%d,%d)",
                  pr.dims[0], pr.dims[1], pr.dims[2], pr.dims[3], pt.dims[0],
                  pt.dims[1], pt.dims[2], pt.dims[3]);
    detail = buf;
    return pr.dims[1] >= 1 && pr.dims[1] == pr.dims[3] &&
           pr.dims[2] == 2 * pr.dims[1] &&
           pr.nonzero() == std::vector<int>{1, 2, 3} && pt.dims == pr.dims;
  });

  criterion(5, "supersingular cycling for an oracle-located curve",
            [](std::string& detail) {
    auto located = supersingular_curves(5);
    if (located.empty() || located[0].conductor > 40) {
      detail = "no supersingular curve located";
      return false;
    }
    const CurveData& c = located[0];  // 14a1, a_5 = 0
    SessionConfig cfg;
    cfg.p = 5;
    cfg.N = static_cast<std::uint32_t>(c.conductor);
    cfg.B = 13;
    cfg.weights = {{0, 0}, {4, 0}};
    Session s = Session::build(cfg);
    const Fq& E = s.eigen.field;
    const Eigensystem* es = curve_system(s, c);
    if (!es || es->eisenstein) {
      detail = "residual system of " + c.label + " not found";
      return false;
    }
    FqElem b = 0;
    if (!sqrt_in_field(E, es->occurrences[0].sigma, b)) {
      detail = "sigma has no square root in the extraction field";
      return false;
    }
    RepSpec r0{RepSpec::Kind::Pi, 0, E.zero(), 0, b};
    RepSpec r4{RepSpec::Kind::Pi, 4, E.zero(), 0, b};
    ParithProfile p0 = profile_generic(s.grid, s.eigen, *es, r0);
    ParithProfile p4 = profile_generic(s.grid, s.eigen, *es, r4);
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s: dims=(%d,%d,%d,%d) from both weights",
                  c.label.c_str(), p0.dims[0], p0.dims[1], p0.dims[2],
                  p0.dims[3]);
    detail = buf;
    return p0.dims == p4.dims && p0.dims[1] >= 1 &&
           p0.nonzero() == std::vector<int>{1, 2, 3};
  });

  criterion(6, "degeneracy/transfer identities", [](std::string& detail) {
    bool ok = true;
    for (std::uint32_t p : {5u, 7u}) {
      Fq F(p, 1);
      HomologySpace triv = build_space({11, false}, {0, 0}, F);
      HomologySpace np = build_space({11, true}, {0, 0}, F);
      MatrixFq d1 = degeneracy(triv, np, DegVariant::One);
      MatrixFq dp = degeneracy(triv, np, DegVariant::P);
      MatrixFq t1 = transfer(np, triv, DegVariant::One);
      MatrixFq tp = transfer(np, triv, DegVariant::P);
      MatrixFq T = hecke(triv, HeckeLabel::Tp());
      MatrixFq S = hecke(triv, HeckeLabel::Sp());
      ok = ok && matmul_serial(d1, t1) == MatrixFq::identity(F, triv.dim);
      ok = ok && matmul_serial(dp, t1) == T;
      ok = ok && matmul_serial(d1, tp) == matmul_serial(inverse(S), T);
    }
    detail = "deg1*tr1=id, degp*tr1=T, deg1*trp=S^-1 T at p=5,7";
    return ok;
  });

  criterion(7, "hasse maps and U/V eigensystem matching",
            [](std::string& detail) {
    bool ok5 = hasse_criterion(5, detail);
    detail += "; ";
    bool ok7 = hasse_criterion(7, detail);
    return ok5 && ok7;
  });

  criterion(8, "Steinberg/trivial degrees for 20a1 at p=5",
            [](std::string& detail) {
    const CurveData& c = curve_by_label("20a1");
    if (reduction_type(c, 5) == Reduction::Good || c.conductor % 5 != 0) {
      detail = "20a1 is not multiplicative at 5";
      return false;
    }
    SessionConfig cfg;
    cfg.p = 5;
    cfg.N = static_cast<std::uint32_t>(c.conductor / 5);
    cfg.B = 13;
    Session s = Session::build(cfg);  // full weight grid
    s.ensure_hasse();
    const Eigensystem* es = curve_system(s, c);
    if (!es || es->eisenstein) {
      detail = "residual system not found or Eisenstein";
      return false;
    }
    const Fq& E = s.eigen.field;
    FqElem b = E.from_int(ap(c, 5));  // unit root of the Steinberg twist
    RepSpec st{RepSpec::Kind::Steinberg, 0, E.zero(), 0, b};
    RepSpec tv{RepSpec::Kind::Trivial, 0, E.zero(), 0, b};
    ParithProfile ps = profile_steinberg(*s.hasse, s.eigen, *es, st);
    ParithProfile pt = profile_trivial(*s.hasse, s.eigen, *es, tv);
    char buf[96];
    std::snprintf(buf, sizeof buf,
                  "steinberg=(%d,%d,%d,%d) trivial=(%d,%d,%d,%d)", ps.dims[0],
                  ps.dims[1], ps.dims[2], ps.dims[3], pt.dims[0], pt.dims[1],
                  pt.dims[2], pt.dims[3]);
    detail = buf;
    return ps.nonzero() == std::vector<int>{1, 2} &&
           pt.nonzero() == std::vector<int>{2, 3} &&
           ps.dims[2] == pt.dims[2];  // duality of the degree-2 pieces
  });

  criterion(9, "smooth-representation block identities", [](std::string& detail) {
    std::uint32_t p = 5;
    Fq F(p, 1);
    Rng rng{1};
    bool ok = true;

    std::vector<GL2Elt> points = {GL2Elt::identity(p), GL2Elt::alpha(p),
                                  GL2Elt::w(p)};
    for (int i = 0; i < 5; ++i) points.push_back(random_g(p, rng));

    InducedElement zq = InducedElement::zero(F, BaseTag::KSym, p - 1);
    InducedElement zf = InducedElement::zero(F, BaseTag::KSym, 0);
    for (const GL2Elt& g : points) {
      InducedElement f = InducedElement::zero(F, BaseTag::KSym, 0);
      ie_add_term(f, g, {F.one()}, F.one());
      // Identity A: (phi1, phi2) ∘ iota = [[1, 0], [T, phi]], on the
      // one-point f and on every one-point monomial q at the same g.
      ok = ok && phi12(iota(f, zq), 1) == f;
      ok = ok && phi12(iota(f, zq), 2) == hecke_local(f, HeckeLocal::T);
      for (int i = 0; i < static_cast<int>(p); ++i) {
        std::vector<FqElem> v(p, F.zero());
        v[i] = F.one();
        InducedElement q = InducedElement::zero(F, BaseTag::KSym, p - 1);
        ie_add_term(q, g, v, F.one());
        ok = ok && phi12(iota(zf, q), 1).is_zero();
        ok = ok && phi12(iota(zf, q), 2) == phi_map(q);
      }
      // Identity B: split ∘ (j1, j_alpha) = [[1, S^-1 T], [0, -psi]].
      auto [b11, b21] = split_cind(j1_map(f));
      ok = ok && b11 == f && b21.is_zero();
      auto [b12, b22] = split_cind(jalpha_map(f));
      ok = ok && b12 == hecke_S_inv(hecke_local(f, HeckeLocal::T));
      ok = ok && b22 == ie_scale(psi_map(f), F.neg(F.one()));
    }

    // bl_evaluate witness: [1, e*] + [w alpha, e*] maps w to 1.
    SymVector es = SymVector::estar(F, p - 1);
    InducedElement wit = InducedElement::zero(F, BaseTag::KSym, p - 1);
    ie_add_term(wit, GL2Elt::identity(p), es.coeffs, F.one());
    ie_add_term(wit, GL2Elt::w(p) * GL2Elt::alpha(p), es.coeffs, F.one());
    bool witness = bl_evaluate(wit, GL2Elt::w(p)) == F.one();
    ok = ok && witness;

    // T/S-equivariance of phi and psi on 50 random elements.
    for (int t = 0; t < 50; ++t) {
      InducedElement q = InducedElement::zero(F, BaseTag::KSym, p - 1);
      InducedElement f = InducedElement::zero(F, BaseTag::KSym, 0);
      for (int k = 0; k < 3; ++k) {
        std::vector<FqElem> v(p);
        for (auto& cc : v) cc = F.from_int(rng.range(0, p - 1));
        ie_add_term(q, random_g(p, rng), v, F.one());
        ie_add_term(f, random_g(p, rng), {F.from_int(rng.range(0, p - 1))},
                    F.one());
      }
      ok = ok && phi_map(hecke_local(q, HeckeLocal::T)) ==
                     hecke_local(phi_map(q), HeckeLocal::T);
      ok = ok && phi_map(hecke_local(q, HeckeLocal::S)) ==
                     hecke_local(phi_map(q), HeckeLocal::S);
      ok = ok && psi_map(hecke_local(f, HeckeLocal::T)) ==
                     hecke_local(psi_map(f), HeckeLocal::T);
      ok = ok && psi_map(hecke_local(f, HeckeLocal::S)) ==
                     hecke_local(psi_map(f), HeckeLocal::S);
    }
    detail = "identities A/B, witness at w, 50 equivariance trials";
    return ok;
  });

  criterion(10, "Koszul Tor against a brute-force complex",
            [](std::string& detail) {
    Fq F(5, 1);
    Rng rng{2};
    const int n = 6;
    int nonzero_profiles = 0;
    for (int trial = 0; trial < 100; ++trial) {
      MatrixFq T(F, n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) T.set(i, j, F.from_int(rng.range(0, 4)));
      FqElem planted = F.from_int(rng.range(0, 4));
      if (trial % 2 == 0) {
        // Plant the eigenpair (planted, e_0) so half the trials exercise
        // nonzero homology, not just the zero profile.
        T.set(0, 0, planted);
        for (int i = 1; i < n; ++i) T.set(i, 0, F.zero());
      }
      MatrixFq S(F, n, n);
      FqElem c0, c1, c2;
      do {  // a random polynomial in T commutes with it
        MatrixFq T2 = matmul_serial(T, T);
        c0 = F.from_int(rng.range(0, 4));
        c1 = F.from_int(rng.range(0, 4));
        c2 = F.from_int(rng.range(0, 4));
        S = MatrixFq::identity(F, n).scaled(c0) + T.scaled(c1) + T2.scaled(c2);
      } while (rank_of(S) < n);
      FqElem tau = F.from_int(rng.range(0, 4));
      FqElem sigma = F.from_int(rng.range(1, 4));
      if (trial % 2 == 0) {
        tau = planted;
        sigma = F.add(c0, F.add(F.mul(c1, tau), F.mul(c2, F.mul(tau, tau))));
      }
      TSModule m{T, S};
      TorProfile tor = koszul_tor(m, tau, sigma);

      // Brute-force Koszul complex 0 -> M -> M^2 -> M -> 0 with
      // d2 v = ((S - sigma) v, -(T - tau) v), d1 (v, w) = (T - tau) v +
      // (S - sigma) w.
      MatrixFq A = T - MatrixFq::identity(F, n).scaled(tau);
      MatrixFq B = S - MatrixFq::identity(F, n).scaled(sigma);
      MatrixFq D2 = vstack(B, A.scaled(F.neg(F.one())));
      MatrixFq D1 = hstack(A, B);
      int r2 = rank_of(D2), r1 = rank_of(D1);
      TorProfile brute{n - r1, 2 * n - r1 - r2, n - r2};
      if (!(tor == brute)) {
        detail = "disagreement at trial " + std::to_string(trial);
        return false;
      }
      if (tor.d1 != tor.d0 + tor.d2) {
        detail = "d1 != d0 + d2 at trial " + std::to_string(trial);
        return false;
      }
      if (tor.d1 > 0) ++nonzero_profiles;
    }
    detail = "100 trials, " + std::to_string(nonzero_profiles) +
             " with nonzero homology";
    return true;
  });

  std::printf("%s\n", failures == 0 ? "acceptance: all criteria passed"
                                    : "acceptance: FAILURES");
  return failures == 0 ? 0 : 1;
}
