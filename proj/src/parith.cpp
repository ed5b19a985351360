#include "parithlab/parith.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

#include "parithlab/heckeop.hpp"

namespace parithlab {

std::vector<int> ParithProfile::nonzero() const {
  std::vector<int> out;
  for (int i = 0; i < 4; ++i)
    if (dims[i] != 0) out.push_back(i);
  return out;
}

const HomologySpace* WeightGrid::find(int r, int a) const {
  for (const HomologySpace* s : spaces)
    if (s->weight.r == r && s->weight.a == a) return s;
  return nullptr;
}

bool WeightGrid::full(std::uint32_t p) const {
  for (int r = 0; r <= static_cast<int>(p) - 1; ++r)
    for (int a = 0; a <= static_cast<int>(p) - 2; ++a)
      if (!find(r, a)) return false;
  return true;
}

HasseData build_hasse_data(const HomologySpace& np, const HomologySpace& triv,
                           const HomologySpace& sym,
                           const std::vector<std::uint32_t>& ells) {
  MatrixFq dp = degeneracy(triv, np, DegVariant::P);
  MatrixFq tp = transfer(np, triv, DegVariant::P);
  ShapiroMap sh = shapiro(np, triv, sym);
  MatrixFq phi = phi_tilde(sh, dp, triv);
  MatrixFq psi = psi_tilde(sh, tp);

  HasseData hd;
  hd.mods = hasse_modules(psi, phi);
  hd.ells = ells;
  hd.TpU = induce_on_U(hd.mods, hecke(sym, HeckeLabel::Tp()));
  hd.SpU = induce_on_U(hd.mods, hecke(sym, HeckeLabel::Sp()));
  hd.TpV = induce_on_V(hd.mods, hecke(sym, HeckeLabel::Tp()));
  hd.SpV = induce_on_V(hd.mods, hecke(sym, HeckeLabel::Sp()));
  for (std::uint32_t ell : ells) {
    hd.TlU.push_back(induce_on_U(hd.mods, hecke(sym, HeckeLabel::T(ell))));
    hd.SlU.push_back(induce_on_U(hd.mods, hecke(sym, HeckeLabel::S(ell))));
    hd.TlV.push_back(induce_on_V(hd.mods, hecke(sym, HeckeLabel::T(ell))));
    hd.SlV.push_back(induce_on_V(hd.mods, hecke(sym, HeckeLabel::S(ell))));
  }
  return hd;
}

namespace {

ParithProfile start_profile(const EigenData& ed, const Eigensystem& es,
                            const RepSpec& rep) {
  if (es.eisenstein)
    throw std::invalid_argument("profile: eigensystem is Eisenstein");
  ParithProfile out;
  out.rep = rep;
  out.eigensystem_id = es.id;
  out.predicted =
      predict(ed.field, rep, es, static_cast<int>(ed.field.p()) - 1);
  return out;
}

// Localize a U/V-side module at the eigensystem, dividing the constraint
// values by ell^a / ell^{2a} to account for the omega^a twist.
MatrixFq localize_twisted(const Fq& E, const std::vector<std::uint32_t>& ells,
                          const std::vector<MatrixFq>& Tl,
                          const std::vector<MatrixFq>& Sl,
                          const Eigensystem& es, int a, int dim) {
  std::vector<std::pair<MatrixFq, FqElem>> cons;
  for (size_t i = 0; i < ells.size(); ++i) {
    FqElem la = E.pow(E.from_int(ells[i]), static_cast<std::uint64_t>(a));
    auto [t, s] = es.at(ells[i]);
    cons.push_back({Tl[i].lift_to(E), E.mul(t, E.inv(la))});
    cons.push_back({Sl[i].lift_to(E), E.mul(s, E.inv(E.mul(la, la)))});
  }
  return localize(cons, E, dim);
}

}  // namespace

ParithProfile profile_generic(const WeightGrid& grid, const EigenData& ed,
                              const Eigensystem& es, const RepSpec& rep) {
  if (rep.kind != RepSpec::Kind::Pi)
    throw std::invalid_argument("profile_generic: rep is not generic");
  const Fq& E = ed.field;
  const int p1 = static_cast<int>(E.p()) - 1;
  ParithProfile out = start_profile(ed, es, rep);

  const int sw = ((rep.a + rep.r) % p1 + p1) % p1;
  const HomologySpace* sp = grid.find(rep.r, sw);
  if (!sp)
    throw std::invalid_argument("profile_generic: weight not on the grid");

  MatrixFq basis;
  bool have = false;
  for (const Occurrence& occ : es.occurrences)
    if (occ.weight.r == rep.r && occ.weight.a == sw) {
      basis = have ? hstack(basis, occ.basis) : occ.basis;
      have = true;
    }
  if (have) {
    TSModule m{restrict_to(hecke(*sp, HeckeLabel::Tp()).lift_to(E), basis),
               restrict_to(hecke(*sp, HeckeLabel::Sp()).lift_to(E), basis)};
    TorProfile t =
        koszul_tor(m, E.mul(rep.lambda, rep.b), E.mul(rep.b, rep.b));
    out.dims = {0, t.d0, t.d1, t.d2};
  }
  out.match = (out.nonzero() == out.predicted);
  return out;
}

ParithProfile profile_steinberg(const HasseData& hd, const EigenData& ed,
                                const Eigensystem& es, const RepSpec& rep) {
  if (rep.kind != RepSpec::Kind::Steinberg)
    throw std::invalid_argument("profile_steinberg: rep kind mismatch");
  const Fq& E = ed.field;
  ParithProfile out = start_profile(ed, es, rep);

  MatrixFq loc = localize_twisted(E, hd.ells, hd.TlU, hd.SlU, es, rep.a,
                                  hd.mods.dimU());
  if (loc.cols() > 0) {
    TSModule m{restrict_to(hd.TpU.lift_to(E), loc),
               restrict_to(hd.SpU.lift_to(E), loc)};
    TorProfile t = koszul_tor(m, rep.b, E.mul(rep.b, rep.b));
    out.dims = {0, t.d0, t.d2, 0};  // eigenquotient, then eigenspace
  }
  out.match = (out.nonzero() == out.predicted);
  return out;
}

ParithProfile profile_trivial(const HasseData& hd, const EigenData& ed,
                              const Eigensystem& es, const RepSpec& rep) {
  if (rep.kind != RepSpec::Kind::Trivial)
    throw std::invalid_argument("profile_trivial: rep kind mismatch");
  const Fq& E = ed.field;
  ParithProfile out = start_profile(ed, es, rep);

  MatrixFq loc = localize_twisted(E, hd.ells, hd.TlV, hd.SlV, es, rep.a,
                                  hd.mods.dimV());
  if (loc.cols() > 0) {
    TSModule m{restrict_to(hd.TpV.lift_to(E), loc),
               restrict_to(hd.SpV.lift_to(E), loc)};
    TorProfile t = koszul_tor(m, rep.b, E.mul(rep.b, rep.b));
    out.dims = {0, 0, t.d0, t.d2};
  }
  out.match = (out.nonzero() == out.predicted);
  return out;
}

ParithProfile profile(const WeightGrid& grid, const HasseData& hd,
                      const EigenData& ed, const Eigensystem& es,
                      const RepSpec& rep) {
  switch (rep.kind) {
    case RepSpec::Kind::Pi:
      return profile_generic(grid, ed, es, rep);
    case RepSpec::Kind::Steinberg:
      return profile_steinberg(hd, ed, es, rep);
    case RepSpec::Kind::Trivial:
      return profile_trivial(hd, ed, es, rep);
  }
  throw std::logic_error("profile: bad rep kind");
}

std::vector<RepSpec> candidate_reps(const Fq& F, const Eigensystem& es,
                                    std::uint32_t p) {
  const int p1 = static_cast<int>(p) - 1;
  std::set<std::tuple<int, int, std::uint64_t, int, std::uint64_t>> seen;
  std::vector<RepSpec> out;
  auto push = [&](RepSpec r) {
    auto key = std::make_tuple(static_cast<int>(r.kind), r.r,
                               F.encode(r.lambda), r.a, F.encode(r.b));
    if (seen.insert(key).second) out.push_back(r);
  };

  for (const Occurrence& occ : es.occurrences) {
    const int a = ((occ.weight.a - occ.weight.r) % p1 + p1) % p1;
    FqElem root;
    if (!sqrt_in_field(F, occ.sigma, root)) continue;
    for (FqElem b : {root, F.neg(root)}) {
      if (F.is_zero(occ.tau)) {
        push(RepSpec{RepSpec::Kind::Pi, occ.weight.r, F.zero(), a, b});
        continue;
      }
      FqElem lam = F.mul(occ.tau, F.inv(b));
      bool unit_lam = F.mul(lam, lam) == F.one();
      if (unit_lam && (occ.weight.r == 0 || occ.weight.r == p1)) {
        // Reducible principal-series point: pi(r, ±1, chi) is skipped; the
        // weight-(p-1) occurrence instead yields the Steinberg and trivial
        // twists by chi = omega^a unr(tau).
        if (occ.weight.r == p1) {
          push(RepSpec{RepSpec::Kind::Steinberg, 0, F.zero(), a, occ.tau});
          push(RepSpec{RepSpec::Kind::Trivial, 0, F.zero(), a, occ.tau});
        }
        continue;
      }
      push(RepSpec{RepSpec::Kind::Pi, occ.weight.r, lam, a, b});
    }
  }
  return out;
}

bool ConsistencyReport::all_match() const {
  return std::all_of(profiles.begin(), profiles.end(),
                     [](const ParithProfile& p) { return p.match; });
}

ConsistencyReport consistency_report(const WeightGrid& grid,
                                     const HasseData& hd,
                                     const EigenData& ed) {
  const std::uint32_t p = ed.field.p();
  ConsistencyReport rep;
  rep.partial = !grid.full(p);
  for (const Eigensystem& es : ed.systems) {
    if (es.eisenstein) continue;
    for (const RepSpec& r : candidate_reps(ed.field, es, p))
      rep.profiles.push_back(profile(grid, hd, ed, es, r));
  }
  return rep;
}

}  // namespace parithlab
