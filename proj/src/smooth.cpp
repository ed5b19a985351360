#include "parithlab/smooth.hpp"

#include <stdexcept>

#include "parithlab/matrix.hpp"

namespace parithlab {
namespace {

P1Point colclass(const GL2Elt& k) {
  auto r = reduce_mod_p(k);
  return p1_label(k.p, r[0][0], r[1][0]);
}

std::vector<FqElem> act_coeff(const Fq& F, BaseTag tag, const GL2Elt& k,
                              const std::vector<FqElem>& v, int r) {
  switch (tag) {
    case BaseTag::KSym: {
      SymVector sv{r, v};
      return act_sym(F, k, sv, ActMode::DualOnSymDual).coeffs;
    }
    case BaseTag::KP1:
      return act_p1func(F, k, v);
    case BaseTag::IScalar:
      return v;  // trivial coefficient representation
  }
  throw std::logic_error("act_coeff: bad tag");
}

}  // namespace

std::pair<FqElem, P1Func> split_p1(const Fq& F, const P1Func& f) {
  FqElem c = F.zero();
  for (FqElem v : f) c = F.add(c, v);
  P1Func f0 = f;
  for (FqElem& v : f0) v = F.sub(v, c);
  return {c, f0};
}

P1Func poly_to_p1(const Fq& F, const SymVector& q) {
  if (q.r != static_cast<int>(F.p()) - 1)
    throw std::invalid_argument("poly_to_p1: degree must be p-1");
  std::uint32_t p = F.p();
  P1Func f(p + 1, F.zero());
  for (std::uint32_t pt = 0; pt <= p; ++pt)
    f[pt] = sym_eval_p1(F, q, static_cast<P1Point>(pt));
  FqElem s = F.zero();
  for (FqElem v : f) s = F.add(s, v);
  if (s != 0) throw std::logic_error("poly_to_p1: image not sum-zero");
  return f;
}

SymVector p1_to_poly(const Fq& F, const P1Func& f) {
  std::uint32_t p = F.p();
  // Evaluation matrix of the monomial basis at the p+1 points of P^1.
  MatrixFq E(F, p + 1, p);
  for (int i = 0; i < static_cast<int>(p); ++i) {
    SymVector mono = SymVector::zero(F, p - 1);
    mono.coeffs[i] = F.one();
    for (std::uint32_t pt = 0; pt <= p; ++pt)
      E.set(pt, i, sym_eval_p1(F, mono, static_cast<P1Point>(pt)));
  }
  MatrixFq b(F, p + 1, 1);
  for (std::uint32_t pt = 0; pt <= p; ++pt) b.set(pt, 0, f[pt]);
  MatrixFq x = solve(E, b);  // throws if f is not sum-zero
  SymVector q = SymVector::zero(F, p - 1);
  for (int i = 0; i < static_cast<int>(p); ++i) q.coeffs[i] = x.at(i, 0);
  return q;
}

P1Func act_p1func(const Fq& F, const GL2Elt& g, const P1Func& f) {
  std::uint32_t p = F.p();
  if (f.size() != p + 1) throw std::invalid_argument("act_p1func: bad length");
  auto h = reduce_inverse_mod_p(g);
  FqElem f_at_0 = F.zero();  // extension value f(0) = sum of f
  for (FqElem v : f) f_at_0 = F.add(f_at_0, v);
  P1Func out(p + 1, F.zero());
  for (std::uint32_t pt = 0; pt <= p; ++pt) {
    std::uint32_t v0 = pt < p ? pt : 1, v1 = pt < p ? 1 : 0;  // lift of pt
    std::uint32_t w0 = (h[0][0] * v0 + h[0][1] * v1) % p;
    std::uint32_t w1 = (h[1][0] * v0 + h[1][1] * v1) % p;
    out[pt] = (w0 == 0 && w1 == 0) ? f_at_0 : f[p1_label(p, w0, w1)];
  }
  return out;
}

InducedElement InducedElement::zero(const Fq& F, BaseTag tag, int r) {
  InducedElement e;
  e.F = F;
  e.tag = tag;
  e.r = tag == BaseTag::KSym ? r : 0;
  return e;
}

int InducedElement::coeff_len() const {
  switch (tag) {
    case BaseTag::KSym: return r + 1;
    case BaseTag::KP1: return static_cast<int>(F.p()) + 1;
    case BaseTag::IScalar: return 1;
  }
  throw std::logic_error("coeff_len: bad tag");
}

bool InducedElement::operator==(const InducedElement& o) const {
  return tag == o.tag && r == o.r && supp == o.supp;
}

void ie_add_term(InducedElement& e, const GL2Elt& g,
                 const std::vector<FqElem>& v, FqElem c) {
  if (static_cast<int>(v.size()) != e.coeff_len())
    throw std::invalid_argument("ie_add_term: coefficient length mismatch");
  if (c == 0) return;
  bool zero = true;
  for (FqElem x : v)
    if (x != 0) { zero = false; break; }
  if (zero) return;
  SubgroupTag st = e.tag == BaseTag::IScalar ? SubgroupTag::I : SubgroupTag::K;
  CosetRep key = canonicalize(g.inverse(), st);
  // [g, v] = [h^{-1}, (h g) v] with h the canonical coset matrix.
  GL2Elt k = key.matrix(g.p) * g;
  std::vector<FqElem> nv = act_coeff(e.F, e.tag, k, v, e.r);
  auto it = e.supp.find(key);
  if (it == e.supp.end())
    it = e.supp.emplace(key, std::vector<FqElem>(e.coeff_len(), 0)).first;
  bool nonzero = false;
  for (int i = 0; i < e.coeff_len(); ++i) {
    it->second[i] = e.F.add(it->second[i], e.F.mul(c, nv[i]));
    if (it->second[i] != 0) nonzero = true;
  }
  if (!nonzero) e.supp.erase(it);
}

InducedElement ie_add(const InducedElement& a, const InducedElement& b) {
  if (a.tag != b.tag || a.r != b.r) throw std::invalid_argument("ie_add: mismatch");
  InducedElement out = a;
  for (const auto& [key, v] : b.supp) {
    auto it = out.supp.find(key);
    if (it == out.supp.end()) {
      out.supp.emplace(key, v);
      continue;
    }
    bool nonzero = false;
    for (size_t i = 0; i < v.size(); ++i) {
      it->second[i] = out.F.add(it->second[i], v[i]);
      if (it->second[i] != 0) nonzero = true;
    }
    if (!nonzero) out.supp.erase(it);
  }
  return out;
}

InducedElement ie_scale(const InducedElement& a, FqElem c) {
  InducedElement out = InducedElement::zero(a.F, a.tag, a.r);
  if (c == 0) return out;
  for (const auto& [key, v] : a.supp) {
    std::vector<FqElem> nv(v.size());
    for (size_t i = 0; i < v.size(); ++i) nv[i] = a.F.mul(v[i], c);
    out.supp.emplace(key, std::move(nv));
  }
  return out;
}

InducedElement ie_translate(const GL2Elt& gamma, const InducedElement& e) {
  InducedElement out = InducedElement::zero(e.F, e.tag, e.r);
  for (const auto& [key, v] : e.supp)
    ie_add_term(out, gamma * key.matrix(gamma.p).inverse(), v, e.F.one());
  return out;
}

namespace {

InducedElement hecke_T_K(const InducedElement& e) {
  std::uint32_t p = e.F.p();
  InducedElement out = InducedElement::zero(e.F, e.tag, e.r);
  GL2Elt al = GL2Elt::alpha(p);
  GL2Elt al_inv = al.inverse();
  for (const GL2Elt& x : cosets_K_mod_I(p)) {
    GL2Elt xa = x * al;
    GL2Elt gminus = al_inv * x.inverse();
    for (const auto& [key, v] : e.supp) {
      std::vector<FqElem> nv = act_coeff(e.F, e.tag, gminus, v, e.r);
      ie_add_term(out, key.matrix(p).inverse() * xa, nv, e.F.one());
    }
  }
  return out;
}

}  // namespace

InducedElement kp1_to_iscalar(const InducedElement& e) {
  if (e.tag != BaseTag::KP1) throw std::invalid_argument("kp1_to_iscalar: tag");
  std::uint32_t p = e.F.p();
  InducedElement out = InducedElement::zero(e.F, BaseTag::IScalar);
  auto reps = cosets_K_mod_I(p);
  for (const auto& [key, f] : e.supp) {
    GL2Elt g = key.matrix(p).inverse();
    for (const GL2Elt& x : reps)
      ie_add_term(out, g * x, {e.F.one()}, f[colclass(x)]);
  }
  return out;
}

InducedElement iscalar_to_kp1(const InducedElement& e) {
  if (e.tag != BaseTag::IScalar) throw std::invalid_argument("iscalar_to_kp1: tag");
  std::uint32_t p = e.F.p();
  InducedElement out = InducedElement::zero(e.F, BaseTag::KP1);
  for (const auto& [key, a] : e.supp) {
    // key.matrix = L * h_K, so the group element is h_K^{-1} L^{-1} and the
    // P^1-function component is a delta at the column class of L^{-1}.
    CosetRep kk = key;
    kk.tag = SubgroupTag::K;
    kk.p1 = 0;
    GL2Elt L = key.p1 < static_cast<P1Point>(p)
                   ? GL2Elt::from_ints(p, 1, 0, key.p1, 1)
                   : GL2Elt::w(p);
    P1Func f(p + 1, e.F.zero());
    f[colclass(L.inverse())] = a[0];
    ie_add_term(out, kk.matrix(p).inverse(), f, e.F.one());
  }
  return out;
}

InducedElement hecke_local(const InducedElement& e, HeckeLocal which) {
  std::uint32_t p = e.F.p();
  if (which == HeckeLocal::S) return ie_translate(GL2Elt::beta(p), e);
  if (e.tag == BaseTag::IScalar)
    return kp1_to_iscalar(hecke_T_K(iscalar_to_kp1(e)));
  return hecke_T_K(e);
}

InducedElement hecke_S_inv(const InducedElement& e) {
  return ie_translate(GL2Elt::beta(e.F.p()).inverse(), e);
}

InducedElement phi12(const InducedElement& e, int which) {
  if (e.tag != BaseTag::IScalar) throw std::invalid_argument("phi12: tag");
  std::uint32_t p = e.F.p();
  InducedElement out = InducedElement::zero(e.F, BaseTag::KSym, 0);
  GL2Elt al = GL2Elt::alpha(p);
  for (const auto& [key, a] : e.supp) {
    GL2Elt g = key.matrix(p).inverse();
    ie_add_term(out, which == 1 ? g : g * al, a, e.F.one());
  }
  return out;
}

InducedElement iota(const InducedElement& f, const InducedElement& q) {
  const Fq& F = f.F;
  std::uint32_t p = F.p();
  if (f.tag != BaseTag::KSym || f.r != 0)
    throw std::invalid_argument("iota: first argument must have degree 0");
  if (q.tag != BaseTag::KSym || q.r != static_cast<int>(p) - 1)
    throw std::invalid_argument("iota: second argument must have degree p-1");
  InducedElement mid = InducedElement::zero(F, BaseTag::KP1);
  for (const auto& [key, a] : f.supp) {
    P1Func c(p + 1, a[0]);  // constant function
    ie_add_term(mid, key.matrix(p).inverse(), c, F.one());
  }
  for (const auto& [key, qq] : q.supp) {
    SymVector sv{static_cast<int>(p) - 1, qq};
    ie_add_term(mid, key.matrix(p).inverse(), poly_to_p1(F, sv), F.one());
  }
  return kp1_to_iscalar(mid);
}

std::pair<InducedElement, InducedElement> split_cind(const InducedElement& e) {
  const Fq& F = e.F;
  std::uint32_t p = F.p();
  InducedElement mid = iscalar_to_kp1(e);
  InducedElement c0 = InducedElement::zero(F, BaseTag::KSym, 0);
  InducedElement cq = InducedElement::zero(F, BaseTag::KSym, p - 1);
  for (const auto& [key, f] : mid.supp) {
    auto [c, f0] = split_p1(F, f);
    GL2Elt g = key.matrix(p).inverse();
    ie_add_term(c0, g, {c}, F.one());
    ie_add_term(cq, g, p1_to_poly(F, f0).coeffs, F.one());
  }
  return {c0, cq};
}

InducedElement phi_map(const InducedElement& q) {
  return phi12(iota(InducedElement::zero(q.F, BaseTag::KSym, 0), q), 2);
}

InducedElement psi_map(const InducedElement& f) {
  const Fq& F = f.F;
  std::uint32_t p = F.p();
  if (f.tag != BaseTag::KSym || f.r != 0)
    throw std::invalid_argument("psi_map: degree-0 input required");
  InducedElement out = InducedElement::zero(F, BaseTag::KSym, p - 1);
  GL2Elt binv = GL2Elt::beta(p).inverse();
  GL2Elt al = GL2Elt::alpha(p);
  SymVector es = SymVector::estar(F, p - 1);
  for (const auto& [key, a] : f.supp) {
    GL2Elt g = key.matrix(p).inverse();
    for (const GL2Elt& x : cosets_K_mod_I(p))
      ie_add_term(out, binv * g * x * al, es.coeffs, a[0]);
  }
  return out;
}

InducedElement j1_map(const InducedElement& f) {
  const Fq& F = f.F;
  std::uint32_t p = F.p();
  if (f.tag != BaseTag::KSym || f.r != 0)
    throw std::invalid_argument("j1_map: degree-0 input required");
  InducedElement out = InducedElement::zero(F, BaseTag::IScalar);
  for (const auto& [key, a] : f.supp) {
    GL2Elt g = key.matrix(p).inverse();
    for (const GL2Elt& x : cosets_K_mod_I(p))
      ie_add_term(out, g * x, {F.one()}, a[0]);
  }
  return out;
}

InducedElement jalpha_map(const InducedElement& f) {
  const Fq& F = f.F;
  std::uint32_t p = F.p();
  if (f.tag != BaseTag::KSym || f.r != 0)
    throw std::invalid_argument("jalpha_map: degree-0 input required");
  // Through the intertwining isomorphism: [g, a] -> sum over reps x of the
  // opposite Iwahori quotient K / (alpha^{-1} I alpha ∩ K) of [g x alpha^{-1}, a].
  InducedElement out = InducedElement::zero(F, BaseTag::IScalar);
  GL2Elt al_inv = GL2Elt::alpha(p).inverse();
  std::vector<GL2Elt> reps;
  for (std::uint32_t j = 0; j < p; ++j)
    reps.push_back(GL2Elt::from_ints(p, 1, j, 0, 1));
  reps.push_back(GL2Elt::w(p));
  for (const auto& [key, a] : f.supp) {
    GL2Elt g = key.matrix(p).inverse();
    for (const GL2Elt& x : reps)
      ie_add_term(out, g * x * al_inv, {F.one()}, a[0]);
  }
  return out;
}

FqElem bl_evaluate(const InducedElement& e, const GL2Elt& h) {
  const Fq& F = e.F;
  std::uint32_t p = F.p();
  if (e.tag != BaseTag::KSym || e.r != static_cast<int>(p) - 1)
    throw std::invalid_argument("bl_evaluate: degree p-1 input required");
  FqElem acc = F.zero();
  for (const auto& [key, q] : e.supp) {
    // g = key^{-1}; decompose g^{-1} h = key.matrix * h = x b.
    auto [x, b] = iwasawa(key.matrix(p) * h);
    SymVector sv{static_cast<int>(p) - 1, q};
    acc = F.add(acc, sym_eval_p1(F, sv, colclass(x)));
  }
  return acc;
}

}  // namespace parithlab
