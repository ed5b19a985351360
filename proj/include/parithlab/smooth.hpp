#pragma once

#include <map>
#include <utility>
#include <vector>

#include "parithlab/gl2.hpp"

namespace parithlab {

// Function P^1(F_p) -> F, indexed by P1Point labels (length p+1).
using P1Func = std::vector<FqElem>;

// f = c*1 + f0 with sum(f0) = 0; c = sum(f) since |P^1| = p+1 = 1 in F.
std::pair<FqElem, P1Func> split_p1(const Fq& F, const P1Func& f);

// Degree-(p-1) polynomial as a function on P^1; lands in the sum-zero part.
P1Func poly_to_p1(const Fq& F, const SymVector& q);

// Inverse of poly_to_p1 on sum-zero functions.
SymVector p1_to_poly(const Fq& F, const P1Func& f);

// G^- action on Map(P^1(F_p), k) through the extension to P^1 ∪ {0} with
// f(0) = sum of f.
P1Func act_p1func(const Fq& F, const GL2Elt& g, const P1Func& f);

// Element of a compact induction with finite support.  Keys canonicalize
// the support's left cosets gK (resp. gI) as right cosets Kg^{-1} (Ig^{-1});
// the stored coefficient is normalized to the group element key.matrix()^{-1}.
enum class BaseTag {
  KSym,     // cInd_K^G(Sym^r(k^2)^dual), coefficient length r+1
  KP1,      // cInd_K^G(Map(P^1(F_p), k)), coefficient length p+1
  IScalar,  // cInd_I^G(k), coefficient length 1
};

struct InducedElement {
  Fq F;
  BaseTag tag = BaseTag::KSym;
  int r = 0;  // Sym degree; ignored for other tags
  std::map<CosetRep, std::vector<FqElem>> supp;

  static InducedElement zero(const Fq& F, BaseTag tag, int r = 0);
  int coeff_len() const;
  bool is_zero() const { return supp.empty(); }
  bool operator==(const InducedElement& o) const;
};

// e += c * [g, v]; canonicalizes the support key and normalizes v by the
// residual K- (resp. I-) part.  v must have coeff_len entries.
void ie_add_term(InducedElement& e, const GL2Elt& g,
                 const std::vector<FqElem>& v, FqElem c);

InducedElement ie_add(const InducedElement& a, const InducedElement& b);
InducedElement ie_scale(const InducedElement& a, FqElem c);
// [g, v] -> [gamma * g, v] extended linearly.
InducedElement ie_translate(const GL2Elt& gamma, const InducedElement& e);

enum class HeckeLocal { T, S };

// T[g,v] = sum over x in K/I of [g x alpha, alpha^{-1} x^{-1} v];
// S[g,v] = [beta g, v].  On IScalar these are transported through the
// isomorphism cInd_K^G(cInd_I^K k) ≅ cInd_I^G(k).
InducedElement hecke_local(const InducedElement& e, HeckeLocal which);
InducedElement hecke_S_inv(const InducedElement& e);

// The isomorphism cInd_K^G(Map(P^1,k)) ≅ cInd_I^G(k) and its inverse.
InducedElement kp1_to_iscalar(const InducedElement& e);
InducedElement iscalar_to_kp1(const InducedElement& e);

// phi_1([g,a]) = [g,a], phi_2([g,a]) = [g alpha, a]: cInd_I^G(k) -> cInd_K^G(k).
InducedElement phi12(const InducedElement& e, int which);

// Inclusion cInd_K^G(k) ⊕ cInd_K^G(Sym^{p-1}) -> cInd_I^G(k) through the
// splitting of Map(P^1(F_p), k).
InducedElement iota(const InducedElement& f, const InducedElement& q);

// Splitting of cInd_I^G(k) into (constants, Sym^{p-1}) components.
std::pair<InducedElement, InducedElement> split_cind(const InducedElement& e);

// phi = phi_2 ∘ iota(0, -): cInd_K^G(Sym^{p-1}) -> cInd_K^G(k).
InducedElement phi_map(const InducedElement& q);

// psi([g,1]) = sum over x in K/I of [beta^{-1} g x alpha, e*].
InducedElement psi_map(const InducedElement& f);

// The two inclusions cInd_K^G(k) -> cInd_I^G(k) of the Mayer-Vietoris
// sequence: j1 sums over K/I; j_alpha goes through the intertwining
// isomorphism with alpha K alpha^{-1}.
InducedElement j1_map(const InducedElement& f);
InducedElement jalpha_map(const InducedElement& f);

// Principal-series evaluation: [g, Q] -> Q(x (1:0)) where g^{-1} h = x b.
FqElem bl_evaluate(const InducedElement& e, const GL2Elt& h);

}  // namespace parithlab
