#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "parithlab/cache.hpp"
#include "parithlab/ecurve.hpp"
#include "parithlab/parith.hpp"
#include "parithlab/session.hpp"

using namespace parithlab;

namespace {

// Eigensystem of a session whose away labels reduce the curve's a_ell, with
// trivial diamond part; null when absent.
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

}  // namespace

TEST_CASE("curve oracle: table data and point counts") {
  const CurveData& c11 = curve_by_label("11a1");
  CHECK(c11.conductor == 11);
  CHECK(c11.discriminant() == -161051);
  CHECK(ap(c11, 2) == -2);
  CHECK(ap(c11, 3) == -1);
  CHECK(ap(c11, 5) == 1);
  CHECK(ap(c11, 7) == -2);
  CHECK(ap(c11, 13) == 4);
  // Hasse bound at good primes.
  for (const CurveData& c : curve_table())
    for (std::uint32_t ell : {3u, 7u, 11u, 13u})
      if (reduction_type(c, ell) == Reduction::Good)
        CHECK(static_cast<long long>(ap(c, ell)) * ap(c, ell) <= 4ll * ell);
}

TEST_CASE("curve oracle: reduction types") {
  const CurveData& c11 = curve_by_label("11a1");
  CHECK(reduction_type(c11, 11) == Reduction::MultiplicativeSplit);
  CHECK(ap(c11, 11) == 1);
  const CurveData& c20 = curve_by_label("20a1");
  CHECK(c20.conductor == 20);
  CHECK(reduction_type(c20, 5) == Reduction::MultiplicativeNonsplit);
  CHECK(ap(c20, 5) == -1);
  CHECK(reduction_type(c20, 2) == Reduction::Additive);
  CHECK_THROWS(ap(c20, 2));
}

TEST_CASE("curve oracle: supersingular locator") {
  auto ss5 = supersingular_curves(5);
  REQUIRE(ss5.size() == 3);
  CHECK(ss5[0].label == "14a1");
  CHECK(ss5[1].label == "27a1");
  CHECK(ss5[2].label == "36a1");
  for (const CurveData& c : ss5) CHECK(ap(c, 5) == 0);
  auto ss7 = supersingular_curves(7);
  REQUIRE(ss7.size() == 3);
  CHECK(ss7[0].label == "15a1");
  CHECK(ss7[1].label == "24a1");
  CHECK(ss7[2].label == "32a1");
  for (const CurveData& c : ss7) CHECK(ap(c, 7) == 0);
}

TEST_CASE("sturm_bound") {
  CHECK(sturm_bound(11, 0) == 10);
  CHECK(sturm_bound(11, 6) == 40);
  CHECK(sturm_bound(4, 4) == 3);
}

TEST_CASE("session config validation") {
  SessionConfig bad;
  bad.p = 4;  // not prime
  bad.N = 11;
  CHECK_THROWS(bad.validate());
  bad.p = 3;  // below the p >= 5 desk-scale bound
  CHECK_THROWS(bad.validate());
  bad.p = 5;
  bad.N = 10;  // gcd(p, N) != 1
  CHECK_THROWS(bad.validate());
  bad.N = 2;  // too small for the torsion-free presentation
  CHECK_THROWS(bad.validate());
  bad.N = 11;
  bad.weights = {{5, 0}};  // r out of range for p = 5
  CHECK_THROWS(bad.validate());
  bad.weights = {{0, 4}};  // a out of range
  CHECK_THROWS(bad.validate());
  bad.weights = {{0, 0}};
  CHECK_NOTHROW(bad.validate());
}

TEST_CASE("generic profile for the 11a1 system at (7, 11)") {
  SessionConfig cfg;
  cfg.p = 7;
  cfg.N = 11;
  cfg.B = 13;
  cfg.weights = {{0, 0}, {6, 0}};
  Session s = Session::build(cfg);
  const Fq& E = s.eigen.field;
  const Eigensystem* es = curve_system(s, curve_by_label("11a1"));
  REQUIRE(es != nullptr);
  CHECK(!es->eisenstein);

  RepSpec rep{RepSpec::Kind::Pi, 0, E.from_int(5), 0, E.one()};
  ParithProfile pr = profile_generic(s.grid, s.eigen, *es, rep);
  CHECK(pr.dims[0] == 0);
  CHECK(pr.dims[1] >= 1);
  CHECK(pr.dims[1] == pr.dims[3]);            // d0 = d2
  CHECK(pr.dims[2] == pr.dims[1] + pr.dims[3]);  // d1 = d0 + d2
  CHECK(pr.nonzero() == std::vector<int>{1, 2, 3});
  CHECK(pr.predicted == std::vector<int>{1, 2, 3});
  CHECK(pr.match);

  // Weight-(p-1) twin computes the same profile from a different space.
  RepSpec twin{RepSpec::Kind::Pi, 6, E.from_int(5), 0, E.one()};
  ParithProfile pt = profile_generic(s.grid, s.eigen, *es, twin);
  CHECK(pt.dims == pr.dims);
  CHECK(pt.match);

  // A representation missing the eigensystem: zero profile, empty
  // prediction, counted as a match.
  RepSpec miss{RepSpec::Kind::Pi, 0, E.from_int(3), 0, E.one()};
  ParithProfile pm = profile_generic(s.grid, s.eigen, *es, miss);
  CHECK(pm.nonzero().empty());
  CHECK(pm.predicted.empty());
  CHECK(pm.match);

  // Profiles are only defined on non-Eisenstein systems.
  for (const Eigensystem& e : s.eigen.systems)
    if (e.eisenstein) {
      CHECK_THROWS(profile_generic(s.grid, s.eigen, e, rep));
      break;
    }

  // candidate_reps proposes the representation we checked.
  auto cands = candidate_reps(E, *es, 7);
  bool found = false;
  for (const RepSpec& r : cands)
    if (r.kind == RepSpec::Kind::Pi && r.r == 0 &&
        (r.lambda == E.from_int(5) || r.lambda == E.from_int(2)))
      found = true;
  CHECK(found);
}

TEST_CASE("supersingular cycling for 14a1 at p = 5") {
  SessionConfig cfg;
  cfg.p = 5;
  cfg.N = 14;
  cfg.B = 13;
  cfg.weights = {{0, 0}, {4, 0}};
  Session s = Session::build(cfg);
  const Fq& E = s.eigen.field;
  const CurveData& c = curve_by_label("14a1");
  CHECK(ap(c, 5) == 0);
  const Eigensystem* es = curve_system(s, c);
  REQUIRE(es != nullptr);
  CHECK(!es->eisenstein);

  // Occurrence cycling: (r, a, tau=0, sigma) appears iff
  // (p-1-r, a+r, 0, sigma) does, with equal multiplicity.
  for (const Occurrence& o : es->occurrences) {
    CHECK(E.is_zero(o.tau));
    bool twin = false;
    for (const Occurrence& t : es->occurrences)
      if (t.weight.r == 4 - o.weight.r &&
          (t.weight.a - o.weight.a - o.weight.r) % 4 == 0 &&
          t.sigma == o.sigma && t.mult == o.mult)
        twin = true;
    CHECK(twin);
  }

  // Equal positive profiles from both weights, nonzero exactly in {1,2,3}.
  FqElem sigma = es->occurrences[0].sigma;
  FqElem b = 0;
  REQUIRE(sqrt_in_field(E, sigma, b));
  RepSpec r0{RepSpec::Kind::Pi, 0, E.zero(), 0, b};
  RepSpec r4{RepSpec::Kind::Pi, 4, E.zero(), 0, b};
  ParithProfile p0 = profile_generic(s.grid, s.eigen, *es, r0);
  ParithProfile p4 = profile_generic(s.grid, s.eigen, *es, r4);
  CHECK(p0.dims == p4.dims);
  CHECK(p0.nonzero() == std::vector<int>{1, 2, 3});
  CHECK(p0.match);
  CHECK(p4.match);
}

TEST_CASE("full-grid consistency report at (5, 4) with Steinberg/trivial") {
  SessionConfig cfg;
  cfg.p = 5;
  cfg.N = 4;
  cfg.B = 13;
  Session s = Session::build(cfg);  // empty weights = full 5x4 grid
  CHECK(s.grid.full(5));
  s.ensure_hasse();
  ConsistencyReport rep = consistency_report(s.grid, *s.hasse, s.eigen);
  CHECK(!rep.partial);
  CHECK(rep.all_match());
  CHECK(!rep.profiles.empty());

  // The 20a1 system (multiplicative non-split at 5, b = a_5 = -1) drives
  // one Steinberg and one trivial profile through U and V.
  const Eigensystem* es20 = curve_system(s, curve_by_label("20a1"));
  REQUIRE(es20 != nullptr);
  const ParithProfile* st = nullptr;
  const ParithProfile* tv = nullptr;
  for (const ParithProfile& p : rep.profiles) {
    if (p.eigensystem_id != es20->id) continue;
    if (p.rep.kind == RepSpec::Kind::Steinberg) st = &p;
    if (p.rep.kind == RepSpec::Kind::Trivial) tv = &p;
  }
  REQUIRE(st != nullptr);
  REQUIRE(tv != nullptr);
  CHECK(st->rep.b == s.eigen.field.from_int(-1));
  CHECK(st->nonzero() == std::vector<int>{1, 2});
  CHECK(tv->nonzero() == std::vector<int>{2, 3});
  // Duality: the degree-2 dimensions agree across the two profiles.
  CHECK(st->dims[2] == tv->dims[2]);
  CHECK(st->match);
  CHECK(tv->match);
}

TEST_CASE("cache: save/load round trip through a stream") {
  Fq F(5, 1);
  HomologySpace sp = build_space({11, false}, {0, 0}, F);
  MatrixFq t2 = hecke(sp, HeckeLabel::T(2));
  CacheKey key = cache_key(sp, "T2");
  CHECK(key.p == 5);
  CHECK(key.N == 11);
  CHECK(key.q == 5);
  std::stringstream ss;
  save_matrix(ss, key, t2);
  MatrixFq back = load_matrix(ss, key, F);
  CHECK(back == t2);
  // Key mismatch is an error.
  std::stringstream ss2;
  save_matrix(ss2, key, t2);
  CacheKey other = key;
  other.label = "T3";
  CHECK_THROWS(load_matrix(ss2, other, F));
}

TEST_CASE("cache: disk layer reproduces operators bit-exactly") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "parithlab-test-cache";
  fs::remove_all(dir);
  fs::create_directories(dir);
  set_cache_dir(dir.string());

  Fq F(5, 1);
  MatrixFq first, second;
  {
    HomologySpace sp = build_space({11, false}, {2, 1}, F);
    first = hecke(sp, HeckeLabel::T(3));  // computed, then stored
  }
  CHECK(fs::exists(dir / cache_filename(
      cache_key(build_space({11, false}, {2, 1}, F), "T3"))));
  {
    HomologySpace sp = build_space({11, false}, {2, 1}, F);
    second = hecke(sp, HeckeLabel::T(3));  // fresh space: served from disk
  }
  CHECK(first == second);

  set_cache_dir("");
  fs::remove_all(dir);
}

TEST_CASE("weight grid lookup") {
  Fq F(5, 1);
  HomologySpace a = build_space({11, false}, {0, 0}, F);
  HomologySpace b = build_space({11, false}, {4, 2}, F);
  WeightGrid g{{&a, &b}};
  CHECK(g.find(0, 0) == &a);
  CHECK(g.find(4, 2) == &b);
  CHECK(g.find(2, 0) == nullptr);
  CHECK(!g.full(5));
}
