#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "parithlab/cache.hpp"
#include "parithlab/ecurve.hpp"
#include "parithlab/session.hpp"
#include "parithlab/smooth.hpp"

using json = nlohmann::ordered_json;
using namespace parithlab;

namespace {

struct CommonOpts {
  std::uint32_t p = 5;
  std::uint32_t N = 11;
  std::uint32_t B = 0;
  std::vector<int> rs, as;
  std::string out;
  std::string csv;
  std::string cache;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_level = true) {
  cmd->add_option("--p", o.p, "working prime (>= 5)")->required();
  if (with_level) {
    cmd->add_option("--N", o.N, "tame level (>= 3, coprime to p)")->required();
    cmd->add_option("--B", o.B, "Hecke prime bound (0 = Sturm default)");
    cmd->add_option("--r", o.rs, "weight r values (default: all)");
    cmd->add_option("--a", o.as, "twist a values (default: all)");
  }
  cmd->add_option("--out", o.out, "JSON output path (default: stdout)");
  cmd->add_option("--csv", o.csv, "CSV output path prefix");
  cmd->add_option("--cache", o.cache, "matrix cache directory");
}

SessionConfig make_config(const CommonOpts& o) {
  SessionConfig cfg;
  cfg.p = o.p;
  cfg.N = o.N;
  cfg.B = o.B;
  std::vector<int> rs = o.rs, as = o.as;
  if (rs.empty() && as.empty()) return cfg;  // full grid
  if (rs.empty())
    for (int r = 0; r <= static_cast<int>(o.p) - 1; ++r) rs.push_back(r);
  if (as.empty())
    for (int a = 0; a <= static_cast<int>(o.p) - 2; ++a) as.push_back(a);
  for (int r : rs)
    for (int a : as) cfg.weights.push_back({r, a});
  return cfg;
}

json config_json(const Session& s, const std::string& command) {
  json cfg;
  cfg["command"] = command;
  cfg["p"] = s.cfg.p;
  cfg["N"] = s.cfg.N;
  cfg["B"] = s.ells.empty() ? 0 : s.ells.back();
  json ws = json::array();
  for (const HomologySpace* sp : s.grid.spaces)
    ws.push_back({sp->weight.r, sp->weight.a});
  cfg["weights"] = ws;
  cfg["field_degree"] = s.eigen.field.degree();
  return cfg;
}

json eigensystems_json(const Session& s) {
  const Fq& E = s.eigen.field;
  json arr = json::array();
  for (const Eigensystem& es : s.eigen.systems) {
    json j;
    j["id"] = es.id;
    json tl;
    for (const auto& [ell, ts] : es.away)
      tl[std::to_string(ell)] = {E.encode(ts.first), E.encode(ts.second)};
    j["tl"] = tl;
    json occ = json::array();
    for (const Occurrence& o : es.occurrences)
      occ.push_back({{"r", o.weight.r},
                     {"a", o.weight.a},
                     {"tau", E.encode(o.tau)},
                     {"sigma", E.encode(o.sigma)},
                     {"mult", o.mult}});
    j["occurrences"] = occ;
    j["eisenstein"] = es.eisenstein;
    arr.push_back(j);
  }
  return arr;
}

json profile_json(const Fq& E, const ParithProfile& p) {
  return {{"rep", p.rep.name(E)},
          {"eigensystem_id", p.eigensystem_id},
          {"dims", p.dims},
          {"predicted", p.predicted},
          {"match", p.match}};
}

void emit(const json& doc, const std::string& out) {
  if (out.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << doc.dump(2) << "\n";
  }
}

void emit_csv(const Session& s, const std::vector<ParithProfile>* profiles,
              const std::string& prefix) {
  if (prefix.empty()) return;
  const Fq& E = s.eigen.field;
  {
    std::ofstream f(prefix + "-eigensystems.csv");
    f << "id,eisenstein,ell,t,s\n";
    for (const Eigensystem& es : s.eigen.systems)
      for (const auto& [ell, ts] : es.away)
        f << es.id << "," << (es.eisenstein ? 1 : 0) << "," << ell << ","
          << E.encode(ts.first) << "," << E.encode(ts.second) << "\n";
  }
  {
    std::ofstream f(prefix + "-occurrences.csv");
    f << "id,r,a,tau,sigma,mult\n";
    for (const Eigensystem& es : s.eigen.systems)
      for (const Occurrence& o : es.occurrences)
        f << es.id << "," << o.weight.r << "," << o.weight.a << ","
          << E.encode(o.tau) << "," << E.encode(o.sigma) << "," << o.mult
          << "\n";
  }
  if (profiles) {
    std::ofstream f(prefix + "-profiles.csv");
    f << "rep,eigensystem_id,d0,d1,d2,d3,predicted,match\n";
    for (const ParithProfile& p : *profiles) {
      f << "\"" << p.rep.name(E) << "\"," << p.eigensystem_id;
      for (int d : p.dims) f << "," << d;
      f << ",";
      for (size_t i = 0; i < p.predicted.size(); ++i)
        f << (i ? ";" : "") << p.predicted[i];
      f << "," << (p.match ? 1 : 0) << "\n";
    }
  }
}

// Parse "pi(r,lambda,a,b)", "steinberg(a,b)" or "trivial(a,b)"; the field
// entries are canonical integer encodings.
RepSpec parse_rep(const std::string& text, const Fq& F) {
  auto open = text.find('(');
  auto close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw std::invalid_argument("rep: expected kind(args): " + text);
  std::string kind = text.substr(0, open);
  std::vector<long long> args;
  std::stringstream ss(text.substr(open + 1, close - open - 1));
  std::string tok;
  while (std::getline(ss, tok, ',')) args.push_back(std::stoll(tok));
  RepSpec rep;
  if (kind == "pi") {
    if (args.size() != 4) throw std::invalid_argument("rep: pi needs 4 args");
    rep.kind = RepSpec::Kind::Pi;
    rep.r = static_cast<int>(args[0]);
    rep.lambda = F.decode(args[1]);
    rep.a = static_cast<int>(args[2]);
    rep.b = F.decode(args[3]);
  } else if (kind == "steinberg" || kind == "trivial") {
    if (args.size() != 2) throw std::invalid_argument("rep: needs 2 args");
    rep.kind = kind == "steinberg" ? RepSpec::Kind::Steinberg
                                   : RepSpec::Kind::Trivial;
    rep.a = static_cast<int>(args[0]);
    rep.b = F.decode(args[1]);
  } else {
    throw std::invalid_argument("rep: unknown kind " + kind);
  }
  if (F.is_zero(rep.b)) throw std::invalid_argument("rep: b must be nonzero");
  return rep;
}

int cmd_weights(const CommonOpts& o) {
  Session s = Session::build(make_config(o));
  json doc;
  doc["config"] = config_json(s, "weights");
  doc["eigensystems"] = eigensystems_json(s);
  emit(doc, o.out);
  emit_csv(s, nullptr, o.csv);
  return 0;
}

int cmd_parith(const CommonOpts& o, const std::vector<std::string>& reps) {
  SessionConfig cfg = make_config(o);
  Fq probe(o.p, 1);
  const int p1 = static_cast<int>(o.p) - 1;
  std::vector<RepSpec> specs;
  bool need_hasse = false;
  std::vector<Weight> needed;
  for (const std::string& text : reps) {
    RepSpec rep = parse_rep(text, probe);
    specs.push_back(rep);
    need_hasse = need_hasse || rep.kind != RepSpec::Kind::Pi;
    Weight w = rep.kind == RepSpec::Kind::Pi
                   ? Weight{rep.r, ((rep.a + rep.r) % p1 + p1) % p1}
                   : Weight{p1, rep.a % p1};
    bool found = false;
    for (const Weight& x : needed)
      if (x.r == w.r && x.a == w.a) found = true;
    if (!found) needed.push_back(w);
  }
  // Default sub-grid: exactly the weights the requested reps consume.
  if (o.rs.empty() && o.as.empty()) cfg.weights = needed;
  Session s = Session::build(cfg);
  if (need_hasse) s.ensure_hasse();
  const Fq& E = s.eigen.field;

  std::vector<ParithProfile> profiles;
  for (const RepSpec& probe_rep : specs) {
    // Re-decode the field entries into the extraction field.
    RepSpec rep = probe_rep;
    rep.lambda = E.decode(probe.encode(probe_rep.lambda));
    rep.b = E.decode(probe.encode(probe_rep.b));
    for (const Eigensystem& es : s.eigen.systems) {
      if (es.eisenstein) continue;
      if (rep.kind == RepSpec::Kind::Pi)
        profiles.push_back(profile_generic(s.grid, s.eigen, es, rep));
      else
        profiles.push_back(profile(s.grid, *s.hasse, s.eigen, es, rep));
    }
  }
  json doc;
  doc["config"] = config_json(s, "parith");
  doc["eigensystems"] = eigensystems_json(s);
  json pj = json::array();
  for (const ParithProfile& p : profiles) pj.push_back(profile_json(E, p));
  doc["profiles"] = pj;
  emit(doc, o.out);
  emit_csv(s, &profiles, o.csv);
  return 0;
}

int cmd_hasse(const CommonOpts& o) {
  SessionConfig cfg = make_config(o);
  const int p1 = static_cast<int>(o.p) - 1;
  if (o.rs.empty() && o.as.empty()) cfg.weights = {{0, 0}, {p1, 0}};
  Session s = Session::build(cfg);
  s.ensure_hasse();
  json doc;
  doc["config"] = config_json(s, "hasse");
  const HasseModules& h = s.hasse->mods;
  doc["hasse"] = {{"rank_phi", rank_of(h.phi)},
                  {"rank_psi", rank_of(h.psi)},
                  {"dim_triv", h.phi.rows()},
                  {"dim_sym", h.phi.cols()},
                  {"dim_U", h.dimU()},
                  {"dim_V", h.dimV()}};
  emit(doc, o.out);
  return 0;
}

// Randomized smooth-representation identity suite (the block identities of
// the induction calculus), deterministic per seed.
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

int cmd_verify(std::uint32_t p, std::uint64_t seed, int trials) {
  Fq F(p, 1);
  Rng rng{seed};
  int failures = 0;
  auto check = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "pass" : "FAIL") << "  " << what << "\n";
    if (!ok) ++failures;
  };

  InducedElement zq = InducedElement::zero(F, BaseTag::KSym, p - 1);
  std::vector<GL2Elt> points = {GL2Elt::identity(p), GL2Elt::alpha(p),
                                GL2Elt::w(p)};
  for (int i = 0; i < 5; ++i) points.push_back(random_g(p, rng));

  bool okA = true, okB = true;
  for (const GL2Elt& g : points) {
    InducedElement f = InducedElement::zero(F, BaseTag::KSym, 0);
    ie_add_term(f, g, {F.one()}, F.one());
    // Identity A: (phi1, phi2) ∘ iota = [[1, 0], [T, phi]].
    okA = okA && phi12(iota(f, zq), 1) == f;
    okA = okA && phi12(iota(f, zq), 2) == hecke_local(f, HeckeLocal::T);
    InducedElement q = InducedElement::zero(F, BaseTag::KSym, p - 1);
    SymVector es = SymVector::estar(F, p - 1);
    ie_add_term(q, g, es.coeffs, F.one());
    InducedElement zf = InducedElement::zero(F, BaseTag::KSym, 0);
    okA = okA && phi12(iota(zf, q), 1).is_zero();
    okA = okA && phi12(iota(zf, q), 2) == phi_map(q);
    // Identity B: split ∘ (j1, j_alpha) = [[1, S^-1 T], [0, -psi]].
    auto [b11, b21] = split_cind(j1_map(f));
    okB = okB && b11 == f && b21.is_zero();
    auto [b12, b22] = split_cind(jalpha_map(f));
    okB = okB && b12 == hecke_S_inv(hecke_local(f, HeckeLocal::T));
    okB = okB && b22 == ie_scale(psi_map(f), F.neg(F.one()));
  }
  check(okA, "block identity A on one-point inputs");
  check(okB, "block identity B on one-point inputs");

  {
    SymVector es = SymVector::estar(F, p - 1);
    InducedElement e = InducedElement::zero(F, BaseTag::KSym, p - 1);
    ie_add_term(e, GL2Elt::identity(p), es.coeffs, F.one());
    ie_add_term(e, GL2Elt::w(p) * GL2Elt::alpha(p), es.coeffs, F.one());
    check(bl_evaluate(e, GL2Elt::w(p)) == F.one(),
          "principal-series witness maps w to 1");
  }

  bool okEq = true;
  for (int t = 0; t < trials; ++t) {
    InducedElement q = InducedElement::zero(F, BaseTag::KSym, p - 1);
    InducedElement f = InducedElement::zero(F, BaseTag::KSym, 0);
    for (int k = 0; k < 3; ++k) {
      std::vector<FqElem> v(p);
      for (auto& c : v) c = F.from_int(rng.range(0, p - 1));
      ie_add_term(q, random_g(p, rng), v, F.one());
      ie_add_term(f, random_g(p, rng), {F.from_int(rng.range(0, p - 1))},
                  F.one());
    }
    okEq = okEq && phi_map(hecke_local(q, HeckeLocal::T)) ==
                       hecke_local(phi_map(q), HeckeLocal::T);
    okEq = okEq && phi_map(hecke_local(q, HeckeLocal::S)) ==
                       hecke_local(phi_map(q), HeckeLocal::S);
    okEq = okEq && psi_map(hecke_local(f, HeckeLocal::T)) ==
                       hecke_local(psi_map(f), HeckeLocal::T);
    okEq = okEq && psi_map(hecke_local(f, HeckeLocal::S)) ==
                       hecke_local(psi_map(f), HeckeLocal::S);
  }
  check(okEq, "T/S-equivariance of phi and psi on random elements");

  std::cout << (failures == 0 ? "verify: all checks passed\n"
                              : "verify: FAILURES\n");
  return failures == 0 ? 0 : 1;
}

int cmd_report(const CommonOpts& o) {
  Session s = Session::build(make_config(o));
  s.ensure_hasse();
  ConsistencyReport rep = consistency_report(s.grid, *s.hasse, s.eigen);
  json doc;
  doc["config"] = config_json(s, "report");
  doc["config"]["partial"] = rep.partial;
  doc["eigensystems"] = eigensystems_json(s);
  json pj = json::array();
  for (const ParithProfile& p : rep.profiles)
    pj.push_back(profile_json(s.eigen.field, p));
  doc["profiles"] = pj;
  doc["all_match"] = rep.all_match();
  emit(doc, o.out);
  emit_csv(s, &rep.profiles, o.csv);
  return rep.all_match() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-arithmetic homology of smooth mod-p GL2(Q_p) representations"};
  app.require_subcommand(1);

  CommonOpts wo, po, ho, ro;
  std::vector<std::string> reps;
  std::uint32_t vp = 5;
  std::uint64_t seed = 1;
  int trials = 50;

  CLI::App* weights = app.add_subcommand("weights", "eigensystem tables per weight");
  add_common(weights, wo);
  CLI::App* parith = app.add_subcommand("parith", "profiles for selected representations");
  add_common(parith, po);
  parith->add_option("--rep", reps, "representation, e.g. pi(0,5,0,1)")->required();
  CLI::App* hasse = app.add_subcommand("hasse", "phi/psi ranks and U/V dimensions");
  add_common(hasse, ho);
  CLI::App* verify = app.add_subcommand("verify", "invariant suites");
  verify->add_option("--p", vp, "working prime")->required();
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--trials", trials, "random trials");
  CLI::App* report = app.add_subcommand("report", "local-global consistency report");
  add_common(report, ro);

  CLI11_PARSE(app, argc, argv);

  try {
    if (weights->parsed()) {
      if (!wo.cache.empty()) set_cache_dir(wo.cache);
      return cmd_weights(wo);
    }
    if (parith->parsed()) {
      if (!po.cache.empty()) set_cache_dir(po.cache);
      return cmd_parith(po, reps);
    }
    if (hasse->parsed()) {
      if (!ho.cache.empty()) set_cache_dir(ho.cache);
      return cmd_hasse(ho);
    }
    if (verify->parsed()) return cmd_verify(vp, seed, trials);
    if (report->parsed()) {
      if (!ro.cache.empty()) set_cache_dir(ro.cache);
      return cmd_report(ro);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
