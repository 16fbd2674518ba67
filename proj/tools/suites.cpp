#include "suites.hpp"

#include <map>
#include <sstream>

#include "qloop/modrep.hpp"
#include "qloop/pbw.hpp"
#include "qloop/sampling.hpp"
#include "qloop/superfree.hpp"

namespace qloop::cli {

json to_json(const Scalar& s) { return s.str(); }

json to_json(const ZPoly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(c.str());
  return a;
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    rows.push_back(row);
  }
  return rows;
}

json to_json(const TorsionTriple& t) { return {{"c", to_json(t.c)}, {"Q", to_json(t.Q)}, {"P", to_json(t.P)}}; }

json to_json(const HighestWeightData& h) {
  json j;
  j["signature"] = {h.M, h.N};
  for (int i = 1; i < int(h.P.size()); ++i)
    if (i != h.M) j["P_" + std::to_string(i)] = to_json(h.P[size_t(i)]);
  j["c"] = to_json(h.torsion.c);
  j["Q"] = to_json(h.torsion.Q);
  j["P_odd"] = to_json(h.torsion.P);
  if (h.f.f.empty() || h.f.is_zero()) {
    j["f"] = 0;
  } else {
    json f = json::object();
    for (int n = -h.f.order; n <= h.f.order; ++n) f[std::to_string(n)] = h.f.at(n).str();
    j["f"] = f;
  }
  json e = json::array();
  for (int i = 1; i < int(h.eps.size()); ++i) e.push_back(i == h.M ? json(nullptr) : json(h.eps[size_t(i)]));
  j["eps"] = e;
  if (h.K0_eigen) j["K0"] = to_json(*h.K0_eigen);
  return j;
}

json Config::to_json() const {
  return {{"M", M},       {"N", N},          {"a", a},         {"b", b},         {"window", window},
          {"order", order}, {"degree-bound", degree_bound}, {"height", height}, {"nmax", nmax},
          {"count", count}, {"seed", seed},  {"Q", Q},         {"Pprev", Pprev}};
}

ZPoly parse_poly(const std::string& s) {
  std::vector<Scalar> c;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, ',')) {
    try {
      c.push_back(parse_scalar(item));
    } catch (const std::exception& e) {
      throw ConfigError("cannot parse coefficient '" + item + "': " + e.what());
    }
  }
  if (c.empty()) throw ConfigError("empty polynomial");
  return ZPoly(c);
}

json report(const std::string& suite, const Config& cfg, const std::vector<Check>& checks) {
  json cs = json::array();
  for (const auto& c : checks) cs.push_back({{"name", c.name}, {"status", c.pass ? "pass" : "fail"}, {"witness", c.witness}});
  json cfgj = cfg.to_json();
  cfgj["suite"] = suite;
  return {{"schema", 1}, {"config", cfgj}, {"checks", cs}};
}

namespace {

Scalar point(const std::string& s, const char* which) {
  Scalar x;
  try {
    x = parse_scalar(s);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("cannot parse --") + which + ": " + e.what());
  }
  if (x.is_zero()) throw ConfigError(std::string("--") + which + " must be nonzero");
  return x;
}

void need_evaluation(const Config& c) {
  if (c.M < 1 || c.N < 1) throw ConfigError("M and N must be positive");
  if (c.M == c.N) throw ConfigError("evaluation suites require M != N");
}

std::vector<int> window_range(int w) {
  std::vector<int> r;
  for (int n = -w; n <= w; ++n) r.push_back(n);
  return r;
}

std::string sig_tag(const Signature& s) { return "(" + std::to_string(s.M) + "," + std::to_string(s.N) + ")"; }

std::vector<Check> verify_relations(const Config& c) {
  need_evaluation(c);
  std::vector<Check> out;
  auto gl = check_gl_relations(fundamental(c.M, c.N));
  json fails = json::array();
  for (const auto& r : gl)
    if (!r.pass) fails.push_back(r.name);
  out.push_back({"gl relations on fundamental" + sig_tag(Signature(c.M, c.N)), fails.empty(), {{"checked", gl.size()}, {"failures", fails}}});
  for (bool enlarged : {false, true}) {
    LoopModule lm = fundamental_evaluation(c.M, c.N, point(c.a, "a"), enlarged);
    CatalogOptions o;
    o.window = c.window;
    o.chevalley = true;
    auto rep = check_relations(lm, o);
    out.push_back({std::string("loop relations") + (enlarged ? " (enlarged)" : "") + ", window " + std::to_string(c.window),
                   rep.pass(),
                   {{"module", lm.label}, {"checked", rep.checked}, {"failures", rep.failures}}});
  }
  return out;
}

HWOptions hw_opts(const Config& c) {
  HWOptions o;
  o.window = c.window;
  o.order = c.order;
  o.degree_bound = c.degree_bound;
  return o;
}

std::vector<Check> highest_weight_suite(const Config& c) {
  need_evaluation(c);
  LoopModule lm = fundamental_evaluation(c.M, c.N, point(c.a, "a"));
  HighestWeightData h;
  try {
    h = highest_weight(lm, hw_opts(c));
  } catch (const std::exception& e) {
    return {{"highest weight", false, {{"error", e.what()}}}};
  }
  json w = to_json(h);
  if (c.M == 1) w["through_pi"] = to_json(pi_relabel(h));
  std::vector<Check> out{{"highest weight", true, w}};
  bool p0 = true;
  for (int i = 1; i < int(h.P.size()); ++i) p0 = p0 && (i == h.M || h.P[size_t(i)].coeff(0) == Scalar(1));
  out.push_back({"P_i(0) = 1", p0, json::object()});
  std::string err = h.torsion.invariant_error();
  out.push_back({"torsion invariants", err.empty(), {{"detail", err}}});
  return out;
}

std::vector<Check> tensor_hw(const Config& c) {
  need_evaluation(c);
  LoopModule x = fundamental_evaluation(c.M, c.N, point(c.a, "a")), y = fundamental_evaluation(c.M, c.N, point(c.b, "b"));
  LoopModule t = tensor(x, y);
  auto o = hw_opts(c);
  try {
    auto hx = highest_weight(x, o), hy = highest_weight(y, o), ht = highest_weight(t, o);
    auto prod = monoid_product(hx, hy);
    return {{"tensor highest weight equals monoid product", ht.same_weight(prod),
             {{"tensor", to_json(ht)}, {"product", to_json(prod)}}}};
  } catch (const std::exception& e) {
    return {{"tensor highest weight equals monoid product", false, {{"error", e.what()}}}};
  }
}

std::vector<Check> weyl_slice(const Config& c) {
  ZPoly Q = parse_poly(c.Q), Pp = parse_poly(c.Pprev);
  if (Q.coeff(0) != Scalar(1)) throw ConfigError("Q(0) must be 1");
  WeylOddSlice s = weyl_odd_slice(Q, Pp);
  json w{{"d", s.d}, {"theta", to_json(s.theta)}, {"hM1", to_json(s.hM1)}};
  std::vector<Check> out;
  out.push_back({"slice dimension = deg Q", s.d == std::max(Q.degree(), 0), w});
  if (s.d > 0) {
    ZPoly cs = charpoly(s.shift), ch = charpoly(s.hM1);
    ZPoly rev = Q.reversed(s.d);
    out.push_back({"det(zI - S) = reciprocal of Q", cs == rev, {{"charpoly", to_json(cs)}}});
    out.push_back({"det(zI - hM1) = Q_rev(z - theta)", ch == shift_arg(rev, -s.theta), {{"charpoly", to_json(ch)}}});
    out.push_back({"deg Q < dim of slice plus highest-weight line", s.d < s.d + 1, {{"dim", s.d + 1}}});
  }
  return out;
}

std::vector<Check> monoid(const Config& c) {
  if (c.count < 1 || c.degree_bound < 0) throw ConfigError("count must be positive and degree-bound nonnegative");
  Rng g(c.seed);
  const int T = 2 * c.degree_bound + 2;
  std::vector<TorsionTriple> ts;
  for (int k = 0; k < c.count; ++k) ts.push_back(random_torsion(g, k % (c.degree_bound + 1)));
  json bad = json::array();
  for (const auto& t : ts) {
    try {
      auto back = series_to_torsion(torsion_to_series(t, T).f, t.c, c.degree_bound);
      if (back != t) bad.push_back({{"in", to_json(t)}, {"out", to_json(back)}});
    } catch (const std::exception& e) {
      bad.push_back({{"in", to_json(t)}, {"error", e.what()}});
    }
  }
  std::vector<Check> out;
  out.push_back({"series roundtrip", bad.empty(), {{"triples", ts.size()}, {"order", T}, {"failures", bad}}});

  TorsionTriple wk{Scalar::q(1), ZPoly({Scalar(1), -Scalar::q(-2)}), ZPoly({1, -1})};
  auto ws = torsion_to_series(wk, c.order);
  bool ones = true;
  for (int n = -c.order; n <= c.order; ++n) ones = ones && ws.f.at(n) == Scalar(1);
  bool wback = series_to_torsion(ws.f, wk.c, 1) == wk;
  out.push_back({"worked example (q, 1 - q^-2 z, 1 - z) <-> f = 1", ones && wback, {{"triple", to_json(wk)}}});

  size_t assoc = 0, comm = 0, ident = 0, star = 0, n = 0;
  const TorsionTriple id = TorsionTriple::identity();
  for (size_t i = 0; i + 2 < ts.size(); ++i) {
    const auto &x = ts[i], &y = ts[i + 1], &z = ts[i + 2];
    ++n;
    assoc += torsion_product(torsion_product(x, y), z) == torsion_product(x, torsion_product(y, z));
    comm += torsion_product(x, y) == torsion_product(y, x);
    ident += torsion_product(x, id) == x && torsion_product(id, x) == x;
    auto fx = torsion_to_series(x, T).f, fy = torsion_to_series(y, T).f;
    star += star_product(fx, x.c, fy, y.c) == torsion_to_series(torsion_product(x, y), T).f;
  }
  json cnt{{"instances", n}};
  out.push_back({"associativity", assoc == n, cnt});
  out.push_back({"commutativity", comm == n, cnt});
  out.push_back({"identity", ident == n, cnt});
  out.push_back({"product matches star product of series", star == n, cnt});
  return out;
}

std::vector<Check> pbw_rank_suite(const Config& c) {
  need_evaluation(c);
  LoopModule x = fundamental_evaluation(c.M, c.N, point(c.a, "a")), y = fundamental_evaluation(c.M, c.N, point(c.b, "b"));
  LoopModule t = tensor(x, y);
  std::vector<Check> out;
  for (LoopModule* m : {&x, &t}) {
    json rows = json::array();
    bool ok = true;
    for (const auto& w : weights_up_to_height(m->sig(), c.height)) {
      auto r = pbw_rank(*m, w, window_range(c.window));
      ok = ok && r.pbw == r.words;
      rows.push_back({{"weight", w}, {"pbw", r.pbw}, {"words", r.words}});
    }
    out.push_back({"PBW rank = word rank on " + m->label, ok, rows});
  }
  return out;
}

std::vector<Check> appendix_a(const Config& c) {
  if (c.M != 2 || c.N != 2) throw ConfigError("appendix-a requires (M,N) = (2,2)");
  auto rep = appendixA_check(Signature(2, 2), c.nmax, window_range(c.window));
  std::map<std::string, std::pair<size_t, json>> fam;
  std::map<std::string, size_t> steps;
  for (const auto& ch : rep.checks) {
    std::string f = ch.name.substr(0, ch.name.find('('));
    auto& [k, fails] = fam[f];
    if (fails.is_null()) fails = json::array();
    ++k;
    steps[f] += ch.steps;
    if (!ch.pass && fails.size() < 5) fails.push_back({{"instance", ch.name}, {"detail", ch.detail}});
  }
  std::vector<Check> out;
  for (auto& [f, v] : fam)
    out.push_back({f, v.second.empty(), {{"instances", v.first}, {"rewrite_steps", steps[f]}, {"failures", v.second}}});
  return out;
}

std::vector<Check> coproduct(const Config& c) {
  need_evaluation(c);
  LoopModule x = fundamental_evaluation(c.M, c.N, point(c.a, "a")), y = fundamental_evaluation(c.M, c.N, point(c.b, "b"));
  std::vector<Check> out;
  for (int j = 1; j <= x.sig().rank(); ++j)
    for (int n = -c.window; n <= c.window; ++n)
      for (const auto& r : check_coproduct_formula(j, n, x, y)) {
        // phi checks depend on |n| only.
        if (n < 0 && r.name.find("phi") != std::string::npos) continue;
        out.push_back({r.name, r.pass, {{"detail", r.detail}}});
      }
  for (int i = 1; i <= x.sig().rank(); ++i)
    for (const auto& r : check_h_coproduct(i, x, y)) out.push_back({r.name, r.pass, {{"solution", r.detail}}});
  return out;
}

using SuiteFn = std::vector<Check> (*)(const Config&);

const std::vector<std::pair<std::string, SuiteFn>>& table() {
  static const std::vector<std::pair<std::string, SuiteFn>> t{
      {"verify-relations", verify_relations}, {"highest-weight", highest_weight_suite}, {"tensor-hw", tensor_hw},
      {"weyl-slice", weyl_slice},             {"monoid", monoid},                     {"pbw-rank", pbw_rank_suite},
      {"appendix-a", appendix_a},             {"coproduct-check", coproduct}};
  return t;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, f] : table()) n.push_back(k);
    return n;
  }();
  return names;
}

std::vector<Check> run_suite(const std::string& suite, const Config& cfg) {
  if (cfg.window < 0 || cfg.order < 1 || cfg.height < 1 || cfg.nmax < 0)
    throw ConfigError("windows must be nonnegative and orders positive");
  for (const auto& [k, f] : table())
    if (k == suite) return f(cfg);
  throw ConfigError("unknown suite " + suite);
}

}  // namespace qloop::cli
