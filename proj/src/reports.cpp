#include "sl2h/reports.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "sl2h/depth_zero.hpp"
#include "sl2h/errors.hpp"
#include "sl2h/finite_group.hpp"
#include "sl2h/homology.hpp"
#include "sl2h/orbital.hpp"
#include "sl2h/tate.hpp"

namespace sl2h::reports {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

long to_long(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw SL2H_ERR("ConfigError", "key " + key + " expects an integer, got '" + v + "'");
  }
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::string matrix_string(const std::array<mpq_class, 4>& m) {
  return "[[" + m[0].get_str() + "," + m[1].get_str() + "],[" + m[2].get_str() + "," + m[3].get_str() + "]]";
}

std::shared_ptr<const Tree> make_tree(const EngineConfig& cfg) {
  return std::make_shared<const Tree>(cfg.p, cfg.precision);
}

// process-wide float mode flag for scalar_json; set per report
thread_local const EngineConfig* g_cfg = nullptr;
struct CfgScope {
  explicit CfgScope(const EngineConfig& c) { g_cfg = &c; }
  ~CfgScope() { g_cfg = nullptr; }
};

json base_report(const EngineConfig& cfg, const std::string& command, const std::string& anchor) {
  json r;
  r["command"] = command;
  r["anchor"] = anchor;
  r["config"] = cfg.to_json();
  r["normalization"] = HeckeFunction::normalization();
  return r;
}

json series_json(const TruncatedOrbitalSeries& s) {
  json j;
  j["lambda0"] = s.lambda0;
  json vals = json::array(), d2 = json::array();
  for (const auto& v : s.values) vals.push_back(scalar_json(v));
  for (size_t i = 2; i < s.values.size(); ++i) d2.push_back(scalar_json(s.values[i] - s.values[i - 1] - s.values[i - 1] + s.values[i - 2]));
  j["values"] = vals;
  j["second_differences"] = d2;
  j["affine"] = s.affine;
  j["basepoint"] = s.basepoint;
  if (s.affine) {
    j["slope"] = scalar_json(s.slope);
    j["intercept"] = scalar_json(s.intercept);
  }
  return j;
}

std::mt19937_64 seeded(unsigned long long seed, unsigned long long stream) {
  std::seed_seq sq{(unsigned)(seed & 0xffffffffu), (unsigned)(seed >> 32), (unsigned)stream};
  return std::mt19937_64(sq);
}

// unipotent conjugators [[1,x],[0,1]] or [[1,0],[x,1]] with x = u / p^j
GroupElement random_conjugator(const Tree& T, std::mt19937_64& rng, std::string& literal) {
  int p = T.p();
  long j = (long)(rng() % 3);
  long u = 1 + (long)(rng() % (p * p));
  mpq_class x(u, 1);
  for (long i = 0; i < j; ++i) x /= p;
  x.canonicalize();
  bool upper = rng() % 2 == 0;
  std::array<mpq_class, 4> m = upper ? std::array<mpq_class, 4>{1, x, 0, 1} : std::array<mpq_class, 4>{1, 0, x, 1};
  literal = matrix_string(m);
  return T.mat(m[0], m[1], m[2], m[3]);
}

}  // namespace

void EngineConfig::validate() {
  if (!is_prime(p)) throw SL2H_ERR("ConfigError", "p must be prime, got " + std::to_string(p));
  if (p == 2) throw SL2H_ERR("ScaleExceeded", "p = 2 is not supported (residue field too small)");
  if (level < 1) throw SL2H_ERR("ConfigError", "level n must be >= 1");
  if (lambda_max < 0) throw SL2H_ERR("ConfigError", "lambda_max must be >= 0");
  int need = 2 * lambda_max + level + 4;
  int max_prec = 0;
  for (long double pk = p; pk < 4.6e18L; pk *= p) ++max_prec;
  // conjugators eat 2 m(h) digits, so the default leaves headroom above the minimum
  if (precision == 0) precision = std::max(need, std::min(24, max_prec));
  if (precision < need)
    throw SL2H_ERR("ConfigError", "precision N=" + std::to_string(precision) + " < 2 lambda_max + n + 4 = " +
                                      std::to_string(need));
  if (precision > max_prec) throw SL2H_ERR("ScaleExceeded", "p^N does not fit the 62-bit p-adic representation");
  if (scalar_mode != "exact" && scalar_mode != "float")
    throw SL2H_ERR("ConfigError", "scalar_mode must be exact or float");
  if (scalar_mode == "exact" && tolerance) throw SL2H_ERR("ConfigError", "tolerance is only valid in float mode");
  if (scalar_mode == "float" && !tolerance) tolerance = 1e-9;
  if (memory_cap == 0) throw SL2H_ERR("ConfigError", "memory_cap must be positive");
}

json EngineConfig::to_json() const {
  json j;
  j["p"] = p;
  j["precision"] = precision;
  j["level"] = level;
  j["lambda_max"] = lambda_max;
  j["scalar_mode"] = scalar_mode;
  if (tolerance) j["tolerance"] = *tolerance;
  j["memory_cap"] = memory_cap;
  j["seed"] = seed;
  return j;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SL2H_ERR("ConfigError", "cannot read config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    auto h = line.find('#');
    if (h != std::string::npos) line = line.substr(0, h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw SL2H_ERR("ConfigError", path + ":" + std::to_string(ln) + ": expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_config(EngineConfig& cfg, const std::map<std::string, std::string>& kv) {
  for (const auto& [k, v] : kv) {
    if (k == "p") cfg.p = (int)to_long(k, v);
    else if (k == "precision" || k == "N") cfg.precision = (int)to_long(k, v);
    else if (k == "level" || k == "n") cfg.level = (int)to_long(k, v);
    else if (k == "lambda_max") cfg.lambda_max = (int)to_long(k, v);
    else if (k == "scalar_mode") cfg.scalar_mode = v;
    else if (k == "tolerance") {
      try {
        cfg.tolerance = std::stod(v);
      } catch (const std::exception&) {
        throw SL2H_ERR("ConfigError", "tolerance expects a number");
      }
    } else if (k == "memory_cap") cfg.memory_cap = (size_t)to_long(k, v);
    else if (k == "report_dir") cfg.report_dir = v;
    else if (k == "seed") cfg.seed = (unsigned long long)to_long(k, v);
    else throw SL2H_ERR("ConfigError", "unknown config key " + k);
  }
}

json scalar_json(const Scalar& s) {
  if (g_cfg && g_cfg->scalar_mode == "float") {
    auto z = s.to_complex();
    return Scalar::from_float(z, *g_cfg->tolerance).to_string();
  }
  return s.to_string();
}

HeckeFunction parse_f(const std::string& spec, std::shared_ptr<const Tree> T) {
  auto cusp = [&](const std::string& rest) {
    if (rest.rfind("cusp", 0) != 0) throw SL2H_ERR("ParseError", "expected cusp<i> in " + spec);
    long i = to_long("cusp", rest.substr(4));
    auto idx = cuspidal_indices(T->p());
    if (i < 0 || i >= (long)idx.size())
      throw SL2H_ERR("ConfigError", "cuspidal index out of range: " + rest + " (" + std::to_string(idx.size()) +
                                        " cuspidal characters)");
    return DepthZeroSupercuspidal(T->p(), idx[i]);
  };
  if (spec == "zero") return HeckeFunction(T, 0, {});
  if (spec.rfind("indicator:K", 0) == 0) return indicator_K(T, (int)to_long("indicator", spec.substr(11)));
  if (spec.rfind("shell:", 0) == 0) return shell_indicator(T, (int)to_long("shell", spec.substr(6)));
  if (spec.rfind("dcoset:", 0) == 0) {
    auto c = spec.find(':', 7);
    if (c == std::string::npos) throw SL2H_ERR("ParseError", "expected dcoset:<n>:<matrix>");
    int n = (int)to_long("dcoset", spec.substr(7, c - 7));
    return double_coset(T, parse_group_element(spec.substr(c + 1), T->p(), T->prec()), n);
  }
  if (spec.rfind("e_sigma:", 0) == 0) return matrix_coefficient(T, cusp(spec.substr(8)));
  if (spec.rfind("m_rho:", 0) == 0) return m_rho(T, cusp(spec.substr(6)));
  if (spec.rfind("file:", 0) == 0) {
    std::ifstream in(spec.substr(5));
    if (!in) throw SL2H_ERR("ConfigError", "cannot read " + spec.substr(5));
    std::stringstream ss;
    ss << in.rdbuf();
    auto f = HeckeFunction::deserialize(ss.str(), T->prec());
    if (f.p() != T->p()) throw SL2H_ERR("ConfigError", "function file has p=" + std::to_string(f.p()));
    return f;
  }
  throw SL2H_ERR("ParseError", "unknown function spec " + spec);
}

std::vector<std::array<mpq_class, 4>> elliptic_panel(int p) {
  // traces chosen to hit both the unramified and the ramified tori
  std::vector<std::array<mpq_class, 4>> cand = {
      {0, 1, -1, 0}, {1, 1, 1, 2}, {1, 1, 2, 3}, {0, -1, 1, 1}, {1, 1, p, p + 1}, {1, 1, 3, 4}, {-1, 1, -1, 0}};
  Tree T(p, 8);
  std::vector<std::array<mpq_class, 4>> out;
  for (const auto& m : cand) {
    auto g = T.mat(m[0], m[1], m[2], m[3]);
    if (classify(g).elliptic() && g.integral()) {
      bool dup = false;
      for (const auto& o : out) dup |= o == m;
      if (!dup) out.push_back(m);
    }
  }
  return out;
}

std::vector<std::array<mpq_class, 4>> split_panel(int p) {
  std::vector<std::array<mpq_class, 4>> out;
  Tree T(p, 8);
  for (long a : {2L, 3L, 7L, 4L, -2L, 8L}) {
    mpq_class q(a), qi(1, a);
    qi.canonicalize();
    auto g = T.mat(q, 0, 0, qi);
    if (a % p == 0 || !classify(g).regular()) continue;
    out.push_back({q, 0, 0, qi});
    if (out.size() == 3) break;
  }
  return out;
}

json report_wo(const EngineConfig& cfg, const std::string& fspec, const std::string& gspec,
               const std::optional<std::string>& hspec) {
  CfgScope scope(cfg);
  auto T = make_tree(cfg);
  auto f = parse_f(fspec, T);
  auto g = parse_group_element(gspec, cfg.p, cfg.precision);
  std::optional<GroupElement> h;
  if (hspec) h = parse_group_element(*hspec, cfg.p, cfg.precision);
  json r = base_report(cfg, "wo", "WO_g(f)=phi(0)");
  r["f"] = fspec;
  r["g"] = gspec;
  r["g_class"] = classify(g).to_string();
  if (hspec) r["h"] = *hspec;
  auto s = wo_series(f, g, 3, h);
  r["series"] = series_json(s);
  if (s.affine) r["value"] = scalar_json(s.intercept);
  r["pass"] = s.affine;
  return r;
}

json report_char_verify(const EngineConfig& cfg, const std::string& panel) {
  CfgScope scope(cfg);
  int q = cfg.p;
  if (q != 3 && q != 5) throw SL2H_ERR("ScaleExceeded", "char-verify supports q in {3,5}, got " + std::to_string(q));
  if (panel != "elliptic" && panel != "split" && panel != "all")
    throw SL2H_ERR("ConfigError", "panel must be elliptic, split or all");
  auto T = make_tree(cfg);
  std::vector<std::pair<std::string, std::array<mpq_class, 4>>> gs;
  if (panel != "split")
    for (const auto& m : elliptic_panel(q)) gs.push_back({"elliptic", m});
  if (panel != "elliptic")
    for (const auto& m : split_panel(q)) gs.push_back({"split", m});

  json r = base_report(cfg, "char-verify", "chi_rho(g)=O_g(ch(rho)); WO_g(ch(rho))=chi_rho(g)");
  r["q"] = q;
  r["panel"] = panel;
  json pairs = json::array();
  bool all = true;
  long literal_ok = 0, total = 0;
  auto idx = cuspidal_indices(q);
  for (size_t ci = 0; ci < idx.size(); ++ci) {
    DepthZeroSupercuspidal rho(q, idx[ci]);
    auto e = matrix_coefficient(T, rho);
    auto m = m_rho(T, rho);
    for (const auto& [kind, mat] : gs) {
      auto g = T->mat(mat[0], mat[1], mat[2], mat[3]);
      Scalar we, wm;
      if (kind == "elliptic") {
        we = orbital_integral_elliptic(e, g);
        wm = orbital_integral_elliptic(m, g);
      } else {
        we = wo_integral(e, g);
        wm = wo_integral(m, g);
      }
      auto cv = char_value(*T, rho, g);
      Scalar chi = cv.value, chi_inv = chi.conj();
      bool v_m = wm == chi;
      bool v_e = we == chi_inv.mul(rho.dim());
      bool v_lit = we == chi;
      json pj;
      pj["sigma"] = "cusp" + std::to_string(ci);
      pj["dim"] = rho.dim();
      pj["g"] = matrix_string(mat);
      pj["g_class"] = classify(g).to_string();
      pj["O(e_sigma)"] = scalar_json(we);
      pj["O(m_rho)"] = scalar_json(wm);
      pj["chi(g)"] = scalar_json(chi);
      pj["chi(g^-1)"] = scalar_json(chi_inv);
      pj["char_levels"] = cv.by_level.size();
      pj["char_stable_from"] = cv.n_stable;
      if (cv.frobenius) pj["frobenius_sum"] = scalar_json(*cv.frobenius);
      pj["verdict_m_rho"] = v_m ? "PASS" : "FAIL";
      pj["verdict_e_sigma_dim_conj"] = v_e ? "PASS" : "FAIL";
      pj["literal_e_sigma_equals_chi"] = v_lit;
      pj["verdict"] = v_m && v_e ? "PASS" : "FAIL";
      all = all && v_m && v_e;
      literal_ok += v_lit;
      ++total;
      pairs.push_back(pj);
    }
  }
  r["pairs"] = pairs;
  r["literal_e_sigma_matches"] = literal_ok;
  r["pair_count"] = total;
  r["pass"] = all;
  return r;
}

json report_weightless(const EngineConfig& cfg, const std::string& fspec, int trials) {
  CfgScope scope(cfg);
  auto T = make_tree(cfg);
  auto f = parse_f(fspec, T);
  json r = base_report(cfg, "weightless", "int f(lu)du=0; WO independent of the choices");
  r["f"] = fspec;
  auto c = weightless_check(f);
  r["weightless"] = c.weightless;
  r["lambda_bound"] = c.lambda_bound;
  r["level"] = c.level;
  r["conditions_checked"] = c.conditions.size();
  if (c.witness) {
    json w;
    w["borel"] = c.witness->borel;
    w["t_val"] = c.witness->t_val;
    w["t_unit"] = c.witness->t_unit;
    w["value"] = scalar_json(c.witness->value);
    r["witness"] = w;
  }
  auto sp = split_panel(cfg.p);
  auto gm = sp.front();
  auto g = T->mat(gm[0], gm[1], gm[2], gm[3]);
  r["g"] = matrix_string(gm);
  Scalar base = wo_integral(f, g);
  r["wo"] = scalar_json(base);
  auto rng = seeded(cfg.seed, 4);
  json tr = json::array();
  bool invariant = true;
  for (int t = 0; t < trials; ++t) {
    std::string lit;
    auto h = random_conjugator(*T, rng, lit);
    Scalar v;
    try {
      v = wo_integral(f, g, 3, h);
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(e.what()) + " (conjugator " + lit + ")");
    }
    json tj;
    tj["h"] = lit;
    tj["wo"] = scalar_json(v);
    tj["equal"] = v == base;
    invariant = invariant && v == base;
    tr.push_back(tj);
  }
  r["trials"] = tr;
  r["invariant"] = invariant;
  r["pass"] = c.weightless && invariant;
  return r;
}

json report_tate(const EngineConfig& cfg, const std::string& check, int trials) {
  using namespace sl2h::tate;
  CfgScope scope(cfg);
  static const std::vector<std::string> known = {"cocycle-identity", "sigma-id", "shift", "commutator"};
  if (check != "all" && std::find(known.begin(), known.end(), check) == known.end())
    throw SL2H_ERR("ConfigError", "unknown tate check " + check);
  json r = base_report(cfg, "tate", "C([E1,E2],E3)+C([E2,E3],E1)+C([E3,E1],E2)=0; sigma_W(Id)=dim(V+ cap W)-codim(V+ + W)");
  r.erase("normalization");
  r["check"] = check;
  json checks;
  bool all = true;
  auto want = [&](const std::string& c) { return check == "all" || check == c; };
  auto qs = [](const Q& q) { return q.get_str(); };
  if (want("cocycle-identity")) {
    auto rng = seeded(cfg.seed, 6);
    long ok = 0, anti = 0, maxN = 0;
    for (int t = 0; t < trials; ++t) {
      int rr = 1 + t % 2, b = 1 + (t / 2) % 2;
      RandomSpec s1{rr, b}, s2{rr, 1};
      auto a = random_banded(rng, s1), bb = random_banded(rng, s2), c = random_banded(rng, s1);
      auto x = cocycle_C(commutator(a, bb), c), y = cocycle_C(commutator(bb, c), a), z = cocycle_C(commutator(c, a), bb);
      maxN = std::max({maxN, x.N_probe, y.N_probe, z.N_probe});
      ok += x.value + y.value + z.value == 0;
      anti += cocycle_C(a, bb).value == -cocycle_C(bb, a).value;
    }
    json j;
    j["trials"] = trials;
    j["identity_holds"] = ok;
    j["antisymmetric"] = anti;
    j["max_probe_window"] = maxN;
    j["pass"] = ok == trials && anti == trials;
    all = all && j["pass"].get<bool>();
    checks["cocycle-identity"] = j;
  }
  if (want("sigma-id")) {
    auto rng = seeded(cfg.seed, 7);
    json rows = json::array();
    bool ok = true;
    for (int t = 0; t < 10; ++t) {
      auto W = random_discrete(rng, 1 + t % 2, 3, t % 4);
      long idx = dim_plus_cap(W) - codim_plus_sum(W);
      auto s = sigma_W(identity(W.r), W);
      json j;
      j["r"] = W.r;
      j["extra_vectors"] = W.vectors.size();
      j["dim_plus_cap"] = dim_plus_cap(W);
      j["codim_plus_sum"] = codim_plus_sum(W);
      j["sigma_W(Id)"] = qs(s.value);
      j["window"] = s.N;
      j["equal"] = s.value == idx;
      ok = ok && s.value == idx;
      rows.push_back(j);
    }
    checks["sigma-id"] = {{"rows", rows}, {"pass", ok}};
    all = all && ok;
  }
  if (want("shift")) {
    json rows = json::array();
    bool ok = true;
    for (int k = -3; k <= 3; ++k) {
      auto s = cocycle_C(shift(1, k), shift(1, -k));
      json j;
      j["k"] = k;
      j["C(t^k,t^-k)"] = qs(s.value);
      j["expected"] = -k;
      j["window"] = s.N;
      ok = ok && s.value == -k;
      rows.push_back(j);
    }
    checks["shift"] = {{"rows", rows}, {"pass", ok}};
    all = all && ok;
  }
  if (want("commutator")) {
    auto rng = seeded(cfg.seed, 8);
    long ok = 0, n = 0;
    for (int t = 0; t < 20; ++t) {
      int rr = 1 + t % 2;
      RandomSpec se{rr, 2}, sf{rr, 1, 2, 2, false, false}, sb{rr, 2, 2, 2, true, false}, sd{rr, 2, 2, 2, false, true};
      auto e = random_banded(rng, se), f = random_banded(rng, sf);
      auto eb = random_banded(rng, sb), ed = random_banded(rng, sd);
      ok += commutator_trace(e, f).value == 0;
      ok += commutator_trace(eb, ed).value == 0;
      n += 2;
    }
    json j;
    j["pairs"] = n;
    j["vanishing"] = ok;
    j["pass"] = ok == n;
    all = all && ok == n;
    checks["commutator"] = j;
  }
  r["checks"] = checks;
  r["pass"] = all;
  return r;
}

json report_homology(const EngineConfig& cfg, const std::string& complex, int lambda) {
  using namespace sl2h::homology;
  CfgScope scope(cfg);
  json r = base_report(cfg, "homology", "dim H0(G,K_Omega)=1; exactness of the star complex");
  r.erase("normalization");
  r["complex"] = complex;
  r["lambda"] = lambda;
  auto complex_json = [](const FiniteComplex& c) {
    json j = json::array();
    for (size_t i = 0; i < c.dims.size(); ++i) {
      json s;
      s["space"] = c.names[i];
      s["dim"] = c.dims[i];
      s["interior_radius"] = c.interior[i];
      if (i < c.differentials.size()) s["rank_out"] = rank_mod(c.differentials[i]);
      j.push_back(s);
    }
    return j;
  };
  auto est_json = [](const CoinvariantEstimate& e) {
    json j;
    j["orbit"] = e.orbit;
    j["lambda"] = e.lambda;
    j["interior_radius"] = e.lambda_int;
    j["window_dim"] = e.window_dim;
    j["interior_dim"] = e.interior_dim;
    j["relations"] = e.relations;
    j["estimate"] = e.estimate;
    return j;
  };
  auto elliptic_g = [&](const Tree& T) {
    auto m = elliptic_panel(cfg.p).front();
    return std::make_pair(T.mat(m[0], m[1], m[2], m[3]), matrix_string(m));
  };
  if (complex == "star") {
    auto R = build_star_complex(cfg.p, cfg.level, lambda, cfg.memory_cap);
    r["spaces"] = complex_json(R.complex);
    r["composite_zero"] = R.composite_zero;
    r["rank_push"] = R.rank_push;
    r["rank_last"] = R.rank_last;
    r["exact_at_borels"] = R.exact_at_borels;
    r["last_onto"] = R.last_onto;
    r["interior_boxes"] = R.interior_boxes;
    r["interior_kernel_dim"] = R.interior_kernel_dim;
    r["interior_kernel_generated"] = R.interior_kernel_generated;
    r["interior_exact"] = R.interior_exact;
    r["pass"] = R.composite_zero && R.exact_at_borels && R.last_onto && R.interior_exact;
  } else if (complex == "elliptic") {
    Tree T(cfg.p, cfg.precision);
    auto [g0, lit] = elliptic_g(T);
    auto W = elliptic_window(T, g0, cfg.level, lambda, cfg.memory_cap);
    auto C = elliptic_complex(T, W);
    r["g0"] = lit;
    r["spaces"] = complex_json(C);
    r["torus_order"] = W.torus.size();
    r["cosets"] = W.cosets;
    bool comp = true;
    for (size_t i = 0; i + 1 < C.differentials.size(); ++i)
      comp = comp && is_zero(compose(C.differentials[i + 1], C.differentials[i]));
    r["composite_zero"] = comp;
    r["pass"] = comp && W.reps.size() * W.torus.size() == W.cosets;
  } else if (complex == "split-estimate" || complex == "elliptic-estimate") {
    // two successive enlargements of the window ending at lambda
    json rows = json::array();
    bool ok = true;
    std::string g0lit;
    for (int l = lambda - 2; l <= lambda; ++l) {
      CoinvariantEstimate e;
      if (complex == "split-estimate") {
        e = coinvariant_estimate_split(cfg.p, l);
      } else {
        Tree T(cfg.p, cfg.precision);
        auto [g0, lit] = elliptic_g(T);
        g0lit = lit;
        e = coinvariant_estimate_elliptic(T, g0, cfg.level, l);
      }
      rows.push_back(est_json(e));
      ok = ok && e.estimate == 1;
    }
    if (!g0lit.empty()) r["g0"] = g0lit;
    r["estimates"] = rows;
    r["stable_at_one"] = ok;
    r["pass"] = ok;
  } else {
    throw SL2H_ERR("ConfigError", "unknown complex " + complex);
  }
  return r;
}

}  // namespace sl2h::reports
