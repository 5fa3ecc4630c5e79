#include "sclab/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sclab/conformal.hpp"
#include "sclab/distances.hpp"
#include "sclab/fundamental_eq.hpp"
#include "sclab/gallery.hpp"
#include "sclab/mt_audit.hpp"
#include "sclab/mu_bubble.hpp"
#include "sclab/spectral.hpp"

namespace sclab {

ConfigError::ConfigError(int line, const std::string& what)
    : InputError(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

bool ScenarioReport::failed() const {
  if (!error.empty()) return true;
  return std::any_of(records.begin(), records.end(), [](const AuditRecord& r) { return r.failed(); });
}

namespace {

// Parameters each audit accepts (besides "advisory").
const std::map<std::string, std::set<std::string>>& audit_table() {
  static const std::map<std::string, std::set<std::string>> t = {
      {"gauss_bonnet", {}},
      {"spectral", {"min"}},
      {"supersolution", {"tol"}},
      {"fundamental", {"count"}},
      {"isoperimetric_1", {}},
      {"collar", {"r0", "rho"}},
      {"isoperimetric_2", {"epsilon"}},
      {"volume_comparison", {"epsilon"}},
      {"bonnet_myers", {}},
      {"burago_zalgaller", {}},
      {"conformal", {"target_area"}},
      {"tilde_diameter", {"base_ratio"}},
      {"anti_harnack", {}},
      {"duality", {"tol"}},
      {"weighted_geodesic", {}},
      {"bubble_diameter", {"epsilon"}},
      {"perturbation", {"t"}},
      {"mt_envelope", {"R", "xi", "count"}},
      {"mt_closed", {"count"}},
  };
  return t;
}

int line_of(const YAML::Node& n) { return n.Mark().line + 1; }

template <class T>
T as(const YAML::Node& n, const std::string& what) {
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(line_of(n), "'" + what + "' has the wrong type");
  }
}

void only_keys(const YAML::Node& n, const std::set<std::string>& allowed, const std::string& where) {
  if (!n.IsMap()) throw ConfigError(line_of(n), where + " must be a mapping");
  for (const auto& kv : n) {
    auto k = kv.first.as<std::string>();
    if (!allowed.count(k)) throw ConfigError(line_of(kv.first), "unknown key '" + k + "' in " + where);
  }
}

std::size_t grid_value(const YAML::Node& n) {
  long v = as<long>(n, "grid_n");
  if (v < 16) throw ConfigError(line_of(n), "grid_n must be at least 16");
  return static_cast<std::size_t>(v);
}

AuditSpec parse_audit(const YAML::Node& n) {
  AuditSpec a;
  a.line = line_of(n);
  if (n.IsScalar()) {
    a.name = n.as<std::string>();
  } else if (n.IsMap()) {
    if (!n["name"]) throw ConfigError(a.line, "audit entry needs a name");
    a.name = as<std::string>(n["name"], "name");
    for (const auto& kv : n) {
      auto k = kv.first.as<std::string>();
      if (k == "name") continue;
      if (k == "advisory") {
        a.advisory = as<bool>(kv.second, k);
        continue;
      }
      a.params[k] = as<double>(kv.second, k);
    }
  } else {
    throw ConfigError(a.line, "audit entry must be a name or a mapping");
  }
  auto it = audit_table().find(a.name);
  if (it == audit_table().end()) throw ConfigError(a.line, "unknown audit '" + a.name + "'");
  for (const auto& [k, v] : a.params) {
    if (!it->second.count(k))
      throw ConfigError(a.line, "audit '" + a.name + "' has no parameter '" + k + "'");
  }
  return a;
}

Scenario parse_scenario(const YAML::Node& n) {
  only_keys(n, {"name", "gallery", "params", "beta", "lambda", "audits", "grid_n"}, "scenario");
  Scenario s;
  s.line = line_of(n);
  if (!n["name"] || !n["gallery"]) throw ConfigError(s.line, "scenario needs name and gallery");
  s.name = as<std::string>(n["name"], "name");
  s.gallery = as<std::string>(n["gallery"], "gallery");
  const auto& entries = gallery_entries();
  auto e = std::find_if(entries.begin(), entries.end(),
                        [&](const GalleryEntry& g) { return g.name == s.gallery; });
  if (e == entries.end()) throw ConfigError(line_of(n["gallery"]), "unknown gallery entry '" + s.gallery + "'");
  if (auto p = n["params"]) {
    if (!p.IsMap()) throw ConfigError(line_of(p), "params must be a mapping");
    for (const auto& kv : p) {
      auto k = kv.first.as<std::string>();
      bool known = std::any_of(e->params.begin(), e->params.end(),
                               [&](const GalleryParam& gp) { return gp.name == k; });
      if (!known) throw ConfigError(line_of(kv.first), "gallery entry '" + s.gallery + "' has no parameter '" + k + "'");
      s.gallery_params[k] = as<double>(kv.second, k);
    }
  }
  if (n["beta"]) s.beta = as<double>(n["beta"], "beta");
  if (!(s.beta > 0.0)) throw ConfigError(line_of(n["beta"]), "beta must be positive");
  if (n["lambda"]) s.lambda = as<double>(n["lambda"], "lambda");
  if (n["grid_n"]) s.grid_n = grid_value(n["grid_n"]);
  auto audits = n["audits"];
  if (!audits || !audits.IsSequence() || audits.size() == 0)
    throw ConfigError(s.line, "scenario '" + s.name + "' needs a nonempty audit list");
  for (const auto& a : audits) s.audits.push_back(parse_audit(a));
  return s;
}

SweepSpec parse_sweep(const YAML::Node& n) {
  only_keys(n, {"name", "kind", "beta", "values", "grid_n"}, "sweep");
  SweepSpec s;
  s.line = line_of(n);
  if (!n["name"] || !n["kind"] || !n["values"]) throw ConfigError(s.line, "sweep needs name, kind and values");
  s.name = as<std::string>(n["name"], "name");
  s.kind = as<std::string>(n["kind"], "kind");
  if (s.kind != "scaling" && s.kind != "rigidity")
    throw ConfigError(line_of(n["kind"]), "unknown sweep kind '" + s.kind + "'");
  s.beta = n["beta"] ? as<double>(n["beta"], "beta") : (s.kind == "scaling" ? 0.4 : 1.0);
  s.values = as<std::vector<double>>(n["values"], "values");
  if (s.kind == "scaling" && s.values.size() < 4)
    throw ConfigError(line_of(n["values"]), "scaling sweep needs at least 4 radii");
  if (s.values.empty()) throw ConfigError(line_of(n["values"]), "sweep needs values");
  if (n["grid_n"]) s.grid_n = grid_value(n["grid_n"]);
  return s;
}

}  // namespace

const std::vector<std::string>& audit_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : audit_table()) v.push_back(k);
    return v;
  }();
  return names;
}

Config parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(e.mark.line + 1, e.msg);
  }
  if (!root.IsMap()) throw ConfigError(1, "config must be a mapping");
  only_keys(root, {"version", "seed", "grid_n", "scenarios", "sweeps"}, "config");
  Config c;
  if (root["version"]) c.version = as<int>(root["version"], "version");
  if (c.version != 1) throw ConfigError(line_of(root["version"]), "unsupported config version");
  if (root["seed"]) c.seed = as<std::uint64_t>(root["seed"], "seed");
  if (root["grid_n"]) c.grid_n = grid_value(root["grid_n"]);
  std::set<std::string> names;
  auto add_name = [&](const std::string& name, int line) {
    if (!names.insert(name).second) throw ConfigError(line, "duplicate name '" + name + "'");
  };
  if (auto s = root["scenarios"]) {
    if (!s.IsSequence()) throw ConfigError(line_of(s), "scenarios must be a list");
    for (const auto& n : s) {
      c.scenarios.push_back(parse_scenario(n));
      add_name(c.scenarios.back().name, c.scenarios.back().line);
    }
  }
  if (auto s = root["sweeps"]) {
    if (!s.IsSequence()) throw ConfigError(line_of(s), "sweeps must be a list");
    for (const auto& n : s) {
      c.sweeps.push_back(parse_sweep(n));
      add_name(c.sweeps.back().name, c.sweeps.back().line);
    }
  }
  if (c.scenarios.empty() && c.sweeps.empty()) throw ConfigError(1, "config has nothing to run");
  return c;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

// ---------------------------------------------------------------------------

namespace {

struct Supersolution {
  RadialField phi;
  double lambda = 0.0;
  double tol = 1e-6;
  bool corners = false;  // φ' may jump, so the conformal image has corners
  std::string source;
};

class Context {
 public:
  Context(const Scenario& s, std::size_t n, std::uint64_t seed)
      : s_(s), model_(build_gallery(s.gallery, s.gallery_params)), n_(n), seed_(seed) {}

  const WarpedMetric& metric() const { return model_.metric; }
  double beta() const { return s_.beta; }
  std::size_t n() const { return n_; }
  std::uint64_t seed() const { return seed_; }
  Boundary bc() const {
    return metric().topology() == Topology::sphere ? Boundary::closed : Boundary::neumann;
  }

  const Geometry& geometry() {
    if (!geo_) geo_ = measure_geometry(metric(), beta(), n_);
    return *geo_;
  }

  // Bundled φ when the model has one, else the first eigenfunction.
  const Supersolution& super() {
    if (!super_) {
      Supersolution s;
      if (model_.phi) {
        s.phi = *model_.phi;
        auto it = model_.params.find("lambda");
        s.lambda = s_.lambda.value_or(it != model_.params.end() ? it->second : 0.0);
        s.source = "bundled";
        s.corners = true;
      } else {
        SpectralParams sp;
        sp.beta = beta();
        sp.n = n_;
        auto eig = first_eigenvalue(metric(), sp, bc());
        s.phi = eig.eigenfunction;
        s.lambda = s_.lambda.value_or(eig.lambda1);
        s.tol = 1e-5;
        s.source = "eigenfunction";
      }
      super_ = s;
    }
    return *super_;
  }

  const ConformalBundle& bundle(double target_area) {
    if (!bundle_ || bundle_->target_area != target_area) {
      const auto& sp = super();
      ConformalOptions opt;
      opt.n = n_;
      opt.residual_tol = sp.tol;
      opt.allow_corners = sp.corners;
      bundle_ = build_conformal(metric(), beta(), sp.lambda, sp.phi, target_area, opt);
    }
    return *bundle_;
  }

 private:
  const Scenario& s_;
  GalleryModel model_;
  std::size_t n_;
  std::uint64_t seed_;
  std::optional<Geometry> geo_;
  std::optional<Supersolution> super_;
  std::optional<ConformalBundle> bundle_;
};

double param(const AuditSpec& a, const std::string& k, double fallback) {
  auto it = a.params.find(k);
  return it == a.params.end() ? fallback : it->second;
}

std::vector<AuditRecord> run_audit(Context& cx, const AuditSpec& a) {
  const WarpedMetric& m = cx.metric();
  const double beta = cx.beta();
  const double L = m.length();
  const std::string& name = a.name;

  if (name == "gauss_bonnet") return {gauss_bonnet_check(m)};
  if (name == "spectral") {
    SpectralParams sp;
    sp.beta = beta;
    sp.n = cx.n();
    double lam = certified_lambda1(m, sp, cx.bc());
    auto r = check_le("spectral", "lower bound <= certified lam1", param(a, "min", 0.0), lam,
                      sp.tol_eig);
    r.beta = beta;
    r.lambda = lam;
    r.note = to_string(cx.bc());
    return {r};
  }
  if (name == "supersolution") {
    const auto& s = cx.super();
    double res = supersolution_residual(m, beta, s.lambda, s.phi, cx.n(), std::nullopt, true);
    auto r = check_le("supersolution", "max relative (lap phi - (bK - lam) phi) <= 0", res, 0.0,
                      param(a, "tol", s.tol));
    r.beta = beta;
    r.lambda = s.lambda;
    r.note = s.source;
    return {r};
  }
  if (name == "fundamental") {
    if (m.topology() != Topology::sphere)
      return {skipped("fundamental", "fundamental inequality", "needs a closed surface")};
    double lam = cx.geometry().lambda1;
    if (lam < 0.0) return {skipped("fundamental", "fundamental inequality", "lambda1 < 0")};
    auto count = static_cast<std::size_t>(param(a, "count", 50));
    std::mt19937_64 rng(cx.seed());
    std::uniform_real_distribution<double> U(0.05, 0.95);
    AuditRecord worst;
    double worst_slack = kInf;
    for (std::size_t i = 0; i < count; ++i) {
      auto c = coordinate_curve(m, U(rng) * L);
      auto tf = random_test_function(rng, c.rho_minus, c.rho_plus);
      auto r = evaluate_fundamental(m, beta, lam, c, tf, cx.n());
      double slack = r.margin + r.tolerance;
      if (slack < worst_slack) {
        worst_slack = slack;
        worst = r;
      }
    }
    worst.note = "worst of " + std::to_string(count) + " (" + worst.note + ")";
    return {worst};
  }
  if (name == "isoperimetric_1") return {audit_isoperimetric_1(m, beta, cx.geometry())};
  if (name == "collar") return {audit_collar(m, beta, param(a, "r0", 0.5 * L), param(a, "rho", 0.25 * L), cx.n())};
  if (name == "isoperimetric_2") return audit_isoperimetric_2(m, beta, param(a, "epsilon", 0.1), cx.geometry());
  if (name == "volume_comparison") {
    std::vector<double> radii;
    for (double t : {0.05, 0.1, 0.25, 0.5, 0.75, 1.0}) radii.push_back(t * L);
    return audit_volume_comparison(m, beta, radii, param(a, "epsilon", 0.1));
  }
  if (name == "bonnet_myers") return {audit_bonnet_myers(m, beta, cx.geometry().lambda1)};
  if (name == "burago_zalgaller") {
    const auto& g = cx.geometry();
    return {burago_zalgaller_audit(m, g.scan, g.diam)};
  }
  if (name == "conformal") return conformal_audits(cx.bundle(param(a, "target_area", 4.0 * kPi)));
  if (name == "tilde_diameter") return {audit_tilde_diameter(cx.bundle(1.0), param(a, "base_ratio", 0.0))};
  if (name == "anti_harnack") return {anti_harnack_audit(m, beta, cx.super().phi, cx.n())};
  if (name == "duality") {
    const auto& s = cx.super();
    ConformalOptions opt;
    opt.n = cx.n();
    opt.residual_tol = s.tol;
    opt.allow_corners = s.corners;
    auto d = duality_transform(m, beta, s.phi, opt);
    auto r = check_le("duality", "relative residual of (phi^(4/b) g, 1/phi) <= 0", d.residual, 0.0,
                      param(a, "tol", s.tol));
    r.beta = beta;
    r.note = s.source;
    return {r};
  }
  if (name == "weighted_geodesic") {
    const auto& s = cx.super();
    return {weighted_geodesic_audit(m, beta, s.lambda, weight_from_supersolution(s.phi, beta))};
  }
  if (name == "bubble_diameter") {
    const auto& s = cx.super();
    return {audit_bubble_diameter(m, beta, s.lambda, param(a, "epsilon", 0.01),
                                  weight_from_supersolution(s.phi, beta))};
  }
  if (name == "perturbation") {
    if (m.topology() != Topology::sphere)
      return {skipped("perturbation", "d lam1/dt analytic vs central difference", "needs a closed surface")};
    // cos² has nonzero mean, so the derivative does not vanish on the round sphere.
    auto h = RadialField::analytic([L](double r) {
      double k = kPi / L, c = std::cos(k * r), s = std::sin(k * r);
      return Jet{c * c, -2.0 * k * s * c, -2.0 * k * k * (c * c - s * s)};
    });
    auto p = eigenvalue_perturbation(m, beta, h, param(a, "t", 1e-4), cx.n());
    double err = std::abs(p.analytic_full - p.central_diff) /
                 std::max(std::abs(p.central_diff), 1e-12);
    auto r = check_le("perturbation", "|analytic - central| / |central| <= 1e-3", err, 1e-3, 0.0);
    r.beta = beta;
    r.lambda = p.lambda1;
    r.discretization = {{"analytic", p.analytic_full}, {"central", p.central_diff}};
    return {r};
  }
  if (name == "mt_envelope") {
    bool closed = m.topology() == Topology::sphere && !a.params.count("R");
    double R = closed ? 0.0 : param(a, "R", m.topology() == Topology::sphere ? 0.5 * L : L);
    double xi = param(a, "xi", closed ? 0.0 : dirichlet_ratio_ub(m, R, cx.n()));
    return {mt_envelope_audit(m, R, xi, static_cast<std::size_t>(param(a, "count", 100)),
                              cx.seed(), cx.n())};
  }
  if (name == "mt_closed") {
    if (m.topology() != Topology::sphere)
      return {skipped("mt_closed", "Young domination of the e^{pu} ratio", "needs a closed surface")};
    auto s = mt_suite(m, 0.0, 0.0, static_cast<std::size_t>(param(a, "count", 100)), cx.seed(), cx.n());
    double worst = 0.0;
    for (const auto& r : s.results) worst = std::max(worst, r.ratio_exp / r.ratio - 1.0);
    auto r = check_le("mt_closed", "ratio_exp / ratio - 1 <= 0 on every member", worst, 0.0, 1e-9);
    std::ostringstream os;
    os << "max ratio " << s.max_ratio << ", max ratio_exp " << s.max_ratio_exp;
    r.note = os.str();
    return {r};
  }
  throw InputError("unknown audit '" + name + "'");
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ScenarioReport run_scenario(const Scenario& s, std::size_t grid_n, std::uint64_t seed) {
  ScenarioReport rep;
  rep.name = s.name;
  rep.kind = "scenario";
  std::optional<Context> cx;
  try {
    cx.emplace(s, s.grid_n.value_or(grid_n), seed);
  } catch (const std::exception& e) {
    rep.error = e.what();
    return rep;
  }
  for (const auto& a : s.audits) {
    std::vector<AuditRecord> out;
    try {
      out = run_audit(*cx, a);
    } catch (const InputError& e) {
      out = {skipped(a.name, "", e.what())};
    } catch (const std::exception& e) {
      AuditRecord r;
      r.audit = a.name;
      r.verdict = Verdict::fail;
      r.note = std::string("error: ") + e.what();
      out = {r};
    }
    for (auto& r : out) {
      if (std::isnan(r.beta)) r.beta = s.beta;
      if (a.advisory) r.advisory = true;
      rep.records.push_back(std::move(r));
    }
  }
  return rep;
}

ScenarioReport run_sweep(const SweepSpec& s, std::size_t grid_n) {
  ScenarioReport rep;
  rep.name = s.name;
  rep.kind = s.kind;
  const std::size_t n = s.grid_n.value_or(grid_n);
  std::ostringstream data;
  data << "# sclab " << s.kind << " csv v" << kCsvVersion << "\n";
  try {
    if (s.kind == "scaling") {
      auto sw = scaling_sweep(s.beta, s.values, n);
      data << "R,diam,area,ch_ub,in_ub,ch_diam,area_over_diam2,residual,lambda1,excluded\n";
      for (const auto& r : sw.rows) {
        data << fmt(r.R) << ',' << fmt(r.diam) << ',' << fmt(r.area) << ',' << fmt(r.ch_ub) << ','
             << fmt(r.in_ub) << ',' << fmt(r.ch_diam) << ',' << fmt(r.area_over_diam2) << ','
             << fmt(r.residual) << ',' << fmt(r.lambda1) << ',' << (r.excluded ? 1 : 0) << "\n";
      }
      data << "fit,,,," << fmt(sw.slope_in) << ',' << fmt(sw.slope_ch_diam) << ','
           << fmt(sw.slope_area_diam2) << ",,,\n";
      double want = 1.0 - sw.p;
      auto a = check_le("scaling_ch_diam", "|slope(Ch diam) / (1 - p) - 1| <= 0.15",
                        std::abs(sw.slope_ch_diam / want - 1.0), 0.15, 0.0);
      a.discretization = {{"slope", sw.slope_ch_diam}, {"p", sw.p}};
      auto b = check_le("scaling_exponent", "|slope(IN) / slope(|S|/diam^2) / p - 1| <= 0.2",
                        std::abs(sw.exponent_ratio / sw.p - 1.0), 0.2, 0.0);
      b.discretization = {{"ratio", sw.exponent_ratio}, {"p", sw.p}};
      for (auto* r : {&a, &b}) r->beta = s.beta;
      rep.records = {a, b};
    } else {
      std::vector<std::pair<double, WarpedMetric>> fam;
      for (double e : s.values) fam.emplace_back(e, make_spheroid(e));
      auto rr = rigidity_experiment(fam, s.beta);
      data << rigidity_csv(rr);
      auto flag = [&](const char* name, const char* stmt, bool ok) {
        auto r = check_le(name, stmt, ok ? 0.0 : 1.0, 0.0, 0.0);
        r.beta = s.beta;
        r.lambda = s.beta;
        return r;
      };
      rep.records = {flag("rigidity_monotone", "D_inf nonincreasing within noise as delta decreases", rr.monotone),
                     flag("rigidity_small", "D_inf < 0.05 at the smallest delta", rr.small_at_end),
                     flag("rigidity_energy", "energy <= delta/b + 1e-6 on every row", rr.energy_ok)};
    }
  } catch (const std::exception& e) {
    rep.error = e.what();
  }
  rep.data_csv = data.str();
  return rep;
}

std::string records_csv(const ScenarioReport& r) {
  std::ostringstream os;
  os << "# sclab audit csv v" << kCsvVersion << "\n";
  os << "scenario,audit,statement,beta,lambda,epsilon,lhs,rhs,margin,tolerance,verdict,advisory,note\n";
  for (const auto& a : r.records) {
    os << quote(r.name) << ',' << quote(a.audit) << ',' << quote(a.statement) << ',' << fmt(a.beta)
       << ',' << fmt(a.lambda) << ',' << fmt(a.epsilon) << ',' << fmt(a.lhs) << ',' << fmt(a.rhs)
       << ',' << fmt(a.margin) << ',' << fmt(a.tolerance) << ',' << to_string(a.verdict) << ','
       << (a.advisory ? 1 : 0) << ',' << quote(a.note) << "\n";
  }
  if (!r.error.empty()) os << quote(r.name) << ",error,,,,,,,,,fail,0," << quote(r.error) << "\n";
  return os.str();
}

std::string report_json(const ScenarioReport& r) {
  using nlohmann::json;
  json j;
  j["name"] = r.name;
  j["kind"] = r.kind;
  j["csv_version"] = kCsvVersion;
  j["passed"] = !r.failed();
  if (!r.error.empty()) j["error"] = r.error;
  std::size_t counts[3] = {0, 0, 0};
  j["audits"] = json::array();
  for (const auto& a : r.records) {
    ++counts[static_cast<int>(a.verdict)];
    json e = {{"audit", a.audit}, {"verdict", to_string(a.verdict)}, {"advisory", a.advisory},
              {"margin", a.margin}, {"note", a.note}};
    if (!a.discretization.empty()) e["discretization"] = a.discretization;
    j["audits"].push_back(e);
  }
  j["counts"] = {{"pass", counts[0]}, {"fail", counts[1]}, {"skipped", counts[2]}};
  return j.dump(2) + "\n";
}

int run_config(const Config& c, const RunOptions& opt, std::ostream& log) {
  std::filesystem::create_directories(opt.out_dir);
  const std::size_t n = opt.grid_n.value_or(c.grid_n);
  const std::uint64_t seed = opt.seed.value_or(c.seed);
  auto write = [&](const std::string& file, const std::string& text) {
    std::ofstream out(opt.out_dir / file);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + (opt.out_dir / file).string());
  };
  int code = 0;
  auto emit = [&](const ScenarioReport& rep) {
    write(rep.name + ".csv", records_csv(rep));
    write(rep.name + ".json", report_json(rep));
    if (!rep.data_csv.empty()) write(rep.name + "_data.csv", rep.data_csv);
    std::size_t fails = 0;
    for (const auto& a : rep.records) fails += a.failed();
    log << (rep.failed() ? "FAIL " : "ok   ") << rep.name << " (" << rep.records.size()
        << " records, " << fails << " failed)";
    if (!rep.error.empty()) log << ": " << rep.error;
    log << "\n";
    if (rep.failed()) code = 1;
  };
  if (!opt.sweeps_only) {
    for (const auto& s : c.scenarios) emit(run_scenario(s, n, seed));
  }
  for (const auto& s : c.sweeps) emit(run_sweep(s, n));
  return code;
}

std::string gallery_listing(bool json, std::optional<Topology> filter) {
  std::vector<const GalleryEntry*> sel;
  for (const auto& e : gallery_entries()) {
    if (!filter || e.topology == *filter) sel.push_back(&e);
  }
  if (json) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto* e : sel) {
      nlohmann::json params = nlohmann::json::object();
      for (const auto& p : e->params) {
        params[p.name] = {{"type", "number"}, {"default", p.default_value}, {"doc", p.doc}};
      }
      j.push_back({{"name", e->name}, {"topology", to_string(e->topology)}, {"doc", e->doc},
                   {"params", params}});
    }
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  for (const auto* e : sel) {
    os << e->name << " [" << to_string(e->topology) << "]  " << e->doc << "\n";
    for (const auto& p : e->params) {
      os << "    " << p.name << " = " << fmt(p.default_value) << "  (" << p.doc << ")\n";
    }
  }
  return os.str();
}

}  // namespace sclab
