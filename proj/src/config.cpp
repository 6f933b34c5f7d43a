#include "oldroyd/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "oldroyd/errors.hpp"

namespace oldroyd {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_number(v[i]);
  return out;
}

double parse_number(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "inf" || t == "+inf") return kInfinity;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size() || std::isnan(v)) {
    throw ParseError(key, key + ": expected a number, got '" + text + "'");
  }
  return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_number(key, item));
  return out;
}

std::vector<std::string> parse_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true") return true;
  if (t == "false") return false;
  throw ParseError(key, key + ": expected true or false, got '" + text + "'");
}

long long parse_integer(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (t.empty() || used != t.size()) {
    throw ParseError(key, key + ": expected an integer, got '" + text + "'");
  }
  return v;
}

template <class F>
auto with_key(const std::string& key, F&& f) {
  try {
    return f();
  } catch (const ConfigError& e) {
    throw ParseError(key, key + ": " + e.what());
  }
}

struct KeyHandler {
  ConfigKeyInfo info;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define NUMBER_KEY(KEY, FIELD, DESC)                                                           \
  KeyHandler {                                                                                 \
    {KEY, "", DESC, false},                                                                    \
        [](RunConfig& c, const std::string& v) { c.FIELD = parse_number(KEY, v); },            \
        [](const RunConfig& c) { return format_number(c.FIELD); }                              \
  }
#define LIST_KEY(KEY, FIELD, DESC)                                                             \
  KeyHandler {                                                                                 \
    {KEY, "", DESC, false},                                                                    \
        [](RunConfig& c, const std::string& v) { c.FIELD = parse_list(KEY, v); },              \
        [](const RunConfig& c) { return format_list(c.FIELD); }                                \
  }
#define BOOL_KEY(KEY, FIELD, DESC)                                                             \
  KeyHandler {                                                                                 \
    {KEY, "", DESC, false},                                                                    \
        [](RunConfig& c, const std::string& v) { c.FIELD = parse_bool(KEY, v); },              \
        [](const RunConfig& c) { return std::string(c.FIELD ? "true" : "false"); }             \
  }

const std::vector<KeyHandler>& handlers() {
  static const std::vector<KeyHandler> table = [] {
    std::vector<KeyHandler> h{
        KeyHandler{{"grid.n", "", "grid points per direction (power of two, >= 16)", true},
                   [](RunConfig& c, const std::string& v) {
                     c.grid.n = static_cast<int>(parse_integer("grid.n", v));
                   },
                   [](const RunConfig& c) { return std::to_string(c.grid.n); }},
        KeyHandler{{"grid.L", "", "box side length", true},
                   [](RunConfig& c, const std::string& v) { c.grid.box_length = parse_number("grid.L", v); },
                   [](const RunConfig& c) { return format_number(c.grid.box_length); }},
        NUMBER_KEY("grid.dealias_fraction", grid.dealias_fraction,
                   "fraction of n/2 kept by the dealiasing filter"),
        NUMBER_KEY("model.a", model.a, "stress damping a >= 0"),
        NUMBER_KEY("model.mu", model.mu, "stress diffusivity mu >= 0"),
        NUMBER_KEY("model.nu", model.nu, "viscosity nu >= 0"),
        NUMBER_KEY("model.alpha", model.alpha, "coupling alpha > 0 (full mode)"),
        NUMBER_KEY("model.b", model.b, "slip parameter b in [-1, 1] (full mode)"),
        KeyHandler{{"model.rotation", "", "corotation or full", false},
                   [](RunConfig& c, const std::string& v) {
                     c.model.rotation = with_key("model.rotation", [&] { return parse_rotation_mode(trim(v)); });
                   },
                   [](const RunConfig& c) { return std::string(to_string(c.model.rotation)); }},
        NUMBER_KEY("stepper.dt", stepper.dt, "time step (initial step when adapting)"),
        KeyHandler{{"stepper.scheme", "", "IF-RK4 or IF-SSPRK3", false},
                   [](RunConfig& c, const std::string& v) {
                     c.stepper.scheme = with_key("stepper.scheme", [&] { return parse_scheme(trim(v)); });
                   },
                   [](const RunConfig& c) { return std::string(to_string(c.stepper.scheme)); }},
        NUMBER_KEY("stepper.t_end", stepper.t_end, "final time"),
        NUMBER_KEY("stepper.cfl_safety", stepper.cfl_safety, "CFL safety factor in (0, 1]"),
        BOOL_KEY("stepper.adapt", stepper.adapt, "choose dt from the CFL condition"),
        NUMBER_KEY("stepper.dt_max", stepper.dt_max, "largest adaptive step"),
        NUMBER_KEY("stepper.blowup_factor", stepper.blowup_factor,
                   "blow-up when the H1 norm exceeds this multiple of its initial value"),
        KeyHandler{{"initial.generators", "", "comma-separated generator names, summed", true},
                   [](RunConfig& c, const std::string& v) {
                     c.initial.clear();
                     for (const std::string& name : parse_names(v)) {
                       with_key("initial.generators", [&] { return generator_defaults(name).size(); });
                       c.initial.push_back({name, {}});
                     }
                     if (c.initial.empty()) {
                       throw ParseError("initial.generators", "initial.generators: list is empty");
                     }
                   },
                   [](const RunConfig& c) {
                     std::string out;
                     for (std::size_t i = 0; i < c.initial.size(); ++i) {
                       out += (i ? "," : "") + c.initial[i].name;
                     }
                     return out;
                   }},
        NUMBER_KEY("diagnostics.cadence", cadence, "record interval in time (0 = every step)"),
        LIST_KEY("diagnostics.p_list", diagnostics.p_list, "L^p exponents recorded for u and tau"),
        NUMBER_KEY("diagnostics.eta", diagnostics.eta, "coupling weight eta of E_eta, H_eta"),
        NUMBER_KEY("diagnostics.c2", diagnostics.c2, "Fourier splitting constant C2"),
        KeyHandler{{"diagnostics.f_choice", "", "splitting function: power or log_power", false},
                   [](RunConfig& c, const std::string& v) {
                     c.diagnostics.f_choice =
                         with_key("diagnostics.f_choice", [&] { return parse_splitting_function(trim(v)); });
                   },
                   [](const RunConfig& c) { return std::string(to_string(c.diagnostics.f_choice)); }},
        NUMBER_KEY("diagnostics.f_exponent", diagnostics.f_exponent, "exponent l of the splitting function"),
        LIST_KEY("diagnostics.sigma_list", diagnostics.sigma_list, "sigma values of the negative Besov norm"),
        LIST_KEY("diagnostics.gamma_p_list", diagnostics.gamma_p_list, "L^p exponents recorded for Gamma"),
        BOOL_KEY("diagnostics.besov", diagnostics.besov, "record negative Besov norms"),
        BOOL_KEY("diagnostics.b0_infty1", diagnostics.b0_infty1, "record the B^0_{inf,1} norm of tau"),
        BOOL_KEY("diagnostics.gamma", diagnostics.gamma, "record Gamma norms"),
        KeyHandler{{"outputs.directory", "", "output directory", false},
                   [](RunConfig& c, const std::string& v) { c.outputs.directory = trim(v); },
                   [](const RunConfig& c) { return c.outputs.directory.string(); }},
        BOOL_KEY("outputs.csv", outputs.csv, "write diagnostics.csv"),
        LIST_KEY("outputs.snapshot_times", outputs.snapshot_times, "times of field snapshots"),
        KeyHandler{{"outputs.snapshot_representation", "", "real or spectral", false},
                   [](RunConfig& c, const std::string& v) {
                     const std::string t = trim(v);
                     if (t == "real") {
                       c.outputs.snapshot_representation = Representation::real;
                     } else if (t == "spectral") {
                       c.outputs.snapshot_representation = Representation::spectral;
                     } else {
                       throw ParseError("outputs.snapshot_representation",
                                        "outputs.snapshot_representation: expected real or spectral");
                     }
                   },
                   [](const RunConfig& c) { return std::string(to_string(c.outputs.snapshot_representation)); }},
        KeyHandler{{"outputs.seed", "", "seed of randomized initial data", false},
                   [](RunConfig& c, const std::string& v) {
                     const long long s = parse_integer("outputs.seed", v);
                     if (s < 0) throw ParseError("outputs.seed", "outputs.seed: must be >= 0");
                     c.outputs.seed = static_cast<std::uint64_t>(s);
                   },
                   [](const RunConfig& c) { return std::to_string(c.outputs.seed); }},
        NUMBER_KEY("checks.tau_identity", checks.tau_identity, "tolerance of the tau energy identity"),
        NUMBER_KEY("checks.tau_lp_decay", checks.tau_lp_decay, "tolerance of the tau L^p decay margin"),
        NUMBER_KEY("checks.velocity_energy", checks.velocity_energy, "tolerance of the velocity energy balance"),
        NUMBER_KEY("checks.e_eta_increment", checks.e_eta_increment,
                   "largest allowed increase rate of E_eta"),
        LIST_KEY("checks.fit_window", checks.fit_window, "t0,t1 of the decay fits (empty = no fits)"),
        LIST_KEY("checks.l2_exponent", checks.l2_exponent, "accepted range of the ||(u,tau)||_L2 exponent"),
        LIST_KEY("checks.grad_exponent", checks.grad_exponent,
                 "accepted range of the ||grad(u,tau)||_L2 exponent"),
        NUMBER_KEY("checks.min_r2", checks.min_r2, "smallest accepted r^2 of the decay fits"),
    };
    const RunConfig defaults;
    for (KeyHandler& k : h) {
      if (!k.info.required) k.info.default_value = k.get(defaults);
    }
    return h;
  }();
  return table;
}

#undef NUMBER_KEY
#undef LIST_KEY
#undef BOOL_KEY

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::string generator_key(const std::string& gen, const std::string& param) {
  return "initial." + gen + "." + param;
}

}  // namespace

const std::vector<ConfigKeyInfo>& config_reference() {
  static const std::vector<ConfigKeyInfo> ref = [] {
    std::vector<ConfigKeyInfo> out;
    for (const KeyHandler& h : handlers()) out.push_back(h.info);
    for (const std::string& gen : generator_names()) {
      for (const auto& [param, value] : generator_defaults(gen)) {
        out.push_back({generator_key(gen, param), format_number(value),
                       "parameter of the " + gen + " generator", false});
      }
    }
    return out;
  }();
  return ref;
}

std::string nearest_key(const std::string& key, const std::vector<std::string>& candidates) {
  std::string best;
  std::size_t best_d = static_cast<std::size_t>(-1);
  for (const std::string& c : candidates) {
    // Compare against the full key and against its last segment so that a
    // misspelt leaf ("viscocity") still finds its section.
    std::size_t d = edit_distance(key, c);
    const auto dot = c.rfind('.');
    if (dot != std::string::npos && key.find('.') == std::string::npos) {
      d = std::min(d, edit_distance(key, c.substr(dot + 1)));
    }
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

void RunConfig::validate() const {
  grid.validate();
  model.validate();
  stepper.validate();
  diagnostics.validate();
  if (initial.empty()) throw ConfigError("initial.generators: at least one generator is required");
  if (!(cadence >= 0.0) || !std::isfinite(cadence)) throw ConfigError("diagnostics.cadence must be >= 0");
  for (double t : outputs.snapshot_times) {
    if (!(t >= 0.0)) throw ConfigError("outputs.snapshot_times must be >= 0");
  }
  if (!checks.fit_window.empty() &&
      (checks.fit_window.size() != 2 || !(checks.fit_window[1] > checks.fit_window[0]))) {
    throw ConfigError("checks.fit_window must be t0,t1 with t1 > t0");
  }
  for (const auto* range : {&checks.l2_exponent, &checks.grad_exponent}) {
    if (range->size() != 2 || (*range)[0] > (*range)[1]) {
      throw ConfigError("exponent ranges must be lo,hi with lo <= hi");
    }
  }
}

RunConfig parse_config_text(const std::string& text) {
  std::map<std::string, std::pair<std::string, int>> entries;
  std::stringstream ss(text);
  int lineno = 0;
  for (std::string line; std::getline(ss, line);) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("", "line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (entries.count(key)) throw ParseError(key, key + ": duplicate key (line " + std::to_string(lineno) + ")");
    entries[key] = {trim(line.substr(eq + 1)), lineno};
  }

  RunConfig cfg;
  std::set<std::string> used;
  for (const KeyHandler& h : handlers()) {
    auto it = entries.find(h.info.key);
    if (it == entries.end()) {
      if (h.info.required) throw ParseError(h.info.key, h.info.key + ": required key is missing");
      continue;
    }
    h.set(cfg, it->second.first);
    used.insert(h.info.key);
  }

  // Generator parameters are valid only for generators that are listed.
  std::vector<std::string> valid;
  for (const KeyHandler& h : handlers()) valid.push_back(h.info.key);
  for (GeneratorSpec& g : cfg.initial) {
    g.params = generator_defaults(g.name);
    for (const auto& [param, value] : generator_defaults(g.name)) {
      const std::string key = generator_key(g.name, param);
      valid.push_back(key);
      auto it = entries.find(key);
      if (it == entries.end()) continue;
      g.params[param] = parse_number(key, it->second.first);
      used.insert(key);
    }
  }
  for (const auto& [key, value] : entries) {
    if (used.count(key)) continue;
    throw ParseError(key, "unknown key '" + key + "' (line " + std::to_string(value.second) +
                              "); nearest valid key is '" + nearest_key(key, valid) + "'");
  }
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    throw ParseError(msg.substr(0, msg.find(' ')), msg);
  }
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("", "cannot open config file: " + path.string());
  std::stringstream buf;
  buf << is.rdbuf();
  return parse_config_text(buf.str());
}

std::string echo_config(const RunConfig& cfg) {
  std::ostringstream os;
  for (const KeyHandler& h : handlers()) os << h.info.key << " = " << h.get(cfg) << '\n';
  for (const GeneratorSpec& g : cfg.initial) {
    for (const auto& [param, value] : generator_defaults(g.name)) {
      auto it = g.params.find(param);
      os << generator_key(g.name, param) << " = "
         << format_number(it == g.params.end() ? value : it->second) << '\n';
    }
  }
  return os.str();
}

}  // namespace oldroyd
