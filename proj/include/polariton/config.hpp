#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "polariton/error.hpp"
#include "polariton/grid.hpp"
#include "polariton/init.hpp"
#include "polariton/model.hpp"
#include "polariton/rk4.hpp"

// Sectioned `key = value` configuration. Units are fixed by the schema
// (meV, um, ps) and never written in the file.
//
//   [model <cnrp1|cnrp1_spin|cnrp2|hinrp>]   required
//   [grid]      ndim, nx (xsize), ny (ysize), cavsize_x (cavsizex), cavsize_y (cavsizey)
//   [pump]      coherent: F_p, k_p | k_px, k_py, delta_omega, w, x0, y0
//               reservoir model: P0 (P), sigma_p, profile = gaussian | uniform
//   [pump plus], [pump minus]   the two polarisation pumps of cnrp1_spin
//   [init]      kind = zero | gaussian, N_c, sigma_p; reservoir model adds P0, gamma_R
//   [run]       h, t_end, snapshot_every, cfl_policy = reject | warn
//
// Model keys:
//   cnrp1        hbar, omega_R, gamma_c, gamma_x, m0, m_c | mass_ratio, g | g_ratio, delta, d
//   cnrp1_spin   as cnrp1 with g1 | g1_ratio and g2 | g2_ratio instead of g
//   cnrp2        hbar, m0, m | mass_ratio, gamma_c, g | g_ratio, eta, kinetic_sign
//   hinrp        hbar, E0, m0, m | mass_ratio, gamma_c, gamma_R, R, g | g_ratio, g_R, G
//
// g_ratio multiplies the linewidth: g = g_ratio * hbar * gamma_c for the
// photon/exciton models, and g = g_ratio * gamma_c for the single-field
// models, whose nonlinearity already carries a factor hbar. mass_ratio
// multiplies m0. `d` is accepted and ignored. Omitted keys take the
// reference defaults of the chosen model.

namespace polariton {

struct GridSpec {
  int ndim = 1;
  std::size_t nx = 201;
  std::size_t ny = 1;
  double cavsize_x = 100.0;
  double cavsize_y = 0.0;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

inline Grid make_grid(const GridSpec& g) {
  return make_grid(g.ndim, g.nx, g.ny, g.cavsize_x, g.cavsize_y);
}

/// A fully resolved configuration.
struct SimConfig {
  ModelParams model;
  GridSpec grid;
  InitSpec init;
  RunConfig run;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

/// Parsed but unresolved configuration text.
using ConfigDocument = boost::property_tree::ptree;

namespace detail {

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

inline double parse_real(std::string_view text, const std::string& where) {
  const std::string s = trim(text);
  double value = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (!s.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (s.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError(where + ": expected a number, got '" + s + "'");
  }
  return value;
}

inline std::uint64_t parse_count(std::string_view text, const std::string& where) {
  const std::string s = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError(where + ": expected a non-negative integer, got '" + s + "'");
  }
  return value;
}

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Hands out the keys of one section and reports whatever was not taken.
class SectionReader {
 public:
  SectionReader(std::string label, const ConfigDocument* tree)
      : label_(std::move(label)), tree_(tree) {}

  [[nodiscard]] bool present() const noexcept { return tree_ != nullptr; }

  /// Value of `key` or of one of its aliases; two spellings together are an error.
  std::optional<std::string> raw(std::string_view key,
                                 std::initializer_list<std::string_view> aliases = {}) {
    std::optional<std::string> found;
    std::string found_name;
    auto look = [&](std::string_view name) {
      if (!tree_) return;
      for (const auto& [k, v] : *tree_) {
        if (k != name) continue;
        if (found) {
          throw ConfigError(label_ + ": keys '" + found_name + "' and '" + k +
                            "' name the same parameter");
        }
        found = v.data();
        found_name = k;
        taken_.push_back(k);
      }
    };
    look(key);
    for (auto alias : aliases) look(alias);
    return found;
  }

  std::optional<double> real(std::string_view key,
                             std::initializer_list<std::string_view> aliases = {}) {
    auto text = raw(key, aliases);
    if (!text) return std::nullopt;
    return parse_real(*text, label_ + "." + std::string(key));
  }

  void real_into(std::string_view key, double& dst,
                 std::initializer_list<std::string_view> aliases = {}) {
    if (auto v = real(key, aliases)) dst = *v;
  }

  std::optional<std::uint64_t> count(std::string_view key,
                                     std::initializer_list<std::string_view> aliases = {}) {
    auto text = raw(key, aliases);
    if (!text) return std::nullopt;
    return parse_count(*text, label_ + "." + std::string(key));
  }

  /// Absolute value `key` or `ratio_key` times `unit`; never both.
  std::optional<double> absolute_or_ratio(std::string_view key, std::string_view ratio_key,
                                          double unit) {
    auto absolute = real(key);
    auto ratio = real(ratio_key);
    if (absolute && ratio) {
      throw ConfigError(label_ + ": '" + std::string(key) + "' and '" + std::string(ratio_key) +
                        "' are mutually exclusive");
    }
    if (ratio) return *ratio * unit;
    return absolute;
  }

  void finish() const {
    if (!tree_) return;
    for (const auto& [k, v] : *tree_) {
      if (std::find(taken_.begin(), taken_.end(), k) == taken_.end()) {
        throw ConfigError(label_ + ": unknown key '" + k + "'");
      }
    }
  }

 private:
  std::string label_;
  const ConfigDocument* tree_;
  std::vector<std::string> taken_;
};

inline const ConfigDocument* find_section(const ConfigDocument& doc, std::string_view name) {
  for (const auto& [k, v] : doc) {
    if (k == name) return &v;
  }
  return nullptr;
}

inline void read_coherent_pump(SectionReader& r, PumpSpec& p) {
  r.real_into("F_p", p.F_p);
  auto k_p = r.real("k_p");
  auto k_px = r.real("k_px");
  if (k_p && k_px) throw ConfigError("pump: 'k_p' and 'k_px' are mutually exclusive");
  if (k_p) p.k_px = *k_p;
  if (k_px) p.k_px = *k_px;
  r.real_into("k_py", p.k_py);
  r.real_into("delta_omega", p.delta_omega);
  r.real_into("w", p.w);
  r.real_into("x0", p.x0);
  r.real_into("y0", p.y0);
  r.finish();
}

inline double read_mass(SectionReader& r, std::string_view key, double default_ratio) {
  double m0 = kMassUnit;
  r.real_into("m0", m0);
  if (auto m = r.absolute_or_ratio(key, "mass_ratio", m0)) return *m;
  return m0 * default_ratio;
}

// Reference values of the photon/exciton models.
inline PumpSpec photon_pump_defaults() {
  PumpSpec p;
  p.F_p = 0.5;
  p.k_px = 1.0;
  p.delta_omega = 5.0;
  p.w = 10.0;
  return p;
}

// Reference values of the single-field models.
inline PumpSpec polariton_pump_defaults() {
  PumpSpec p;
  p.F_p = 0.05;
  p.w = 10.0;
  return p;
}

inline Cnrp1Params read_cnrp1(SectionReader& r) {
  Cnrp1Params p;
  r.real_into("hbar", p.hbar);
  r.real_into("omega_R", p.omega_R);
  r.real_into("gamma_c", p.gamma_c);
  r.real_into("gamma_x", p.gamma_x);
  p.m_c = read_mass(r, "m_c", 2e-5);
  r.real_into("delta", p.delta);
  r.real("d");
  const double linewidth = p.hbar * p.gamma_c;
  p.g = r.absolute_or_ratio("g", "g_ratio", linewidth).value_or(1.132 * linewidth);
  r.finish();
  p.pump = photon_pump_defaults();
  return p;
}

inline Cnrp1SpinParams read_cnrp1_spin(SectionReader& r) {
  Cnrp1SpinParams p;
  r.real_into("hbar", p.hbar);
  r.real_into("omega_R", p.omega_R);
  r.real_into("gamma_c", p.gamma_c);
  r.real_into("gamma_x", p.gamma_x);
  p.m_c = read_mass(r, "m_c", 2e-5);
  r.real_into("delta", p.delta);
  r.real("d");
  const double linewidth = p.hbar * p.gamma_c;
  p.g1 = r.absolute_or_ratio("g1", "g1_ratio", linewidth).value_or(1.132 * linewidth);
  p.g2 = r.absolute_or_ratio("g2", "g2_ratio", linewidth).value_or(0.1132 * linewidth);
  r.finish();
  p.pump_plus = photon_pump_defaults();
  p.pump_minus = photon_pump_defaults();
  return p;
}

inline Cnrp2Params read_cnrp2(SectionReader& r) {
  Cnrp2Params p;
  r.real_into("hbar", p.hbar);
  p.m = read_mass(r, "m", 7.44e-5);
  if (auto gamma = r.real("gamma_c")) p.gamma_c = *gamma;
  else p.gamma_c = 0.5 / p.hbar;
  p.g = r.absolute_or_ratio("g", "g_ratio", p.gamma_c).value_or(0.86);
  r.real_into("eta", p.eta);
  if (auto s = r.raw("kinetic_sign")) {
    const double v = parse_real(*s, "model.kinetic_sign");
    if (v != -1.0 && v != 1.0) throw ConfigError("model.kinetic_sign: must be -1 or 1");
    p.kinetic_sign = static_cast<int>(v);
  }
  r.finish();
  p.pump = polariton_pump_defaults();
  return p;
}

inline HinrpParams read_hinrp(SectionReader& r) {
  HinrpParams p;
  r.real_into("hbar", p.hbar);
  r.real_into("E0", p.E0);
  p.m = read_mass(r, "m", 7.44e-5);
  p.gamma_c = r.real("gamma_c").value_or(0.5 / p.hbar);
  p.gamma_R = r.real("gamma_R").value_or(2.0 / p.hbar);
  p.R = r.real("R").value_or(0.05 / p.hbar);
  p.g = r.absolute_or_ratio("g", "g_ratio", p.gamma_c).value_or(0.86);
  r.real_into("g_R", p.g_R);
  r.real_into("G", p.G);
  r.finish();
  return p;
}

}  // namespace detail

/// Parse configuration text without resolving it.
inline ConfigDocument parse_config_document(const std::string& text) {
  std::istringstream in(text);
  ConfigDocument doc;
  try {
    boost::property_tree::ini_parser::read_ini(in, doc);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
  }
  // read_ini drops sections without keys; restore them so that a bare
  // [model <tag>] is valid and an empty unknown section is still reported.
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const std::string t = detail::trim(line);
    if (t.size() < 2 || t.front() != '[' || t.back() != ']') continue;
    const std::string name = detail::trim(std::string_view(t).substr(1, t.size() - 2));
    if (doc.find(name) == doc.not_found()) doc.push_back({name, ConfigDocument()});
  }
  return doc;
}

/// Resolve a document into parameter records, filling table defaults.
inline SimConfig resolve_config(const ConfigDocument& doc) {
  std::optional<ModelTag> tag;
  const ConfigDocument* model_tree = nullptr;
  for (const auto& [name, tree] : doc) {
    if (!tree.data().empty() && tree.empty()) {
      throw ConfigError("key '" + name + "' appears outside any section");
    }
    static constexpr std::array<std::string_view, 6> plain{"grid",       "pump", "pump plus",
                                                           "pump minus", "init", "run"};
    if (name.rfind("model", 0) == 0) {
      const std::string rest = detail::trim(std::string_view(name).substr(5));
      if (rest.empty() || name.size() == 5 || (name[5] != ' ' && name[5] != '\t')) {
        throw ConfigError("section [" + name + "]: expected [model <tag>]");
      }
      if (tag) throw ConfigError("more than one [model ...] section");
      try {
        tag = model_tag_from_string(rest);
      } catch (const Error&) {
        throw ConfigError("section [" + name + "]: unknown model '" + rest + "'");
      }
      model_tree = &tree;
    } else if (std::find(plain.begin(), plain.end(), name) == plain.end()) {
      throw ConfigError("unknown section [" + name + "]");
    }
  }
  if (!tag) throw ConfigError("missing required section [model <tag>]");

  SimConfig cfg;
  detail::SectionReader model_reader("model", model_tree);
  switch (*tag) {
    case ModelTag::cnrp1: cfg.model = detail::read_cnrp1(model_reader); break;
    case ModelTag::cnrp1_spin: cfg.model = detail::read_cnrp1_spin(model_reader); break;
    case ModelTag::cnrp2: cfg.model = detail::read_cnrp2(model_reader); break;
    case ModelTag::hinrp: cfg.model = detail::read_hinrp(model_reader); break;
  }

  // Grid
  detail::SectionReader grid("grid", detail::find_section(doc, "grid"));
  if (auto n = grid.count("ndim")) {
    if (*n != 1 && *n != 2) throw ConfigError("grid.ndim: must be 1 or 2");
    cfg.grid.ndim = static_cast<int>(*n);
  }
  const bool two_d = cfg.grid.ndim == 2;
  if ((*tag == ModelTag::cnrp1 || *tag == ModelTag::cnrp1_spin) && two_d) {
    throw ConfigError("grid.ndim: " + std::string(to_string(*tag)) + " is one-dimensional");
  }
  cfg.grid.nx = two_d ? 241 : 201;
  cfg.grid.ny = two_d ? 241 : 1;
  cfg.grid.cavsize_x = two_d ? 24.0 : 100.0;
  cfg.grid.cavsize_y = two_d ? 24.0 : 0.0;
  if (auto n = grid.count("nx", {"xsize"})) cfg.grid.nx = *n;
  if (auto n = grid.count("ny", {"ysize"})) {
    if (!two_d && *n != 1) throw ConfigError("grid.ny: must be 1 for a 1D grid");
    cfg.grid.ny = *n;
  }
  grid.real_into("cavsize_x", cfg.grid.cavsize_x, {"cavsizex"});
  if (auto c = grid.real("cavsize_y", {"cavsizey"})) {
    if (!two_d) throw ConfigError("grid.cavsize_y: not used by a 1D grid");
    cfg.grid.cavsize_y = *c;
  }
  grid.finish();
  try {
    (void)make_grid(cfg.grid);
  } catch (const GridError& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }

  // Pumps
  const auto* pump_tree = detail::find_section(doc, "pump");
  const auto* plus_tree = detail::find_section(doc, "pump plus");
  const auto* minus_tree = detail::find_section(doc, "pump minus");
  if (*tag == ModelTag::cnrp1_spin) {
    if (pump_tree) throw ConfigError("cnrp1_spin uses [pump plus] and [pump minus], not [pump]");
  } else if (plus_tree || minus_tree) {
    throw ConfigError("[pump plus] and [pump minus] apply only to cnrp1_spin");
  }
  std::visit(
      [&](auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Cnrp1SpinParams>) {
          detail::SectionReader plus("pump plus", plus_tree);
          detail::read_coherent_pump(plus, p.pump_plus);
          detail::SectionReader minus("pump minus", minus_tree);
          detail::read_coherent_pump(minus, p.pump_minus);
        } else if constexpr (std::is_same_v<P, HinrpParams>) {
          detail::SectionReader r("pump", pump_tree);
          r.real_into("P0", p.pump.P0, {"P"});
          r.real_into("sigma_p", p.pump.sigma_p);
          if (auto prof = r.raw("profile")) {
            const std::string v = detail::trim(*prof);
            if (v == "gaussian") p.pump.profile = PumpProfile::gaussian;
            else if (v == "uniform") p.pump.profile = PumpProfile::uniform;
            else throw ConfigError("pump.profile: expected gaussian or uniform, got '" + v + "'");
          }
          r.finish();
        } else {
          detail::SectionReader r("pump", pump_tree);
          detail::read_coherent_pump(r, p.pump);
        }
      },
      cfg.model);

  // Initial state
  detail::SectionReader init("init", detail::find_section(doc, "init"));
  const bool photon_family = *tag == ModelTag::cnrp1 || *tag == ModelTag::cnrp1_spin;
  cfg.init.kind = photon_family ? InitKind::zero : InitKind::gaussian;
  if (auto kind = init.raw("kind")) {
    const std::string v = detail::trim(*kind);
    if (v == "zero") cfg.init.kind = InitKind::zero;
    else if (v == "gaussian") cfg.init.kind = InitKind::gaussian;
    else throw ConfigError("init.kind: expected zero or gaussian, got '" + v + "'");
  }
  if (photon_family && cfg.init.kind == InitKind::gaussian) {
    throw ConfigError("init.kind: " + std::string(to_string(*tag)) + " starts from zero fields");
  }
  init.real_into("N_c", cfg.init.N_c);
  init.real_into("sigma_p", cfg.init.sigma_p);
  if (const auto* h = std::get_if<HinrpParams>(&cfg.model)) {
    cfg.init.P0 = h->pump.P0;
    cfg.init.gamma_R = h->gamma_R;
    init.real_into("P0", cfg.init.P0);
    init.real_into("gamma_R", cfg.init.gamma_R);
  }
  init.finish();

  // Run
  detail::SectionReader run("run", detail::find_section(doc, "run"));
  run.real_into("h", cfg.run.h);
  run.real_into("t_end", cfg.run.t_end);
  if (auto n = run.count("snapshot_every")) cfg.run.snapshot_every = *n;
  if (auto policy = run.raw("cfl_policy")) {
    const std::string v = detail::trim(*policy);
    if (v == "reject") cfg.run.cfl_policy = CflPolicy::reject;
    else if (v == "warn") cfg.run.cfl_policy = CflPolicy::warn;
    else throw ConfigError("run.cfl_policy: expected reject or warn, got '" + v + "'");
  }
  run.finish();

  try {
    validate(cfg.model);
    validate(cfg.run);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

inline SimConfig parse_config(const std::string& text) {
  return resolve_config(parse_config_document(text));
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline SimConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_text_file(path));
}

/// Canonical text for a resolved configuration: every parameter written as an
/// absolute value with round-trip precision. parse_config(serialize(c)) == c.
inline std::string serialize(const SimConfig& cfg) {
  using detail::format_real;
  std::ostringstream os;
  auto kv = [&](std::string_view k, const std::string& v) { os << k << " = " << v << '\n'; };
  auto real = [&](std::string_view k, double v) { kv(k, format_real(v)); };
  auto coherent = [&](const char* section, const PumpSpec& p) {
    os << '\n' << '[' << section << "]\n";
    real("F_p", p.F_p);
    real("k_px", p.k_px);
    real("k_py", p.k_py);
    real("delta_omega", p.delta_omega);
    real("w", p.w);
    real("x0", p.x0);
    real("y0", p.y0);
  };

  const ModelTag tag = tag_of(cfg.model);
  os << "[model " << to_string(tag) << "]\n";
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        real("hbar", p.hbar);
        if constexpr (std::is_same_v<P, Cnrp1Params> || std::is_same_v<P, Cnrp1SpinParams>) {
          real("omega_R", p.omega_R);
          real("gamma_c", p.gamma_c);
          real("gamma_x", p.gamma_x);
          real("m_c", p.m_c);
          real("delta", p.delta);
          if constexpr (std::is_same_v<P, Cnrp1Params>) {
            real("g", p.g);
          } else {
            real("g1", p.g1);
            real("g2", p.g2);
          }
        } else if constexpr (std::is_same_v<P, Cnrp2Params>) {
          if (p.V_ext) throw ConfigError("serialize: V_ext has no configuration key");
          real("m", p.m);
          real("gamma_c", p.gamma_c);
          real("g", p.g);
          real("eta", p.eta);
          kv("kinetic_sign", std::to_string(p.kinetic_sign));
        } else {
          if (p.V_ext) throw ConfigError("serialize: V_ext has no configuration key");
          real("E0", p.E0);
          real("m", p.m);
          real("gamma_c", p.gamma_c);
          real("gamma_R", p.gamma_R);
          real("R", p.R);
          real("g", p.g);
          real("g_R", p.g_R);
          real("G", p.G);
        }
      },
      cfg.model);

  os << "\n[grid]\n";
  kv("ndim", std::to_string(cfg.grid.ndim));
  kv("nx", std::to_string(cfg.grid.nx));
  if (cfg.grid.ndim == 2) kv("ny", std::to_string(cfg.grid.ny));
  real("cavsize_x", cfg.grid.cavsize_x);
  if (cfg.grid.ndim == 2) real("cavsize_y", cfg.grid.cavsize_y);

  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, Cnrp1SpinParams>) {
          coherent("pump plus", p.pump_plus);
          coherent("pump minus", p.pump_minus);
        } else if constexpr (std::is_same_v<P, HinrpParams>) {
          os << "\n[pump]\n";
          real("P0", p.pump.P0);
          real("sigma_p", p.pump.sigma_p);
          kv("profile", p.pump.profile == PumpProfile::uniform ? "uniform" : "gaussian");
        } else {
          coherent("pump", p.pump);
        }
      },
      cfg.model);

  os << "\n[init]\n";
  kv("kind", cfg.init.kind == InitKind::zero ? "zero" : "gaussian");
  real("N_c", cfg.init.N_c);
  real("sigma_p", cfg.init.sigma_p);
  if (tag == ModelTag::hinrp) {
    real("P0", cfg.init.P0);
    real("gamma_R", cfg.init.gamma_R);
  }

  os << "\n[run]\n";
  real("h", cfg.run.h);
  real("t_end", cfg.run.t_end);
  kv("snapshot_every", std::to_string(cfg.run.snapshot_every));
  kv("cfl_policy", cfg.run.cfl_policy == CflPolicy::warn ? "warn" : "reject");
  return os.str();
}

// Keys that name the same parameter; setting one through an override removes
// the others so the result stays consistent.
namespace detail {

inline constexpr std::array<std::array<std::string_view, 3>, 10> kKeyGroups{{
    {"g", "g_ratio", ""},
    {"g1", "g1_ratio", ""},
    {"g2", "g2_ratio", ""},
    {"m", "mass_ratio", "m_c"},
    {"k_p", "k_px", ""},
    {"P0", "P", ""},
    {"nx", "xsize", ""},
    {"ny", "ysize", ""},
    {"cavsize_x", "cavsizex", ""},
    {"cavsize_y", "cavsizey", ""},
}};

}  // namespace detail

/// Set `param` to `value` in a document. `param` is either `section.key`
/// (`model.key` addresses the [model ...] section) or a bare key, which
/// addresses the model section.
inline void set_parameter(ConfigDocument& doc, std::string_view param, std::string_view value) {
  std::string section = "model";
  std::string key(param);
  if (const auto dot = param.rfind('.'); dot != std::string_view::npos) {
    section = std::string(param.substr(0, dot));
    key = std::string(param.substr(dot + 1));
  }
  if (key.empty() || section.empty()) {
    throw ConfigError("parameter '" + std::string(param) + "': expected [section.]key");
  }
  static constexpr std::array<std::string_view, 7> sections{
      "model", "grid", "pump", "pump plus", "pump minus", "init", "run"};
  if (std::find(sections.begin(), sections.end(), section) == sections.end()) {
    throw ConfigError("parameter '" + std::string(param) + "': unknown section '" + section + "'");
  }

  ConfigDocument* target = nullptr;
  for (auto& [name, tree] : doc) {
    const bool is_model = section == "model" && name.rfind("model", 0) == 0;
    if (is_model || name == section) target = &tree;
  }
  if (!target) {
    if (section == "model") throw ConfigError("configuration has no [model ...] section");
    target = &doc.push_back({section, ConfigDocument()})->second;
  }

  std::vector<std::string_view> drop{key};
  for (const auto& group : detail::kKeyGroups) {
    if (std::find(group.begin(), group.end(), key) == group.end()) continue;
    for (auto k : group) {
      if (!k.empty()) drop.push_back(k);
    }
  }
  for (auto it = target->begin(); it != target->end();) {
    if (std::find(drop.begin(), drop.end(), it->first) != drop.end()) {
      it = target->erase(it);
    } else {
      ++it;
    }
  }
  target->push_back({key, ConfigDocument(std::string(value))});
}

// Shipped presets. Omitted keys take the defaults applied by resolve_config.

struct Preset {
  std::string_view name;
  std::string_view text;
};

inline constexpr std::array<Preset, 6> kPresets{{
    {"table1_1d",
     "# Driven condensate, 1D microwire, reference parameters\n"
     "[model cnrp2]\n"
     "g = 0.86\n"
     "\n[grid]\nndim = 1\nnx = 201\ncavsize_x = 100\n"
     "\n[pump]\nF_p = 0.05\nk_p = 0\ndelta_omega = 0\nw = 10\n"
     "\n[init]\nkind = gaussian\nN_c = 1\nsigma_p = 20\n"
     "\n[run]\nh = 0.001\nt_end = 20\nsnapshot_every = 100\n"},
    {"table1_2d",
     "# Driven condensate, 2D cavity, reference parameters at F_p = 0.5\n"
     "[model cnrp2]\n"
     "g_ratio = 1.132\n"
     "\n[grid]\nndim = 2\nnx = 241\nny = 241\ncavsize_x = 24\ncavsize_y = 24\n"
     "\n[pump]\nF_p = 0.5\nk_px = 0\nk_py = 0\ndelta_omega = 0\nw = 10\n"
     "\n[init]\nkind = gaussian\nN_c = 1\nsigma_p = 20\n"
     "\n[run]\nh = 0.001\nt_end = 10\nsnapshot_every = 100\n"},
    {"table2",
     "# Photon/exciton pair without spin, reference parameters\n"
     "[model cnrp1]\n"
     "omega_R = 4.4\ngamma_c = 0.1\ngamma_x = 0.01\nmass_ratio = 2e-5\ndelta = 5\n"
     "g_ratio = 1.132\nd = 5\n"
     "\n[grid]\nndim = 1\nnx = 201\ncavsize_x = 100\n"
     "\n[pump]\nF_p = 0.5\nk_p = 1\ndelta_omega = 5\nw = 10\n"
     "\n[init]\nkind = zero\n"
     "\n[run]\nh = 0.001\nt_end = 20\nsnapshot_every = 100\n"},
    {"table3",
     "# Photon/exciton pairs with spin, reference parameters\n"
     "[model cnrp1_spin]\n"
     "gamma_c = 0.1\ngamma_x = 0.01\ndelta = 5\ng1_ratio = 1.132\ng2_ratio = 0.1132\nd = 5\n"
     "\n[grid]\nndim = 1\nnx = 201\ncavsize_x = 100\n"
     "\n[pump plus]\nF_p = 0.5\nk_p = 1\ndelta_omega = 5\nw = 10\n"
     "\n# This pump has no reference detuning of its own; it shares the other one.\n"
     "[pump minus]\nF_p = 0.5\nk_p = 1\ndelta_omega = 5\nw = 10\n"
     "\n[init]\nkind = zero\n"
     "\n[run]\nh = 0.001\nt_end = 20\nsnapshot_every = 100\n"},
    {"table1_hinrp_1d",
     "# Reservoir-fed condensate, 1D microwire, reference parameters\n"
     "[model hinrp]\n"
     "g = 0.86\nG = 0.0175\ng_R = 0\n"
     "\n[grid]\nndim = 1\nnx = 201\ncavsize_x = 100\n"
     "\n[pump]\nP0 = 60.790\nsigma_p = 20\nprofile = gaussian\n"
     "\n[init]\nkind = gaussian\nN_c = 1\nsigma_p = 20\n"
     "\n[run]\nh = 0.001\nt_end = 20\nsnapshot_every = 100\n"},
    {"table1_hinrp_2d",
     "# Reservoir-fed condensate, 2D cavity, reference parameters\n"
     "[model hinrp]\n"
     "g = 0.86\nG = 0.0175\ng_R = 0\n"
     "\n[grid]\nndim = 2\nnx = 241\nny = 241\ncavsize_x = 24\ncavsize_y = 24\n"
     "\n[pump]\nP0 = 60.790\nsigma_p = 20\nprofile = gaussian\n"
     "\n[init]\nkind = gaussian\nN_c = 1\nsigma_p = 20\n"
     "\n[run]\nh = 0.001\nt_end = 15\nsnapshot_every = 100\n"},
}};

inline std::string_view preset_text(std::string_view name) {
  for (const auto& p : kPresets) {
    if (p.name == name) return p.text;
  }
  std::string known;
  for (const auto& p : kPresets) known += (known.empty() ? "" : ", ") + std::string(p.name);
  throw ConfigError("unknown preset '" + std::string(name) + "' (known: " + known + ")");
}

inline SimConfig preset(std::string_view name) {
  return parse_config(std::string(preset_text(name)));
}

/// Initial state and model parameters of a configuration, ready to run.
inline SimState initial_state(const SimConfig& cfg) {
  return init_state(cfg.init, make_grid(cfg.grid), tag_of(cfg.model));
}

}  // namespace polariton
