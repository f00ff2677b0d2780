#ifndef NSFP_IO_HPP
#define NSFP_IO_HPP

// Run configuration (INI text), binary checkpoints and diagnostics output.

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include "nsfp/besov_lab.hpp"
#include "nsfp/initial_data.hpp"
#include "nsfp/simulation.hpp"

namespace nsfp {

/// Invalid or unreadable configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File system or file format failure (CLI exit code 4).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SolverMode { imex, picard };

struct OutputConfig {
  std::string diagnostics_csv = "diagnostics.csv";
  std::string diagnostics_json;  // empty: not written
  std::string checkpoint_prefix = "checkpoint";
  int checkpoint_every = 0;  // records between checkpoints, 0: final only
  std::string lab_csv = "inequalities.csv";
  std::string lab_json = "inequalities.json";

  bool operator==(const OutputConfig&) const = default;
};

struct LabConfig {
  int nx = 64;
  std::vector<double> r_values{1.0, 2.0, 4.0};
  std::string family = "standard";
  std::uint64_t seed = 2024;

  bool operator==(const LabConfig&) const = default;
};

struct RunConfig {
  GridSpec2D grid;
  CircleGrid circle;
  ModelParams params;
  int monitor_window = 3;
  StepperConfig stepper;
  SolverMode solver = SolverMode::imex;
  PicardConfig picard;
  InitialDataSpec initial;
  OutputConfig output;
  LabConfig lab;

  MonitorConfig monitor() const { return {params.p, params.q, params.alpha, monitor_window}; }

  void validate() const {
    try {
      grid.validate();
      circle.validate();
      params.validate();
      monitor().validate();
      stepper.validate();
      picard.validate();
      if (!(initial.f_perturbation >= 0.0 && initial.f_perturbation < 1.0))
        throw std::invalid_argument("f_perturbation must lie in [0, 1)");
      if (output.checkpoint_every < 0) throw std::invalid_argument("checkpoint_every must be >= 0");
      GridSpec2D{lab.nx, grid.dealias_fraction}.validate();
      if (lab.r_values.empty()) throw std::invalid_argument("lab r list is empty");
      for (double r : lab.r_values)
        if (!(r >= 1.0)) throw std::invalid_argument("lab r values must be >= 1");
      if (lab.family != "standard" && lab.family != "modes")
        throw std::invalid_argument("lab family must be standard or modes");
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }

  bool operator==(const RunConfig&) const = default;
};

// ---------------------------------------------------------------------------
// Number formatting

/// Shortest text that parses back to the same double.
inline std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

/// Fixed 17 significant digits, used for CSV columns.
inline std::string format_17g(double v) {
  std::array<char, 64> buf{};
  const int n = std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return std::string(buf.data(), std::size_t(n));
}

inline std::string format_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
  return s;
}

namespace detail {

inline double parse_double(const std::string& key, std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data() + b, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || b == s.size())
    throw ConfigError("'" + key + "': expected a number, got '" + s + "'");
  return v;
}

inline long long parse_int(const std::string& key, const std::string& s) {
  const double v = parse_double(key, s);
  if (v != std::floor(v) || std::abs(v) > 9.0e15) throw ConfigError("'" + key + "': expected an integer, got '" + s + "'");
  return static_cast<long long>(v);
}

inline std::vector<double> parse_list(const std::string& key, const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
  return out;
}

inline bool parse_bool(const std::string& key, const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ConfigError("'" + key + "': expected true or false, got '" + s + "'");
}

inline const char* coeff_key(int idx) {
  static constexpr const char* names[] = {"c11", "c12", "c21", "c22"};
  return names[idx];
}

inline bool is_maier_saupe(const InteractionKernel& k) {
  return k.cos_coeffs.size() == 3 && k.cos_coeffs[0] == 0.0 && k.cos_coeffs[1] == 0.0 && k.cos_coeffs[2] <= 0.0;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Config text

inline std::string emit_config(const RunConfig& c) {
  std::ostringstream o;
  auto kv = [&o](const std::string& k, const std::string& v) { o << k << " = " << v << "\n"; };
  o << "# Run configuration. Lines starting with # are comments.\n\n";

  o << "[grid]\n"
    << "# points per direction on the periodic square [0, 2pi)^2, even, >= 8\n";
  kv("nx", std::to_string(c.grid.nx));
  o << "# orientation points on the circle, even, >= 4\n";
  kv("nm", std::to_string(c.circle.nm));
  o << "# 2/3 rule: modes with |k_i| > fraction * nx/2 are removed after products\n";
  kv("dealias_fraction", format_double(c.grid.dealias_fraction));

  o << "\n[model]\n# viscosity and rotational diffusion\n";
  kv("nu", format_double(c.params.nu));
  kv("kappa", format_double(c.params.kappa));
  o << "# mollifier width, 0 disables smoothing, at most pi\n";
  kv("delta", format_double(c.params.delta));
  if (detail::is_maier_saupe(c.params.kernel)) {
    o << "# Maier-Saupe strength: k(theta, theta') = -b cos(2(theta - theta'))\n"
      << "# (replace by kernel_cos = k_0, k_1, ... for a general cosine series)\n";
    kv("b", format_double(-c.params.kernel.cos_coeffs[2]));
  } else {
    o << "# interaction kernel k = sum_n k_n cos(n (theta - theta'))\n";
    kv("kernel_cos", format_list(c.params.kernel.cos_coeffs));
  }
  if (c.params.coeffs == CoefficientModel::rod() || c.params.coeffs == CoefficientModel::zero()) {
    o << "# rod (c_ji = m_j mperp_i), zero, or custom with c11_cos / c11_sin ... c22_sin lists\n";
    kv("coefficients", c.params.coeffs == CoefficientModel::rod() ? "rod" : "zero");
  } else {
    o << "# custom coefficients: c_ji(theta) = sum a_n cos(n theta) + sum b_n sin(n theta)\n";
    kv("coefficients", "custom");
    for (int idx = 0; idx < 4; ++idx) {
      kv(std::string(detail::coeff_key(idx)) + "_cos", format_list(c.params.coeffs.entries[idx].cos_coeffs));
      kv(std::string(detail::coeff_key(idx)) + "_sin", format_list(c.params.coeffs.entries[idx].sin_coeffs));
    }
  }
  o << "# exponents: q >= 4, p > 2q/(q-2), alpha > 3/2\n";
  kv("alpha", format_double(c.params.alpha));
  kv("p", format_double(c.params.p));
  kv("q", format_double(c.params.q));

  o << "\n[monitor]\n# samples used for the energy time derivative\n";
  kv("window", std::to_string(c.monitor_window));

  o << "\n[stepper]\n# imex_euler or if_rk2\n";
  kv("scheme", to_string(c.stepper.scheme));
  kv("dt", format_double(c.stepper.dt));
  kv("t_end", format_double(c.stepper.t_end));
  kv("cfl_safety", format_double(c.stepper.cfl_safety));
  o << "# steps between diagnostics records\n";
  kv("diag_every", std::to_string(c.stepper.diag_every));
  o << "# false: fixed dt, aborts if the CFL limit is violated\n";
  kv("adaptive", c.stepper.adaptive ? "true" : "false");

  o << "\n[solver]\n# imex or picard\n";
  kv("mode", c.solver == SolverMode::imex ? "imex" : "picard");
  kv("picard_tol", format_double(c.picard.tol));
  kv("picard_max_iter", std::to_string(c.picard.max_iter));

  o << "\n[initial]\n# Taylor-Green amplitude and random perturbation sizes\n";
  kv("tg_amplitude", format_double(c.initial.tg_amplitude));
  kv("u_perturbation", format_double(c.initial.u_perturbation));
  o << "# must lie in [0, 1)\n";
  kv("f_perturbation", format_double(c.initial.f_perturbation));
  kv("seed", std::to_string(c.initial.seed));

  o << "\n[output]\n";
  kv("diagnostics_csv", c.output.diagnostics_csv);
  o << "# leave empty to skip the JSON copy of the diagnostics\n";
  kv("diagnostics_json", c.output.diagnostics_json);
  kv("checkpoint_prefix", c.output.checkpoint_prefix);
  o << "# records between checkpoints, 0 writes only the final one\n";
  kv("checkpoint_every", std::to_string(c.output.checkpoint_every));
  kv("lab_csv", c.output.lab_csv);
  kv("lab_json", c.output.lab_json);

  o << "\n[lab]\n# inequality sweep grid, exponents r and test-function family (standard or modes)\n";
  kv("nx", std::to_string(c.lab.nx));
  kv("r", format_list(c.lab.r_values));
  kv("family", c.lab.family);
  kv("seed", std::to_string(c.lab.seed));
  return o.str();
}

/// Parses config text. Missing keys keep their defaults; unknown keys are errors.
inline RunConfig parse_config(const std::string& text, bool validate = true) {
  boost::property_tree::ptree pt;
  try {
    std::istringstream is(text);
    boost::property_tree::read_ini(is, pt);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }

  std::map<std::string, std::string> kv;
  for (const auto& [section, body] : pt) {
    if (body.empty()) throw ConfigError("key '" + section + "' outside any section");
    for (const auto& [key, value] : body) kv[section + "." + key] = value.data();
  }
  std::set<std::string> used;
  auto get = [&](const std::string& key) -> const std::string* {
    auto it = kv.find(key);
    if (it == kv.end()) return nullptr;
    used.insert(key);
    return &it->second;
  };
  auto num = [&](const std::string& key, double& dst) {
    if (auto v = get(key)) dst = detail::parse_double(key, *v);
  };
  auto integer = [&](const std::string& key, auto& dst) {
    if (auto v = get(key)) dst = static_cast<std::remove_reference_t<decltype(dst)>>(detail::parse_int(key, *v));
  };
  auto text_of = [&](const std::string& key, std::string& dst) {
    if (auto v = get(key)) dst = *v;
  };

  RunConfig c;
  integer("grid.nx", c.grid.nx);
  integer("grid.nm", c.circle.nm);
  num("grid.dealias_fraction", c.grid.dealias_fraction);

  num("model.nu", c.params.nu);
  num("model.kappa", c.params.kappa);
  num("model.delta", c.params.delta);
  const std::string* b = get("model.b");
  const std::string* kc = get("model.kernel_cos");
  if (b && kc) throw ConfigError("give either model.b or model.kernel_cos, not both");
  if (b) {
    const double bv = detail::parse_double("model.b", *b);
    if (bv < 0.0) throw ConfigError("model.b must be >= 0");
    c.params.kernel = InteractionKernel::maier_saupe(bv);
  }
  if (kc) c.params.kernel.cos_coeffs = detail::parse_list("model.kernel_cos", *kc);
  if (auto v = get("model.coefficients")) {
    if (*v == "rod") {
      c.params.coeffs = CoefficientModel::rod();
    } else if (*v == "zero") {
      c.params.coeffs = CoefficientModel::zero();
    } else if (*v == "custom") {
      c.params.coeffs = CoefficientModel::zero();
      for (int idx = 0; idx < 4; ++idx) {
        const std::string base = std::string("model.") + detail::coeff_key(idx);
        if (auto s = get(base + "_cos")) c.params.coeffs.entries[idx].cos_coeffs = detail::parse_list(base + "_cos", *s);
        if (auto s = get(base + "_sin")) c.params.coeffs.entries[idx].sin_coeffs = detail::parse_list(base + "_sin", *s);
      }
    } else {
      throw ConfigError("model.coefficients must be rod, zero or custom, got '" + *v + "'");
    }
  }
  num("model.alpha", c.params.alpha);
  num("model.p", c.params.p);
  num("model.q", c.params.q);

  integer("monitor.window", c.monitor_window);

  if (auto v = get("stepper.scheme")) {
    try {
      c.stepper.scheme = scheme_from_string(*v);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  num("stepper.dt", c.stepper.dt);
  num("stepper.t_end", c.stepper.t_end);
  num("stepper.cfl_safety", c.stepper.cfl_safety);
  integer("stepper.diag_every", c.stepper.diag_every);
  if (auto v = get("stepper.adaptive")) c.stepper.adaptive = detail::parse_bool("stepper.adaptive", *v);

  if (auto v = get("solver.mode")) {
    if (*v == "imex") c.solver = SolverMode::imex;
    else if (*v == "picard") c.solver = SolverMode::picard;
    else throw ConfigError("solver.mode must be imex or picard, got '" + *v + "'");
  }
  num("solver.picard_tol", c.picard.tol);
  integer("solver.picard_max_iter", c.picard.max_iter);

  num("initial.tg_amplitude", c.initial.tg_amplitude);
  num("initial.u_perturbation", c.initial.u_perturbation);
  num("initial.f_perturbation", c.initial.f_perturbation);
  integer("initial.seed", c.initial.seed);

  text_of("output.diagnostics_csv", c.output.diagnostics_csv);
  text_of("output.diagnostics_json", c.output.diagnostics_json);
  text_of("output.checkpoint_prefix", c.output.checkpoint_prefix);
  integer("output.checkpoint_every", c.output.checkpoint_every);
  text_of("output.lab_csv", c.output.lab_csv);
  text_of("output.lab_json", c.output.lab_json);

  integer("lab.nx", c.lab.nx);
  if (auto v = get("lab.r")) c.lab.r_values = detail::parse_list("lab.r", *v);
  text_of("lab.family", c.lab.family);
  integer("lab.seed", c.lab.seed);

  for (const auto& [key, value] : kv)
    if (!used.count(key)) throw ConfigError("unknown config key '" + key + "'");
  if (validate) c.validate();
  return c;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out.flush()) throw IoError("write to '" + path + "' failed");
}

inline RunConfig load_config(const std::string& path) { return parse_config(read_text_file(path)); }

// ---------------------------------------------------------------------------
// Checkpoints

inline constexpr char checkpoint_magic[] = "NSFP1\n";

inline nlohmann::json params_to_json(const ModelParams& p) {
  nlohmann::json c = nlohmann::json::array();
  for (const auto& e : p.coeffs.entries) c.push_back({{"cos", e.cos_coeffs}, {"sin", e.sin_coeffs}});
  return {{"nu", p.nu},       {"kappa", p.kappa}, {"delta", p.delta}, {"kernel_cos", p.kernel.cos_coeffs},
          {"coefficients", c}, {"alpha", p.alpha}, {"p", p.p},        {"q", p.q}};
}

inline ModelParams params_from_json(const nlohmann::json& j) {
  ModelParams p;
  p.nu = j.at("nu").get<double>();
  p.kappa = j.at("kappa").get<double>();
  p.delta = j.at("delta").get<double>();
  p.kernel.cos_coeffs = j.at("kernel_cos").get<std::vector<double>>();
  const auto& c = j.at("coefficients");
  if (c.size() != 4) throw IoError("checkpoint: expected 4 coefficient series");
  for (int i = 0; i < 4; ++i) {
    p.coeffs.entries[i].cos_coeffs = c.at(i).at("cos").get<std::vector<double>>();
    p.coeffs.entries[i].sin_coeffs = c.at(i).at("sin").get<std::vector<double>>();
  }
  p.alpha = j.at("alpha").get<double>();
  p.p = j.at("p").get<double>();
  p.q = j.at("q").get<double>();
  return p;
}

inline nlohmann::json monitor_to_json(const MonitorConfig& cfg, const MonitorState& h) {
  return {{"p", cfg.p},
          {"q", cfg.q},
          {"alpha", cfg.alpha},
          {"window", cfg.window},
          {"history",
           {{"samples", h.samples},
            {"last_t", h.last_t},
            {"last_grad_tau_lq", h.last_grad_tau_lq},
            {"last_N_lq", h.last_N_lq},
            {"y_integral", h.y_integral},
            {"z_integral", h.z_integral},
            {"energy_t", h.energy_t},
            {"energy_e", h.energy_e},
            {"max_log_bound_ratio", h.max_log_bound_ratio},
            {"max_yz_ratio", h.max_yz_ratio}}}};
}

struct Checkpoint {
  State state;
  ModelParams params;
  MonitorConfig monitor;
  MonitorState history;  // monitor history before this state was sampled
};

namespace detail {

inline void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline std::uint64_t get_u64(const char* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t(static_cast<unsigned char>(p[i])) << (8 * i);
  return v;
}

inline void put_doubles(std::string& out, std::span<const double> v) {
  for (double x : v) put_u64(out, std::bit_cast<std::uint64_t>(x));
}

inline void get_doubles(const char* p, std::span<double> v) {
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::bit_cast<double>(get_u64(p + 8 * i));
}

}  // namespace detail

inline std::string encode_checkpoint(const Checkpoint& c) {
  const State& s = c.state;
  const nlohmann::json header = {{"t", s.t},
                                 {"nx", s.grid().nx},
                                 {"nm", s.circle().nm},
                                 {"dealias_fraction", s.grid().dealias_fraction},
                                 {"params", params_to_json(c.params)},
                                 {"monitor", monitor_to_json(c.monitor, c.history)}};
  const std::string h = header.dump();
  std::string out(checkpoint_magic);
  detail::put_u64(out, h.size());
  out += h;
  detail::put_doubles(out, s.u.u1.values());
  detail::put_doubles(out, s.u.u2.values());
  detail::put_doubles(out, s.f.data());
  return out;
}

inline Checkpoint decode_checkpoint(const std::string& bytes) {
  const std::size_t magic_len = sizeof(checkpoint_magic) - 1;
  if (bytes.size() < magic_len || bytes.compare(0, magic_len, checkpoint_magic) != 0)
    throw IoError("checkpoint: bad magic (not an NSFP1 file)");
  if (bytes.size() < magic_len + 8) throw IoError("checkpoint: truncated before header length");
  const std::uint64_t hlen = detail::get_u64(bytes.data() + magic_len);
  const std::size_t body = magic_len + 8;
  if (hlen > bytes.size() - body) throw IoError("checkpoint: truncated header");

  Checkpoint c;
  GridSpec2D grid;
  CircleGrid circle;
  try {
    const auto j = nlohmann::json::parse(bytes.begin() + long(body), bytes.begin() + long(body + hlen));
    c.state.t = j.at("t").get<double>();
    grid.nx = j.at("nx").get<int>();
    grid.dealias_fraction = j.at("dealias_fraction").get<double>();
    circle.nm = j.at("nm").get<int>();
    c.params = params_from_json(j.at("params"));
    const auto& m = j.at("monitor");
    c.monitor = {m.at("p").get<double>(), m.at("q").get<double>(), m.at("alpha").get<double>(),
                 m.at("window").get<int>()};
    const auto& h = m.at("history");
    c.history.samples = h.at("samples").get<int>();
    c.history.last_t = h.at("last_t").get<double>();
    c.history.last_grad_tau_lq = h.at("last_grad_tau_lq").get<double>();
    c.history.last_N_lq = h.at("last_N_lq").get<double>();
    c.history.y_integral = h.at("y_integral").get<double>();
    c.history.z_integral = h.at("z_integral").get<double>();
    c.history.energy_t = h.at("energy_t").get<std::vector<double>>();
    c.history.energy_e = h.at("energy_e").get<std::vector<double>>();
    c.history.max_log_bound_ratio = h.at("max_log_bound_ratio").get<double>();
    c.history.max_yz_ratio = h.at("max_yz_ratio").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("checkpoint: corrupt header: ") + e.what());
  }
  try {
    grid.validate();
    circle.validate();
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("checkpoint: bad dimensions: ") + e.what());
  }

  const std::size_t np = grid.points();
  const std::size_t expect = body + hlen + 8 * (2 * np + np * std::size_t(circle.nm));
  if (bytes.size() != expect) {
    std::ostringstream os;
    os << "checkpoint: payload size " << bytes.size() - body - hlen << " bytes does not match nx = " << grid.nx
       << ", nm = " << circle.nm << " (expected " << expect - body - hlen << ")";
    throw IoError(os.str());
  }
  const char* p = bytes.data() + body + hlen;
  c.state.u = {ScalarField2D(grid), ScalarField2D(grid)};
  c.state.f = DistributionField(grid, circle);
  detail::get_doubles(p, c.state.u.u1.values());
  detail::get_doubles(p + 8 * np, c.state.u.u2.values());
  detail::get_doubles(p + 16 * np, c.state.f.data());
  return c;
}

inline void write_checkpoint(const std::string& path, const Checkpoint& c) { write_text_file(path, encode_checkpoint(c)); }

inline Checkpoint read_checkpoint(const std::string& path) { return decode_checkpoint(read_text_file(path)); }

/// Recomputes the diagnostics record of a checkpointed state.
inline DiagnosticsRecord diagnose(const Checkpoint& c) {
  const Model model(c.state.grid(), c.state.circle(), c.params);
  DiagnosticsEngine engine(model, c.monitor, c.history);
  return engine.sample(c.state);
}

// ---------------------------------------------------------------------------
// Diagnostics output

inline std::string csv_header() {
  std::string s;
  for (std::size_t i = 0; i < DiagnosticsRecord::field_names.size(); ++i)
    s += (i ? "," : "") + std::string(DiagnosticsRecord::field_names[i]);
  return s;
}

inline std::string csv_row(const DiagnosticsRecord& r) {
  std::string s;
  const auto v = r.values();
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_17g(v[i]);
  return s;
}

inline nlohmann::ordered_json record_json(const DiagnosticsRecord& r) {
  nlohmann::ordered_json j;
  const auto v = r.values();
  for (std::size_t i = 0; i < v.size(); ++i) j[DiagnosticsRecord::field_names[i]] = v[i];
  j["positivity_flag"] = r.positivity_flag;
  return j;
}

inline std::string records_json(const std::vector<DiagnosticsRecord>& rs) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rs) arr.push_back(record_json(r));
  return arr.dump(1) + "\n";
}

/// Streams records to a CSV file, flushing each row so an aborted run leaves
/// every record written so far.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw IoError("cannot open '" + path + "' for writing");
    line(csv_header());
  }

  void write(const DiagnosticsRecord& r) { line(csv_row(r)); }

 private:
  void line(const std::string& s) {
    out_ << s << '\n';
    if (!out_.flush()) throw IoError("write to '" + path_ + "' failed");
  }

  std::string path_;
  std::ofstream out_;
};

inline std::vector<DiagnosticsRecord> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != csv_header()) throw IoError("diagnostics CSV: header mismatch");
  std::vector<DiagnosticsRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        v.push_back(detail::parse_double("csv", cell));
      } catch (const ConfigError& e) {
        throw IoError(std::string("diagnostics CSV: ") + e.what());
      }
    }
    try {
      out.push_back(DiagnosticsRecord::from_values(v));
    } catch (const std::invalid_argument& e) {
      throw IoError(std::string("diagnostics CSV: ") + e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Inequality lab reports

inline std::string lab_csv(const lab::LabReport& rep) {
  std::ostringstream o;
  o << "function,r,ladyzhenskaya_ratio,interpolation_ratio,split_shell,split_ratio\n";
  for (const auto& row : rep.rows)
    o << '"' << row.function << "\"," << format_17g(row.r) << ',' << format_17g(row.ladyzhenskaya_ratio) << ','
      << format_17g(row.interpolation_ratio) << ',' << row.split_shell << ',' << format_17g(row.split_ratio) << '\n';
  return o.str();
}

inline std::string lab_json(const lab::LabReport& rep) {
  const auto& s = rep.summary;
  nlohmann::ordered_json j;
  j["nx"] = rep.nx;
  j["members"] = rep.rows.size() / std::max<std::size_t>(1, s.r_values.size());
  j["r"] = s.r_values;
  j["sup_ladyzhenskaya_ratio"] = s.sup_ladyzhenskaya;
  j["sup_interpolation_ratio"] = s.sup_interpolation;
  j["max_split_ratio"] = s.max_split_ratio;
  j["bernstein"] = {{"min_gradient_ratio", s.min_bernstein_gradient_ratio},
                    {"max_gradient_ratio", s.max_bernstein_gradient_ratio},
                    {"max_high_ratio", s.max_bernstein_high},
                    {"max_low_ratio", s.max_bernstein_low}};
  return j.dump(2) + "\n";
}

inline lab::TestFunctionFamily lab_family(const LabConfig& c) {
  if (c.family == "modes") return lab::mode_family();
  return lab::standard_family(c.seed);
}

}  // namespace nsfp

#endif  // NSFP_IO_HPP
