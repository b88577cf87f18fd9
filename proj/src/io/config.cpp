#include "activech/io/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "activech/analysis/convergence.hpp"
#include "activech/error.hpp"
#include "activech/model/sharp_params.hpp"

namespace activech::io {

namespace {

class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : s_(s) {}

  double parse() {
    const double v = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + s_.substr(pos_) + "'");
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("cannot parse number '" + s_ + "': " + why);
  }

  double sum() {
    double v = product();
    for (;;) {
      if (eat('+')) v += product();
      else if (eat('-')) v -= product();
      else return v;
    }
  }
  double product() {
    double v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        v /= unary();
      } else {
        // Juxtaposition such as 16pi.
        skip();
        if (pos_ < s_.size() && (s_[pos_] == 'p' || s_[pos_] == '(')) v *= unary();
        else return v;
      }
    }
  }
  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return atom();
  }
  double atom() {
    skip();
    if (eat('(')) {
      const double v = sum();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (s_.compare(pos_, 2, "pi") == 0) {
      pos_ += 2;
      return std::numbers::pi;
    }
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail(pos_ < s_.size() ? "unexpected '" + s_.substr(pos_) + "'" : "empty");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

std::vector<std::string> split(const std::string& s, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (seps.find(c) != std::string::npos) {
      if (!trim(cur).empty()) out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

struct Entry {
  std::string value;
  int line = 0;  // 0: command-line override
};

/// Line of every `key = value` in the document, keyed by `section.key`.
std::map<std::string, int> key_lines(const std::string& text) {
  std::map<std::string, int> out;
  std::istringstream in(text);
  std::string line, section;
  for (int no = 1; std::getline(in, line); ++no) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == ';' || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = trim(t.substr(1, t.size() - 2));
    } else if (const auto eq = t.find('='); eq != std::string::npos) {
      out[section + "." + trim(t.substr(0, eq))] = no;
    }
  }
  return out;
}

class Document {
 public:
  Document(const std::string& text, const Overrides& overrides) {
    boost::property_tree::ptree tree;
    std::istringstream in(text);
    try {
      boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
      throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
    }
    const auto lines = key_lines(text);
    for (const auto& [section, body] : tree) {
      if (body.empty() && !body.data().empty())
        throw ConfigError("config key '" + section + "' outside any section");
      for (const auto& [key, leaf] : body) {
        const std::string name = section + "." + key;
        const auto it = lines.find(name);
        entries_[name] = {trim(leaf.data()), it == lines.end() ? 0 : it->second};
      }
    }
    for (const auto& [name, value] : overrides) {
      if (name.find('.') == std::string::npos)
        throw ConfigError("override '" + name + "' is not of the form section.key");
      entries_[name] = {trim(value), 0};
    }
  }

  bool has(const std::string& name) const { return entries_.count(name) > 0; }

  const Entry* get(const std::string& name) {
    const auto it = entries_.find(name);
    if (it == entries_.end()) return nullptr;
    used_.insert(name);
    return &it->second;
  }

  [[noreturn]] void fail(const std::string& name, const std::string& why) const {
    const auto it = entries_.find(name);
    std::string where = "config field " + name;
    if (it != entries_.end())
      where += it->second.line > 0 ? " (line " + std::to_string(it->second.line) + ")" : " (override)";
    throw ConfigError(where + ": " + why);
  }

  double number(const std::string& name, double fallback) {
    return opt_number(name).value_or(fallback);
  }
  std::optional<double> opt_number(const std::string& name) {
    const Entry* e = get(name);
    if (!e) return std::nullopt;
    try {
      const double v = parse_number(e->value);
      if (!std::isfinite(v)) fail(name, "not a finite number");
      return v;
    } catch (const ConfigError& err) {
      if (std::string(err.what()).rfind("config field", 0) == 0) throw;
      fail(name, err.what());
    }
  }
  long integer(const std::string& name, long fallback) {
    const Entry* e = get(name);
    if (!e) return fallback;
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(e->value, &used);
    } catch (const std::exception&) {
      fail(name, "expected an integer, got '" + e->value + "'");
    }
    if (used != e->value.size()) fail(name, "expected an integer, got '" + e->value + "'");
    return v;
  }
  std::uint64_t unsigned64(const std::string& name, std::uint64_t fallback) {
    const Entry* e = get(name);
    if (!e) return fallback;
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
      if (!e->value.empty() && e->value[0] == '-') throw std::invalid_argument("negative");
      v = std::stoull(e->value, &used);
    } catch (const std::exception&) {
      fail(name, "expected a nonnegative integer, got '" + e->value + "'");
    }
    if (used != e->value.size()) fail(name, "expected a nonnegative integer");
    return v;
  }
  std::optional<bool> boolean(const std::string& name) {
    const Entry* e = get(name);
    if (!e) return std::nullopt;
    std::string v = e->value;
    std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    fail(name, "expected true or false, got '" + e->value + "'");
  }
  std::optional<std::string> text(const std::string& name) {
    const Entry* e = get(name);
    if (!e) return std::nullopt;
    return e->value;
  }
  std::vector<double> numbers(const std::string& name, const std::string& seps = ", \t") {
    const Entry* e = get(name);
    std::vector<double> out;
    if (!e) return out;
    for (const auto& part : split(e->value, seps)) {
      try {
        out.push_back(parse_number(part));
      } catch (const ConfigError& err) {
        fail(name, err.what());
      }
    }
    return out;
  }

  void reject_unused() const {
    for (const auto& [name, e] : entries_)
      if (!used_.count(name)) fail(name, "unknown or inapplicable key");
  }

  std::map<std::string, std::string> accepted() const {
    std::map<std::string, std::string> out;
    for (const auto& [name, e] : entries_) out[name] = e.value;
    return out;
  }

 private:
  std::map<std::string, Entry> entries_;
  std::set<std::string> used_;
};

std::array<double, 2> point(Document& doc, const std::string& name, std::array<double, 2> fallback) {
  if (!doc.has(name)) return fallback;
  const auto v = doc.numbers(name);
  if (v.size() != 2) doc.fail(name, "expected two coordinates");
  return {v[0], v[1]};
}

fem::InitSpec parse_initial(Document& doc, std::uint64_t seed) {
  const std::string kind = doc.text("initial.kind").value_or("flat_front");
  if (kind == "flat_front") {
    fem::FlatFront f;
    f.q0 = doc.number("initial.q0", f.q0);
    if (const auto modes = doc.text("initial.modes")) {
      for (const auto& item : split(*modes, ",;")) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) doc.fail("initial.modes", "expected k:amplitude pairs");
        try {
          const double k = parse_number(item.substr(0, colon));
          if (k < 0.0 || k != std::floor(k)) throw ConfigError("mode index must be a nonnegative integer");
          f.modes.emplace_back(static_cast<int>(k), parse_number(item.substr(colon + 1)));
        } catch (const ConfigError& e) {
          doc.fail("initial.modes", e.what());
        }
      }
    }
    f.random_modes = static_cast<int>(doc.integer("initial.random_modes", 0));
    f.random_bound = doc.number("initial.random_bound", 0.0);
    if (f.random_modes < 0) doc.fail("initial.random_modes", "must be nonnegative");
    if (f.random_modes > 0 && !(f.random_bound > 0.0))
      doc.fail("initial.random_bound", "must be positive with random_modes");
    f.seed = seed;
    return f;
  }
  if (kind == "disk") {
    fem::Disk d;
    d.center = point(doc, "initial.center", d.center);
    d.r0 = doc.number("initial.r0", d.r0);
    return d;
  }
  if (kind == "perturbed_disk") {
    fem::PerturbedDisk d;
    d.center = point(doc, "initial.center", d.center);
    d.r0 = doc.number("initial.r0", d.r0);
    d.amplitude = doc.number("initial.amplitude", d.amplitude);
    d.k = static_cast<int>(doc.integer("initial.k", d.k));
    d.phase = doc.number("initial.phase", d.phase);
    return d;
  }
  if (kind == "random_spinodal") {
    fem::RandomSpinodal r;
    r.bound = doc.number("initial.bound", r.bound);
    r.seed = seed;
    return r;
  }
  if (kind == "constant") {
    fem::Constant c;
    if (!doc.has("initial.c")) doc.fail("initial.kind", "constant needs initial.c");
    c.c = doc.number("initial.c", 0.0);
    return c;
  }
  if (kind == "three_disks") {
    fem::ThreeDisks t;
    const auto radii = doc.numbers("initial.radii");
    if (radii.size() != 3) doc.fail("initial.radii", "expected three radii");
    const auto centers = doc.text("initial.centers");
    if (!centers) doc.fail("initial.kind", "three_disks needs initial.centers");
    const auto parts = split(*centers, ";");
    if (parts.size() != 3) doc.fail("initial.centers", "expected three centers separated by ';'");
    for (int k = 0; k < 3; ++k) {
      t.radii[k] = radii[k];
      const auto xy = split(parts[k], ", \t");
      if (xy.size() != 2) doc.fail("initial.centers", "each center needs two coordinates");
      try {
        t.centers[k] = {parse_number(xy[0]), parse_number(xy[1])};
      } catch (const ConfigError& e) {
        doc.fail("initial.centers", e.what());
      }
    }
    return t;
  }
  doc.fail("initial.kind", "unknown kind '" + kind + "'");
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string corners_name(fem::CornerLumping c) {
  return c == fem::CornerLumping::tensor ? "tensor" : "incident_area";
}

std::string solver_name(fem::LinearSolverKind k) {
  switch (k) {
    case fem::LinearSolverKind::direct:
      return "direct";
    case fem::LinearSolverKind::spectral_gmres:
      return "spectral_gmres";
    case fem::LinearSolverKind::automatic:
      break;
  }
  return "auto";
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt(v[i]);
  return out;
}

}  // namespace

double parse_number(const std::string& text) { return ExprParser(text).parse(); }

RunConfig parse_config(const std::string& text, const Overrides& overrides) {
  Document doc(text, overrides);
  RunConfig c;

  c.domain.dim = static_cast<int>(doc.integer("domain.dim", c.domain.dim));
  if (c.domain.dim != 1 && c.domain.dim != 2) doc.fail("domain.dim", "must be 1 or 2");
  c.domain.lengths[0] = doc.number("domain.L1", 1.0);
  c.domain.lengths[1] = doc.number("domain.L2", c.domain.lengths[0]);
  if (!(c.domain.lengths[0] > 0.0)) doc.fail("domain.L1", "must be positive");
  if (!(c.domain.lengths[1] > 0.0)) doc.fail("domain.L2", "must be positive");
  if (c.domain.dim == 2 && c.domain.lengths[1] > c.domain.lengths[0])
    doc.fail("domain.L2", "the domain must satisfy L1 >= L2");

  c.disc.epsilon = doc.opt_number("discretization.epsilon");
  if (c.disc.epsilon && !(*c.disc.epsilon > 0.0)) doc.fail("discretization.epsilon", "must be positive");
  if (const auto h = doc.text("discretization.h"); h && *h != "auto") {
    c.disc.h = doc.opt_number("discretization.h");
    if (!(*c.disc.h > 0.0)) doc.fail("discretization.h", "must be positive");
  }
  c.disc.tau = doc.number("discretization.tau", c.disc.tau);
  if (!(c.disc.tau > 0.0)) doc.fail("discretization.tau", "must be positive");
  c.disc.t_end = doc.number("discretization.T", c.disc.t_end);
  if (!(c.disc.t_end >= 0.0)) doc.fail("discretization.T", "must be nonnegative");
  if (const auto corners = doc.text("discretization.corner_lumping")) {
    if (*corners == "tensor") c.disc.corners = fem::CornerLumping::tensor;
    else if (*corners == "incident_area") c.disc.corners = fem::CornerLumping::incident_area;
    else doc.fail("discretization.corner_lumping", "expected tensor or incident_area");
  }

  auto& ph = c.physics;
  ph.beta = doc.opt_number("physics.beta");
  if (ph.beta && !(*ph.beta > 0.0)) doc.fail("physics.beta", "must be positive");
  ph.s_plus = doc.opt_number("physics.s_plus");
  ph.s_minus = doc.opt_number("physics.s_minus");
  const bool has_rho = doc.has("physics.rho_plus") || doc.has("physics.rho_minus");
  const bool has_k = doc.has("physics.k_plus") || doc.has("physics.k_minus");
  if (has_rho && has_k)
    doc.fail(doc.has("physics.k_plus") ? "physics.k_plus" : "physics.k_minus",
             "give either rho_plus/rho_minus or k_plus/k_minus, not both");
  const auto pair = [&](const std::string& a, const std::string& b) {
    if (!doc.has(a)) doc.fail(b, a + " is missing");
    if (!doc.has(b)) doc.fail(a, b + " is missing");
    return std::array<double, 2>{doc.number(a, 0.0), doc.number(b, 0.0)};
  };
  if (has_rho) ph.rho = pair("physics.rho_plus", "physics.rho_minus");
  else if (has_k) ph.k = pair("physics.k_plus", "physics.k_minus");
  else ph.rho = std::array<double, 2>{1.0, 1.0};
  ph.l_coef = doc.number("physics.l_coef", ph.l_coef);
  ph.r_c = doc.number("physics.r_c", ph.r_c);
  if (!(ph.r_c > 0.0 && ph.r_c <= 1.0)) doc.fail("physics.r_c", "must lie in (0, 1]");
  ph.m_plus = doc.number("physics.m_plus", ph.m_plus);
  ph.m_minus = doc.number("physics.m_minus", ph.m_minus);
  if (!(ph.m_plus > 0.0)) doc.fail("physics.m_plus", "must be positive");
  if (!(ph.m_minus > 0.0)) doc.fail("physics.m_minus", "must be positive");
  if (const auto pot = doc.text("physics.potential"); pot && *pot != "quartic")
    doc.fail("physics.potential", "only the quartic potential can be configured");

  c.seed = doc.unsigned64("initial.seed", 0);
  c.init = parse_initial(doc, c.seed);

  auto& s = c.solver;
  s.tau = c.disc.tau;
  s.seed = c.seed;
  s.newton_tol = doc.number("solver.newton_tol", s.newton_tol);
  s.newton_max = static_cast<int>(doc.integer("solver.newton_max", s.newton_max));
  s.linear_tol = doc.number("solver.linear_tol", s.linear_tol);
  if (const auto ls = doc.text("solver.linear_solver")) {
    if (*ls == "auto") s.linear_solver = fem::LinearSolverKind::automatic;
    else if (*ls == "direct") s.linear_solver = fem::LinearSolverKind::direct;
    else if (*ls == "spectral_gmres") s.linear_solver = fem::LinearSolverKind::spectral_gmres;
    else doc.fail("solver.linear_solver", "expected auto, direct or spectral_gmres");
  }
  try {
    s.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("config section solver: ") + e.what());
  }

  auto& o = c.output;
  o.dir = doc.text("output.dir").value_or(o.dir);
  o.stride = static_cast<int>(doc.integer("output.stride", o.stride));
  if (o.stride < 1) doc.fail("output.stride", "must be at least 1");
  o.vtk = doc.boolean("output.vtk").value_or(o.vtk);
  o.vtk_stride = static_cast<int>(doc.integer("output.vtk_stride", o.vtk_stride));
  if (o.vtk_stride < 0) doc.fail("output.vtk_stride", "must be nonnegative");
  o.checkpoint = doc.boolean("output.checkpoint").value_or(o.checkpoint);
  o.track_front = doc.boolean("output.track_front");
  o.track_line = doc.number("output.track_line", o.track_line);
  o.mode_lmax = static_cast<int>(doc.integer("output.mode_lmax", o.mode_lmax));
  o.restart = doc.text("output.restart");

  auto& cv = c.converge;
  cv.epsilons = doc.numbers("converge.epsilons");
  cv.dim = static_cast<int>(doc.integer("converge.dim", cv.dim));
  if (cv.dim != 1 && cv.dim != 2) doc.fail("converge.dim", "must be 1 or 2");
  cv.q0 = doc.opt_number("converge.q0");
  cv.reference_dt = doc.number("converge.reference_dt", cv.reference_dt);
  if (!(cv.reference_dt > 0.0)) doc.fail("converge.reference_dt", "must be positive");
  const long threads = doc.integer("converge.threads", cv.threads);
  if (threads < 1) doc.fail("converge.threads", "must be at least 1");
  cv.threads = static_cast<unsigned>(threads);

  c.modes.l_max = static_cast<int>(doc.integer("modes.lmax", c.modes.l_max));
  if (c.modes.l_max < 1) doc.fail("modes.lmax", "must be at least 1");
  c.modes.cap = doc.number("modes.cap", c.modes.cap);
  c.modes.start_factor = doc.number("modes.start_factor", c.modes.start_factor);

  c.stability.dim = static_cast<int>(doc.integer("stability.dim", c.stability.dim));
  if (c.stability.dim != 2 && c.stability.dim != 3) doc.fail("stability.dim", "must be 2 or 3");
  c.stability.l_max = static_cast<int>(doc.integer("stability.lmax", c.stability.l_max));
  if (c.stability.l_max < 0) doc.fail("stability.lmax", "must be nonnegative");
  c.stability.q = doc.opt_number("stability.q");

  c.sharp_ode.q0 = doc.opt_number("sharp_ode.q0");
  c.sharp_ode.dt = doc.number("sharp_ode.dt", c.sharp_ode.dt);
  if (!(c.sharp_ode.dt > 0.0)) doc.fail("sharp_ode.dt", "must be positive");
  c.sharp_ode.stride = static_cast<int>(doc.integer("sharp_ode.stride", c.sharp_ode.stride));
  if (c.sharp_ode.stride < 1) doc.fail("sharp_ode.stride", "must be at least 1");

  auto& si = c.si_table;
  si.k_min = doc.number("si_table.k_min", si.k_min);
  si.k_max = doc.number("si_table.k_max", si.k_max);
  si.k_count = static_cast<int>(doc.integer("si_table.k_count", si.k_count));
  if (si.k_count < 1) doc.fail("si_table.k_count", "must be at least 1");
  if (doc.has("si_table.l_values")) si.l_values = doc.numbers("si_table.l_values");
  if (doc.has("si_table.r_c_values")) si.r_c_values = doc.numbers("si_table.r_c_values");
  for (double rc : si.r_c_values)
    if (!(rc > 0.0 && rc <= 1.0)) doc.fail("si_table.r_c_values", "entries must lie in (0, 1]");

  doc.reject_unused();
  c.raw = doc.accepted();
  return c;
}

RunConfig load_config(const std::string& path, const Overrides& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_config(text.str(), overrides);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

model::PhaseFieldParams sharp_model_params(const RunConfig& cfg) {
  const auto& ph = cfg.physics;
  if (!ph.beta) throw ConfigError("config field physics.beta is required");
  if (!ph.s_plus) throw ConfigError("config field physics.s_plus is required");
  if (!ph.s_minus) throw ConfigError("config field physics.s_minus is required");
  model::PhaseFieldParams p;
  p.beta = *ph.beta;
  p.epsilon = 1.0;
  if (ph.rho) {
    p.reaction = model::reaction_from_rho(p.beta, p.potential, *ph.s_plus, *ph.s_minus, (*ph.rho)[0],
                                          (*ph.rho)[1], ph.l_coef, ph.r_c);
  } else {
    p.reaction.s_plus = *ph.s_plus;
    p.reaction.s_minus = *ph.s_minus;
    p.reaction.k_plus = (*ph.k)[0];
    p.reaction.k_minus = (*ph.k)[1];
    p.reaction.l_coef = ph.l_coef;
    p.reaction.r_c = ph.r_c;
  }
  p.mobility.m_plus = ph.m_plus;
  p.mobility.m_minus = ph.m_minus;
  p.validate();
  return p;
}

model::PhaseFieldParams phase_field_params(const RunConfig& cfg) {
  if (!cfg.disc.epsilon) throw ConfigError("config field discretization.epsilon is required");
  auto p = sharp_model_params(cfg);
  p.epsilon = *cfg.disc.epsilon;
  return p;
}

double resolved_mesh_size(const RunConfig& cfg) {
  if (cfg.disc.h) return *cfg.disc.h;
  if (!cfg.disc.epsilon)
    throw ConfigError("config field discretization.h is required when epsilon is not given");
  const auto h = analysis::ladder_mesh_size(*cfg.disc.epsilon);
  if (!h)
    throw ConfigError("discretization.h = auto needs epsilon = 1/(2^k pi); give h explicitly");
  return *h;
}

std::map<std::string, std::map<std::string, std::string>> resolved_fields(const RunConfig& c) {
  std::map<std::string, std::map<std::string, std::string>> out;
  auto& d = out["domain"];
  d["dim"] = std::to_string(c.domain.dim);
  d["L1"] = fmt(c.domain.lengths[0]);
  d["L2"] = fmt(c.domain.lengths[1]);

  auto& disc = out["discretization"];
  disc["epsilon"] = c.disc.epsilon ? fmt(*c.disc.epsilon) : "";
  try {
    disc["h"] = fmt(resolved_mesh_size(c));
  } catch (const ConfigError&) {
    disc["h"] = "auto";
  }
  disc["tau"] = fmt(c.disc.tau);
  disc["T"] = fmt(c.disc.t_end);
  disc["corner_lumping"] = corners_name(c.disc.corners);

  auto& ph = out["physics"];
  const auto& p = c.physics;
  ph["beta"] = p.beta ? fmt(*p.beta) : "";
  ph["s_plus"] = p.s_plus ? fmt(*p.s_plus) : "";
  ph["s_minus"] = p.s_minus ? fmt(*p.s_minus) : "";
  if (p.beta && p.s_plus && p.s_minus) {
    const auto mp = sharp_model_params(c);
    ph["k_plus"] = fmt(mp.reaction.k_plus);
    ph["k_minus"] = fmt(mp.reaction.k_minus);
    ph["rho_plus"] = fmt(mp.reaction.k_plus / (mp.beta * mp.potential.ddpsi_plus()));
    ph["rho_minus"] = fmt(mp.reaction.k_minus / (mp.beta * mp.potential.ddpsi_minus()));
  }
  ph["l_coef"] = fmt(p.l_coef);
  ph["r_c"] = fmt(p.r_c);
  ph["m_plus"] = fmt(p.m_plus);
  ph["m_minus"] = fmt(p.m_minus);
  ph["potential"] = "quartic";

  auto& in = out["initial"];
  in["kind"] = fem::init_kind_name(c.init);
  in["seed"] = std::to_string(c.seed);
  if (const auto* f = std::get_if<fem::FlatFront>(&c.init)) {
    in["q0"] = fmt(f->q0);
    std::string modes;
    for (const auto& [k, a] : f->modes) modes += (modes.empty() ? "" : ", ") + std::to_string(k) + ":" + fmt(a);
    in["modes"] = modes;
    in["random_modes"] = std::to_string(f->random_modes);
    in["random_bound"] = fmt(f->random_bound);
  } else if (const auto* dk = std::get_if<fem::Disk>(&c.init)) {
    in["center"] = join({dk->center[0], dk->center[1]});
    in["r0"] = fmt(dk->r0);
  } else if (const auto* pd = std::get_if<fem::PerturbedDisk>(&c.init)) {
    in["center"] = join({pd->center[0], pd->center[1]});
    in["r0"] = fmt(pd->r0);
    in["amplitude"] = fmt(pd->amplitude);
    in["k"] = std::to_string(pd->k);
    in["phase"] = fmt(pd->phase);
  } else if (const auto* rs = std::get_if<fem::RandomSpinodal>(&c.init)) {
    in["bound"] = fmt(rs->bound);
  } else if (const auto* cs = std::get_if<fem::Constant>(&c.init)) {
    in["c"] = fmt(cs->c);
  } else if (const auto* td = std::get_if<fem::ThreeDisks>(&c.init)) {
    in["radii"] = join({td->radii[0], td->radii[1], td->radii[2]});
    std::string centers;
    for (int k = 0; k < 3; ++k)
      centers += (k ? "; " : "") + join({td->centers[k][0], td->centers[k][1]});
    in["centers"] = centers;
  }

  auto& s = out["solver"];
  s["newton_tol"] = fmt(c.solver.newton_tol);
  s["newton_max"] = std::to_string(c.solver.newton_max);
  s["linear_tol"] = fmt(c.solver.linear_tol);
  s["linear_solver"] = solver_name(c.solver.linear_solver);

  auto& o = out["output"];
  o["dir"] = c.output.dir;
  o["stride"] = std::to_string(c.output.stride);
  o["vtk"] = c.output.vtk ? "true" : "false";
  o["vtk_stride"] = std::to_string(c.output.vtk_stride);
  o["checkpoint"] = c.output.checkpoint ? "true" : "false";
  o["track_front"] = c.output.track_front
                         ? (*c.output.track_front ? "true" : "false")
                         : (std::holds_alternative<fem::FlatFront>(c.init) ? "true" : "false");
  o["track_line"] = fmt(c.output.track_line);
  o["mode_lmax"] = std::to_string(c.output.mode_lmax);
  o["restart"] = c.output.restart.value_or("");

  auto& cv = out["converge"];
  cv["epsilons"] = join(c.converge.epsilons);
  cv["dim"] = std::to_string(c.converge.dim);
  cv["q0"] = c.converge.q0 ? fmt(*c.converge.q0) : "";
  cv["reference_dt"] = fmt(c.converge.reference_dt);
  cv["threads"] = std::to_string(c.converge.threads);

  auto& m = out["modes"];
  m["lmax"] = std::to_string(c.modes.l_max);
  m["cap"] = fmt(c.modes.cap);
  m["start_factor"] = fmt(c.modes.start_factor);

  auto& st = out["stability"];
  st["dim"] = std::to_string(c.stability.dim);
  st["lmax"] = std::to_string(c.stability.l_max);
  st["q"] = c.stability.q ? fmt(*c.stability.q) : "";

  auto& so = out["sharp_ode"];
  so["q0"] = c.sharp_ode.q0 ? fmt(*c.sharp_ode.q0) : "";
  so["dt"] = fmt(c.sharp_ode.dt);
  so["stride"] = std::to_string(c.sharp_ode.stride);

  auto& si = out["si_table"];
  si["k_min"] = fmt(c.si_table.k_min);
  si["k_max"] = fmt(c.si_table.k_max);
  si["k_count"] = std::to_string(c.si_table.k_count);
  si["l_values"] = join(c.si_table.l_values);
  si["r_c_values"] = join(c.si_table.r_c_values);
  return out;
}

}  // namespace activech::io
