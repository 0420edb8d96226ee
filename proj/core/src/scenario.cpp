#include "flocksim/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace flock {

EConvention Scenario::e_convention() const {
  if (output.e_convention_explicit) return output.e_convention;
  return kernel.is_singular() ? EConvention::Transport : EConvention::Threshold;
}

ScenarioError::ScenarioError(std::vector<ScenarioIssue> issues)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "scenario validation failed:";
        for (const auto& i : issues) {
          os << "\n  ";
          if (i.line > 0) os << "line " << i.line << ": ";
          os << i.message;
        }
        return os.str();
      }()),
      issues_(std::move(issues)) {}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct RawEntry {
  std::string value;
  int line = 0;
  bool consumed = false;
};

/// Tokenized scenario text plus the error accumulator for total validation.
struct ParseTable {
  std::map<std::string, RawEntry> entries;  // key "section.key"
  std::vector<ScenarioIssue> issues;

  void error(int line, const std::string& msg) { issues.push_back({line, msg}); }

  RawEntry* find(const std::string& key) {
    auto it = entries.find(key);
    if (it == entries.end()) return nullptr;
    it->second.consumed = true;
    return &it->second;
  }

  bool get_double(const std::string& key, double& out) {
    RawEntry* e = find(key);
    if (!e) return false;
    try {
      size_t pos = 0;
      double v = std::stod(e->value, &pos);
      if (pos != e->value.size()) throw std::invalid_argument("");
      out = v;
      return true;
    } catch (const std::exception&) {
      error(e->line, key + ": expected a number, got '" + e->value + "'");
      return false;
    }
  }

  bool get_int(const std::string& key, int& out) {
    RawEntry* e = find(key);
    if (!e) return false;
    try {
      size_t pos = 0;
      long v = std::stol(e->value, &pos);
      if (pos != e->value.size()) throw std::invalid_argument("");
      out = static_cast<int>(v);
      return true;
    } catch (const std::exception&) {
      error(e->line, key + ": expected an integer, got '" + e->value + "'");
      return false;
    }
  }

  bool get_unsigned(const std::string& key, unsigned& out) {
    RawEntry* e = find(key);
    if (!e) return false;
    try {
      size_t pos = 0;
      unsigned long v = std::stoul(e->value, &pos);
      if (pos != e->value.size()) throw std::invalid_argument("");
      out = static_cast<unsigned>(v);
      return true;
    } catch (const std::exception&) {
      error(e->line, key + ": expected an unsigned integer, got '" + e->value + "'");
      return false;
    }
  }

  bool get_bool(const std::string& key, bool& out) {
    RawEntry* e = find(key);
    if (!e) return false;
    if (e->value == "true" || e->value == "on" || e->value == "1") {
      out = true;
    } else if (e->value == "false" || e->value == "off" || e->value == "0") {
      out = false;
    } else {
      error(e->line, key + ": expected true/false, got '" + e->value + "'");
      return false;
    }
    return true;
  }

  bool get_string(const std::string& key, std::string& out) {
    RawEntry* e = find(key);
    if (!e) return false;
    out = e->value;
    return true;
  }

  int line_of(const std::string& key) const {
    auto it = entries.find(key);
    return it == entries.end() ? 0 : it->second.line;
  }
};

const char* const kSections[] = {"grid",   "kernel", "initial", "step",
                                 "output", "mode",   "agents"};

void tokenize(const std::string& text, ParseTable& tab) {
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (size_t hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        tab.error(line_no, "malformed section header '" + line + "'");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      if (std::find_if(std::begin(kSections), std::end(kSections),
                       [&](const char* s) { return section == s; }) ==
          std::end(kSections)) {
        tab.error(line_no, "unknown section [" + section + "]");
        section.clear();
      }
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      tab.error(line_no, "expected 'key = value', got '" + line + "'");
      continue;
    }
    if (section.empty()) {
      tab.error(line_no, "key outside any section: '" + line + "'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      tab.error(line_no, "empty key");
      continue;
    }
    const std::string full = section + "." + key;
    if (tab.entries.count(full)) {
      tab.error(line_no, "duplicate key '" + full + "'");
      continue;
    }
    tab.entries[full] = {value, line_no, false};
  }
}

void require_positive(ParseTable& tab, const std::string& key, double v) {
  if (!(v > 0.0)) tab.error(tab.line_of(key), key + " must be > 0");
}

Scenario extract(ParseTable& tab) {
  Scenario s;

  // [grid]
  if (tab.get_int("grid.n", s.n)) {
    if (s.n < 16 || s.n > 8192 || s.n % 2 != 0)
      tab.error(tab.line_of("grid.n"),
                "grid.n must be an even integer in [16, 8192]");
  } else {
    tab.error(0, "missing required key grid.n");
  }
  if (tab.get_double("grid.length", s.length))
    require_positive(tab, "grid.length", s.length);

  // [kernel]
  std::string variant;
  if (!tab.get_string("kernel.variant", variant))
    tab.error(0, "missing required key kernel.variant");
  std::string shape_name = "offset_cosine";
  const bool shape_given = tab.get_string("kernel.shape", shape_name);
  KernelShape shape = KernelShape::OffsetCosine;
  try {
    shape = kernel_shape_from_name(shape_name);
  } catch (const std::exception&) {
    tab.error(tab.line_of("kernel.shape"),
              "kernel.shape: unknown shape '" + shape_name + "'");
  }
  double p0 = 2.0, p1 = 1.0, alpha = 1.0;
  const bool p0_given = tab.get_double("kernel.p0", p0);
  const bool p1_given = tab.get_double("kernel.p1", p1);
  const bool alpha_given = tab.get_double("kernel.alpha", alpha);
  if (variant == "bounded" || variant == "mostsch_tadmor") {
    if (shape == KernelShape::Constant && !p1_given) p1 = 0.0;
    s.kernel = variant == "bounded" ? KernelSpec::bounded(shape, p0, p1)
                                    : KernelSpec::mostsch_tadmor(shape, p0, p1);
    if (alpha_given)
      tab.error(tab.line_of("kernel.alpha"),
                "kernel.alpha only applies to the singular variant");
  } else if (variant == "singular") {
    if (!(alpha > 0.0 && alpha < 2.0))
      tab.error(alpha_given ? tab.line_of("kernel.alpha") : 0,
                "kernel.alpha must lie in (0, 2)");
    else
      s.kernel = KernelSpec::singular(alpha);
    if (shape_given || p0_given || p1_given)
      tab.error(tab.line_of(shape_given ? "kernel.shape"
                            : p0_given  ? "kernel.p0"
                                        : "kernel.p1"),
                "shape parameters do not apply to the singular variant");
  } else if (!variant.empty()) {
    tab.error(tab.line_of("kernel.variant"),
              "kernel.variant must be bounded, mostsch_tadmor, or singular");
  }

  // [initial]
  if (!tab.get_string("initial.name", s.initial.name))
    tab.error(0, "missing required key initial.name");
  if (s.initial.name != "perturbed_constant" && s.initial.name != "bump" &&
      s.initial.name != "two_bump")
    tab.error(tab.line_of("initial.name"),
              "initial.name must be perturbed_constant, bump, or two_bump");
  if (tab.get_double("initial.mass", s.initial.mass))
    require_positive(tab, "initial.mass", s.initial.mass);
  tab.get_double("initial.rho_amp", s.initial.rho_amp);
  if (s.initial.name == "perturbed_constant" &&
      std::fabs(s.initial.rho_amp) >= 1.0)
    tab.error(tab.line_of("initial.rho_amp"),
              "initial.rho_amp must satisfy |rho_amp| < 1 (density positivity)");
  tab.get_double("initial.rho_phase", s.initial.rho_phase);
  tab.get_double("initial.u_amp", s.initial.u_amp);
  tab.get_double("initial.u_phase", s.initial.u_phase);
  if (tab.get_double("initial.bump_width", s.initial.bump_width))
    require_positive(tab, "initial.bump_width", s.initial.bump_width);
  if (tab.get_double("initial.bump_separation", s.initial.bump_separation) &&
      s.initial.bump_separation < 0.0)
    tab.error(tab.line_of("initial.bump_separation"),
              "initial.bump_separation must be >= 0");

  // [step]
  if (tab.get_double("step.t_end", s.step.t_end)) {
    if (!(s.step.t_end >= 0.0))
      tab.error(tab.line_of("step.t_end"), "step.t_end must be >= 0");
  } else {
    tab.error(0, "missing required key step.t_end");
  }
  if (tab.get_double("step.cfl_advective", s.step.cfl_advective) &&
      !(s.step.cfl_advective > 0.0 && s.step.cfl_advective <= 1.0))
    tab.error(tab.line_of("step.cfl_advective"),
              "step.cfl_advective must lie in (0, 1]");
  if (tab.get_double("step.cfl_dissipative", s.step.cfl_dissipative) &&
      !(s.step.cfl_dissipative > 0.0 && s.step.cfl_dissipative <= 1.0))
    tab.error(tab.line_of("step.cfl_dissipative"),
              "step.cfl_dissipative must lie in (0, 1]");
  if (tab.get_double("step.dt_max", s.step.dt_max))
    require_positive(tab, "step.dt_max", s.step.dt_max);

  // [output]
  if (tab.get_double("output.cadence", s.output.cadence))
    require_positive(tab, "output.cadence", s.output.cadence);
  tab.get_string("output.directory", s.output.directory);
  tab.get_bool("output.snapshots", s.output.snapshots);
  std::string conv;
  if (tab.get_string("output.e_convention", conv)) {
    s.output.e_convention_explicit = true;
    if (conv == "transport")
      s.output.e_convention = EConvention::Transport;
    else if (conv == "threshold")
      s.output.e_convention = EConvention::Threshold;
    else
      tab.error(tab.line_of("output.e_convention"),
                "output.e_convention must be transport or threshold");
  }

  // [mode]
  std::string mode;
  if (tab.get_string("mode.mode", mode)) {
    if (mode == "torus")
      s.mode = DomainMode::Torus;
    else if (mode == "line_emulation")
      s.mode = DomainMode::LineEmulation;
    else
      tab.error(tab.line_of("mode.mode"),
                "mode.mode must be torus or line_emulation");
  }
  if (tab.get_double("mode.support_threshold", s.support_threshold))
    require_positive(tab, "mode.support_threshold", s.support_threshold);

  // [agents]
  tab.get_bool("agents.enabled", s.agents.enabled);
  if (tab.get_int("agents.count", s.agents.count) && s.agents.count < 2)
    tab.error(tab.line_of("agents.count"), "agents.count must be >= 2");
  tab.get_unsigned("agents.seed", s.agents.seed);
  if (tab.get_double("agents.mollifier_width", s.agents.mollifier_width))
    require_positive(tab, "agents.mollifier_width", s.agents.mollifier_width);
  if (tab.get_double("agents.dt", s.agents.dt))
    require_positive(tab, "agents.dt", s.agents.dt);
  if (s.agents.enabled && s.kernel.is_singular())
    tab.error(tab.line_of("agents.enabled"),
              "agents require a bounded or mostsch_tadmor kernel");

  for (const auto& [key, entry] : tab.entries)
    if (!entry.consumed) tab.error(entry.line, "unknown key '" + key + "'");

  return s;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  ParseTable tab;
  tokenize(text, tab);
  Scenario s = extract(tab);
  if (!tab.issues.empty()) {
    std::sort(tab.issues.begin(), tab.issues.end(),
              [](const ScenarioIssue& a, const ScenarioIssue& b) {
                return a.line < b.line;
              });
    throw ScenarioError(std::move(tab.issues));
  }
  return s;
}

std::string serialize_scenario(const Scenario& s) {
  std::ostringstream os;
  os << "[grid]\n"
     << "n = " << s.n << "\n"
     << "length = " << fmt(s.length) << "\n\n";

  os << "[kernel]\n";
  switch (s.kernel.variant) {
    case KernelVariant::BoundedSymmetric:
      os << "variant = bounded\n";
      break;
    case KernelVariant::MostschTadmor:
      os << "variant = mostsch_tadmor\n";
      break;
    case KernelVariant::SingularFractional:
      os << "variant = singular\n";
      break;
  }
  if (s.kernel.is_singular()) {
    os << "alpha = " << fmt(s.kernel.alpha) << "\n";
  } else {
    os << "shape = " << kernel_shape_name(s.kernel.shape) << "\n"
       << "p0 = " << fmt(s.kernel.p0) << "\n"
       << "p1 = " << fmt(s.kernel.p1) << "\n";
  }
  os << "\n[initial]\n"
     << "name = " << s.initial.name << "\n"
     << "mass = " << fmt(s.initial.mass) << "\n"
     << "rho_amp = " << fmt(s.initial.rho_amp) << "\n"
     << "rho_phase = " << fmt(s.initial.rho_phase) << "\n"
     << "u_amp = " << fmt(s.initial.u_amp) << "\n"
     << "u_phase = " << fmt(s.initial.u_phase) << "\n"
     << "bump_width = " << fmt(s.initial.bump_width) << "\n"
     << "bump_separation = " << fmt(s.initial.bump_separation) << "\n";

  os << "\n[step]\n"
     << "t_end = " << fmt(s.step.t_end) << "\n"
     << "cfl_advective = " << fmt(s.step.cfl_advective) << "\n"
     << "cfl_dissipative = " << fmt(s.step.cfl_dissipative) << "\n"
     << "dt_max = " << fmt(s.step.dt_max) << "\n";

  os << "\n[output]\n"
     << "cadence = " << fmt(s.output.cadence) << "\n"
     << "directory = " << s.output.directory << "\n"
     << "snapshots = " << (s.output.snapshots ? "true" : "false") << "\n";
  if (s.output.e_convention_explicit)
    os << "e_convention = "
       << (s.output.e_convention == EConvention::Transport ? "transport"
                                                           : "threshold")
       << "\n";

  os << "\n[mode]\n"
     << "mode = "
     << (s.mode == DomainMode::Torus ? "torus" : "line_emulation") << "\n"
     << "support_threshold = " << fmt(s.support_threshold) << "\n";

  os << "\n[agents]\n"
     << "enabled = " << (s.agents.enabled ? "true" : "false") << "\n"
     << "count = " << s.agents.count << "\n"
     << "seed = " << s.agents.seed << "\n"
     << "mollifier_width = " << fmt(s.agents.mollifier_width) << "\n"
     << "dt = " << fmt(s.agents.dt) << "\n";
  return os.str();
}

void apply_axis(Scenario& s, const std::string& axis, double value) {
  if (axis == "initial.mass") {
    s.initial.mass = value;
  } else if (axis == "initial.u_amp") {
    s.initial.u_amp = value;
  } else if (axis == "initial.rho_amp") {
    s.initial.rho_amp = value;
  } else if (axis == "kernel.p0") {
    s.kernel.p0 = value;
  } else if (axis == "kernel.p1") {
    s.kernel.p1 = value;
  } else if (axis == "kernel.alpha") {
    s.kernel.alpha = value;
  } else if (axis == "grid.n") {
    s.n = static_cast<int>(value);
  } else if (axis == "step.t_end") {
    s.step.t_end = value;
  } else {
    throw std::invalid_argument("apply_axis: '" + axis +
                                "' is not a sweepable parameter");
  }
  // Re-validate through the textual form so sweeps cannot smuggle an
  // out-of-range value past the parser.
  s = parse_scenario(serialize_scenario(s));
}

bool is_sweepable_axis(const std::string& axis) {
  static const char* const axes[] = {
      "initial.mass", "initial.u_amp", "initial.rho_amp", "kernel.p0",
      "kernel.p1",    "kernel.alpha",  "grid.n",          "step.t_end"};
  return std::find_if(std::begin(axes), std::end(axes), [&](const char* a) {
           return axis == a;
         }) != std::end(axes);
}

}  // namespace flock
