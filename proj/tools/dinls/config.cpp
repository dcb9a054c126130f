#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "dinls/error.hpp"

namespace dinls::app {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw Error(ErrorCode::ParseError, (line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + what);
}

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

// Drops a trailing # comment that is not inside a string.
std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_string && c == '\\') {
      ++i;
    } else if (c == '"') {
      in_string = !in_string;
    } else if (c == '#' && !in_string) {
      return line.substr(0, i);
    }
  }
  return line;
}

bool is_bare_key(const std::string& key) {
  return !key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

class ValueParser {
 public:
  ValueParser(std::string_view text, int line) : text_(text), line_(line) {}

  ConfigValue parse_all() {
    ConfigValue v = parse_value();
    skip_space();
    if (pos_ != text_.size()) parse_fail(line_, "trailing characters after value: '" + std::string(text_.substr(pos_)) + "'");
    return v;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  ConfigValue parse_value() {
    skip_space();
    if (pos_ >= text_.size()) parse_fail(line_, "missing value");
    const char c = text_[pos_];
    if (c == '"') return parse_string();
    if (c == '[') return parse_array();
    return parse_scalar();
  }

  ConfigValue parse_string() {
    ConfigValue v;
    v.kind = ConfigValue::Kind::String;
    v.line = line_;
    ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      char c = text_[pos_++];
      if (c == '\\') {
        if (pos_ >= text_.size()) break;
        const char e = text_[pos_++];
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: parse_fail(line_, std::string("unsupported escape \\") + e);
        }
      }
      v.text.push_back(c);
    }
    if (pos_ >= text_.size()) parse_fail(line_, "unterminated string");
    ++pos_;
    return v;
  }

  ConfigValue parse_array() {
    ConfigValue v;
    v.kind = ConfigValue::Kind::Array;
    v.line = line_;
    ++pos_;
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ']') {
      ++pos_;
      return v;
    }
    while (true) {
      ConfigValue item = parse_value();
      if (item.kind == ConfigValue::Kind::Array) parse_fail(line_, "nested arrays are not supported");
      v.items.push_back(std::move(item));
      skip_space();
      if (pos_ >= text_.size()) parse_fail(line_, "unterminated array");
      if (text_[pos_] == ']') {
        ++pos_;
        return v;
      }
      if (text_[pos_] != ',') parse_fail(line_, "expected ',' or ']' in array");
      ++pos_;
      skip_space();
      // Trailing comma.
      if (pos_ < text_.size() && text_[pos_] == ']') {
        ++pos_;
        return v;
      }
    }
  }

  ConfigValue parse_scalar() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ']' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    const std::string token(text_.substr(start, pos_ - start));
    ConfigValue v;
    v.line = line_;
    if (token == "true" || token == "false") {
      v.kind = ConfigValue::Kind::Bool;
      v.flag = token == "true";
      v.text = token;
      return v;
    }
    const bool numeric = !token.empty() && std::all_of(token.begin(), token.end(), [](char c) {
      return std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.' || c == 'e' ||
             c == 'E' || c == '_' || c == '/';
    });
    if (!numeric) parse_fail(line_, "invalid value '" + token + "' (strings must be quoted)");
    v.kind = ConfigValue::Kind::Number;
    std::erase(v.text = token, '_');
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
};

ConfigValue parse_value_text(const std::string& text, int line) { return ValueParser(text, line).parse_all(); }

int bracket_balance(const std::string& s) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (in_string && s[i] == '\\') {
      ++i;
    } else if (s[i] == '"') {
      in_string = !in_string;
    } else if (!in_string) {
      depth += s[i] == '[' ? 1 : s[i] == ']' ? -1 : 0;
    }
  }
  return depth;
}

ConfigValue from_json(const nlohmann::json& j, int depth = 0) {
  ConfigValue v;
  if (j.is_string()) {
    v.kind = ConfigValue::Kind::String;
    v.text = j.get<std::string>();
  } else if (j.is_boolean()) {
    v.kind = ConfigValue::Kind::Bool;
    v.flag = j.get<bool>();
    v.text = v.flag ? "true" : "false";
  } else if (j.is_number()) {
    v.kind = ConfigValue::Kind::Number;
    v.text = j.dump();
  } else if (j.is_array() && depth == 0) {
    v.kind = ConfigValue::Kind::Array;
    for (const auto& item : j) v.items.push_back(from_json(item, 1));
  } else {
    parse_fail(0, "unsupported JSON value " + j.dump());
  }
  return v;
}

// Typed access to one section that remembers which keys were read, so that
// anything left over can be reported as unknown.
class Section {
 public:
  Section(const ConfigTable& table, std::string name) : name_(std::move(name)) {
    if (const auto it = table.find(name_); it != table.end()) entries_ = &it->second;
  }

  const ConfigValue* find(const std::string& key) {
    used_.insert(key);
    if (entries_ == nullptr) return nullptr;
    const auto it = entries_->find(key);
    return it == entries_->end() ? nullptr : &it->second;
  }

  std::string label(const std::string& key) const { return name_.empty() ? key : name_ + "." + key; }

  Number number(const std::string& key, const Number& fallback) {
    const auto* v = find(key);
    return v ? as_number(*v, key) : fallback;
  }

  std::optional<Number> optional_number(const std::string& key) {
    const auto* v = find(key);
    return v ? std::optional<Number>(as_number(*v, key)) : std::nullopt;
  }

  double real(const std::string& key, double fallback) { return number(key, Number(fallback)).value(); }

  long long integer(const std::string& key, long long fallback) {
    const auto* v = find(key);
    if (!v) return fallback;
    const Number n = as_number(*v, key);
    const double x = n.value();
    if (!n.is_exact() || x != static_cast<double>(static_cast<long long>(x)))
      parse_fail(v->line, label(key) + " must be an integer, got '" + v->text + "'");
    return static_cast<long long>(x);
  }

  std::string string(const std::string& key, const std::string& fallback) {
    const auto* v = find(key);
    if (!v) return fallback;
    if (v->kind == ConfigValue::Kind::Array) parse_fail(v->line, label(key) + " must be a scalar");
    return v->text;
  }

  bool boolean(const std::string& key, bool fallback) {
    const auto* v = find(key);
    if (!v) return fallback;
    if (v->kind != ConfigValue::Kind::Bool) parse_fail(v->line, label(key) + " must be true or false");
    return v->flag;
  }

  std::vector<double> reals(const std::string& key, std::vector<double> fallback) {
    const auto* v = find(key);
    if (!v) return fallback;
    if (v->kind != ConfigValue::Kind::Array) parse_fail(v->line, label(key) + " must be an array");
    std::vector<double> out;
    for (const auto& item : v->items) out.push_back(as_number(item, key).value());
    return out;
  }

  std::vector<std::string> strings(const std::string& key, std::vector<std::string> fallback) {
    const auto* v = find(key);
    if (!v) return fallback;
    if (v->kind != ConfigValue::Kind::Array) parse_fail(v->line, label(key) + " must be an array");
    std::vector<std::string> out;
    for (const auto& item : v->items) out.push_back(item.text);
    return out;
  }

  bool present() const { return entries_ != nullptr; }

  void reject_unknown() const {
    if (entries_ == nullptr) return;
    for (const auto& [key, value] : *entries_)
      if (!used_.contains(key)) parse_fail(value.line, "unknown key '" + label(key) + "'");
  }

 private:
  Number as_number(const ConfigValue& v, const std::string& key) const {
    if (v.kind != ConfigValue::Kind::Number && v.kind != ConfigValue::Kind::String)
      parse_fail(v.line, label(key) + " must be a number");
    try {
      return Number::parse(v.text);
    } catch (const Error&) {
      parse_fail(v.line, label(key) + ": cannot read '" + v.text + "' as a number");
    }
  }

  std::string name_;
  const std::map<std::string, ConfigValue>* entries_ = nullptr;
  std::set<std::string> used_;
};

const std::set<std::string>& known_sections() {
  static const std::set<std::string> names{"",       "params",       "grid",   "solver",      "initial_data",
                                           "outputs", "exponents",   "verify", "convergence", "picard",
                                           "sweep"};
  return names;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

std::filesystem::path resolve_path(const ExperimentConfig& config, const std::string& path) {
  const std::filesystem::path p(path);
  return p.is_absolute() ? p : config.base_dir / p;
}

ConfigTable parse_toml(const std::string& text) {
  ConfigTable table;
  table[""];
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[' && line.find('=') == std::string::npos) {
      if (line.back() != ']') parse_fail(line_no, "malformed section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!is_bare_key(section)) parse_fail(line_no, "invalid section name '" + section + "'");
      if (table.contains(section) && !table[section].empty())
        parse_fail(line_no, "duplicate section [" + section + "]");
      table[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) parse_fail(line_no, "expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    if (!is_bare_key(key)) parse_fail(line_no, "invalid key '" + key + "'");
    std::string value_text = trim(std::string_view(line).substr(eq + 1));
    const int first_line = line_no;
    // Arrays may continue over several lines.
    while (bracket_balance(value_text) > 0 && std::getline(in, raw)) {
      ++line_no;
      value_text += " " + trim(strip_comment(raw));
    }
    auto& entries = table[section];
    if (entries.contains(key)) parse_fail(first_line, "duplicate key '" + key + "'");
    entries[key] = parse_value_text(value_text, first_line);
  }
  return table;
}

ConfigTable parse_json_config(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail(0, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) parse_fail(0, "JSON config must be an object");
  ConfigTable table;
  table[""];
  for (const auto& [name, value] : doc.items()) {
    if (value.is_object()) {
      auto& entries = table[name];
      for (const auto& [key, item] : value.items()) entries[key] = from_json(item);
    } else {
      table[""][name] = from_json(value);
    }
  }
  return table;
}

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Simulate: return "simulate";
    case Mode::Classify: return "classify";
    case Mode::Exponents: return "exponents";
    case Mode::VerifyInterpolation: return "verify-interpolation";
    case Mode::VerifyKinetic: return "verify-kinetic";
    case Mode::Convergence: return "convergence";
    case Mode::PicardCheck: return "picard-check";
    case Mode::Sweep: return "sweep";
  }
  return "simulate";
}

Mode parse_mode(std::string_view text) {
  for (Mode m : {Mode::Simulate, Mode::Classify, Mode::Exponents, Mode::VerifyInterpolation, Mode::VerifyKinetic,
                 Mode::Convergence, Mode::PicardCheck, Mode::Sweep})
    if (to_string(m) == text) return m;
  throw Error(ErrorCode::ParseError, "unknown mode '" + std::string(text) + "'");
}

void apply_override(ConfigTable& table, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) parse_fail(0, "override '" + assignment + "' must look like section.key=value");
  const std::string path = trim(std::string_view(assignment).substr(0, eq));
  const std::string value = trim(std::string_view(assignment).substr(eq + 1));
  const auto dot = path.find('.');
  const std::string section = dot == std::string::npos ? "" : path.substr(0, dot);
  const std::string key = dot == std::string::npos ? path : path.substr(dot + 1);
  if (!is_bare_key(key) || (!section.empty() && !is_bare_key(section)))
    parse_fail(0, "invalid override target '" + path + "'");
  ConfigValue parsed;
  try {
    parsed = parse_value_text(value, 0);
  } catch (const Error&) {
    // Unquoted words on the command line are strings.
    parsed.kind = ConfigValue::Kind::String;
    parsed.text = value;
  }
  table[section][key] = parsed;
}

ExperimentConfig build_config(const ConfigTable& table, const std::filesystem::path& base_dir) {
  for (const auto& [name, entries] : table)
    if (!known_sections().contains(name)) {
      const int line = entries.empty() ? 0 : entries.begin()->second.line;
      parse_fail(line, "unknown section [" + name + "]");
    }

  ExperimentConfig c;
  c.base_dir = base_dir;

  Section top(table, "");
  c.mode = parse_mode(top.string("mode", "simulate"));
  const long long seed = top.integer("seed", 0);
  if (seed < 0) throw Error(ErrorCode::ValidationError, "seed must be non-negative");
  c.seed = static_cast<std::uint64_t>(seed);
  c.linear = top.boolean("linear", false);
  top.reject_unknown();

  Section params(table, "params");
  if (params.present()) {
    RawParams raw;
    raw.dimension = static_cast<int>(params.integer("N", 3));
    raw.lambda1 = params.real("lambda1", 0.0);
    raw.lambda2 = params.real("lambda2", 0.0);
    raw.p1 = params.number("p1", Number(0));
    raw.b1 = params.number("b1", Number(0));
    raw.b2 = params.number("b2", Number(0));
    // p2 defaults to the critical power fixed by b2.
    if (const auto p2 = params.optional_number("p2")) {
      raw.p2 = *p2;
    } else {
      raw.p2 = (raw.dimension > 2) ? critical_power(raw.b2, raw.dimension) : Number(0);
    }
    c.params = raw;
  }
  params.reject_unknown();

  Section grid(table, "grid");
  c.grid.dimension = static_cast<int>(grid.integer("N", c.params ? c.params->dimension : 3));
  c.grid.radius = grid.real("R", c.grid.radius);
  c.grid.points = static_cast<int>(grid.integer("M", c.grid.points));
  grid.reject_unknown();
  if (c.params && c.params->dimension != c.grid.dimension)
    throw Error(ErrorCode::ValidationError, "grid.N differs from params.N");

  Section solver(table, "solver");
  auto& s = c.solver;
  s.dt0 = solver.real("dt0", s.dt0);
  s.dt_min = solver.real("dt_min", s.dt_min);
  s.t_end = solver.real("t_end", s.t_end);
  s.cfl_phase = solver.real("cfl_phase", s.cfl_phase);
  s.blowup_amp_factor = solver.real("blowup_amp_factor", s.blowup_amp_factor);
  s.blowup_grad_factor = solver.real("blowup_grad_factor", s.blowup_grad_factor);
  s.absorbing_mask = solver.boolean("absorbing_mask", s.absorbing_mask);
  s.sample_stride = static_cast<int>(solver.integer("sample_stride", s.sample_stride));
  s.c_large = solver.real("c_large", s.c_large);
  s.case_v_epsilon = solver.real("case_v_epsilon", s.case_v_epsilon);
  solver.reject_unknown();

  Section init(table, "initial_data");
  auto& id = c.initial_data;
  id.kind = init.string("kind", id.kind);
  id.amplitude = init.real("amplitude", id.amplitude);
  if (const auto f = init.optional_number("zero_energy_factor")) id.zero_energy_factor = f->value();
  id.width = init.real("width", id.width);
  id.chirp = init.real("chirp", id.chirp);
  id.snapshot = init.string("snapshot", id.snapshot);
  init.reject_unknown();

  Section outputs(table, "outputs");
  c.outputs.directory = outputs.string("directory", c.outputs.directory.string());
  c.outputs.snapshot_format = outputs.string("snapshot_format", c.outputs.snapshot_format);
  // Convenience alias; the solver owns the value.
  s.sample_stride = static_cast<int>(outputs.integer("sample_stride", s.sample_stride));
  outputs.reject_unknown();

  Section ex(table, "exponents");
  c.exponents.p = ex.number("p", Number::parse(c.exponents.p)).to_string();
  c.exponents.b = ex.number("b", Number::parse(c.exponents.b)).to_string();
  if (ex.find("N") != nullptr) c.exponents.dimension = static_cast<int>(ex.integer("N", 3));
  c.exponents.eta = ex.number("eta", Number::parse(c.exponents.eta)).to_string();
  ex.reject_unknown();

  Section verify(table, "verify");
  auto& v = c.verify;
  v.eta = verify.real("eta", v.eta);
  v.family = verify.string("family", v.family);
  v.w_min = verify.real("w_min", v.w_min);
  v.w_max = verify.real("w_max", v.w_max);
  v.count = static_cast<int>(verify.integer("count", v.count));
  v.mass = verify.real("mass", v.mass);
  v.values = verify.reals("values", v.values);
  v.components = static_cast<int>(verify.integer("components", v.components));
  v.exploratory = verify.boolean("exploratory", v.exploratory);
  verify.reject_unknown();

  Section conv(table, "convergence");
  c.convergence.dt_list = conv.reals("dt_list", c.convergence.dt_list);
  conv.reject_unknown();

  Section picard(table, "picard");
  c.picard.horizon = picard.real("T", c.picard.horizon);
  c.picard.iterations = static_cast<int>(picard.integer("iterations", c.picard.iterations));
  c.picard.quad_nodes = static_cast<int>(picard.integer("quad_nodes", c.picard.quad_nodes));
  c.picard.reference_dt = picard.real("reference_dt", c.picard.reference_dt);
  picard.reject_unknown();

  Section sweep(table, "sweep");
  c.sweep.configs = sweep.strings("configs", c.sweep.configs);
  c.sweep.workers = static_cast<int>(sweep.integer("workers", c.sweep.workers));
  sweep.reject_unknown();

  // Module validators, so a bad file fails before any work starts.
  try {
    if (c.params) validate_params(*c.params);
    make_radial_grid(c.grid.dimension, c.grid.radius, c.grid.points);
    validate(c.solver);
  } catch (const Error& e) {
    throw Error(ErrorCode::ValidationError, e.what());
  }

  const auto invalid = [](const std::string& what) { throw Error(ErrorCode::ValidationError, what); };
  if (id.kind != "gaussian" && id.kind != "snapshot") invalid("initial_data.kind must be gaussian or snapshot");
  if (id.kind == "snapshot" && id.snapshot.empty()) invalid("initial_data.snapshot is required for kind = snapshot");
  if (id.kind == "snapshot" && !std::filesystem::exists(resolve_path(c, id.snapshot)))
    invalid("initial_data.snapshot not found: " + resolve_path(c, id.snapshot).string());
  if (!(id.width > 0.0)) invalid("initial_data.width must be positive");
  if (id.zero_energy_factor && !(*id.zero_energy_factor > 0.0)) invalid("initial_data.zero_energy_factor must be positive");
  const auto& fmt = c.outputs.snapshot_format;
  if (fmt != "csv" && fmt != "binary" && fmt != "none") invalid("outputs.snapshot_format must be csv, binary or none");
  if (v.family != "gaussian_width_sweep" && v.family != "amplitude_sweep" && v.family != "random_superposition" &&
      v.family != "scaling")
    invalid("verify.family must be gaussian_width_sweep, amplitude_sweep, random_superposition or scaling");
  if (!(v.eta > 0.0)) invalid("verify.eta must be positive");
  if (v.count < 1) invalid("verify.count must be at least 1");
  if (c.picard.iterations < 2 || c.picard.quad_nodes < 4 || !(c.picard.horizon > 0.0) ||
      !(c.picard.reference_dt > 0.0))
    invalid("picard needs T > 0, iterations >= 2, quad_nodes >= 4, reference_dt > 0");
  if (c.sweep.workers < 1) invalid("sweep.workers must be at least 1");
  if (c.mode == Mode::Sweep && c.sweep.configs.empty()) invalid("sweep.configs is empty");
  const bool free_flow_ok = c.mode == Mode::Simulate || c.mode == Mode::Convergence || c.mode == Mode::PicardCheck;
  const bool needs_params = c.mode == Mode::Classify || c.mode == Mode::VerifyInterpolation ||
                            c.mode == Mode::VerifyKinetic || (free_flow_ok && !c.linear);
  if (c.linear && !free_flow_ok) invalid("linear = true only applies to simulate, convergence and picard-check");
  if (needs_params && !c.params) invalid("mode " + std::string(to_string(c.mode)) + " needs a [params] section");
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  const std::string text = read_file(path);
  ConfigTable table = path.extension() == ".json" ? parse_json_config(text) : parse_toml(text);
  for (const auto& o : overrides) apply_override(table, o);
  auto config = build_config(table, path.has_parent_path() ? path.parent_path() : std::filesystem::path("."));
  config.overrides = overrides;
  return config;
}

ExperimentConfig config_from_overrides(const std::vector<std::string>& overrides) {
  ConfigTable table;
  table[""];
  for (const auto& o : overrides) apply_override(table, o);
  auto config = build_config(table);
  config.overrides = overrides;
  return config;
}

nlohmann::ordered_json to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["mode"] = std::string(to_string(c.mode));
  j["seed"] = c.seed;
  j["linear"] = c.linear;
  if (c.params) {
    const auto& p = *c.params;
    j["params"] = {{"N", p.dimension},          {"lambda1", p.lambda1},       {"lambda2", p.lambda2},
                   {"p1", p.p1.to_string()},    {"p2", p.p2.to_string()},     {"b1", p.b1.to_string()},
                   {"b2", p.b2.to_string()}};
  }
  j["grid"] = {{"N", c.grid.dimension}, {"R", c.grid.radius}, {"M", c.grid.points}};
  const auto& s = c.solver;
  j["solver"] = {{"dt0", s.dt0},
                 {"dt_min", s.dt_min},
                 {"t_end", s.t_end},
                 {"cfl_phase", s.cfl_phase},
                 {"blowup_amp_factor", s.blowup_amp_factor},
                 {"blowup_grad_factor", s.blowup_grad_factor},
                 {"absorbing_mask", s.absorbing_mask},
                 {"sample_stride", s.sample_stride},
                 {"c_large", s.c_large},
                 {"case_v_epsilon", s.case_v_epsilon}};
  const auto& id = c.initial_data;
  nlohmann::ordered_json init{{"kind", id.kind}, {"amplitude", id.amplitude}};
  if (id.zero_energy_factor) init["zero_energy_factor"] = *id.zero_energy_factor;
  init["width"] = id.width;
  init["chirp"] = id.chirp;
  if (!id.snapshot.empty()) init["snapshot"] = id.snapshot;
  j["initial_data"] = init;
  j["outputs"] = {{"directory", c.outputs.directory.generic_string()}, {"snapshot_format", c.outputs.snapshot_format}};
  nlohmann::ordered_json ex{{"p", c.exponents.p}, {"b", c.exponents.b}};
  if (c.exponents.dimension) ex["N"] = *c.exponents.dimension;
  ex["eta"] = c.exponents.eta;
  j["exponents"] = ex;
  const auto& v = c.verify;
  j["verify"] = {{"eta", v.eta},     {"family", v.family}, {"w_min", v.w_min},           {"w_max", v.w_max},
                 {"count", v.count}, {"mass", v.mass},     {"values", v.values},         {"components", v.components},
                 {"exploratory", v.exploratory}};
  j["convergence"] = {{"dt_list", c.convergence.dt_list}};
  j["picard"] = {{"T", c.picard.horizon},
                 {"iterations", c.picard.iterations},
                 {"quad_nodes", c.picard.quad_nodes},
                 {"reference_dt", c.picard.reference_dt}};
  j["sweep"] = {{"configs", c.sweep.configs}, {"workers", c.sweep.workers}};
  if (!c.overrides.empty()) j["overrides"] = c.overrides;
  return j;
}

}  // namespace dinls::app
