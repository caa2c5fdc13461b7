#include "ggcport/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace ggcport::config {

namespace {

// Shortest decimal that round-trips; keeps canonical documents readable.
std::string format_number(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct RawEntry {
  std::string value;
  std::size_t line = 0;
  bool consumed = false;
};

struct RawSection {
  std::map<std::string, RawEntry> entries;
  std::size_t line = 0;
  bool consumed = false;
};

struct RawDocument {
  std::map<std::string, RawSection> sections;
};

class Collector {
 public:
  void add(const std::string& path, const std::string& message) {
    errors_.push_back({path, message});
  }
  void add_line(std::size_t line, const std::string& message) {
    errors_.push_back({"line " + std::to_string(line), message});
  }
  bool empty() const { return errors_.empty(); }
  std::vector<FieldError> take() { return std::move(errors_); }

 private:
  std::vector<FieldError> errors_;
};

RawDocument tokenize(const std::string& text, Collector& errors) {
  RawDocument doc;
  std::istringstream stream(text);
  std::string line;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    if (stripped.front() == '[') {
      if (stripped.back() != ']' || stripped.size() < 3) {
        errors.add_line(line_no, "malformed section header");
        continue;
      }
      section = trim(stripped.substr(1, stripped.size() - 2));
      if (doc.sections.count(section)) {
        errors.add_line(line_no, "duplicate section [" + section + "]");
      } else {
        doc.sections[section].line = line_no;
      }
      continue;
    }
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      errors.add_line(line_no, "expected key = value");
      continue;
    }
    if (section.empty()) {
      errors.add_line(line_no, "key outside any section");
      continue;
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      errors.add_line(line_no, "empty key");
      continue;
    }
    auto& sec = doc.sections[section];
    if (sec.entries.count(key)) {
      errors.add_line(line_no, "duplicate key '" + key + "' in [" + section + "]");
    } else {
      sec.entries[key] = RawEntry{value, line_no, false};
    }
  }
  return doc;
}

// --- value parsing -------------------------------------------------------

bool parse_double(const std::string& s, double& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size();
}

bool parse_vector(const std::string& s, std::vector<double>& out) {
  const std::string t = trim(s);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') return false;
  out.clear();
  std::string inner = t.substr(1, t.size() - 2);
  if (trim(inner).empty()) return true;
  std::size_t pos = 0;
  while (pos <= inner.size()) {
    const std::size_t comma = inner.find(',', pos);
    const std::string item =
        comma == std::string::npos ? inner.substr(pos) : inner.substr(pos, comma - pos);
    double v;
    if (!parse_double(item, v)) return false;
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return true;
}

bool parse_matrix(const std::string& s, std::vector<std::vector<double>>& out) {
  const std::string t = trim(s);
  if (t.size() < 4 || t.front() != '[' || t.back() != ']') return false;
  out.clear();
  const std::string inner = trim(t.substr(1, t.size() - 2));
  if (inner.empty()) return true;
  // split on top-level '],' boundaries
  std::size_t pos = 0;
  int depth = 0;
  std::size_t row_start = std::string::npos;
  for (; pos < inner.size(); ++pos) {
    const char c = inner[pos];
    if (c == '[') {
      if (depth == 0) row_start = pos;
      ++depth;
      if (depth > 1) return false;
    } else if (c == ']') {
      --depth;
      if (depth < 0) return false;
      if (depth == 0) {
        std::vector<double> row;
        if (!parse_vector(inner.substr(row_start, pos - row_start + 1), row)) return false;
        out.push_back(std::move(row));
      }
    } else if (depth == 0 && c != ',' && !std::isspace(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return depth == 0 && !out.empty();
}

// --- section readers ------------------------------------------------------

class SectionReader {
 public:
  SectionReader(RawDocument& doc, const std::string& name, Collector& errors)
      : name_(name), errors_(errors) {
    auto it = doc.sections.find(name);
    if (it != doc.sections.end()) {
      section_ = &it->second;
      section_->consumed = true;
    }
  }

  bool present() const { return section_ != nullptr; }

  std::optional<std::string> raw(const std::string& key) {
    if (!section_) return std::nullopt;
    auto it = section_->entries.find(key);
    if (it == section_->entries.end()) return std::nullopt;
    it->second.consumed = true;
    return it->second.value;
  }

  std::optional<double> number(const std::string& key) {
    const auto v = raw(key);
    if (!v) return std::nullopt;
    double out;
    if (!parse_double(*v, out)) {
      errors_.add(path(key), "expected a number, got '" + *v + "'");
      return std::nullopt;
    }
    return out;
  }

  std::optional<std::vector<double>> vector(const std::string& key) {
    const auto v = raw(key);
    if (!v) return std::nullopt;
    std::vector<double> out;
    if (!parse_vector(*v, out)) {
      errors_.add(path(key), "expected a bracketed list, got '" + *v + "'");
      return std::nullopt;
    }
    return out;
  }

  std::optional<std::vector<std::vector<double>>> matrix(const std::string& key) {
    const auto v = raw(key);
    if (!v) return std::nullopt;
    std::vector<std::vector<double>> out;
    if (!parse_matrix(*v, out)) {
      errors_.add(path(key), "expected a list of bracketed rows, got '" + *v + "'");
      return std::nullopt;
    }
    return out;
  }

  void require(const std::string& key) {
    if (section_ && !section_->entries.count(key))
      errors_.add(path(key), "required key missing");
  }

  void finish() {
    if (!section_) return;
    for (const auto& [key, entry] : section_->entries) {
      if (!entry.consumed)
        errors_.add(path(key), "unknown key");
    }
  }

  std::string path(const std::string& key) const { return name_ + "." + key; }
  Collector& errors() { return errors_; }

 private:
  std::string name_;
  RawSection* section_ = nullptr;
  Collector& errors_;
};

std::optional<MixingLaw> read_law(RawDocument& doc, const std::string& section,
                                  Collector& errors) {
  SectionReader r(doc, section, errors);
  if (!r.present()) return std::nullopt;
  const auto type = r.raw("type");
  if (!type) {
    errors.add(section + ".type", "required key missing");
    r.finish();
    return std::nullopt;
  }
  std::optional<MixingLaw> law;
  if (*type == "finite_gamma_convolution") {
    const double tau = r.number("tau").value_or(0.0);
    auto rows = r.matrix("components");
    if (!rows) {
      errors.add(section + ".components", "required key missing or malformed");
    } else {
      bool ok = true;
      std::vector<GammaComponent> comps;
      for (std::size_t i = 0; i < rows->size(); ++i) {
        const auto& row = (*rows)[i];
        const std::string base = section + ".components[" + std::to_string(i) + "]";
        if (row.size() != 2) {
          errors.add(base, "expected [alpha, beta]");
          ok = false;
          continue;
        }
        if (!(row[0] > 0.0) || !std::isfinite(row[0])) {
          errors.add(base + ".alpha", "must be finite and > 0");
          ok = false;
        }
        if (!(row[1] > 0.0) || !std::isfinite(row[1])) {
          errors.add(base + ".beta", "must be finite and > 0");
          ok = false;
        }
        if (ok) comps.push_back({row[0], row[1]});
      }
      if (!(tau >= 0.0) || !std::isfinite(tau)) {
        errors.add(section + ".tau", "must be finite and >= 0");
        ok = false;
      }
      if (rows->empty()) {
        errors.add(section + ".components", "needs at least one component");
        ok = false;
      }
      if (ok && !comps.empty()) law = FiniteGammaConvolution(tau, std::move(comps));
    }
  } else if (*type == "atomic_ggc") {
    const double tau = r.number("tau").value_or(0.0);
    auto rows = r.matrix("atoms");
    if (!rows) {
      errors.add(section + ".atoms", "required key missing or malformed");
    } else {
      bool ok = true;
      std::vector<ThorinAtom> atoms;
      for (std::size_t i = 0; i < rows->size(); ++i) {
        const auto& row = (*rows)[i];
        const std::string base = section + ".atoms[" + std::to_string(i) + "]";
        if (row.size() != 2) {
          errors.add(base, "expected [location, weight]");
          ok = false;
          continue;
        }
        if (!(row[0] > 0.0) || !std::isfinite(row[0])) {
          errors.add(base + ".location", "must be finite and > 0");
          ok = false;
        }
        if (!(row[1] > 0.0) || !std::isfinite(row[1])) {
          errors.add(base + ".weight", "must be finite and > 0");
          ok = false;
        }
        if (ok) atoms.push_back({row[0], row[1]});
      }
      if (!(tau >= 0.0) || !std::isfinite(tau)) {
        errors.add(section + ".tau", "must be finite and >= 0");
        ok = false;
      }
      if (rows->empty()) {
        errors.add(section + ".atoms", "needs at least one atom");
        ok = false;
      }
      if (ok && !atoms.empty()) law = AtomicGgc(ThorinPair(tau, std::move(atoms)));
    }
  } else if (*type == "gig") {
    const auto lambda = r.number("lambda");
    const auto a = r.number("a");
    const auto b = r.number("b");
    bool ok = true;
    if (!lambda) {
      errors.add(section + ".lambda", "required key missing");
      ok = false;
    }
    if (!a || !(*a > 0.0)) {
      errors.add(section + ".a", a ? "must be > 0" : "required key missing");
      ok = false;
    }
    if (!b || !(*b > 0.0)) {
      errors.add(section + ".b", b ? "must be > 0" : "required key missing");
      ok = false;
    }
    if (ok) law = Gig(*lambda, *a, *b);
  } else {
    errors.add(section + ".type",
               "unknown law type '" + *type +
                   "' (expected finite_gamma_convolution, gig or atomic_ggc)");
  }
  r.finish();
  return law;
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

std::optional<Eigen::MatrixXd> to_eigen_matrix(const std::vector<std::vector<double>>& rows,
                                               const std::string& path, Collector& errors) {
  if (rows.empty()) {
    errors.add(path, "matrix must be nonempty");
    return std::nullopt;
  }
  const std::size_t cols = rows.front().size();
  for (const auto& row : rows) {
    if (row.size() != cols) {
      errors.add(path, "matrix rows must have equal length");
      return std::nullopt;
    }
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return out;
}

std::optional<ModelSection> read_model(RawDocument& doc, Collector& errors) {
  SectionReader r(doc, "model", errors);
  if (!r.present()) return std::nullopt;
  auto mu = r.vector("mu");
  auto gamma = r.vector("gamma");
  auto a = r.matrix("a_matrix");
  r.finish();
  if (!mu) errors.add("model.mu", "required key missing or malformed");
  if (!gamma) errors.add("model.gamma", "required key missing or malformed");
  if (!a) errors.add("model.a_matrix", "required key missing or malformed");
  if (!mu || !gamma || !a) return std::nullopt;
  auto a_mat = to_eigen_matrix(*a, "model.a_matrix", errors);
  if (!a_mat) return std::nullopt;
  ModelSection out{to_eigen(*mu), to_eigen(*gamma), *a_mat};
  const auto d = out.mu.size();
  if (out.gamma_vec.size() != d)
    errors.add("model.gamma", "dimension does not match mu");
  if (out.a_matrix.rows() != d || out.a_matrix.cols() != d)
    errors.add("model.a_matrix", "must be square and match mu's dimension");
  return out;
}

std::optional<MarketSpec> read_market(RawDocument& doc, Collector& errors) {
  SectionReader r(doc, "market", errors);
  if (!r.present()) return std::nullopt;
  MarketSpec spec;
  const auto rf = r.number("r_f");
  const auto a = r.number("risk_aversion");
  const auto w0 = r.number("initial_wealth");
  r.finish();
  if (!rf) errors.add("market.r_f", "required key missing");
  if (!a) errors.add("market.risk_aversion", "required key missing");
  if (!w0) errors.add("market.initial_wealth", "required key missing");
  if (!rf || !a || !w0) return std::nullopt;
  spec.r_f = *rf;
  spec.risk_aversion = *a;
  spec.initial_wealth = *w0;
  if (!(spec.risk_aversion > 0.0)) errors.add("market.risk_aversion", "must be > 0");
  if (!(spec.initial_wealth > 0.0)) errors.add("market.initial_wealth", "must be > 0");
  return spec;
}

const std::map<std::string, LawPathKind> kLawPathNames = {
    {"scale_drift", LawPathKind::scale_drift},
    {"shape_drift", LawPathKind::shape_drift},
    {"drift_shift", LawPathKind::drift_shift},
    {"gig_path", LawPathKind::gig_path},
};

std::string law_path_name(LawPathKind kind) {
  for (const auto& [name, k] : kLawPathNames)
    if (k == kind) return name;
  return "scale_drift";
}

std::optional<ScheduleSection> read_schedule(RawDocument& doc, Collector& errors) {
  SectionReader r(doc, "schedule", errors);
  if (!r.present()) return std::nullopt;
  ScheduleSection out;
  const auto steps = r.number("steps");
  const auto decay = r.number("decay");
  auto dmu = r.vector("dmu");
  auto dgamma = r.vector("dgamma");
  auto da = r.matrix("da");
  const auto kind = r.raw("law_path");
  auto coeffs = r.vector("law_path_coefficients");
  r.finish();
  bool ok = true;
  if (!steps || *steps < 1 || *steps != std::floor(*steps)) {
    errors.add("schedule.steps", "must be a positive integer");
    ok = false;
  }
  if (!decay || !(*decay > 0.0 && *decay < 1.0)) {
    errors.add("schedule.decay", "must lie in (0, 1)");
    ok = false;
  }
  if (!dmu) {
    errors.add("schedule.dmu", "required key missing or malformed");
    ok = false;
  }
  if (!dgamma) {
    errors.add("schedule.dgamma", "required key missing or malformed");
    ok = false;
  }
  if (!da) {
    errors.add("schedule.da", "required key missing or malformed");
    ok = false;
  }
  if (!kind || !kLawPathNames.count(*kind)) {
    errors.add("schedule.law_path", "must be one of scale_drift, shape_drift, drift_shift, gig_path");
    ok = false;
  }
  if (!coeffs || coeffs->empty()) {
    errors.add("schedule.law_path_coefficients", "required nonempty list");
    ok = false;
  }
  if (!ok) return std::nullopt;
  auto da_mat = to_eigen_matrix(*da, "schedule.da", errors);
  if (!da_mat) return std::nullopt;
  out.steps = static_cast<std::size_t>(*steps);
  out.decay = *decay;
  out.dmu = to_eigen(*dmu);
  out.dgamma = to_eigen(*dgamma);
  out.da = *da_mat;
  out.law_path_kind = kLawPathNames.at(*kind);
  out.law_path_coefficients = *coeffs;
  return out;
}

std::optional<ToleranceSpec> read_tolerances(RawDocument& doc, Collector& errors) {
  SectionReader r(doc, "tolerances", errors);
  if (!r.present()) return std::nullopt;
  ToleranceSpec spec;
  if (const auto v = r.number("tol_mean")) spec.tol_mean = *v;
  if (const auto v = r.number("tol_in")) spec.tol_in = *v;
  if (const auto v = r.number("tol_laplace")) spec.tol_laplace = *v;
  if (const auto v = r.number("tol_distance")) spec.tol_distance = *v;
  if (const auto v = r.number("tol_portfolio")) spec.tol_portfolio = *v;
  if (const auto v = r.number("tol_qmin")) spec.tol_qmin = *v;
  r.finish();
  return spec;
}

}  // namespace

config_error::config_error(std::vector<FieldError> errors)
    : std::runtime_error([&errors] {
        std::string msg = "config validation failed:";
        for (const auto& e : errors) msg += "\n  " + e.path + ": " + e.message;
        return msg;
      }()),
      errors_(std::move(errors)) {}

std::string command_name(Command c) {
  switch (c) {
    case Command::laplace: return "laplace";
    case Command::mean: return "mean";
    case Command::density: return "density";
    case Command::distance: return "distance";
    case Command::optimize: return "optimize";
    case Command::sweep: return "sweep";
    case Command::sample: return "sample";
  }
  return "mean";
}

std::optional<Command> command_from_name(const std::string& name) {
  static const std::map<std::string, Command> table = {
      {"laplace", Command::laplace},   {"mean", Command::mean},
      {"density", Command::density},   {"distance", Command::distance},
      {"optimize", Command::optimize}, {"sweep", Command::sweep},
      {"sample", Command::sample},
  };
  const auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

NmvmModel RunConfig::make_model() const {
  if (!model || !law)
    throw std::logic_error("RunConfig::make_model: model and law sections required");
  return NmvmModel{model->mu, model->gamma_vec, model->a_matrix, *law};
}

RunConfig parse_config(const std::string& text) {
  Collector errors;
  RawDocument doc = tokenize(text, errors);

  RunConfig cfg;
  {
    SectionReader r(doc, "run", errors);
    if (!r.present()) {
      errors.add("run", "required section missing");
    } else {
      const auto cmd = r.raw("command");
      if (!cmd) {
        errors.add("run.command", "required key missing");
      } else if (const auto parsed = command_from_name(*cmd)) {
        cfg.command = *parsed;
      } else {
        errors.add("run.command", "unknown command '" + *cmd + "'");
      }
      if (const auto seed = r.number("seed")) {
        if (*seed < 0 || *seed != std::floor(*seed))
          errors.add("run.seed", "must be a nonnegative integer");
        else
          cfg.seed = static_cast<std::uint64_t>(*seed);
      }
      if (const auto out = r.raw("output")) cfg.output = *out;
      if (const auto fmt = r.raw("format")) {
        if (*fmt == "csv")
          cfg.format = OutputFormat::csv;
        else if (*fmt == "text")
          cfg.format = OutputFormat::text;
        else
          errors.add("run.format", "must be csv or text");
      }
      if (const auto sv = r.vector("s_values")) cfg.s_values = *sv;
      if (const auto xv = r.vector("x_values")) cfg.x_values = *xv;
      if (const auto cnt = r.number("count")) {
        if (*cnt < 1 || *cnt != std::floor(*cnt))
          errors.add("run.count", "must be a positive integer");
        else
          cfg.count = static_cast<std::size_t>(*cnt);
      }
      r.finish();
    }
  }

  cfg.law = read_law(doc, "law", errors);
  cfg.law2 = read_law(doc, "law2", errors);
  cfg.model = read_model(doc, errors);
  cfg.market = read_market(doc, errors);
  cfg.schedule = read_schedule(doc, errors);
  cfg.tolerances = read_tolerances(doc, errors);

  for (const auto& [name, section] : doc.sections) {
    if (!section.consumed)
      errors.add(name, "unknown section");
  }

  // command-specific requirements
  const auto need = [&](bool present, const std::string& what) {
    if (!present) errors.add(what, "required for command " + command_name(cfg.command));
  };
  switch (cfg.command) {
    case Command::laplace:
      need(cfg.law.has_value(), "law");
      need(!cfg.s_values.empty(), "run.s_values");
      break;
    case Command::mean:
      need(cfg.law.has_value(), "law");
      break;
    case Command::density:
      need(cfg.law.has_value(), "law");
      need(!cfg.x_values.empty(), "run.x_values");
      for (std::size_t i = 0; i < cfg.x_values.size(); ++i)
        if (!(cfg.x_values[i] > 0.0))
          errors.add("run.x_values[" + std::to_string(i) + "]", "must be > 0");
      break;
    case Command::distance:
      need(cfg.law.has_value(), "law");
      need(cfg.law2.has_value(), "law2");
      break;
    case Command::optimize:
      need(cfg.law.has_value(), "law");
      need(cfg.model.has_value(), "model");
      need(cfg.market.has_value(), "market");
      break;
    case Command::sweep:
      need(cfg.law.has_value(), "law");
      need(cfg.model.has_value(), "model");
      need(cfg.market.has_value(), "market");
      need(cfg.schedule.has_value(), "schedule");
      break;
    case Command::sample:
      need(cfg.law.has_value(), "law");
      need(cfg.count >= 1, "run.count");
      break;
  }

  if (!errors.empty()) throw config_error(errors.take());
  return cfg;
}

std::string serialize_law_section(const MixingLaw& law, const std::string& section_name) {
  std::string out = "[" + section_name + "]\n";
  out += "type = " + law_kind(law) + "\n";
  if (std::holds_alternative<FiniteGammaConvolution>(law)) {
    const auto& l = std::get<FiniteGammaConvolution>(law);
    out += "tau = " + format_number(l.tau()) + "\n";
    out += "components = [";
    for (std::size_t i = 0; i < l.components().size(); ++i) {
      if (i) out += ", ";
      out += "[" + format_number(l.components()[i].shape) + ", " +
             format_number(l.components()[i].scale) + "]";
    }
    out += "]\n";
  } else if (std::holds_alternative<AtomicGgc>(law)) {
    const auto& l = std::get<AtomicGgc>(law);
    out += "tau = " + format_number(l.generator().tau()) + "\n";
    out += "atoms = [";
    for (std::size_t i = 0; i < l.generator().atoms().size(); ++i) {
      if (i) out += ", ";
      out += "[" + format_number(l.generator().atoms()[i].location) + ", " +
             format_number(l.generator().atoms()[i].weight) + "]";
    }
    out += "]\n";
  } else {
    const auto& l = std::get<Gig>(law);
    out += "lambda = " + format_number(l.lambda()) + "\n";
    out += "a = " + format_number(l.a()) + "\n";
    out += "b = " + format_number(l.b()) + "\n";
  }
  return out;
}

namespace {

std::string serialize_vector(const Eigen::VectorXd& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_number(v(i));
  }
  return out + "]";
}

std::string serialize_matrix(const Eigen::MatrixXd& m) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) out += ", ";
    out += "[";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += format_number(m(i, j));
    }
    out += "]";
  }
  return out + "]";
}

std::string serialize_list(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += format_number(v[i]);
  }
  return out + "]";
}

}  // namespace

std::string serialize_config(const RunConfig& cfg) {
  std::string out = "[run]\n";
  out += "command = " + command_name(cfg.command) + "\n";
  out += "seed = " + std::to_string(cfg.seed) + "\n";
  if (!cfg.output.empty()) out += "output = " + cfg.output + "\n";
  out += std::string("format = ") + (cfg.format == OutputFormat::csv ? "csv" : "text") + "\n";
  if (!cfg.s_values.empty()) out += "s_values = " + serialize_list(cfg.s_values) + "\n";
  if (!cfg.x_values.empty()) out += "x_values = " + serialize_list(cfg.x_values) + "\n";
  if (cfg.count > 0) out += "count = " + std::to_string(cfg.count) + "\n";

  if (cfg.market) {
    out += "\n[market]\n";
    out += "r_f = " + format_number(cfg.market->r_f) + "\n";
    out += "risk_aversion = " + format_number(cfg.market->risk_aversion) + "\n";
    out += "initial_wealth = " + format_number(cfg.market->initial_wealth) + "\n";
  }
  if (cfg.model) {
    out += "\n[model]\n";
    out += "mu = " + serialize_vector(cfg.model->mu) + "\n";
    out += "gamma = " + serialize_vector(cfg.model->gamma_vec) + "\n";
    out += "a_matrix = " + serialize_matrix(cfg.model->a_matrix) + "\n";
  }
  if (cfg.law) out += "\n" + serialize_law_section(*cfg.law, "law");
  if (cfg.law2) out += "\n" + serialize_law_section(*cfg.law2, "law2");
  if (cfg.schedule) {
    out += "\n[schedule]\n";
    out += "steps = " + std::to_string(cfg.schedule->steps) + "\n";
    out += "decay = " + format_number(cfg.schedule->decay) + "\n";
    out += "dmu = " + serialize_vector(cfg.schedule->dmu) + "\n";
    out += "dgamma = " + serialize_vector(cfg.schedule->dgamma) + "\n";
    out += "da = " + serialize_matrix(cfg.schedule->da) + "\n";
    out += "law_path = " + law_path_name(cfg.schedule->law_path_kind) + "\n";
    out += "law_path_coefficients = " + serialize_list(cfg.schedule->law_path_coefficients) +
           "\n";
  }
  if (cfg.tolerances) {
    out += "\n[tolerances]\n";
    out += "tol_mean = " + format_number(cfg.tolerances->tol_mean) + "\n";
    out += "tol_in = " + format_number(cfg.tolerances->tol_in) + "\n";
    out += "tol_laplace = " + format_number(cfg.tolerances->tol_laplace) + "\n";
    out += "tol_distance = " + format_number(cfg.tolerances->tol_distance) + "\n";
    out += "tol_portfolio = " + format_number(cfg.tolerances->tol_portfolio) + "\n";
    out += "tol_qmin = " + format_number(cfg.tolerances->tol_qmin) + "\n";
  }
  return out;
}

}  // namespace ggcport::config
