#include "coaxheat/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace coaxheat {

namespace {

const std::set<std::string> kProblemKeys = {
    "E_f", "E_s", "E_g", "E_p", "K_1", "K_2", "K_3", "K_4", "K_5", "K_6",
    "S_f", "S_s", "S_g", "S_p", "T0_f", "T0_s", "T0_g", "T0_p",
    "f_f", "f_g", "f_0", "g_0", "horizon", "eps_E"};

const std::set<std::string> kDiscretizationKeys = {
    "m", "dt", "scheme", "quad_nodes", "x_points"};

const std::set<std::string> kRunKeys = {"sign_convention", "out_dir",
                                        "margin_tol"};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\'')))
    return s.substr(1, s.size() - 2);
  return s;
}

int to_int(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    int v = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "' is not an integer: '" + value + "'");
  }
}

double to_double(const std::string& value, const std::string& key) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "' is not a number: '" + value + "'");
  }
}

}  // namespace

RunConfig parse_config_text(const std::string& text,
                            const std::string& origin) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;

  auto fail = [&](const std::string& msg) {
    throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++lineno;
    // Strip comments outside quotes.
    bool in_quote = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"' || line[i] == '\'') in_quote = !in_quote;
      if (!in_quote && (line[i] == '#' || line[i] == ';')) {
        line.resize(i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail("malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "problem" && section != "discretization" &&
          section != "run")
        fail("unknown section [" + section + "]");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = unquote(trim(line.substr(eq + 1)));
    if (section.empty()) fail("key '" + key + "' outside any section");

    if (section == "problem") {
      if (!kProblemKeys.count(key)) fail("unknown problem key '" + key + "'");
      if (cfg.problem.count(key)) fail("duplicate key '" + key + "'");
      cfg.problem[key] = value;
    } else if (section == "discretization") {
      if (!kDiscretizationKeys.count(key))
        fail("unknown discretization key '" + key + "'");
      if (key == "m") cfg.m = to_int(value, key);
      else if (key == "dt") cfg.dt = to_double(value, key);
      else if (key == "quad_nodes") cfg.quad_nodes = to_int(value, key);
      else if (key == "x_points") cfg.x_points = to_int(value, key);
      else if (key == "scheme") {
        try {
          cfg.scheme = scheme_from_name(value);
        } catch (const std::exception& e) {
          fail(e.what());
        }
      }
    } else {  // run
      if (!kRunKeys.count(key)) fail("unknown run key '" + key + "'");
      if (key == "out_dir") cfg.out_dir = value;
      else if (key == "margin_tol") cfg.margin_tol = to_double(value, key);
      else if (key == "sign_convention") {
        if (value == "eq9") cfg.sign = SignConvention::Eq9;
        else if (value == "paper-block") cfg.sign = SignConvention::PaperBlock;
        else fail("sign_convention must be 'eq9' or 'paper-block'");
      }
    }
  }

  if (cfg.m < 1 || cfg.m > 256)
    throw ConfigError(origin + ": m must be in [1, 256]");
  if (cfg.dt <= 0.0) throw ConfigError(origin + ": dt must be positive");
  if (cfg.x_points < 2)
    throw ConfigError(origin + ": x_points must be at least 2");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

}  // namespace coaxheat
