#pragma once

#include <map>
#include <string>

#include "coaxheat/assembly.hpp"
#include "coaxheat/integrate.hpp"

namespace coaxheat {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parsed run configuration. The file format is flat INI: [section]
/// headers and key = value lines; values are numbers or quoted expression
/// strings; '#' and ';' start comments. Unknown keys are an error.
struct RunConfig {
  std::map<std::string, std::string> problem;  // raw ProblemSpec values

  int m = 8;
  double dt = 1e-3;
  Scheme scheme = Scheme::CrankNicolson;
  int quad_nodes = 0;  // 0: use the reference rule for m
  int x_points = 129;  // spatial resolution of exported fields

  SignConvention sign = SignConvention::Eq9;
  std::string out_dir = ".";
  double margin_tol = 1e-8;  // relative slack for inequality margins
};

RunConfig load_config(const std::string& path);

/// Parse INI text (exposed separately for tests and bindings).
RunConfig parse_config_text(const std::string& text,
                            const std::string& origin = "<string>");

}  // namespace coaxheat
