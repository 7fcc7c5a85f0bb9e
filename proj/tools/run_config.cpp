#include "run_config.hpp"

#include <fstream>
#include <sstream>

#include "spikesr/error.hpp"
#include "spikesr/experiments.hpp"
#include "spikesr/json_io.hpp"

namespace spikesr::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string scalar_text(const Json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number_float()) return format_double(v.get<double>());
  throw Error(ErrorKind::Parse, "config key '" + key + "' must be a scalar");
}

}  // namespace

KeyValues load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  KeyValues out;
  if (trim(text).starts_with("{")) {
    const Json j = parse_json(text);
    for (const auto& [k, v] : j.items()) out.emplace_back(k, scalar_text(v, k));
    return out;
  }
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || trim(line.substr(0, eq)).empty())
      throw Error(ErrorKind::Parse, path + ":" + std::to_string(lineno) + ": expected key=value");
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::string config;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw Error(ErrorKind::Parse, "--config needs a path");
      config = args[++i];
    } else if (args[i].starts_with("--config=")) {
      config = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (config.empty() || rest.size() < 2) return rest;

  std::vector<std::string> out{rest[0], rest[1]};
  for (const auto& [k, v] : load_config(config)) {
    out.push_back("--" + k);
    out.push_back(v);
  }
  out.insert(out.end(), rest.begin() + 2, rest.end());
  return out;
}

}  // namespace spikesr::cli
