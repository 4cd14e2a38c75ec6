#include "drev/config.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace drev {

namespace {
std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}
}  // namespace

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key");
    if (!section.empty() && key.find('.') == std::string::npos)
      key = section + "." + key;
    cfg.kv_[key] = value;
  }
  return cfg;
}

void RunConfig::set(const std::string& key, const std::string& value) {
  kv_[key] = value;
}

bool RunConfig::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string RunConfig::get_string(const std::string& key,
                                  std::optional<std::string> fallback) const {
  auto it = kv_.find(key);
  if (it != kv_.end()) return it->second;
  if (fallback) return *fallback;
  throw ConfigError("missing config key: " + key);
}

double RunConfig::get_double(const std::string& key,
                             std::optional<double> fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) {
    if (fallback) return *fallback;
    throw ConfigError("missing config key: " + key);
  }
  try {
    size_t pos = 0;
    double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + " is not a number: " + it->second);
  }
}

int RunConfig::get_int(const std::string& key,
                       std::optional<int> fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) {
    if (fallback) return *fallback;
    throw ConfigError("missing config key: " + key);
  }
  try {
    size_t pos = 0;
    int v = std::stoi(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key +
                      " is not an integer: " + it->second);
  }
}

bool RunConfig::get_bool(const std::string& key,
                         std::optional<bool> fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) {
    if (fallback) return *fallback;
    throw ConfigError("missing config key: " + key);
  }
  std::string v = it->second;
  std::transform(v.begin(), v.end(), v.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config key " + key + " is not a boolean: " + it->second);
}

std::string RunConfig::serialize() const {
  std::ostringstream os;
  for (const auto& [k, v] : kv_) os << k << " = " << v << "\n";
  return os.str();
}

}  // namespace drev
