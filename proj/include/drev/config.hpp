#ifndef DREV_CONFIG_HPP
#define DREV_CONFIG_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace drev {

// Flat configuration: `key = value` lines, `[section]` headers prefixing the
// keys that follow (`section.key`), `#` comments. Later keys win, so command
// line overrides are just appended.
class RunConfig {
 public:
  static RunConfig parse(const std::string& text);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key,
                         std::optional<std::string> fallback = {}) const;
  double get_double(const std::string& key,
                    std::optional<double> fallback = {}) const;
  int get_int(const std::string& key, std::optional<int> fallback = {}) const;
  bool get_bool(const std::string& key, std::optional<bool> fallback = {}) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }
  std::string serialize() const;

 private:
  std::map<std::string, std::string> kv_;
};

// Thrown on missing/ill-typed keys; maps to the configuration exit code.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace drev

#endif
