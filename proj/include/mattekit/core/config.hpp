#ifndef MATTEKIT_CORE_CONFIG_HPP_
#define MATTEKIT_CORE_CONFIG_HPP_

#include <map>
#include <string>

namespace mattekit {

/// Layered key-value configuration with dotted keys (e.g. "harmony.epsilon").
///
/// Precedence, lowest to highest: built-in defaults, config file, explicit
/// overrides (command-line flags). The config file is plain text, one
/// `key = value` pair per line, `#` starts a comment.
///
/// Every under-specified constant of the toolkit lives here so that reports
/// can embed the exact conventions a number was produced under.
class Config {
 public:
  Config();

  /// All built-in defaults.
  static const std::map<std::string, std::string>& defaults();

  /// Name of the environment variable holding a config file path.
  static constexpr const char* kEnvVar = "MATTEKIT_CONFIG";

  /// Loads file entries (middle layer). Throws Error(ParseError) on bad lines.
  void load_file(const std::string& path);
  void load_text(const std::string& text, const std::string& origin = "<config>");

  /// Sets a top-priority override (flag layer).
  void set_override(const std::string& key, const std::string& value);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  double get_double(const std::string& key) const;
  int get_int(const std::string& key) const;
  bool get_bool(const std::string& key) const;

  /// Fully merged view (defaults overlaid by file overlaid by overrides).
  std::map<std::string, std::string> effective() const;

 private:
  std::map<std::string, std::string> file_;
  std::map<std::string, std::string> overrides_;
};

}  // namespace mattekit

#endif  // MATTEKIT_CORE_CONFIG_HPP_
