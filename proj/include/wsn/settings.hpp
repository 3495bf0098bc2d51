#ifndef WSN_SETTINGS_HPP_
#define WSN_SETTINGS_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace wsn {

enum class SettingKind { kInt, kUnsigned, kReal, kIntList, kRealList, kBool, kWord, kWordList };

struct SettingSpec {
  std::string_view key;
  SettingKind kind;
  std::string_view default_value;
  std::string_view help;
};

/// Every recognised key with its default. CLI flags are these keys with '_'
/// spelled '-'; a config file holds `key = value` lines.
const std::vector<SettingSpec>& setting_specs();

/// Typed key-value store shared by the CLI, config files and the C API.
/// Unknown keys and unparsable values are rejected at set() time.
class Settings {
 public:
  Settings();

  void set(std::string_view key, std::string_view value);
  const std::string& get(std::string_view key) const;
  bool has_key(std::string_view key) const;

  long long get_int(std::string_view key) const;
  std::uint64_t get_unsigned(std::string_view key) const;
  double get_real(std::string_view key) const;
  bool get_bool(std::string_view key) const;
  std::vector<long long> get_int_list(std::string_view key) const;
  std::vector<double> get_real_list(std::string_view key) const;
  std::vector<std::string> get_word_list(std::string_view key) const;

  /// `key = value` per line; '#' starts a comment.
  void load(std::istream& in);
  void load_file(const std::string& path);

  /// "# key=value" for every key in sorted order.
  void echo(std::ostream& out) const;
  const std::map<std::string, std::string, std::less<>>& values() const noexcept { return values_; }

 private:
  std::map<std::string, std::string, std::less<>> values_;
};

}  // namespace wsn

#endif  // WSN_SETTINGS_HPP_
