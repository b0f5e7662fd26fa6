#include "graphflow/errors.hpp"
#include "graphflow/superpoly.hpp"

#include <cctype>
#include <mutex>
#include <shared_mutex>

namespace graphflow {

namespace {

struct Registry {
  std::shared_mutex mutex;
  std::vector<std::pair<std::string, SymbolKind>> symbols;
  std::map<std::string, int, std::less<>> ids;
};

Registry& registry() {
  static Registry r;
  return r;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

bool valid_name(std::string_view name) {
  if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
  for (char c : name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

}  // namespace

int register_symbol(std::string_view name, SymbolKind kind) {
  if (!valid_name(name)) throw InputError("invalid symbol name '" + std::string(name) + "'");
  if ((name[0] == 'x' && all_digits(name.substr(1))) || (name.substr(0, 2) == "xi" && all_digits(name.substr(2))) ||
      name == "d")
    throw InputError("symbol name '" + std::string(name) + "' is reserved");
  Registry& r = registry();
  {
    std::shared_lock lock(r.mutex);
    if (auto it = r.ids.find(name); it != r.ids.end()) {
      if (r.symbols[it->second].second != kind)
        throw InputError("symbol '" + std::string(name) + "' already used with another kind");
      return it->second;
    }
  }
  std::unique_lock lock(r.mutex);
  if (auto it = r.ids.find(name); it != r.ids.end()) {
    if (r.symbols[it->second].second != kind)
      throw InputError("symbol '" + std::string(name) + "' already used with another kind");
    return it->second;
  }
  if (r.symbols.size() >= 1024) throw ResourceError("too many symbols");
  int id = static_cast<int>(r.symbols.size());
  r.symbols.emplace_back(std::string(name), kind);
  r.ids.emplace(std::string(name), id);
  return id;
}

std::optional<int> find_symbol(std::string_view name) {
  Registry& r = registry();
  std::shared_lock lock(r.mutex);
  if (auto it = r.ids.find(name); it != r.ids.end()) return it->second;
  return std::nullopt;
}

std::string symbol_name(int id) {
  Registry& r = registry();
  std::shared_lock lock(r.mutex);
  return r.symbols.at(id).first;
}

SymbolKind symbol_kind(int id) {
  Registry& r = registry();
  std::shared_lock lock(r.mutex);
  return r.symbols.at(id).second;
}

}  // namespace graphflow
