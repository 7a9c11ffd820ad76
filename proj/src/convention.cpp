#include "conslaw/convention.hpp"

#include <algorithm>
#include <cctype>

#include "conslaw/error.hpp"

namespace conslaw {

namespace {

bool valid_identifier(const std::string& name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin(), name.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)); });
}

// Reserved because the expression grammar gives them meaning.
bool reserved(const std::string& name) { return name == "D"; }

template <typename T>
std::optional<int> index_of(const std::vector<T>& items, const std::string& name) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if constexpr (std::is_same_v<T, FunctionDecl>) {
      if (items[i].name == name) return static_cast<int>(i);
    } else {
      if (items[i] == name) return static_cast<int>(i);
    }
  }
  return std::nullopt;
}

}  // namespace

Convention::Convention(std::vector<std::string> independents,
                       std::vector<std::string> dependents,
                       std::vector<FunctionDecl> functions) {
  for (auto& n : independents) add_independent(n);
  for (auto& n : dependents) add_dependent(n);
  for (auto& f : functions) add_function(f.name, f.arg);
}

Convention Convention::kp() {
  return Convention({"t", "x", "y"}, {"u", "w"}, {{"f", 0}, {"g", 0}, {"h", 0}});
}

Convention Convention::kp_with_adjoints() {
  return Convention({"t", "x", "y"}, {"u", "w", "v", "z"}, {{"f", 0}, {"g", 0}, {"h", 0}});
}

std::optional<int> Convention::find_independent(const std::string& name) const {
  return index_of(independents_, name);
}

std::optional<int> Convention::find_dependent(const std::string& name) const {
  return index_of(dependents_, name);
}

std::optional<int> Convention::find_function(const std::string& name) const {
  return index_of(functions_, name);
}

bool Convention::is_declared(const std::string& name) const {
  return find_independent(name) || find_dependent(name) || find_function(name);
}

void Convention::check_fresh(const std::string& name) const {
  if (!valid_identifier(name) || reserved(name)) {
    throw Error("invalid variable name '" + name + "'");
  }
  if (is_declared(name)) throw Error("name '" + name + "' is already declared");
}

int Convention::add_independent(const std::string& name) {
  check_fresh(name);
  if (name.size() != 1) {
    throw Error("independent variable '" + name + "' must be a single letter");
  }
  if (num_independents() == kMaxIndependents) {
    throw Error("at most " + std::to_string(kMaxIndependents) + " independent variables");
  }
  independents_.push_back(name);
  return num_independents() - 1;
}

int Convention::add_dependent(const std::string& name) {
  check_fresh(name);
  dependents_.push_back(name);
  return num_dependents() - 1;
}

int Convention::add_function(const std::string& name, int arg) {
  check_fresh(name);
  if (arg < 0 || arg >= num_independents()) {
    throw Error("function '" + name + "' depends on an undeclared variable");
  }
  functions_.push_back({name, arg});
  return static_cast<int>(functions_.size()) - 1;
}

}  // namespace conslaw
