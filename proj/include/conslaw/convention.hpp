#pragma once

#include <optional>
#include <string>
#include <vector>

namespace conslaw {

inline constexpr int kMaxIndependents = 3;

/// An arbitrary function of one independent variable, e.g. f(t).
struct FunctionDecl {
  std::string name;
  int arg = 0;  // index of the independent variable it depends on

  bool operator==(const FunctionDecl&) const = default;
};

/// Names of the independent variables, dependent variables and arbitrary
/// functions. Polynomials refer to these by index; only rendering and parsing
/// need the names.
///
/// Independent variables are single letters so that derivative suffixes such
/// as `u_txx` are unambiguous. All names share one namespace.
class Convention {
 public:
  Convention() = default;
  Convention(std::vector<std::string> independents, std::vector<std::string> dependents,
             std::vector<FunctionDecl> functions = {});

  /// t, x, y; u, w; f(t), g(t), h(t).
  static Convention kp();
  /// kp() plus the adjoint variables v and z.
  static Convention kp_with_adjoints();

  const std::vector<std::string>& independents() const { return independents_; }
  const std::vector<std::string>& dependents() const { return dependents_; }
  const std::vector<FunctionDecl>& functions() const { return functions_; }

  int num_independents() const { return static_cast<int>(independents_.size()); }
  int num_dependents() const { return static_cast<int>(dependents_.size()); }

  std::optional<int> find_independent(const std::string& name) const;
  std::optional<int> find_dependent(const std::string& name) const;
  std::optional<int> find_function(const std::string& name) const;
  bool is_declared(const std::string& name) const;

  /// Appends a dependent variable and returns its index. Throws on collision.
  int add_dependent(const std::string& name);
  int add_independent(const std::string& name);
  int add_function(const std::string& name, int arg);

  bool operator==(const Convention&) const = default;

 private:
  void check_fresh(const std::string& name) const;

  std::vector<std::string> independents_;
  std::vector<std::string> dependents_;
  std::vector<FunctionDecl> functions_;
};

}  // namespace conslaw
