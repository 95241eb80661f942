#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ivote {

enum class ErrorKind {
  invalid_alternative_count,
  invalid_alternative,
  invalid_interval,
  invalid_profile,
  cannot_shrink,
  no_such_voter,
  not_disjoint,
  incompatible_profiles,
  invalid_rational,
  overflow,
  invalid_weights,
  invalid_thresholds,
  incompatible_rule,
  not_singleton_domain,
  no_witness,
  not_weakly_single_peaked,
  invalid_weak_order,
  too_large,
  invalid_instance,
  unsupported,
  unknown_fixture,
  parse_error,
  internal,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ivote
