#include "ivote/error.hpp"

namespace ivote {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_alternative_count: return "invalid-alternative-count";
    case ErrorKind::invalid_alternative: return "invalid-alternative";
    case ErrorKind::invalid_interval: return "invalid-interval";
    case ErrorKind::invalid_profile: return "invalid-profile";
    case ErrorKind::cannot_shrink: return "cannot-shrink";
    case ErrorKind::no_such_voter: return "no-such-voter";
    case ErrorKind::not_disjoint: return "not-disjoint";
    case ErrorKind::incompatible_profiles: return "incompatible-profiles";
    case ErrorKind::invalid_rational: return "invalid-rational";
    case ErrorKind::overflow: return "overflow";
    case ErrorKind::invalid_weights: return "invalid-weights";
    case ErrorKind::invalid_thresholds: return "invalid-thresholds";
    case ErrorKind::incompatible_rule: return "incompatible-rule";
    case ErrorKind::not_singleton_domain: return "not-singleton-domain";
    case ErrorKind::no_witness: return "no-witness";
    case ErrorKind::not_weakly_single_peaked: return "not-weakly-single-peaked";
    case ErrorKind::invalid_weak_order: return "invalid-weak-order";
    case ErrorKind::too_large: return "too-large";
    case ErrorKind::invalid_instance: return "invalid-instance";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::unknown_fixture: return "unknown-fixture";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

}  // namespace ivote
