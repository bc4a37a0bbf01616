#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "holodual/domain.hpp"
#include "holodual/quadrature.hpp"

namespace holodual {

enum class Status { pass, fail, inconclusive };

inline std::string status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::inconclusive: return "inconclusive";
  }
  return "?";
}

// Self-contained result of one verification experiment: every metric used by
// the status has a recorded tolerance, and the config suffices to re-run.
struct VerificationReport {
  std::string test_id;
  Status status = Status::inconclusive;
  std::map<std::string, double> metrics;
  std::map<std::string, double> tolerances;
  std::optional<DomainSpec> domain;
  std::optional<QuadratureSpec> quadrature;
  std::uint64_t seed = 0;
  std::string note;
};

}  // namespace holodual
