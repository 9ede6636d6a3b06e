#pragma once

#include <stdexcept>
#include <string>

namespace warpgeo {

enum class errc {
  invalid_argument,
  invalid_frame,
  invalid_configuration,
  domain_error,
  numeric_error,
  invalid_spectrum,
  out_of_range,
  no_seed_found,
  inconsistent_seed,
  focal_singularity,
  degenerate_spectrum,
  not_ideal,
  degenerate_chart,
  unstable_differencing,
  mismatch,
  invalid_partition,
  no_solution,
  parse_error,
  io_error,
};

inline const char* errc_name(errc k) {
  switch (k) {
    case errc::invalid_argument: return "invalid-argument";
    case errc::invalid_frame: return "invalid-frame";
    case errc::invalid_configuration: return "invalid-configuration";
    case errc::domain_error: return "domain-error";
    case errc::numeric_error: return "numeric-error";
    case errc::invalid_spectrum: return "invalid-spectrum";
    case errc::out_of_range: return "out-of-range";
    case errc::no_seed_found: return "no-seed-found";
    case errc::inconsistent_seed: return "inconsistent-seed";
    case errc::focal_singularity: return "focal-singularity";
    case errc::degenerate_spectrum: return "degenerate-spectrum";
    case errc::not_ideal: return "not-ideal";
    case errc::degenerate_chart: return "degenerate-chart";
    case errc::unstable_differencing: return "unstable-differencing";
    case errc::mismatch: return "mismatch";
    case errc::invalid_partition: return "invalid-partition";
    case errc::no_solution: return "no-solution";
    case errc::parse_error: return "parse-error";
    case errc::io_error: return "io-error";
  }
  return "unknown";
}

/// Library-wide error carrying a machine-readable kind.
class error : public std::runtime_error {
 public:
  error(errc kind, const std::string& what)
      : std::runtime_error(std::string(errc_name(kind)) + ": " + what), kind_(kind) {}
  errc kind() const noexcept { return kind_; }

 private:
  errc kind_;
};

[[noreturn]] inline void fail(errc k, const std::string& msg) { throw error(k, msg); }

inline void require(bool cond, errc k, const std::string& msg) {
  if (!cond) fail(k, msg);
}

}  // namespace warpgeo
