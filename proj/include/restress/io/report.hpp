#ifndef RESTRESS_IO_REPORT_HPP
#define RESTRESS_IO_REPORT_HPP

#include <map>
#include <string>
#include <vector>

#include "restress/axisym.hpp"
#include "restress/io/json_writer.hpp"
#include "restress/maxwell.hpp"

namespace restress::io {

inline constexpr const char* kToolVersion = "restress 1.0.0";
inline constexpr int kReportSchemaVersion = 1;

/// Everything a report needs to be reproduced: tool version, input hashes
/// and the effective configuration.
struct Provenance {
  std::vector<std::pair<std::string, std::string>> input_hashes;  // path, hash
  std::vector<std::pair<std::string, std::string>> config;        // key, value

  void add_input(const std::string& path);
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, int value);
};

JsonValue provenance_json(const Provenance& p);

/// "key=value" lines of the config echo, for CSV/SVG comments.
std::vector<std::string> echo_lines(const Provenance& p);

/// Shared FitReport skeleton: schema version, subcommand, provenance.
JsonValue make_report(const std::string& subcommand, const Provenance& prov);

JsonValue fit_diagnostics_json(const axisym::FitDiagnostics& d);
JsonValue eigenstrain_json(const axisym::AxisymPolyField& e);
JsonValue d0_json(const axisym::D0Poly& d0);
JsonValue maxwell_fit_json(const maxwell::MaxwellFitResult& fit,
                           const std::vector<std::string>& labels);

/// Machine-readable error envelope printed to stderr on failure.
std::string error_json(const std::string& type, const std::string& message);

}  // namespace restress::io

#endif
