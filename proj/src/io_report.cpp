#include "restress/io/report.hpp"

#include "restress/io/csv.hpp"

namespace restress::io {

void Provenance::add_input(const std::string& path) {
  input_hashes.emplace_back(path, hash_file(path));
}

void Provenance::set(const std::string& key, const std::string& value) {
  config.emplace_back(key, value);
}
void Provenance::set(const std::string& key, double value) {
  config.emplace_back(key, JsonValue::format_number(value));
}
void Provenance::set(const std::string& key, int value) {
  config.emplace_back(key, std::to_string(value));
}

JsonValue provenance_json(const Provenance& p) {
  JsonValue out = JsonValue::object();
  out["tool_version"] = JsonValue(kToolVersion);
  JsonValue inputs = JsonValue::array();
  for (const auto& [path, hash] : p.input_hashes) {
    JsonValue item = JsonValue::object();
    item["path"] = JsonValue(path);
    item["fnv1a64"] = JsonValue(hash);
    inputs.push_back(std::move(item));
  }
  out["inputs"] = std::move(inputs);
  JsonValue cfg = JsonValue::object();
  for (const auto& [key, value] : p.config) cfg[key] = JsonValue(value);
  out["config"] = std::move(cfg);
  return out;
}

std::vector<std::string> echo_lines(const Provenance& p) {
  std::vector<std::string> lines;
  lines.push_back(std::string("generated by ") + kToolVersion);
  for (const auto& [key, value] : p.config) lines.push_back(key + "=" + value);
  return lines;
}

JsonValue make_report(const std::string& subcommand, const Provenance& prov) {
  JsonValue out = JsonValue::object();
  out["schema_version"] = JsonValue(kReportSchemaVersion);
  out["subcommand"] = JsonValue(subcommand);
  out["provenance"] = provenance_json(prov);
  return out;
}

JsonValue fit_diagnostics_json(const axisym::FitDiagnostics& d) {
  JsonValue out = JsonValue::object();
  JsonValue coeffs = JsonValue::array();
  for (size_t i = 0; i < d.parameter_labels.size(); ++i) {
    JsonValue c = JsonValue::object();
    c["label"] = JsonValue(d.parameter_labels[i]);
    c["value"] = JsonValue(i < d.parameter_values.size() ? d.parameter_values[i] : 0.0);
    c["std_error"] = JsonValue(
        i < d.parameter_std_errors.size() ? d.parameter_std_errors[i] : 0.0);
    coeffs.push_back(std::move(c));
  }
  out["coefficients"] = std::move(coeffs);
  out["residual_norm"] = JsonValue(d.residual_norm);
  out["per_point_residual_Pa"] = JsonValue::array_of(d.per_point_residual);
  out["condition_number"] = JsonValue(d.condition);
  out["rank"] = JsonValue(d.rank);
  out["parameters"] = JsonValue(d.parameters);
  out["warnings"] = JsonValue::array_of(d.warnings);
  return out;
}

JsonValue eigenstrain_json(const axisym::AxisymPolyField& e) {
  JsonValue out = JsonValue::object();
  out["order_l"] = JsonValue(e.order_l);
  out["radius_mm"] = JsonValue(e.radius * 1e3);
  out["f"] = JsonValue::array_of(e.f);
  out["g"] = JsonValue::array_of(e.g);
  out["h"] = JsonValue::array_of(e.h);
  out["coefficient_order"] = JsonValue("descending powers: index i multiplies r^(l-1-i)");
  return out;
}

JsonValue d0_json(const axisym::D0Poly& d0) {
  JsonValue out = JsonValue::object();
  out["order"] = JsonValue(d0.order);
  out["coefficients_A"] = JsonValue::array_of(d0.c);
  out["basis"] = JsonValue("ascending powers of (r/R)");
  out["d0_ref_A"] = JsonValue(d0.d0_ref);
  out["radius_mm"] = JsonValue(d0.radius * 1e3);
  return out;
}

JsonValue maxwell_fit_json(const maxwell::MaxwellFitResult& fit,
                           const std::vector<std::string>& labels) {
  JsonValue out = JsonValue::object();
  JsonValue coeffs = JsonValue::array();
  for (size_t i = 0; i < fit.coefficients.size(); ++i) {
    JsonValue c = JsonValue::object();
    c["label"] = JsonValue(i < labels.size() ? labels[i] : "c" + std::to_string(i));
    c["value"] = JsonValue(fit.coefficients[i]);
    coeffs.push_back(std::move(c));
  }
  out["coefficients"] = std::move(coeffs);
  out["residual_norm"] = JsonValue(fit.report.residual_norm);
  JsonValue rms = JsonValue::object();
  for (int c = 0; c < 6; ++c)
    rms[kTensorComponentNames[c]] =
        JsonValue(fit.report.component_rms_residual[c]);
  out["component_rms_residual_Pa"] = std::move(rms);
  out["condition_number"] = JsonValue(fit.report.condition);
  out["rank"] = JsonValue(fit.report.rank);
  out["warnings"] = JsonValue::array_of(fit.report.warnings);
  return out;
}

std::string error_json(const std::string& type, const std::string& message) {
  JsonValue out = JsonValue::object();
  JsonValue err = JsonValue::object();
  err["type"] = JsonValue(type);
  err["message"] = JsonValue(message);
  out["error"] = std::move(err);
  return out.dump();
}

}  // namespace restress::io
