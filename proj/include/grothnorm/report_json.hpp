#pragma once

// JSON encoding of the result types. Kept apart from the numerical headers so
// the library itself does not depend on nlohmann::json.

#include "grothnorm/gram_opt.hpp"
#include "grothnorm/rounding.hpp"
#include "grothnorm/special_functions.hpp"
#include "grothnorm/verify.hpp"

#include <cmath>
#include <json.hpp>

namespace grothnorm {

using nlohmann::json;

/// Non-finite doubles become null, which JSON cannot otherwise express.
inline json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline void to_json(json& j, const NormEntry& e) {
  j = {{"name", e.name}, {"value", e.value}, {"certificate", e.certificate}};
}
inline void from_json(const json& j, NormEntry& e) {
  j.at("name").get_to(e.name);
  j.at("value").get_to(e.value);
  j.at("certificate").get_to(e.certificate);
}

inline void to_json(json& j, const InequalityCheck& c) {
  j = {{"name", c.name},   {"lhs", c.lhs},     {"rhs", c.rhs},   {"constant", c.constant},
       {"constant_name", c.constant_name},   {"tol", c.tol},     {"exact", c.exact}, {"pass", c.pass}};
}
inline void from_json(const json& j, InequalityCheck& c) {
  j.at("name").get_to(c.name);
  j.at("lhs").get_to(c.lhs);
  j.at("rhs").get_to(c.rhs);
  j.at("constant").get_to(c.constant);
  j.at("constant_name").get_to(c.constant_name);
  j.at("tol").get_to(c.tol);
  j.at("exact").get_to(c.exact);
  j.at("pass").get_to(c.pass);
}

inline void to_json(json& j, const VerifyReport& r) {
  j = {{"matrix_id", r.matrix_id}, {"field", std::string(to_string(r.field))},
       {"cone_labels", r.cone_labels}, {"norms", r.norms},
       {"checks", r.checks},         {"warnings", r.warnings},
       {"passed", r.passed()},       {"runtime_ms", r.runtime_ms}};
}
inline void from_json(const json& j, VerifyReport& r) {
  j.at("matrix_id").get_to(r.matrix_id);
  r.field = field_from_string(j.at("field").get<std::string>());
  j.at("cone_labels").get_to(r.cone_labels);
  j.at("norms").get_to(r.norms);
  j.at("checks").get_to(r.checks);
  j.at("warnings").get_to(r.warnings);
  j.at("runtime_ms").get_to(r.runtime_ms);
}

inline json to_json(const NormEstimate& e, std::string_view norm) {
  json j = {{"norm", norm},
            {"value", e.value},
            {"certificate", std::string(to_string(e.kind))},
            {"d_requested", e.d_requested},
            {"d_effective", e.d_effective},
            {"iterations", e.iterations},
            {"restarts", e.restarts_used},
            {"gradient_value", e.gradient_value},
            {"coordinate_value", e.coordinate_value}};
  if (!e.warning.empty()) j["warning"] = e.warning;
  return j;
}

inline json to_json(const MaxCutReport& r) {
  json j = {{"n", r.n},
            {"relaxation", r.relaxation},
            {"relaxation_certificate", r.relaxation_certificate},
            {"rounded", r.rounded},
            {"rounded_side", r.rounded_side},
            {"rounded_mean", r.rounded_mean},
            {"draws", r.draws}};
  j["exact"] = r.exact ? json(*r.exact) : json(nullptr);
  if (r.exact) j["exact_side"] = r.exact_side;
  return j;
}

inline json to_json(const CutNormReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return {{"lower", r.lower},
          {"upper", r.upper},
          {"Gamma_laplacian", r.Gamma_laplacian},
          {"Gamma_certificate", r.Gamma_certificate},
          {"theta_laplacian", opt(r.theta_laplacian)},
          {"theta_lower", opt(r.theta_lower)},
          {"theta_upper", opt(r.theta_upper)},
          {"exact", opt(r.exact)},
          {"contains_exact", r.contains_exact()}};
}

inline json to_json(const StretchReport& r) {
  return {{"str", r.str}, {"spr", r.spr}, {"ratio", number(r.ratio)},
          {"str_le_spr", r.str_le_spr}, {"spr_le_bound", r.spr_le_bound}};
}

inline json to_json(const SharpnessReport& r) {
  return {{"n", r.n},
          {"m", r.m},
          {"field", std::string(to_string(r.field))},
          {"gamma_lower", r.gamma_lower},
          {"gamma_refined", r.gamma_refined},
          {"theta_estimate", r.theta_estimate},
          {"theta_exact", r.theta_exact},
          {"ratio_estimate", r.ratio_estimate},
          {"ratio_refined", r.ratio_refined},
          {"bound", r.bound},
          {"mc_std", r.mc_std},
          {"restarts", r.restarts},
          {"monotone", r.monotone},
          {"caveat", r.caveat}};
}

inline json to_json(const McEstimate& e, Complex expected) {
  return {{"estimate", complex_json(e.mean)},
          {"stderr", json::array({e.stderr_re, e.stderr_im})},
          {"expected", complex_json(expected)},
          {"samples", e.samples}};
}

inline json to_json(const McIdentityReport& r, double k_sigma) {
  json j = {{"field", std::string(to_string(r.field))}, {"inner", complex_json(r.inner)}};
  for (const IdentityCheck* c : {&r.second_moment, &r.mixed_sign, &r.sign_sign}) {
    json e = to_json(c->estimate, c->expected);
    e["within"] = c->estimate.agrees(c->expected, k_sigma);
    j[c->name] = e;
  }
  j["k_sigma"] = k_sigma;
  j["pass"] = r.all_within(k_sigma);
  return j;
}

inline json to_json(const ConstantsTable& t) {
  return {{"K_gamma_bound_R", t.K_gamma_bound_R},
          {"K_gamma_bound_R_improved", t.K_gamma_bound_R_improved},
          {"K_gamma_bound_C", t.K_gamma_bound_C},
          {"nesterov_R", t.nesterov_R},
          {"nesterov_C", t.nesterov_C},
          {"alpha_gw_R", t.alpha_gw_R},
          {"alpha_gw_C", t.alpha_gw_C},
          {"K_G_R_lower", t.K_G_R_lower},
          {"K_G_R_upper", t.K_G_R_upper},
          {"K_G_C_lower", t.K_G_C_lower},
          {"K_G_C_upper", t.K_G_C_upper},
          {"a0_R", t.a0_R},
          {"a0_C", t.a0_C},
          {"sdd_constant_R", t.sdd_constant(Field::Real)},
          {"sdd_constant_C", t.sdd_constant(Field::Complex)},
          {"krivine_G12", t.krivine_G12},
          {"alpha_d_R", t.alpha_d_R},
          {"alpha_d_C", t.alpha_d_C},
          {"conic_limit_R", t.conic_limit_R},
          {"conic_limit_C", t.conic_limit_C}};
}

}  // namespace grothnorm
