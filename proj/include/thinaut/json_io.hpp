#pragma once

// JSON views of certificates and reports.  nlohmann::json keeps object keys
// sorted, so serialized output is deterministic for fixed input.

#include <json.hpp>

#include "berkovich.hpp"

namespace thinaut {

using json = nlohmann::json;

inline json to_json(const GroupElement& e) {
  json a = json::array();
  for (uint8_t x : e) a.push_back(static_cast<int>(x));
  return a;
}

inline GroupElement element_from_json(const json& j, int ngens, int prime) {
  if (!j.is_array() || j.size() != static_cast<size_t>(ngens))
    throw ValidationError("malformed element in certificate");
  GroupElement e;
  for (const auto& v : j) {
    long long x = v.get<long long>();
    if (x < 0 || x >= prime) throw ValidationError("element exponent out of range");
    e.push_back(static_cast<uint8_t>(x));
  }
  return e;
}

inline json to_json(const NonInnerCertificate& c) {
  json j;
  j["cert_version"] = c.cert_version;
  j["group"] = {{"name", c.group_name},
                {"order", c.group_order},
                {"prime", c.prime},
                {"ngens", c.ngens}};
  j["class"] = c.nilpotency_class;
  j["z2_type"] = c.z2_type;
  j["method"] = c.method;
  if (c.assignment) {
    j["assignment"] = {{"u", to_json(c.assignment->first)}, {"v", to_json(c.assignment->second)}};
  } else {
    j["assignment"] = nullptr;
  }
  json imgs = json::array();
  for (const auto& im : c.images) imgs.push_back(to_json(im));
  j["images"] = imgs;
  json checks;
  checks["order_p"] = c.checks.order_p;
  checks["fixes_frattini"] = c.checks.fixes_frattini;
  checks["homomorphism"] = c.checks.homomorphism;
  checks["bijective"] = c.checks.bijective;
  checks["inner_witness"] = c.checks.inner_witness ? to_json(*c.checks.inner_witness) : json(nullptr);
  checks["oracle_confirmed"] = c.checks.oracle_confirmed ? json(*c.checks.oracle_confirmed)
                                                         : json("not_run");
  j["checks"] = checks;
  j["valid"] = c.valid();
  return j;
}

inline NonInnerCertificate certificate_from_json(const json& j) {
  NonInnerCertificate c;
  try {
    c.cert_version = j.at("cert_version").get<int>();
    c.group_name = j.at("group").at("name").get<std::string>();
    c.group_order = j.at("group").at("order").get<int64_t>();
    c.prime = j.at("group").at("prime").get<int>();
    c.ngens = j.at("group").at("ngens").get<int>();
    c.nilpotency_class = j.at("class").get<int>();
    c.z2_type = j.at("z2_type").get<std::string>();
    c.method = j.at("method").get<std::string>();
    if (!j.at("assignment").is_null()) {
      c.assignment = std::make_pair(
          element_from_json(j.at("assignment").at("u"), c.ngens, c.prime),
          element_from_json(j.at("assignment").at("v"), c.ngens, c.prime));
    }
    for (const auto& im : j.at("images"))
      c.images.push_back(element_from_json(im, c.ngens, c.prime));
    const json& checks = j.at("checks");
    c.checks.order_p = checks.at("order_p").get<bool>();
    c.checks.fixes_frattini = checks.at("fixes_frattini").get<bool>();
    c.checks.homomorphism = checks.at("homomorphism").get<bool>();
    c.checks.bijective = checks.at("bijective").get<bool>();
    if (!checks.at("inner_witness").is_null())
      c.checks.inner_witness = element_from_json(checks.at("inner_witness"), c.ngens, c.prime);
    if (checks.at("oracle_confirmed").is_boolean())
      c.checks.oracle_confirmed = checks.at("oracle_confirmed").get<bool>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed certificate: ") + e.what());
  }
  return c;
}

inline json to_json(const ThinnessReport& t) {
  json j;
  j["is_thin"] = t.is_thin;
  j["method"] = t.method;
  if (t.method == "exact") {
    j["max_antichain_size"] = t.max_antichain_size;
    if (!t.is_thin) {
      json w = json::array();
      for (const auto& s : t.witness_antichain) {
        json gens = json::array();
        for (uint32_t g : s.gens) gens.push_back(g);
        w.push_back({{"order", s.order()}, {"generator_indices", gens}});
      }
      j["witness_antichain"] = w;
    }
  } else if (!t.is_thin) {
    j["failing_layer"] = t.failing_layer;
    j["failing_reason"] = t.failing_reason;
    if (t.failing_h) j["failing_h"] = to_json(*t.failing_h);
  }
  return j;
}

inline json to_json(const AssumptionReport& r) {
  json j;
  j["p_odd"] = r.p_odd;
  j["class"] = r.nilpotency_class;
  j["class_ge_4"] = r.class_ge_4;
  j["thin"] = r.thin;
  j["thin_method"] = r.thin_method;
  j["two_generated"] = r.two_generated;
  j["center_cyclic_p"] = r.center_cyclic_p;
  j["strongly_frattinian"] = r.strongly_frattinian;
  j["d_g"] = r.d_g;
  j["d_z"] = r.d_z;
  j["d_z2_over_z"] = r.d_z2_over_z;
  j["d_condition"] = r.d_condition;
  j["z2_over_z_elem_p2"] = r.z2_over_z_elem_p2;
  j["z2_type"] = r.z2_type;
  j["omega1_z2_order"] = r.omega1_z2_order;
  j["g3_quotient_order_p3"] = r.g3_quotient_order_p3;
  j["g3_quotient_exponent_p"] = r.g3_quotient_exponent_p;
  j["z2_in_gamma3"] = r.z2_in_gamma3;
  j["z2_commutes_with_frattini"] = r.z2_commutes_with_frattini;
  j["pipeline_eligible"] = r.pipeline_eligible;
  return j;
}

inline json to_json(const CertificateCheckResult& r) {
  json j;
  j["group_match"] = r.group_match;
  j["wellformed"] = r.wellformed;
  j["homomorphism"] = r.homomorphism;
  j["bijective"] = r.bijective;
  j["order_p"] = r.order_p;
  j["fixes_frattini"] = r.fixes_frattini;
  j["noninner"] = r.noninner;
  j["valid"] = r.all_passed();
  return j;
}

}  // namespace thinaut
