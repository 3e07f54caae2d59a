#pragma once

// The exported proof object: which assignment was used, the automorphism's
// generator images, and every check result needed to re-verify it from the
// presentation alone.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "presentation.hpp"

namespace thinaut {

struct CertChecks {
  bool order_p = false;
  bool fixes_frattini = false;
  bool homomorphism = false;
  bool bijective = false;
  std::optional<GroupElement> inner_witness;  // absent means non-inner
  std::optional<bool> oracle_confirmed;       // empty means not run
};

struct NonInnerCertificate {
  int cert_version = 1;
  std::string group_name;
  int64_t group_order = 0;
  int prime = 0;
  int ngens = 0;
  int nilpotency_class = 0;
  std::string z2_type;
  std::string method;  // "pipeline" | "oracle"
  std::optional<std::pair<GroupElement, GroupElement>> assignment;  // (u, v), pipeline only
  std::vector<GroupElement> images;  // one per pc generator

  CertChecks checks;

  bool valid() const {
    return checks.order_p && checks.fixes_frattini && checks.homomorphism && checks.bijective &&
           !checks.inner_witness.has_value();
  }
};

}  // namespace thinaut
