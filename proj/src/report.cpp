#include "resclust/report.hpp"

namespace resclust {

Json one_based(std::span<const int> assignment) {
  Json out = Json::array();
  for (int a : assignment) out.push_back(a + 1);
  return out;
}

Json to_json(const ValidationReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    Json item;
    item["kind"] = to_string(v.kind);
    item["i"] = v.i;
    item["j"] = v.j;
    if (v.m != kNoIndex) item["m"] = v.m;
    item["value"] = v.value;
    violations.push_back(std::move(item));
  }
  Json out;
  out["ok"] = r.ok;
  out["n"] = r.n;
  out["eps"] = r.eps;
  out["violations"] = std::move(violations);
  return out;
}

Json to_json(const OracleResult& r) {
  Json partitions = Json::array();
  for (const auto& p : r.optimal_partitions) partitions.push_back(one_based(p));
  Json out;
  out["optimal_cost"] = r.optimal_cost;
  out["unique"] = r.unique;
  out["evaluated"] = r.evaluated;
  out["optimal_partitions"] = std::move(partitions);
  return out;
}

Json to_json(const ProximityReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    violations.push_back(Json{{"p", v.p}, {"i", v.i + 1}, {"j", v.j + 1}, {"dpi", v.d_p_ci}, {"dpj", v.d_p_cj}});
  }
  Json out;
  out["alpha"] = r.alpha;
  out["holds"] = r.holds;
  out["violations"] = std::move(violations);
  return out;
}

Json to_json(const CloserReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    violations.push_back(
        Json{{"u", v.u}, {"v", v.v}, {"i", v.i + 1}, {"j", v.j + 1}, {"duci", v.d_u_ci}, {"duv", v.d_u_v}});
  }
  Json out;
  out["holds"] = r.holds;
  out["violations"] = std::move(violations);
  return out;
}

Json to_json(const ResilienceProbeReport& r) {
  Json out = to_json(r.proximity);
  out["trials"] = r.trials;
  out["trials_run"] = r.trials_run;
  out["stable"] = r.stable;
  out["certified"] = r.certified;
  if (r.first_failure) {
    out["first_failure"] = Json{{"trial", r.first_failure->trial},
                                {"seed", r.first_failure->seed},
                                {"partition", one_based(r.first_failure->partition)}};
  } else {
    out["first_failure"] = nullptr;
  }
  out["unique"] = r.unique;
  out["shrink_fraction"] = r.shrink_fraction;
  out["base"] = to_json(r.base_clustering);
  out["base"]["optimal_partition_count"] = r.base.optimal_partitions.size();
  return out;
}

Json to_json(const Clustering& c) {
  Json out;
  out["assignments"] = one_based(c.assignment);
  out["centers"] = c.centers;
  out["cost"] = c.cost;
  return out;
}

}  // namespace resclust
