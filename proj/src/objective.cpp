#include "resclust/objective.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace resclust {

namespace {

double zero_open(PointIndex) { return 0.0; }

double checked(double v, const Objective& obj) {
  if (!std::isfinite(v)) throw std::domain_error(obj.name + ": objective value is not finite");
  if (obj.mode == Aggregation::kMax && v < 0.0) {
    throw std::domain_error(obj.name + ": Max-mode objectives require nonnegative f and g");
  }
  return v;
}

}  // namespace

Objective kmedian() {
  return {"kmedian", zero_open, [](PointIndex, double r) { return r; }, Aggregation::kSum};
}

Objective kmeans() {
  return {"kmeans", zero_open, [](PointIndex, double r) { return r * r; }, Aggregation::kSum};
}

Objective kcenter() {
  return {"kcenter", zero_open, [](PointIndex, double r) { return r; }, Aggregation::kMax};
}

Objective facility_location(std::vector<double> opening_costs) {
  for (double f : opening_costs) {
    if (!(f >= 0.0) || !std::isfinite(f)) {
      throw std::invalid_argument("facility_location: opening costs must be finite and nonnegative");
    }
  }
  auto costs = std::make_shared<const std::vector<double>>(std::move(opening_costs));
  return {"facility_location", [costs](PointIndex c) { return costs->at(c); }, [](PointIndex, double r) { return r; },
          Aggregation::kSum};
}

Objective builtin_objective(const std::string& name, const std::vector<double>& opening_costs) {
  if (name == "kmedian") return kmedian();
  if (name == "kmeans") return kmeans();
  if (name == "kcenter") return kcenter();
  if (name == "facility_location") {
    if (opening_costs.empty()) throw std::invalid_argument("facility_location requires opening costs");
    return facility_location(opening_costs);
  }
  throw std::invalid_argument("unknown objective: " + name);
}

std::vector<std::string> check_monotone(const Objective& obj, std::size_t n, double max_radius, std::size_t samples) {
  std::vector<std::string> issues;
  if (samples < 2 || !(max_radius > 0.0)) return issues;
  for (PointIndex u = 0; u < n; ++u) {
    double prev = obj.g(u, 0.0);
    for (std::size_t s = 1; s < samples; ++s) {
      const double r = max_radius * static_cast<double>(s) / static_cast<double>(samples - 1);
      const double cur = obj.g(u, r);
      if (cur < prev) {
        std::ostringstream os;
        os << obj.name << ": g(" << u << ", r) decreases near r=" << r;
        issues.push_back(os.str());
        break;
      }
      prev = cur;
    }
  }
  return issues;
}

Objective custom_objective(std::string name, Objective::OpenCost f, Objective::AssignCost g, Aggregation mode,
                           std::size_t n, double max_radius, std::vector<std::string>* warnings) {
  if (!f || !g) throw std::invalid_argument("custom_objective: f and g must be callable");
  Objective obj{std::move(name), std::move(f), std::move(g), mode};
  auto issues = check_monotone(obj, n, max_radius);
  if (warnings) warnings->insert(warnings->end(), issues.begin(), issues.end());
  return obj;
}

double cluster_cost_with_center(std::span<const PointIndex> members, PointIndex center, const MetricSpace& m,
                                const Objective& obj) {
  double total = checked(obj.f(center), obj);
  for (PointIndex u : members) total = obj.combine(total, checked(obj.g(u, m(u, center)), obj));
  return total;
}

ClusterCost cluster_cost(std::span<const PointIndex> members, const MetricSpace& m, const Objective& obj) {
  if (members.empty()) throw std::invalid_argument("cluster_cost: empty cluster");
  std::vector<double> per_center(members.size());
  double best = kInf;
  for (std::size_t t = 0; t < members.size(); ++t) {
    per_center[t] = cluster_cost_with_center(members, members[t], m, obj);
    best = std::min(best, per_center[t]);
  }
  ClusterCost out{best, {}};
  for (std::size_t t = 0; t < members.size(); ++t) {
    if (within_tie(per_center[t], best)) out.optimal_centers.push_back(members[t]);
  }
  std::sort(out.optimal_centers.begin(), out.optimal_centers.end());
  return out;
}

std::size_t cluster_count(std::span<const int> assignment) {
  if (assignment.empty()) throw std::invalid_argument("empty assignment");
  int max_label = -1;
  for (int a : assignment) {
    if (a < 0) throw std::invalid_argument("negative cluster label");
    max_label = std::max(max_label, a);
  }
  std::vector<bool> seen(static_cast<std::size_t>(max_label) + 1, false);
  for (int a : assignment) seen[static_cast<std::size_t>(a)] = true;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw std::invalid_argument("cluster " + std::to_string(i) + " is empty");
  }
  return seen.size();
}

std::vector<std::vector<PointIndex>> members_by_cluster(std::span<const int> assignment) {
  std::vector<std::vector<PointIndex>> groups(cluster_count(assignment));
  for (PointIndex p = 0; p < assignment.size(); ++p) groups[static_cast<std::size_t>(assignment[p])].push_back(p);
  return groups;
}

ClusteringCost clustering_cost(std::span<const int> assignment, const MetricSpace& m, const Objective& obj) {
  if (assignment.size() != m.size()) throw std::invalid_argument("assignment length does not match point count");
  const auto groups = members_by_cluster(assignment);
  ClusteringCost out;
  out.cost = 0.0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const ClusterCost cc = cluster_cost(groups[i], m, obj);
    out.cost = i == 0 ? cc.cost : obj.combine(out.cost, cc.cost);
    out.centers.push_back(cc.optimal_centers.front());
  }
  return out;
}

double fixed_center_cost(std::span<const int> assignment, std::span<const PointIndex> centers, const MetricSpace& m,
                         const Objective& obj) {
  const auto groups = members_by_cluster(assignment);
  if (groups.size() != centers.size()) throw std::invalid_argument("center count does not match cluster count");
  double total = 0.0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const double c = cluster_cost_with_center(groups[i], centers[i], m, obj);
    total = i == 0 ? c : obj.combine(total, c);
  }
  return total;
}

Clustering make_clustering(std::vector<int> assignment, const MetricSpace& m, const Objective& obj) {
  ClusteringCost cc = clustering_cost(assignment, m, obj);
  return {std::move(assignment), std::move(cc.centers), cc.cost};
}

void check_clustering(const Clustering& c, std::size_t n) {
  if (c.assignment.size() != n) throw std::invalid_argument("clustering: assignment length mismatch");
  const std::size_t k = cluster_count(c.assignment);
  if (k != c.centers.size()) throw std::invalid_argument("clustering: center count mismatch");
  for (std::size_t i = 0; i < k; ++i) {
    if (c.centers[i] >= n || c.assignment[c.centers[i]] != static_cast<int>(i)) {
      throw std::invalid_argument("clustering: center " + std::to_string(i) + " is not in its cluster");
    }
  }
}

std::vector<int> canonical_labels(std::span<const int> assignment) {
  std::vector<int> remap;
  std::vector<int> out(assignment.size());
  int next = 0;
  for (std::size_t p = 0; p < assignment.size(); ++p) {
    const auto a = static_cast<std::size_t>(assignment[p]);
    if (a >= remap.size()) remap.resize(a + 1, -1);
    if (remap[a] < 0) remap[a] = next++;
    out[p] = remap[a];
  }
  return out;
}

Clustering lloyd_improvement(const Clustering& c, const MetricSpace& m, const Objective& obj) {
  check_clustering(c, m.size());
  Clustering out = c;
  std::vector<bool> is_center(m.size(), false);
  for (PointIndex ctr : c.centers) is_center[ctr] = true;
  for (PointIndex x = 0; x < m.size(); ++x) {
    if (is_center[x]) continue;
    const auto current = static_cast<std::size_t>(c.assignment[x]);
    std::size_t target = current;
    double best = m(x, c.centers[current]);
    for (std::size_t j = 0; j < c.centers.size(); ++j) {
      if (m(x, c.centers[j]) < best) {
        best = m(x, c.centers[j]);
        target = j;
      }
    }
    out.assignment[x] = static_cast<int>(target);
  }
  out.cost = fixed_center_cost(out.assignment, out.centers, m, obj);
  return out;
}

}  // namespace resclust
