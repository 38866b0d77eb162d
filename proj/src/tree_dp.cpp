#include "resclust/tree_dp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "resclust/parallel.hpp"

namespace resclust {

RootedBinaryTree root_and_binarize(const SpanningTree& t, PointIndex root_choice) {
  const std::size_t n = t.n;
  if (n == 0) throw std::invalid_argument("root_and_binarize: empty tree");
  if (root_choice >= n) throw std::invalid_argument("root_and_binarize: invalid root index");
  if (t.edges.size() + 1 != n || t.adjacency.size() != n) {
    throw std::invalid_argument("root_and_binarize: not a spanning tree");
  }

  RootedBinaryTree bt;
  bt.n_original = n;
  bt.root = root_choice;
  bt.parent.assign(n, kNoIndex);
  bt.children.assign(n, {});
  bt.is_dummy.assign(n, 0);
  bt.orig_index.resize(n);
  for (PointIndex p = 0; p < n; ++p) bt.orig_index[p] = p;

  // Orient edges away from the root; neighbor lists are ascending.
  std::vector<char> visited(n, 0);
  std::vector<NodeIndex> stack{root_choice};
  visited[root_choice] = 1;
  std::size_t reached = 0;
  while (!stack.empty()) {
    const NodeIndex u = stack.back();
    stack.pop_back();
    ++reached;
    for (PointIndex v : t.adjacency[u]) {
      if (visited[v]) continue;
      visited[v] = 1;
      bt.parent[v] = u;
      bt.children[u].push_back(v);
      stack.push_back(v);
    }
  }
  if (reached != n) throw std::invalid_argument("root_and_binarize: tree is not connected");

  // Pair the first two children of an over-full node under a new dummy,
  // appending the dummy to the end of the child list, until at most two remain.
  for (PointIndex u = 0; u < n; ++u) {
    std::vector<NodeIndex> kids = bt.children[u];
    while (kids.size() > 2) {
      const NodeIndex v = bt.parent.size();
      bt.parent.push_back(u);
      bt.children.push_back({kids[0], kids[1]});
      bt.is_dummy.push_back(1);
      bt.orig_index.push_back(u);
      bt.parent[kids[0]] = v;
      bt.parent[kids[1]] = v;
      kids.erase(kids.begin(), kids.begin() + 2);
      kids.push_back(v);
    }
    bt.children[u] = std::move(kids);
  }

  const std::size_t total = bt.parent.size();
  bt.enter.assign(total, 0);
  bt.exit.assign(total, 0);
  bt.original_count.assign(total, 0);
  bt.original_begin.assign(total, 0);
  bt.preorder.reserve(total);
  bt.original_preorder.reserve(n);

  // Iterative preorder; the second stack entry field marks a post-visit.
  std::vector<std::pair<NodeIndex, bool>> work{{bt.root, false}};
  while (!work.empty()) {
    const auto [u, post] = work.back();
    work.pop_back();
    if (post) {
      bt.exit[u] = bt.preorder.size();
      bt.original_count[u] = bt.original_preorder.size() - bt.original_begin[u];
      continue;
    }
    bt.enter[u] = bt.preorder.size();
    bt.preorder.push_back(u);
    bt.original_begin[u] = bt.original_preorder.size();
    if (!bt.is_dummy[u]) bt.original_preorder.push_back(u);
    work.push_back({u, true});
    const auto& kids = bt.children[u];
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) work.push_back({*it, false});
  }
  return bt;
}

std::vector<std::pair<PointIndex, PointIndex>> contract_dummies(const RootedBinaryTree& bt) {
  std::vector<std::pair<PointIndex, PointIndex>> edges;
  for (PointIndex v = 0; v < bt.n_original; ++v) {
    NodeIndex a = bt.parent[v];
    if (a == kNoIndex) continue;
    while (bt.is_dummy[a]) a = bt.parent[a];
    edges.emplace_back(std::min<PointIndex>(v, a), std::max<PointIndex>(v, a));
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

namespace {

// Which children start a new part; the order is the tie-break order.
enum Case : std::uint32_t { kNone = 0, kRightNew = 1, kLeftNew = 2, kBothNew = 3 };

constexpr std::uint32_t kNoChoice = UINT32_MAX;

std::uint32_t pack(Case c, std::size_t j_left) { return static_cast<std::uint32_t>(c) | static_cast<std::uint32_t>(j_left << 2); }
Case case_of(std::uint32_t packed) { return static_cast<Case>(packed & 3u); }
std::size_t j_left_of(std::uint32_t packed) { return packed >> 2; }

class DpEngine {
 public:
  DpEngine(const RootedBinaryTree& bt, const MetricSpace& m, const Objective& obj, std::size_t k, bool track,
           const DpOptions& options)
      : bt_(bt), m_(m), obj_(obj), k_(k), n_(m.size()), track_(track),
        sum_mode_(obj.mode == Aggregation::kSum),
        subtract_(obj.mode == Aggregation::kSum || options.force_subtractive_dedup) {
    if (bt.n_original != m.size()) throw std::invalid_argument("dp: tree and metric sizes differ");
    if (k == 0) throw std::invalid_argument("dp: k must be positive");
    if (k > n_) throw std::invalid_argument("dp: k exceeds the number of points");
    if (k >= (1u << 29)) throw std::invalid_argument("dp: k too large");
    fval_.resize(n_);
    for (PointIndex c = 0; c < n_; ++c) fval_[c] = checked(obj_.f(c));
    const std::size_t total = bt.size();
    table_.resize(total);
    best_.resize(total);
    best_arg_.resize(total);
    if (track_) choice_.resize(total);
  }

  void run() {
    const auto& order = bt_.preorder;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      compute_node(*it);
      if (!track_) {
        for (NodeIndex ch : bt_.children[*it]) {
          table_[ch].clear();
          table_[ch].shrink_to_fit();
        }
      }
    }
    const auto& root_row = row(bt_.root, k_);
    answer_center_ = kNoIndex;
    answer_ = kInf;
    for (PointIndex c = 0; c < n_; ++c) {
      if (root_row[c] < answer_) {
        answer_ = root_row[c];
        answer_center_ = c;
      }
    }
    if (answer_center_ == kNoIndex) throw std::logic_error("dp: no feasible partition");
  }

  double answer() const { return answer_; }

  DpSolution reconstruct() const {
    DpSolution sol;
    sol.dp_cost = answer_;
    sol.node_part.assign(bt_.size(), -1);
    struct Frame {
      NodeIndex u;
      std::size_t j;
      PointIndex c;
      int part;
    };
    sol.part_center.push_back(answer_center_);
    std::vector<Frame> stack{{bt_.root, k_, answer_center_, 0}};
    auto new_part = [&sol](PointIndex center) {
      sol.part_center.push_back(center);
      return static_cast<int>(sol.part_center.size() - 1);
    };
    while (!stack.empty()) {
      const Frame fr = stack.back();
      stack.pop_back();
      sol.node_part[fr.u] = fr.part;
      const std::uint32_t packed = choice_[fr.u][(fr.j - 1) * n_ + fr.c];
      if (packed == kNoChoice) throw std::logic_error("dp: backtracking reached an infeasible state");
      const auto& kids = bt_.children[fr.u];
      if (kids.empty()) continue;
      const Case cs = case_of(packed);
      const std::size_t jl = j_left_of(packed);
      if (kids.size() == 1) {
        const NodeIndex l = kids[0];
        if (cs == kNone) {
          stack.push_back({l, jl, fr.c, fr.part});
        } else {
          const PointIndex cl = best_arg_[l][jl - 1];
          stack.push_back({l, jl, cl, new_part(cl)});
        }
        continue;
      }
      const NodeIndex l = kids[0];
      const NodeIndex r = kids[1];
      switch (cs) {
        case kNone:
          stack.push_back({l, jl, fr.c, fr.part});
          stack.push_back({r, fr.j + 1 - jl, fr.c, fr.part});
          break;
        case kRightNew: {
          const std::size_t jr = fr.j - jl;
          const PointIndex cr = best_arg_[r][jr - 1];
          stack.push_back({l, jl, fr.c, fr.part});
          stack.push_back({r, jr, cr, new_part(cr)});
          break;
        }
        case kLeftNew: {
          const PointIndex cl = best_arg_[l][jl - 1];
          stack.push_back({l, jl, cl, new_part(cl)});
          stack.push_back({r, fr.j - jl, fr.c, fr.part});
          break;
        }
        case kBothNew: {
          const std::size_t jr = fr.j - 1 - jl;
          const PointIndex cl = best_arg_[l][jl - 1];
          const PointIndex cr = best_arg_[r][jr - 1];
          stack.push_back({l, jl, cl, new_part(cl)});
          stack.push_back({r, jr, cr, new_part(cr)});
          break;
        }
      }
    }
    return sol;
  }

 private:
  double checked(double v) const {
    if (!std::isfinite(v)) throw std::domain_error(obj_.name + ": objective value is not finite");
    if (!sum_mode_ && v < 0.0) throw std::domain_error(obj_.name + ": Max-mode objectives require nonnegative f and g");
    return v;
  }

  // Extended-real combination; +inf absorbs.
  double plus(double a, double b) const {
    if (sum_mode_) return (std::isinf(a) || std::isinf(b)) ? kInf : a + b;
    return std::max(a, b);
  }

  // Removes `times` duplicated copies of f_c from a finite value.
  double dedup(double v, double times, PointIndex c) const {
    if (!subtract_ || std::isinf(v)) return v;
    return v - times * fval_[c];
  }

  std::span<const double> row(NodeIndex u, std::size_t j) const { return {table_[u].data() + (j - 1) * n_, n_}; }
  double at(NodeIndex u, std::size_t j, PointIndex c) const { return table_[u][(j - 1) * n_ + c]; }
  std::size_t rows(NodeIndex u) const { return std::min(k_, bt_.original_count[u]); }

  void compute_node(NodeIndex u) {
    const std::size_t rows_u = rows(u);
    table_[u].assign(k_ * n_, kInf);
    if (track_) choice_[u].assign(k_ * n_, kNoChoice);

    std::vector<double> base(n_);
    for (PointIndex c = 0; c < n_; ++c) {
      base[c] = bt_.is_dummy[u] ? fval_[c] : obj_.combine(fval_[c], checked(obj_.g(u, m_(u, c))));
    }

    const auto& kids = bt_.children[u];
    double* tab = table_[u].data();
    std::uint32_t* cho = track_ ? choice_[u].data() : nullptr;
    auto store = [&](std::size_t j, PointIndex c, double v, std::uint32_t packed) {
      tab[(j - 1) * n_ + c] = v;
      if (cho) cho[(j - 1) * n_ + c] = packed;
    };

    if (kids.empty()) {
      for (PointIndex c = 0; c < n_; ++c) store(1, c, base[c], pack(kNone, 0));
    } else if (kids.size() == 1) {
      const NodeIndex l = kids[0];
      const std::size_t rows_l = rows(l);
      const auto& best_l = best_[l];
      parallel_for(0, n_, [&](PointIndex c) {
        const bool in_l = bt_.in_subtree(c, l);
        for (std::size_t j = 1; j <= rows_u; ++j) {
          double best = kInf;
          std::uint32_t ch = kNoChoice;
          if (j <= rows_l) {
            const double v = dedup(plus(base[c], at(l, j, c)), 1.0, c);
            if (v < best) best = v, ch = pack(kNone, j);
          }
          if (!in_l && j >= 2 && j - 1 <= rows_l) {
            const double v = plus(base[c], best_l[j - 2]);
            if (v < best) best = v, ch = pack(kLeftNew, j - 1);
          }
          if (ch != kNoChoice) store(j, c, best, ch);
        }
      }, 128);
    } else {
      const NodeIndex l = kids[0];
      const NodeIndex r = kids[1];
      const std::size_t rows_l = rows(l);
      const std::size_t rows_r = rows(r);
      const auto& best_l = best_[l];
      const auto& best_r = best_[r];

      // Both children start new parts: independent of the center c.
      std::vector<double> both_val(rows_u + 1, kInf);
      std::vector<std::size_t> both_jl(rows_u + 1, 0);
      for (std::size_t j = 3; j <= rows_u; ++j) {
        const std::size_t lo = j - 1 > rows_r ? j - 1 - rows_r : 1;
        const std::size_t hi = std::min(rows_l, j - 2);
        for (std::size_t jl = std::max<std::size_t>(1, lo); jl <= hi; ++jl) {
          const double v = plus(best_l[jl - 1], best_r[j - 1 - jl - 1]);
          if (v < both_val[j]) both_val[j] = v, both_jl[j] = jl;
        }
      }

      parallel_for(0, n_, [&](PointIndex c) {
        const bool in_l = bt_.in_subtree(c, l);
        const bool in_r = bt_.in_subtree(c, r);
        const double b = base[c];
        for (std::size_t j = 1; j <= rows_u; ++j) {
          double best = kInf;
          std::uint32_t ch = kNoChoice;
          // Both children join the part of u: jl + jr = j + 1.
          {
            const std::size_t lo = j + 1 > rows_r ? j + 1 - rows_r : 1;
            const std::size_t hi = std::min(rows_l, j);
            for (std::size_t jl = std::max<std::size_t>(1, lo); jl <= hi; ++jl) {
              const double v = dedup(plus(b, plus(at(l, jl, c), at(r, j + 1 - jl, c))), 2.0, c);
              if (v < best) best = v, ch = pack(kNone, jl);
            }
          }
          const std::size_t lo = j > rows_r ? j - rows_r : 1;
          const std::size_t hi = std::min(rows_l, j - 1);
          if (!in_r) {
            for (std::size_t jl = std::max<std::size_t>(1, lo); jl <= hi; ++jl) {
              const double v = dedup(plus(b, plus(at(l, jl, c), best_r[j - jl - 1])), 1.0, c);
              if (v < best) best = v, ch = pack(kRightNew, jl);
            }
          }
          if (!in_l) {
            for (std::size_t jl = std::max<std::size_t>(1, lo); jl <= hi; ++jl) {
              const double v = dedup(plus(b, plus(best_l[jl - 1], at(r, j - jl, c))), 1.0, c);
              if (v < best) best = v, ch = pack(kLeftNew, jl);
            }
          }
          if (!in_l && !in_r && j >= 3) {
            const double v = plus(b, both_val[j]);
            if (v < best) best = v, ch = pack(kBothNew, both_jl[j]);
          }
          if (ch != kNoChoice) store(j, c, best, ch);
        }
      }, 128);
    }

    // Best center inside T_u per part count; smallest index wins ties.
    best_[u].assign(k_, kInf);
    best_arg_[u].assign(k_, kNoIndex);
    for (std::size_t j = 1; j <= rows_u; ++j) {
      for (PointIndex c : bt_.originals_in(u)) {
        const double v = at(u, j, c);
        if (v < best_[u][j - 1] || (v == best_[u][j - 1] && c < best_arg_[u][j - 1] && !std::isinf(v))) {
          best_[u][j - 1] = v;
          best_arg_[u][j - 1] = c;
        }
      }
    }
  }

  const RootedBinaryTree& bt_;
  const MetricSpace& m_;
  const Objective& obj_;
  std::size_t k_;
  std::size_t n_;
  bool track_;
  bool sum_mode_;
  bool subtract_;
  std::vector<double> fval_;
  std::vector<std::vector<double>> table_;      // per node: k slabs of n centers
  std::vector<std::vector<std::uint32_t>> choice_;
  std::vector<std::vector<double>> best_;        // per node: best over centers in T_u, per part count
  std::vector<std::vector<PointIndex>> best_arg_;
  double answer_ = kInf;
  PointIndex answer_center_ = kNoIndex;
};

}  // namespace

DpSolution dp_solve(const RootedBinaryTree& bt, const MetricSpace& m, const Objective& obj, std::size_t k,
                    const DpOptions& options) {
  DpEngine engine(bt, m, obj, k, /*track=*/true, options);
  engine.run();
  DpSolution sol = engine.reconstruct();

  std::vector<int> assignment(bt.n_original);
  for (PointIndex p = 0; p < bt.n_original; ++p) assignment[p] = sol.node_part[p];
  assignment = canonical_labels(assignment);
  if (cluster_count(assignment) != k) throw std::logic_error("dp: reconstruction produced the wrong part count");

  const ClusteringCost recomputed = clustering_cost(assignment, m, obj);
  if (!near_relative(recomputed.cost, sol.dp_cost, 1e-9)) {
    throw std::logic_error("dp: reconstructed clustering cost disagrees with the table value");
  }
  sol.clustering = Clustering{std::move(assignment), recomputed.centers, sol.dp_cost};
  return sol;
}

Clustering dp_cluster(const RootedBinaryTree& bt, const MetricSpace& m, const Objective& obj, std::size_t k,
                      const DpOptions& options) {
  return dp_solve(bt, m, obj, k, options).clustering;
}

double dp_cost_only(const RootedBinaryTree& bt, const MetricSpace& m, const Objective& obj, std::size_t k,
                    const DpOptions& options) {
  DpEngine engine(bt, m, obj, k, /*track=*/false, options);
  engine.run();
  return engine.answer();
}

Clustering solve_tree_clustering(const MetricSpace& m, const Objective& obj, std::size_t k, PointIndex root) {
  return dp_cluster(root_and_binarize(kruskal(m), root), m, obj, k);
}

}  // namespace resclust
