#include <algorithm>
#include <map>

#include "rkbench/order_conditions.hpp"

namespace rkbench::detail {

namespace {

// Partitions of n into parts <= maxp, parts non-increasing.
void partitions_rec(int n, int maxp, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, maxp); k >= 1; --k) {
    cur.push_back(k);
    partitions_rec(n - k, k, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  partitions_rec(n, n, cur, out);
  return out;
}

Tree make_tree(std::vector<Tree> kids) {
  std::sort(kids.begin(), kids.end(),
            [](const Tree& a, const Tree& b) { return a.enc < b.enc; });
  Tree t;
  t.order = 1;
  t.enc = "(";
  for (const Tree& k : kids) {
    t.order += k.order;
    t.enc += k.enc;
  }
  t.enc += ")";
  t.kids = std::move(kids);
  return t;
}

CTree make_ctree(bool a_node, std::vector<CTree> kids) {
  std::sort(kids.begin(), kids.end(),
            [](const CTree& a, const CTree& b) { return a.enc < b.enc; });
  CTree t;
  t.a_node = a_node;
  t.order = 1;
  for (const CTree& k : kids) t.order += k.order;
  if (a_node) {
    t.enc = "A[" + kids[0].enc + "]";
  } else if (kids.empty()) {
    t.enc = "f";
  } else {
    t.enc = "f[";
    for (size_t i = 0; i < kids.size(); ++i) {
      if (i) t.enc += ",";
      t.enc += kids[i].enc;
    }
    t.enc += "]";
  }
  t.kids = std::move(kids);
  return t;
}

// Enumerates every way to pick one child tree per slot of the partition,
// handing each canonicalized parent to sink.
template <typename TreeT, typename Getter, typename Sink>
void product_over_partition(const std::vector<int>& part, const Getter& get,
                            std::vector<TreeT>& picked, size_t pos,
                            const Sink& sink) {
  if (pos == part.size()) {
    sink(picked);
    return;
  }
  for (const TreeT& cand : get(part[pos])) {
    picked.push_back(cand);
    product_over_partition<TreeT>(part, get, picked, pos + 1, sink);
    picked.pop_back();
  }
}

}  // namespace

const std::vector<Tree>& trees_of_order(int n) {
  static std::map<int, std::vector<Tree>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<Tree> result;
  if (n == 1) {
    result.push_back(make_tree({}));
  } else {
    std::map<std::string, Tree> dedup;
    for (const auto& part : partitions(n - 1)) {
      std::vector<Tree> picked;
      product_over_partition<Tree>(
          part, [](int k) -> const std::vector<Tree>& { return trees_of_order(k); },
          picked, 0, [&](const std::vector<Tree>& kids) {
            Tree t = make_tree(kids);
            dedup.emplace(t.enc, std::move(t));
          });
    }
    for (auto& [enc, t] : dedup) result.push_back(std::move(t));
  }
  return cache.emplace(n, std::move(result)).first->second;
}

std::vector<const Tree*> trees_up_to(int p) {
  std::vector<const Tree*> out;
  for (int n = 1; n <= p; ++n)
    for (const Tree& t : trees_of_order(n)) out.push_back(&t);
  return out;
}

double tree_density(const Tree& t) {
  double g = t.order;
  for (const Tree& k : t.kids) g *= tree_density(k);
  return g;
}

Vec phi_rk(const Tree& t, const Mat& A) {
  const Eigen::Index s = A.rows();
  if (t.kids.empty()) return Vec::Ones(s);
  Vec prod = Vec::Ones(s);
  for (const Tree& k : t.kids) prod = prod.cwiseProduct((A * phi_rk(k, A)).eval());
  return prod;
}

Vec phi_ros(const Tree& t, const Mat& alpha, const Mat& beta) {
  const Eigen::Index s = alpha.rows();
  if (t.kids.empty()) return Vec::Ones(s);
  if (t.kids.size() == 1) return beta * phi_ros(t.kids[0], alpha, beta);
  Vec prod = Vec::Ones(s);
  for (const Tree& k : t.kids)
    prod = prod.cwiseProduct((alpha * phi_ros(k, alpha, beta)).eval());
  return prod;
}

const std::vector<CTree>& colored_trees_of_order(int n) {
  static std::map<int, std::vector<CTree>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<CTree> result;
  if (n == 1) {
    result.push_back(make_ctree(false, {}));
  } else {
    std::map<std::string, CTree> dedup;
    for (const auto& part : partitions(n - 1)) {
      std::vector<CTree> picked;
      product_over_partition<CTree>(
          part,
          [](int k) -> const std::vector<CTree>& { return colored_trees_of_order(k); },
          picked, 0, [&](const std::vector<CTree>& kids) {
            CTree t = make_ctree(false, kids);
            dedup.emplace(t.enc, std::move(t));
          });
    }
    for (const CTree& child : colored_trees_of_order(n - 1)) {
      CTree t = make_ctree(true, {child});
      dedup.emplace(t.enc, std::move(t));
    }
    for (auto& [enc, t] : dedup) result.push_back(std::move(t));
  }
  return cache.emplace(n, std::move(result)).first->second;
}

std::vector<const CTree*> colored_trees_up_to(int p) {
  std::vector<const CTree*> out;
  for (int n = 1; n <= p; ++n)
    for (const CTree& t : colored_trees_of_order(n)) out.push_back(&t);
  return out;
}

bool is_pure(const CTree& t) {
  if (t.a_node) return false;
  for (const CTree& k : t.kids)
    if (!is_pure(k)) return false;
  return true;
}

bool is_chain(const CTree& t) {
  if (t.kids.size() > 1) return false;
  return t.kids.empty() || is_chain(t.kids[0]);
}

bool is_rok_mergeable(const CTree& t) {
  if (t.a_node && !is_chain(t.kids[0])) return false;
  for (const CTree& k : t.kids)
    if (!is_rok_mergeable(k)) return false;
  return true;
}

Tree shape_of(const CTree& t) {
  std::vector<Tree> kids;
  kids.reserve(t.kids.size());
  for (const CTree& k : t.kids) kids.push_back(shape_of(k));
  return make_tree(std::move(kids));
}

Vec phi_colored(const CTree& t, const Mat& alpha, const Mat& Gamma) {
  const Eigen::Index s = alpha.rows();
  if (t.a_node) return Gamma * phi_colored(t.kids[0], alpha, Gamma);
  if (t.kids.empty()) return Vec::Ones(s);
  Vec prod = Vec::Ones(s);
  for (const CTree& k : t.kids)
    prod = prod.cwiseProduct((alpha * phi_colored(k, alpha, Gamma)).eval());
  return prod;
}

}  // namespace rkbench::detail
