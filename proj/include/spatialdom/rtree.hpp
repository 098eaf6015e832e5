#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "spatialdom/domination.hpp"
#include "spatialdom/entry.hpp"
#include "spatialdom/geometry.hpp"

namespace spatialdom {

/// Which pruning test candidate filtering runs with: the complete criterion
/// or the classic min/max-dist baseline.
enum class PruneCriterion { Eq2, MinMax };

inline const char* to_string(PruneCriterion c) {
  return c == PruneCriterion::Eq2 ? "eq2" : "minmax";
}

inline std::optional<PruneCriterion> parse_criterion(std::string_view s) {
  if (s == "eq2") return PruneCriterion::Eq2;
  if (s == "minmax") return PruneCriterion::MinMax;
  return std::nullopt;
}

/// Per-query instrumentation. candidates_returned + entries_pruned always
/// equals the dataset size.
struct QueryStats {
  std::uint64_t domination_tests = 0;
  std::uint64_t nodes_visited = 0;
  std::uint64_t entries_pruned = 0;
  std::uint64_t candidates_returned = 0;
};

/// Node of the bulk-loaded hierarchy. Leaves (level 0) hold entries,
/// internal nodes hold child nodes; mbr always contains everything beneath.
/// Immutable after build, so concurrent readers need no locking.
struct RTreeNode {
  Rect mbr;
  int level;
  std::vector<RTreeNode> children;
  std::vector<Entry> entries;
  std::size_t subtree_entries;

  bool is_leaf() const { return level == 0; }
};

/// Candidate ids plus the instrumentation gathered while computing them.
struct CandidateSet {
  std::set<std::int64_t> ids;
  QueryStats stats;
};

namespace detail {

struct TileItem {
  std::vector<double> center;
  std::int64_t tie_id;  // entry id, or min entry id of a subtree
  std::size_t src;
};

// Smallest s with s^k >= p.
inline std::size_t ceil_root(std::size_t p, std::size_t k) {
  if (k <= 1 || p <= 1) return p;
  auto pow_ge = [&](std::size_t base) {
    long double acc = 1.0L;
    for (std::size_t i = 0; i < k && acc < static_cast<long double>(p); ++i) {
      acc *= static_cast<long double>(base);
    }
    return acc >= static_cast<long double>(p);
  };
  auto s = static_cast<std::size_t>(
      std::ceil(std::pow(static_cast<double>(p), 1.0 / static_cast<double>(k))));
  if (s < 1) s = 1;
  while (s > 1 && pow_ge(s - 1)) --s;
  while (!pow_ge(s)) ++s;
  return s;
}

// slabs^(rem_dims) * fanout, saturated at n.
inline std::size_t slab_capacity(std::size_t slabs, std::size_t rem_dims,
                                 std::size_t fanout, std::size_t n) {
  long double cap = static_cast<long double>(fanout);
  for (std::size_t i = 0; i < rem_dims && cap < static_cast<long double>(n); ++i) {
    cap *= static_cast<long double>(slabs);
  }
  if (cap >= static_cast<long double>(n)) return n;
  return static_cast<std::size_t>(cap);
}

// Sort-tile-recursive grouping: sorts [begin, end) on the current dimension
// (ties by id, so the result is independent of input order), slices into
// slabs sized for the remaining dimensions, and recurses; the last dimension
// chunks runs of fanout. Appends groups of source indices.
inline void str_tile(std::vector<TileItem>& items, std::size_t begin,
                     std::size_t end, std::size_t dim, std::size_t d,
                     std::size_t fanout,
                     std::vector<std::vector<std::size_t>>& groups) {
  const std::size_t n = end - begin;
  std::sort(items.begin() + static_cast<std::ptrdiff_t>(begin),
            items.begin() + static_cast<std::ptrdiff_t>(end),
            [dim](const TileItem& x, const TileItem& y) {
              if (x.center[dim] != y.center[dim]) {
                return x.center[dim] < y.center[dim];
              }
              return x.tie_id < y.tie_id;
            });
  if (dim + 1 == d || n <= fanout) {
    for (std::size_t at = begin; at < end; at += fanout) {
      const std::size_t stop = std::min(at + fanout, end);
      std::vector<std::size_t> group;
      group.reserve(stop - at);
      for (std::size_t i = at; i < stop; ++i) group.push_back(items[i].src);
      groups.push_back(std::move(group));
    }
    return;
  }
  const std::size_t pages = (n + fanout - 1) / fanout;
  const std::size_t slabs = ceil_root(pages, d - dim);
  const std::size_t per_slab = slab_capacity(slabs, d - dim - 1, fanout, n);
  for (std::size_t at = begin; at < end; at += per_slab) {
    str_tile(items, at, std::min(at + per_slab, end), dim + 1, d, fanout,
             groups);
  }
}

inline bool crit_test(PruneCriterion c, const Rect& a, const Rect& b,
                      const Rect& ref, const LpNorm& norm) {
  return c == PruneCriterion::Eq2 ? dominates(a, b, ref, norm)
                                  : minmax_dominates(a, b, ref, norm);
}

inline void collect_entries(const RTreeNode& node,
                            std::vector<const Entry*>& out) {
  if (node.is_leaf()) {
    for (const Entry& e : node.entries) out.push_back(&e);
  } else {
    for (const RTreeNode& child : node.children) collect_entries(child, out);
  }
}

inline void collect_ids(const RTreeNode& node,
                        std::unordered_set<std::int64_t>& out) {
  if (node.is_leaf()) {
    for (const Entry& e : node.entries) out.insert(e.id);
  } else {
    for (const RTreeNode& child : node.children) collect_ids(child, out);
  }
}

}  // namespace detail

/// Bulk-loads a height-balanced tree over the given entries by
/// sort-tile-recursive packing. Deterministic: sorting ties break on entry
/// id. Every node ends up with 1..fanout children.
inline RTreeNode build_str(const std::vector<Entry>& entries,
                           std::size_t fanout) {
  if (entries.empty()) {
    throw std::invalid_argument("build_str: no entries");
  }
  if (fanout < 2) {
    throw std::invalid_argument("build_str: fanout must be >= 2");
  }
  const std::size_t d = entries[0].mbr.dim();
  for (const Entry& e : entries) {
    detail::require_same_dim(d, e.mbr.dim(), "build_str");
  }

  std::vector<detail::TileItem> items;
  items.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    items.push_back({entries[i].mbr.center().coords(), entries[i].id, i});
  }
  std::vector<std::vector<std::size_t>> groups;
  detail::str_tile(items, 0, items.size(), 0, d, fanout, groups);

  std::vector<RTreeNode> level_nodes;
  std::vector<std::int64_t> level_min_ids;
  level_nodes.reserve(groups.size());
  for (const auto& group : groups) {
    std::vector<Entry> leaf_entries;
    leaf_entries.reserve(group.size());
    for (std::size_t gi : group) leaf_entries.push_back(entries[gi]);
    Rect mbr = leaf_entries[0].mbr;
    std::int64_t min_id = leaf_entries[0].id;
    for (std::size_t i = 1; i < leaf_entries.size(); ++i) {
      mbr.expand(leaf_entries[i].mbr);
      min_id = std::min(min_id, leaf_entries[i].id);
    }
    const std::size_t count = leaf_entries.size();
    level_nodes.push_back(
        RTreeNode{std::move(mbr), 0, {}, std::move(leaf_entries), count});
    level_min_ids.push_back(min_id);
  }

  int level = 1;
  while (level_nodes.size() > 1) {
    items.clear();
    for (std::size_t i = 0; i < level_nodes.size(); ++i) {
      items.push_back(
          {level_nodes[i].mbr.center().coords(), level_min_ids[i], i});
    }
    groups.clear();
    detail::str_tile(items, 0, items.size(), 0, d, fanout, groups);

    std::vector<RTreeNode> parents;
    std::vector<std::int64_t> parent_min_ids;
    parents.reserve(groups.size());
    for (const auto& group : groups) {
      std::vector<RTreeNode> kids;
      kids.reserve(group.size());
      std::int64_t min_id = level_min_ids[group[0]];
      for (std::size_t gi : group) {
        min_id = std::min(min_id, level_min_ids[gi]);
        kids.push_back(std::move(level_nodes[gi]));
      }
      Rect mbr = kids[0].mbr;
      std::size_t count = kids[0].subtree_entries;
      for (std::size_t i = 1; i < kids.size(); ++i) {
        mbr.expand(kids[i].mbr);
        count += kids[i].subtree_entries;
      }
      parents.push_back(
          RTreeNode{std::move(mbr), level, std::move(kids), {}, count});
      parent_min_ids.push_back(min_id);
    }
    level_nodes = std::move(parents);
    level_min_ids = std::move(parent_min_ids);
    ++level;
  }
  return std::move(level_nodes.front());
}

/// Survivors of kNN filtering around query: exactly the entries with fewer
/// than k distinct dominators under the chosen criterion. Subtrees whose
/// whole MBR has k dominators are discarded without visiting their entries;
/// dominator counting always runs over entry MBRs, so the result matches
/// the naive evaluation exactly.
inline CandidateSet knn_candidates(const RTreeNode& root, const Rect& query,
                                   std::size_t k, PruneCriterion crit,
                                   const LpNorm& norm) {
  if (k < 1) throw std::invalid_argument("knn_candidates: k must be >= 1");
  detail::require_same_dim(root.mbr.dim(), query.dim(), "knn_candidates");
  std::vector<const Entry*> pool;
  detail::collect_entries(root, pool);

  CandidateSet result;
  std::vector<const RTreeNode*> stack{&root};
  while (!stack.empty()) {
    const RTreeNode* node = stack.back();
    stack.pop_back();
    ++result.stats.nodes_visited;

    // An entry contained in this node's MBR can never dominate it, so the
    // count below is valid for every entry underneath.
    std::size_t node_dominators = 0;
    for (const Entry* cand : pool) {
      ++result.stats.domination_tests;
      if (detail::crit_test(crit, cand->mbr, node->mbr, query, norm)) {
        if (++node_dominators >= k) break;
      }
    }
    if (node_dominators >= k) {
      result.stats.entries_pruned += node->subtree_entries;
      continue;
    }

    if (node->is_leaf()) {
      for (const Entry& target : node->entries) {
        std::size_t dominators = 0;
        for (const Entry* cand : pool) {
          if (cand->id == target.id) continue;
          ++result.stats.domination_tests;
          if (detail::crit_test(crit, cand->mbr, target.mbr, query, norm)) {
            if (++dominators >= k) break;
          }
        }
        if (dominators >= k) {
          ++result.stats.entries_pruned;
        } else {
          result.ids.insert(target.id);
        }
      }
    } else {
      for (auto it = node->children.rbegin(); it != node->children.rend();
           ++it) {
        stack.push_back(&*it);
      }
    }
  }
  result.stats.candidates_returned = result.ids.size();
  return result;
}

/// O(n^2) oracle twin of knn_candidates.
inline std::set<std::int64_t> naive_knn_candidates(
    const std::vector<Entry>& entries, const Rect& query, std::size_t k,
    PruneCriterion crit, const LpNorm& norm) {
  if (k < 1) throw std::invalid_argument("naive_knn_candidates: k must be >= 1");
  std::set<std::int64_t> out;
  for (const Entry& target : entries) {
    detail::require_same_dim(target.mbr.dim(), query.dim(),
                             "naive_knn_candidates");
    std::size_t dominators = 0;
    for (const Entry& cand : entries) {
      if (cand.id == target.id) continue;
      if (detail::crit_test(crit, cand.mbr, target.mbr, query, norm)) {
        if (++dominators >= k) break;
      }
    }
    if (dominators < k) out.insert(target.id);
  }
  return out;
}

/// Survivors of reverse-kNN filtering: entries for which fewer than k other
/// entries provably sit closer to them than the query does. The domination
/// test runs with the candidate's own MBR as the reference region, so
/// subtree pruning additionally excludes dominators stored inside the
/// subtree being tested.
inline CandidateSet rknn_candidates(const RTreeNode& root, const Rect& query,
                                    std::size_t k, PruneCriterion crit,
                                    const LpNorm& norm) {
  if (k < 1) throw std::invalid_argument("rknn_candidates: k must be >= 1");
  detail::require_same_dim(root.mbr.dim(), query.dim(), "rknn_candidates");
  std::vector<const Entry*> pool;
  detail::collect_entries(root, pool);

  CandidateSet result;
  std::vector<const RTreeNode*> stack{&root};
  while (!stack.empty()) {
    const RTreeNode* node = stack.back();
    stack.pop_back();
    ++result.stats.nodes_visited;

    std::unordered_set<std::int64_t> inside;
    detail::collect_ids(*node, inside);
    std::size_t node_dominators = 0;
    for (const Entry* cand : pool) {
      if (inside.contains(cand->id)) continue;
      ++result.stats.domination_tests;
      if (detail::crit_test(crit, cand->mbr, query, node->mbr, norm)) {
        if (++node_dominators >= k) break;
      }
    }
    if (node_dominators >= k) {
      result.stats.entries_pruned += node->subtree_entries;
      continue;
    }

    if (node->is_leaf()) {
      for (const Entry& target : node->entries) {
        std::size_t dominators = 0;
        for (const Entry* cand : pool) {
          if (cand->id == target.id) continue;
          ++result.stats.domination_tests;
          if (detail::crit_test(crit, cand->mbr, query, target.mbr, norm)) {
            if (++dominators >= k) break;
          }
        }
        if (dominators >= k) {
          ++result.stats.entries_pruned;
        } else {
          result.ids.insert(target.id);
        }
      }
    } else {
      for (auto it = node->children.rbegin(); it != node->children.rend();
           ++it) {
        stack.push_back(&*it);
      }
    }
  }
  result.stats.candidates_returned = result.ids.size();
  return result;
}

/// O(n^2) oracle twin of rknn_candidates.
inline std::set<std::int64_t> naive_rknn_candidates(
    const std::vector<Entry>& entries, const Rect& query, std::size_t k,
    PruneCriterion crit, const LpNorm& norm) {
  if (k < 1) {
    throw std::invalid_argument("naive_rknn_candidates: k must be >= 1");
  }
  std::set<std::int64_t> out;
  for (const Entry& target : entries) {
    detail::require_same_dim(target.mbr.dim(), query.dim(),
                             "naive_rknn_candidates");
    std::size_t dominators = 0;
    for (const Entry& cand : entries) {
      if (cand.id == target.id) continue;
      if (detail::crit_test(crit, cand.mbr, query, target.mbr, norm)) {
        if (++dominators >= k) break;
      }
    }
    if (dominators < k) out.insert(target.id);
  }
  return out;
}

}  // namespace spatialdom
