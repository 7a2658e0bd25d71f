#include <cstdint>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "camem/treeify.hpp"

namespace camem {

namespace {
constexpr std::uint32_t kUnclaimed = UINT32_MAX;
}

TreeRuleSet treeify(const Lattice& lattice, std::uint32_t root) {
  if (root >= lattice.size())
    throw std::invalid_argument("treeify: root index out of range");

  TreeRuleSet out;
  out.root = root;
  out.tree = classify_shells(lattice, root);
  Lattice& g = out.tree;

  std::size_t n = g.size();
  out.out_degree.assign(n, 0);
  out.threshold.assign(n, 0);
  out.deletions.assign(n, 0);
  out.detail.assign(n, TreeRuleSet::DeletionDetail{});

  // Children are claimed on first encounter; vertices run in index order, so
  // a cell shared by several same-shell predecessors keeps only the edge
  // from the smallest-index one.
  std::vector<std::uint32_t> claimed_by(n, kUnclaimed);
  for (std::uint32_t v = 0; v < n; ++v) {
    auto& det = out.detail[v];
    std::vector<std::uint32_t> keep;
    for (std::uint32_t w : g.out_edges[v]) {
      if (w == v) {
        ++det.self_loop;
      } else if (g.shell[w] < g.shell[v]) {
        ++det.parent;
      } else if (g.shell[w] == g.shell[v]) {
        ++det.sibling;
      } else if (claimed_by[w] == kUnclaimed) {
        claimed_by[w] = v;
        keep.push_back(w);
      } else {
        ++det.child;
      }
    }
    int arity = static_cast<int>(g.out_edges[v].size());
    int r = det.parent + det.sibling + det.child + det.self_loop;
    out.deletions[v] = r;
    out.out_degree[v] = static_cast<int>(keep.size());
    // Each deleted argument is replaced by a worst-case constant vote, which
    // lowers the strict-majority threshold of the original arity one-for-one.
    out.threshold[v] = std::max(0, (arity + 2) / 2 - r);
    g.out_edges[v] = std::move(keep);
    if (!g.boundary[v]) out.max_deletions = std::max(out.max_deletions, r);
  }
  return out;
}

TreeCheck verify_directed_tree(const TreeRuleSet& rules) {
  const Lattice& g = rules.tree;
  std::size_t n = g.size();
  TreeCheck check;

  std::vector<int> indeg(n, 0);
  for (std::uint32_t v = 0; v < n; ++v)
    for (std::uint32_t w : g.out_edges[v]) {
      if (w >= n) {
        check.diagnostics.push_back("edge target out of range at vertex " +
                                    std::to_string(v));
        check.ok = false;
        return check;
      }
      ++indeg[w];
    }

  if (indeg[rules.root] != 0)
    check.diagnostics.push_back("root " + std::to_string(rules.root) +
                                " has " + std::to_string(indeg[rules.root]) +
                                " parent(s)");
  for (std::uint32_t v = 0; v < n; ++v)
    if (v != rules.root && indeg[v] != 1)
      check.diagnostics.push_back("vertex " + std::to_string(v) + " has " +
                                  std::to_string(indeg[v]) + " parent(s)");

  std::vector<std::uint8_t> seen(n, 0);
  std::queue<std::uint32_t> frontier;
  seen[rules.root] = 1;
  frontier.push(rules.root);
  std::size_t reached = 1;
  while (!frontier.empty()) {
    std::uint32_t v = frontier.front();
    frontier.pop();
    for (std::uint32_t w : g.out_edges[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        frontier.push(w);
      }
  }
  if (reached != n)
    for (std::uint32_t v = 0; v < n; ++v)
      if (!seen[v])
        check.diagnostics.push_back(
            "vertex " + std::to_string(v) +
            " unreachable from root (orphaned or in a cycle)");

  check.ok = check.diagnostics.empty();
  return check;
}

std::string deletion_report_csv(const TreeRuleSet& rules) {
  std::ostringstream out;
  out << "vertex,shell,r,deleted_parent,deleted_sibling,deleted_child,self_loop\n";
  for (std::uint32_t v = 0; v < rules.tree.size(); ++v) {
    const auto& det = rules.detail[v];
    out << v << ',' << rules.tree.shell[v] << ',' << rules.deletions[v] << ','
        << det.parent << ',' << det.sibling << ',' << det.child << ','
        << det.self_loop << '\n';
  }
  return out.str();
}

}  // namespace camem
