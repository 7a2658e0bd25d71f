#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "camem/lattice.hpp"

namespace camem {

// Edge-deletion reduction of a shelled lattice to a directed tree: drop
// up-edges, same-shell edges, self-loops, and children already claimed by an
// earlier (index-order) vertex of the same shell.  Every deleted argument is
// accounted as a constant worst-case vote, lowering the majority threshold.
struct TreeRuleSet {
  Lattice tree;                      // retained edges, directed away from root
  std::uint32_t root = 0;
  std::vector<int> out_degree;       // d(v) = retained children count
  std::vector<int> threshold;        // h(v) = ceil((d_G(v)+1)/2) - r(v), floored at 0
  std::vector<int> deletions;        // r(v)
  int max_deletions = 0;             // r = max over non-boundary v of r(v)

  struct DeletionDetail {
    int parent = 0;   // edges lost toward the previous shell
    int sibling = 0;  // same-shell edges lost
    int child = 0;    // children claimed by an earlier vertex
    int self_loop = 0;
  };
  std::vector<DeletionDetail> detail;
};

TreeRuleSet treeify(const Lattice& lattice, std::uint32_t root);

struct TreeCheck {
  bool ok = false;
  std::vector<std::string> diagnostics;  // vertices with two parents, cycles
};

// True iff the retained edges form a tree rooted at rules.root spanning
// every vertex.
TreeCheck verify_directed_tree(const TreeRuleSet& rules);

// CSV: vertex,shell,r,deleted_parent,deleted_sibling,deleted_child,self_loop
std::string deletion_report_csv(const TreeRuleSet& rules);

}  // namespace camem
