#pragma once

#include <string>
#include <vector>

#include "rkbench/types.hpp"

// Rooted-tree and two-colored-tree machinery backing verify_order_conditions.
namespace rkbench::detail {

// Rooted tree in canonical form: children sorted by encoding.
struct Tree {
  std::vector<Tree> kids;
  int order = 1;
  std::string enc;  // canonical encoding, e.g. "(()())"
};

// All rooted trees with exactly n nodes (canonical, deduplicated), cached.
const std::vector<Tree>& trees_of_order(int n);
std::vector<const Tree*> trees_up_to(int p);

// Density gamma(t): order(t) * prod over children of density(child).
double tree_density(const Tree& t);

// Elementary weight stage vectors. phi_rk: every child maps through A then
// multiplies elementwise. phi_ros: a single child maps through beta, branches
// map through alpha (the merged Rosenbrock form, beta = alpha + Gamma).
Vec phi_rk(const Tree& t, const Mat& A);
Vec phi_ros(const Tree& t, const Mat& alpha, const Mat& beta);

// Two-colored tree: f-nodes carry any number of children, A-nodes exactly one
// (an application of the substitute operator).
struct CTree {
  bool a_node = false;
  std::vector<CTree> kids;
  int order = 1;
  std::string enc;  // e.g. "f[A[f],f]"
};

const std::vector<CTree>& colored_trees_of_order(int n);
std::vector<const CTree*> colored_trees_up_to(int p);

bool is_pure(const CTree& t);       // no A-nodes anywhere
bool is_chain(const CTree& t);      // no branching anywhere
// True iff no A-node sits above a branching subtree; such colorings are the
// ones a Krylov space seeded with f reproduces exactly (A^k f terms).
bool is_rok_mergeable(const CTree& t);

// Shape: the rooted tree obtained by forgetting colors.
Tree shape_of(const CTree& t);

Vec phi_colored(const CTree& t, const Mat& alpha, const Mat& Gamma);

}  // namespace rkbench::detail
