#pragma once

#include "strata/index_set.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace strata {

/// Raised whenever an operation receives S = {} where a stratum is required.
class EmptyStratumError : public std::invalid_argument {
 public:
  EmptyStratumError() : std::invalid_argument("empty stratum") {}
};

enum class IntervalKind { closed, open_left, open_right, open };

/// The cyclic walk x, x+1, ..., y (inclusive), with endpoints dropped per kind.
IndexSet interval(int x, int y, int n, IntervalKind kind = IntervalKind::closed);

/// First element of S met in the walk x+1, x+2, ...; x itself when |S| = 1.
int follows(int x, const IndexSet& S);

/// Smallest g >= 1 with s - g in S.
int gamma(int s, const IndexSet& S);

enum class EdgeKind { dotted, plain };

struct ChainEdge {
  int from;  // i
  int to;    // i + 1 (reduced)
  EdgeKind kind;
};

/// A connected component of the chain diagram: a path tail, tail+1, ..., head.
struct ChainComponent {
  std::vector<int> vertices;
  int tail;
  int head;
};

/// The circular diagram on E_n with an edge i -- i+1 whenever i+1 is not in S;
/// the edge is plain when i is in R and dotted otherwise.
class ChainDiagram {
 public:
  ChainDiagram(IndexSet R, IndexSet S);

  int modulus() const { return R_.modulus(); }
  const IndexSet& parabolic_type() const { return R_; }
  const IndexSet& stratum() const { return S_; }
  const std::vector<ChainEdge>& edges() const { return edges_; }
  const std::vector<ChainComponent>& components() const { return components_; }

  /// Kind of the edge i -- i+1, if present.
  std::optional<EdgeKind> edge_after(int i) const;
  const ChainComponent& component_of(int vertex) const;
  IndexSet heads() const;
  IndexSet tails() const;

 private:
  IndexSet R_;
  IndexSet S_;
  std::vector<ChainEdge> edges_;
  std::vector<ChainComponent> components_;
  std::vector<int> component_index_;  // by vertex, 1-based
};

ChainDiagram chain_diagram(const IndexSet& R, const IndexSet& S);

/// Dotted edges have exactly one endpoint in T, plain edges zero or two.
bool is_admissible_subset(const IndexSet& T, const ChainDiagram& diagram);

/// T is i-positive when (i-1 in T) <=> (i-1 in R).
bool is_positive_at(const IndexSet& T, int i, const IndexSet& R);

/// Sign set of the unique positive admissible homogeneous S-adapted p-cone:
/// anchor every head s-1 by membership in R, then propagate backwards along
/// each component (plain edges keep membership, dotted edges flip it).
IndexSet phi(const IndexSet& R, const IndexSet& S);

/// {s - i : s in S, i odd, 1 <= i < gamma(s)}. Kept for cross-checking only.
IndexSet phi_odd_offset_formula(const IndexSet& S);

/// {s - i : s in S, i even, 2 <= i <= gamma(s)}; agrees with phi when R is empty.
IndexSet phi_even_offset_formula(const IndexSet& S);

/// phi(R, S) == phi(R, S \ {j}). Requires j in S and |S| >= 2.
bool is_removable(int j, const IndexSet& R, const IndexSet& S);
/// No element of S is removable. Requires |S| >= 2.
bool is_irreducible(const IndexSet& R, const IndexSet& S);

/// Members of S listed s_1 = start, s_2 = follows(s_1), ...
std::vector<int> cyclic_order(const IndexSet& S, int start);

}  // namespace strata
