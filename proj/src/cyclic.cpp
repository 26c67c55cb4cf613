#include "strata/cyclic.hpp"

#include <stdexcept>
#include <string>

namespace strata {

IndexSet interval(int x, int y, int n, IntervalKind kind) {
  IndexSet out(n);
  x = reduce(x, n);
  y = reduce(y, n);
  for (int v = x;; v = reduce(v + 1, n)) {
    out = out.with(v);
    if (v == y) break;
  }
  if (kind == IntervalKind::open_left || kind == IntervalKind::open) out = out.without(x);
  if (kind == IntervalKind::open_right || kind == IntervalKind::open) out = out.without(y);
  return out;
}

int follows(int x, const IndexSet& S) {
  if (S.empty()) throw EmptyStratumError();
  const int n = S.modulus();
  for (int step = 1; step <= n; ++step) {
    if (S.contains(x + step)) return reduce(x + step, n);
  }
  throw std::logic_error("follows: unreachable");
}

int gamma(int s, const IndexSet& S) {
  if (!S.contains(s)) {
    throw std::invalid_argument("gamma: " + std::to_string(s) + " is not in " + S.to_braced());
  }
  const int n = S.modulus();
  for (int g = 1; g <= n; ++g) {
    if (S.contains(s - g)) return g;
  }
  throw std::logic_error("gamma: unreachable");
}

ChainDiagram::ChainDiagram(IndexSet R, IndexSet S) : R_(R), S_(S) {
  if (R.modulus() != S.modulus()) throw std::invalid_argument("chain diagram: modulus mismatch");
  if (S.empty()) throw EmptyStratumError();
  const int n = S.modulus();
  for (int i = 1; i <= n; ++i) {
    const int next = reduce(i + 1, n);
    if (!S.contains(next)) {
      edges_.push_back({i, next, R.contains(i) ? EdgeKind::plain : EdgeKind::dotted});
    }
  }
  component_index_.assign(static_cast<std::size_t>(n + 1), -1);
  for (int s : S.members()) {
    ChainComponent c{{}, s, s};
    int v = s;
    do {
      c.vertices.push_back(v);
      component_index_[static_cast<std::size_t>(v)] = static_cast<int>(components_.size());
      c.head = v;
      v = reduce(v + 1, n);
    } while (!S.contains(v));
    components_.push_back(std::move(c));
  }
}

std::optional<EdgeKind> ChainDiagram::edge_after(int i) const {
  if (S_.contains(i + 1)) return std::nullopt;
  return R_.contains(i) ? EdgeKind::plain : EdgeKind::dotted;
}

const ChainComponent& ChainDiagram::component_of(int vertex) const {
  const int idx = component_index_.at(static_cast<std::size_t>(reduce(vertex, modulus())));
  return components_.at(static_cast<std::size_t>(idx));
}

IndexSet ChainDiagram::heads() const {
  IndexSet out(modulus());
  for (const auto& c : components_) out = out.with(c.head);
  return out;
}

IndexSet ChainDiagram::tails() const {
  IndexSet out(modulus());
  for (const auto& c : components_) out = out.with(c.tail);
  return out;
}

ChainDiagram chain_diagram(const IndexSet& R, const IndexSet& S) { return ChainDiagram(R, S); }

bool is_admissible_subset(const IndexSet& T, const ChainDiagram& diagram) {
  for (const ChainEdge& e : diagram.edges()) {
    const bool a = T.contains(e.from);
    const bool b = T.contains(e.to);
    if (e.kind == EdgeKind::dotted && a == b) return false;
    if (e.kind == EdgeKind::plain && a != b) return false;
  }
  return true;
}

bool is_positive_at(const IndexSet& T, int i, const IndexSet& R) {
  return T.contains(i - 1) == R.contains(i - 1);
}

IndexSet phi(const IndexSet& R, const IndexSet& S) {
  const ChainDiagram diagram(R, S);
  IndexSet T(S.modulus());
  for (const ChainComponent& c : diagram.components()) {
    bool inside = R.contains(c.head);
    for (auto it = c.vertices.rbegin(); it != c.vertices.rend(); ++it) {
      if (it != c.vertices.rbegin()) {
        // *it is the predecessor of the vertex handled in the previous step.
        if (diagram.edge_after(*it) == EdgeKind::dotted) inside = !inside;
      }
      if (inside) T = T.with(*it);
    }
  }
  return T;
}

IndexSet phi_odd_offset_formula(const IndexSet& S) {
  IndexSet T(S.modulus());
  for (int s : S.members()) {
    const int g = gamma(s, S);
    for (int i = 1; i < g; i += 2) T = T.with(s - i);
  }
  return T;
}

IndexSet phi_even_offset_formula(const IndexSet& S) {
  IndexSet T(S.modulus());
  for (int s : S.members()) {
    const int g = gamma(s, S);
    for (int i = 2; i <= g; i += 2) T = T.with(s - i);
  }
  return T;
}

bool is_removable(int j, const IndexSet& R, const IndexSet& S) {
  if (!S.contains(j) || j < 1 || j > S.modulus()) {
    throw std::invalid_argument("is_removable: " + std::to_string(j) + " is not in " +
                                S.to_braced());
  }
  if (S.size() < 2) throw std::invalid_argument("is_removable: stratum needs at least two elements");
  return phi(R, S) == phi(R, S.without(j));
}

bool is_irreducible(const IndexSet& R, const IndexSet& S) {
  if (S.size() < 2) throw std::invalid_argument("is_irreducible: stratum needs at least two elements");
  for (int j : S.members()) {
    if (is_removable(j, R, S)) return false;
  }
  return true;
}

std::vector<int> cyclic_order(const IndexSet& S, int start) {
  if (!S.contains(start)) throw std::invalid_argument("cyclic_order: start not in stratum");
  std::vector<int> out{reduce(start, S.modulus())};
  for (int x = follows(out.front(), S); x != out.front(); x = follows(x, S)) out.push_back(x);
  return out;
}

}  // namespace strata
