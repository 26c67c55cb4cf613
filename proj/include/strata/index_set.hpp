#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace strata {

/// Maximum modulus supported by IndexSet (members are stored as a bitmask).
inline constexpr int kMaxModulus = 62;

/// Representative of k modulo n in {1, ..., n}.
int reduce(long long k, int n);

/// A subset of E_n = {1, ..., n}. Membership queries reduce their argument
/// modulo n, so `contains(s - 1)` is the cyclic predecessor test.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(int n);
  IndexSet(int n, std::initializer_list<int> members);
  IndexSet(int n, const std::vector<int>& members);

  static IndexSet full(int n);
  static IndexSet from_mask(int n, std::uint64_t mask);
  /// Parses "1,3,4" (whitespace tolerated, "" is the empty set). Throws
  /// std::invalid_argument on malformed input or members outside 1..n.
  static IndexSet parse(std::string_view text, int n);

  int modulus() const { return n_; }
  std::uint64_t mask() const { return mask_; }
  int size() const;
  bool empty() const { return mask_ == 0; }

  bool contains(long long k) const;
  /// +1 outside the set, -1 inside.
  int delta(long long k) const { return contains(k) ? -1 : 1; }

  IndexSet with(long long k) const;
  IndexSet without(long long k) const;
  IndexSet complement() const;
  /// Translates every member by t (sigma^t).
  IndexSet shifted(long long t) const;

  IndexSet operator|(const IndexSet& o) const;
  IndexSet operator&(const IndexSet& o) const;
  bool is_subset_of(const IndexSet& o) const { return (mask_ & ~o.mask_) == 0 && n_ == o.n_; }

  /// Members in increasing order.
  std::vector<int> members() const;
  int min_member() const;

  /// "3,4,6,8"; the empty set prints as "".
  std::string to_string() const;
  /// "{3,4,6,8}"
  std::string to_braced() const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend auto operator<=>(const IndexSet& a, const IndexSet& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.mask_ <=> b.mask_;
  }

 private:
  static std::uint64_t bit(int i) { return std::uint64_t{1} << (i - 1); }

  int n_ = 0;
  std::uint64_t mask_ = 0;
};

/// All subsets of E_n in mask order; `nonempty` drops the empty set.
std::vector<IndexSet> all_subsets(int n, bool nonempty = false);

}  // namespace strata
