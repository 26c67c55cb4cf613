#include "strata/index_set.hpp"

#include <bit>
#include <charconv>
#include <stdexcept>

namespace strata {

int reduce(long long k, int n) {
  if (n < 1) throw std::invalid_argument("reduce: modulus must be positive");
  long long r = (k - 1) % n;
  if (r < 0) r += n;
  return static_cast<int>(r + 1);
}

IndexSet::IndexSet(int n) : n_(n) {
  if (n < 1 || n > kMaxModulus) {
    throw std::invalid_argument("IndexSet: modulus " + std::to_string(n) + " out of range");
  }
}

IndexSet::IndexSet(int n, std::initializer_list<int> members)
    : IndexSet(n, std::vector<int>(members)) {}

IndexSet::IndexSet(int n, const std::vector<int>& members) : IndexSet(n) {
  for (int m : members) {
    if (m < 1 || m > n) {
      throw std::invalid_argument("IndexSet: member " + std::to_string(m) + " outside 1.." +
                                  std::to_string(n));
    }
    mask_ |= bit(m);
  }
}

IndexSet IndexSet::full(int n) {
  IndexSet s(n);
  s.mask_ = (n == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  return s;
}

IndexSet IndexSet::from_mask(int n, std::uint64_t mask) {
  IndexSet s(n);
  if ((mask & ~full(n).mask_) != 0) throw std::invalid_argument("IndexSet: mask exceeds modulus");
  s.mask_ = mask;
  return s;
}

IndexSet IndexSet::parse(std::string_view text, int n) {
  std::vector<int> members;
  std::size_t pos = 0;
  auto is_space = [](char c) { return c == ' ' || c == '\t'; };
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view token = text.substr(pos, comma - pos);
    while (!token.empty() && is_space(token.front())) token.remove_prefix(1);
    while (!token.empty() && is_space(token.back())) token.remove_suffix(1);
    if (token.empty()) {
      // "" is the empty set; an empty token anywhere else is malformed.
      if (!(comma == text.size() && members.empty() && pos == 0)) {
        throw std::invalid_argument("malformed index list: '" + std::string(text) + "'");
      }
    } else {
      int value = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw std::invalid_argument("malformed index '" + std::string(token) + "'");
      }
      members.push_back(value);
    }
    if (comma == text.size()) break;
    pos = comma + 1;
  }
  return IndexSet(n, members);
}

int IndexSet::size() const { return std::popcount(mask_); }

bool IndexSet::contains(long long k) const {
  if (n_ == 0) return false;
  return (mask_ & bit(reduce(k, n_))) != 0;
}

IndexSet IndexSet::with(long long k) const {
  IndexSet s = *this;
  s.mask_ |= bit(reduce(k, n_));
  return s;
}

IndexSet IndexSet::without(long long k) const {
  IndexSet s = *this;
  s.mask_ &= ~bit(reduce(k, n_));
  return s;
}

IndexSet IndexSet::complement() const {
  IndexSet s = full(n_);
  s.mask_ &= ~mask_;
  return s;
}

IndexSet IndexSet::shifted(long long t) const {
  IndexSet s(n_);
  for (int m : members()) s.mask_ |= bit(reduce(m + t, n_));
  return s;
}

IndexSet IndexSet::operator|(const IndexSet& o) const {
  if (n_ != o.n_) throw std::invalid_argument("IndexSet: modulus mismatch");
  IndexSet s = *this;
  s.mask_ |= o.mask_;
  return s;
}

IndexSet IndexSet::operator&(const IndexSet& o) const {
  if (n_ != o.n_) throw std::invalid_argument("IndexSet: modulus mismatch");
  IndexSet s = *this;
  s.mask_ &= o.mask_;
  return s;
}

std::vector<int> IndexSet::members() const {
  std::vector<int> out;
  for (int i = 1; i <= n_; ++i) {
    if ((mask_ & bit(i)) != 0) out.push_back(i);
  }
  return out;
}

int IndexSet::min_member() const {
  if (mask_ == 0) throw std::logic_error("min_member of empty set");
  return std::countr_zero(mask_) + 1;
}

std::string IndexSet::to_string() const {
  std::string out;
  for (int m : members()) {
    if (!out.empty()) out += ",";
    out += std::to_string(m);
  }
  return out;
}

std::string IndexSet::to_braced() const { return "{" + to_string() + "}"; }

std::vector<IndexSet> all_subsets(int n, bool nonempty) {
  std::vector<IndexSet> out;
  const std::uint64_t count = std::uint64_t{1} << n;
  out.reserve(count);
  for (std::uint64_t m = nonempty ? 1 : 0; m < count; ++m) out.push_back(IndexSet::from_mask(n, m));
  return out;
}

}  // namespace strata
