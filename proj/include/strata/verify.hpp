#pragma once

#include "strata/json_io.hpp"
#include "strata/pcone.hpp"
#include "strata/poly.hpp"
#include "strata/polycone.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace strata {

/// Memoized intersection-sum recursion for one (n, R, p, blocks); the stratum
/// of the base context is ignored. Safe for concurrent callers, and each
/// stratum is computed once.
class IntersectionSumEngine {
 public:
  explicit IntersectionSumEngine(StratumContext base);

  PolyCone cone(const IndexSet& S);
  /// cone_pha, memoized.
  PolyCone pha(const IndexSet& S);
  /// cone(S \ {s}) for s in S, ascending s.
  std::vector<PolyCone> lower_neighbors(const IndexSet& S);

 private:
  struct Slot {
    std::once_flag once;
    std::optional<PolyCone> value;
  };
  Slot& slot(std::map<std::uint64_t, std::unique_ptr<Slot>>& table, const IndexSet& S);

  StratumContext base_;
  std::shared_mutex mutex_;
  std::map<std::uint64_t, std::unique_ptr<Slot>> isum_;
  std::map<std::uint64_t, std::unique_ptr<Slot>> pha_;
};

PolyCone intersection_sum_cone(const StratumContext& ctx);

/// Reads a homogeneous S-adapted sign set off the facets of a cone: every
/// facet must be a p-expression, their starting indices must be exactly S and
/// their sign sets must coincide. Never consults phi.
std::optional<IndexSet> homogeneous_sign_set(const PolyCone& cone, const IndexSet& S, const Int& p);

/// |C cap R| and |C| differ in parity for every component; true when |S| = 1.
bool classify_hasse_regular(const IndexSet& R, const IndexSet& S);

/// Intervals below read j as its integer lift i - n <= j < i.
/// rho(i) read as {j : #(R cap [j, i-1[) + #(S^c cap ]j, i[) odd}.
IndexSet rho_interval_variant_a(const IndexSet& R, const IndexSet& S, int i);
/// rho(i) read as {j : #(R cap [j, i-1[) + #(S^c cap ]j, i-1[) odd}.
IndexSet rho_interval_variant_b(const IndexSet& R, const IndexSet& S, int i);
/// rho(i) read as {j : #(R cap [j, i-1]) + #(S^c cap ]j, i[) odd}; agrees with the adjugate.
IndexSet rho_interval_closed(const IndexSet& R, const IndexSet& S, int i);

/// ha with the stratum sign flipped: delta_S^{(i)} e_i - p delta_R^{(i-1)} e_{i-1}.
Weight ha_weight_flipped(int i, const StratumContext& ctx);

struct IdentityOutcome {
  std::string kind;  // "A", "B", "reduced" or "base"
  bool holds = false;
  bool positive = false;
  Poly c;
  Poly lambda;
  std::string ratio;  // "1", "p" or "" when neither
  bool passed() const { return holds && positive && !ratio.empty(); }
};

/// Checks sum_k lambda_k F^{(s_k)}_{T_{k+1}} = c F^{(1)}_{phi(S)} symbolically in p.
/// Requires 1 in S.
IdentityOutcome check_lambda_identity(const IndexSet& R, const IndexSet& S);

struct VerifyParams {
  int max_n = 6;
  std::vector<Int> primes{2, 3, 5};
  int jobs = 1;
  int random_weights = 10000;
};

inline constexpr int kMaxNCap = 7;

struct CaseResult {
  std::string check;
  Json ctx;
  std::string status;  // "pass", "fail", "skipped"
  Json checks;
  Json certificate;
  Json oracle;
};

struct Discrepancy {
  std::string location;
  std::string paper_value;
  std::string computed_value;
  std::string quote;
  std::string detail;
};

struct VerificationReport {
  std::string suite;
  VerifyParams params;
  std::vector<CaseResult> cases;
  std::vector<Discrepancy> discrepancies;
  Json conventions;

  std::size_t count(const std::string& status) const;
  std::size_t failures() const { return count("fail"); }
  /// Canonical JSON; identical inputs give identical bytes.
  Json to_json() const;
};

VerificationReport verify_main_theorem(const VerifyParams& params);
VerificationReport verify_identity(const VerifyParams& params);
VerificationReport verify_hasse_regularity(const VerifyParams& params);
VerificationReport verify_generators(const VerifyParams& params);
VerificationReport verify_cone_conjecture_a1(const VerifyParams& params);
VerificationReport verify_products(const VerifyParams& params);
VerificationReport verify_all(const VerifyParams& params);

/// Dispatch by name: theorem, identity, hasse, generators, conjecture, products, all.
VerificationReport run_suite(const std::string& name, const VerifyParams& params);

Json conventions_json();

/// Partitions of n into 1..max_blocks positive parts, in lex order of the parts.
std::vector<std::vector<int>> compositions(int n, int max_blocks);

}  // namespace strata
