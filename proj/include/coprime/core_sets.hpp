#pragma once

// Sampler geometry and difference sets of the extended co-prime array.
//
// Sub-array 1 samples at M*n, n in [0, N-1]; sub-array 2 samples at N*m,
// m in [0, 2M-1]. The origin is shared. All lags are integers in Nyquist
// units (unit spacing d = 1).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coprime/error.hpp"

namespace coprime {

using Lag = std::int64_t;
using Count = std::int64_t;

/// Largest undersampling factor accepted by make_pair. Enumeration is
/// O(MN), so this keeps every operation cheap; it is not a correctness bound.
inline constexpr Lag kMaxFactor = 10000;

class CoprimePair {
 public:
  Lag M() const noexcept { return m_; }
  Lag N() const noexcept { return n_; }

  /// Number of physical samples per snapshot, 2M+N-1. Default biased
  /// normalization constant.
  Lag sb() const noexcept { return 2 * m_ + n_ - 1; }

  /// Length of one extended co-prime period (snapshot), 2MN.
  Lag period() const noexcept { return 2 * m_ * n_; }

  Lag full_limit() const noexcept { return 2 * m_ * n_ - 1; }
  Lag continuous_limit() const noexcept { return m_ * n_ + m_ - 1; }
  Lag prototype_limit() const noexcept { return m_ * n_ - 1; }

  friend bool operator==(const CoprimePair&, const CoprimePair&) = default;

 private:
  friend CoprimePair make_pair(Lag M, Lag N);
  CoprimePair(Lag M, Lag N) : m_(M), n_(N) {}

  Lag m_;
  Lag n_;
};

/// Validates (M, N). Throws OutOfRange for factors below 2 or above
/// kMaxFactor, NotCoprime when gcd(M, N) != 1.
CoprimePair make_pair(Lag M, Lag N);

enum class SetKind {
  SMPlus,
  SMMinus,
  SNPlus,
  SNMinus,
  SPlus,
  SMinus,
  S,
  CPlus,
  CMinus,
  C,
  APlus,
  AMinus,
  BPlus,
  BMinus,
};

inline constexpr SetKind kAllSetKinds[] = {
    SetKind::SMPlus, SetKind::SMMinus, SetKind::SNPlus, SetKind::SNMinus, SetKind::SPlus,
    SetKind::SMinus, SetKind::S,       SetKind::CPlus,  SetKind::CMinus,  SetKind::C,
    SetKind::APlus,  SetKind::AMinus,  SetKind::BPlus,  SetKind::BMinus,
};

std::string_view to_string(SetKind kind) noexcept;
std::optional<SetKind> parse_set_kind(std::string_view name);

/// Union kinds (S+, S-, S, C) expose distinct-lag cardinality only; their
/// multiplicities are all 1.
bool is_union_kind(SetKind kind) noexcept;

enum class RangeKind { Full, Continuous, Prototype };

inline constexpr RangeKind kAllRangeKinds[] = {RangeKind::Full, RangeKind::Continuous,
                                               RangeKind::Prototype};

std::string_view to_string(RangeKind range) noexcept;
std::optional<RangeKind> parse_range_kind(std::string_view name);

/// Largest |lag| of the range: 2MN-1, MN+M-1 or MN-1.
Lag range_limit(const CoprimePair& pair, RangeKind range) noexcept;

struct DifferenceSet {
  SetKind kind;
  std::vector<Lag> lags;           // unique, ascending
  std::vector<Count> multiplicity;  // parallel to lags, every entry >= 1

  std::size_t size() const noexcept { return lags.size(); }
  bool contains(Lag lag) const;
  /// 0 when the lag is absent.
  Count multiplicity_of(Lag lag) const;
};

struct SamplerPositions {
  std::vector<Lag> first;   // M*n, n in [0, N-1]
  std::vector<Lag> second;  // N*m, m in [0, 2M-1]

  /// Sorted union; the shared origin appears once. Size 2M+N-1.
  std::vector<Lag> combined() const;
};

SamplerPositions sampler_positions(const CoprimePair& pair);

/// Exhaustive enumeration over the generating (n, m) index ranges.
DifferenceSet difference_set(const CoprimePair& pair, SetKind kind);

/// Same enumeration for the prototype co-prime array (m in [0, M-1]).
/// A and B kinds have no prototype counterpart: throws InvalidArgument.
DifferenceSet prototype_difference_set(const CoprimePair& pair, SetKind kind);

/// Closed-form number of distinct lags (degrees of freedom) of a set.
Count dof(const CoprimePair& pair, SetKind kind) noexcept;

/// Closed-form distinct-lag count of the prototype co-prime array's sets,
/// for the kinds that have a prototype counterpart (A and B kinds excluded).
std::optional<Count> prototype_dof(const CoprimePair& pair, SetKind kind) noexcept;

/// (-(MN+M-1), MN+M-1): the hole-free interval of set C.
std::pair<Lag, Lag> continuous_bounds(const CoprimePair& pair) noexcept;

/// Sorted non-negative lags <= upto that are absent from set C.
/// Throws OutOfRange when upto > 2MN-1.
std::vector<Lag> holes(const CoprimePair& pair, Lag upto);

struct ClauseResult {
  std::string clause;
  bool passed;
  std::optional<Lag> counterexample;
};

struct PropositionReport {
  std::vector<ClauseResult> clauses;

  bool all_passed() const noexcept;
  const ClauseResult* find(std::string_view clause) const noexcept;
};

/// Checks the range, continuity and set-B structure claims by enumeration.
PropositionReport verify_propositions(const CoprimePair& pair);

}  // namespace coprime
