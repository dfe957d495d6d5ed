#include "coprime/core_sets.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace coprime {

CoprimePair make_pair(Lag M, Lag N) {
  if (M < 2 || N < 2) {
    throw Error(ErrorCode::OutOfRange, "undersampling factors must be >= 2, got (" +
                                           std::to_string(M) + ", " + std::to_string(N) + ")");
  }
  if (M > kMaxFactor || N > kMaxFactor) {
    throw Error(ErrorCode::OutOfRange,
                "undersampling factors are limited to " + std::to_string(kMaxFactor));
  }
  if (std::gcd(M, N) != 1) {
    throw Error(ErrorCode::NotCoprime,
                "(" + std::to_string(M) + ", " + std::to_string(N) + ") share a factor");
  }
  return CoprimePair(M, N);
}

namespace {

struct KindName {
  SetKind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {SetKind::SMPlus, "SM+"}, {SetKind::SMMinus, "SM-"}, {SetKind::SNPlus, "SN+"},
    {SetKind::SNMinus, "SN-"}, {SetKind::SPlus, "S+"},   {SetKind::SMinus, "S-"},
    {SetKind::S, "S"},         {SetKind::CPlus, "C+"},   {SetKind::CMinus, "C-"},
    {SetKind::C, "C"},         {SetKind::APlus, "A+"},   {SetKind::AMinus, "A-"},
    {SetKind::BPlus, "B+"},    {SetKind::BMinus, "B-"},
};

using Tally = std::map<Lag, Count>;

Tally mirrored(const Tally& t) {
  Tally out;
  for (const auto& [lag, count] : t) out[-lag] = count;
  return out;
}

Tally united(std::initializer_list<const Tally*> parts) {
  Tally out;
  for (const Tally* part : parts) {
    for (const auto& [lag, count] : *part) out[lag] = 1;
  }
  return out;
}

// Self differences of a uniform stream with `count` samples at spacing
// `step`: lag step*i is produced by count-i ordered index pairs.
Tally self_differences(Lag step, Lag count) {
  Tally out;
  for (Lag i = 0; i < count; ++i) out[step * i] = count - i;
  return out;
}

// Mn - Nm over n in [0, N-1], m in [m_lo, m_hi].
Tally cross_differences(const CoprimePair& pair, Lag m_lo, Lag m_hi) {
  Tally out;
  for (Lag n = 0; n < pair.N(); ++n) {
    for (Lag m = m_lo; m <= m_hi; ++m) ++out[pair.M() * n - pair.N() * m];
  }
  return out;
}

DifferenceSet to_set(SetKind kind, const Tally& t) {
  DifferenceSet set{kind, {}, {}};
  set.lags.reserve(t.size());
  set.multiplicity.reserve(t.size());
  for (const auto& [lag, count] : t) {
    set.lags.push_back(lag);
    set.multiplicity.push_back(count);
  }
  return set;
}

// `m_count` is the number of samples in the N-spaced stream: 2M for the
// extended array, M for the prototype array.
DifferenceSet enumerate(const CoprimePair& pair, SetKind kind, Lag m_count) {
  const Lag M = pair.M();
  switch (kind) {
    case SetKind::SMPlus: return to_set(kind, self_differences(M, pair.N()));
    case SetKind::SMMinus: return to_set(kind, mirrored(self_differences(M, pair.N())));
    case SetKind::SNPlus: return to_set(kind, self_differences(pair.N(), m_count));
    case SetKind::SNMinus: return to_set(kind, mirrored(self_differences(pair.N(), m_count)));
    case SetKind::CPlus: return to_set(kind, cross_differences(pair, 0, m_count - 1));
    case SetKind::CMinus:
      return to_set(kind, mirrored(cross_differences(pair, 0, m_count - 1)));
    case SetKind::APlus: return to_set(kind, cross_differences(pair, 0, M - 1));
    case SetKind::AMinus: return to_set(kind, mirrored(cross_differences(pair, 0, M - 1)));
    case SetKind::BPlus: return to_set(kind, cross_differences(pair, M, 2 * M - 1));
    case SetKind::BMinus:
      return to_set(kind, mirrored(cross_differences(pair, M, 2 * M - 1)));
    default: break;
  }
  const Tally sm = self_differences(M, pair.N());
  const Tally sn = self_differences(pair.N(), m_count);
  const Tally sm_minus = mirrored(sm);
  const Tally sn_minus = mirrored(sn);
  switch (kind) {
    case SetKind::SPlus: return to_set(kind, united({&sm, &sn}));
    case SetKind::SMinus: return to_set(kind, united({&sm_minus, &sn_minus}));
    case SetKind::S: return to_set(kind, united({&sm, &sn, &sm_minus, &sn_minus}));
    case SetKind::C: {
      const Tally plus = cross_differences(pair, 0, m_count - 1);
      const Tally minus = mirrored(plus);
      return to_set(kind, united({&plus, &minus}));
    }
    default: break;
  }
  throw Error(ErrorCode::InvalidArgument, "unhandled set kind");
}

}  // namespace

std::string_view to_string(SetKind kind) noexcept {
  for (const auto& entry : kKindNames) {
    if (entry.kind == kind) return entry.name;
  }
  return "?";
}

std::optional<SetKind> parse_set_kind(std::string_view name) {
  for (const auto& entry : kKindNames) {
    if (entry.name == name) return entry.kind;
  }
  return std::nullopt;
}

bool is_union_kind(SetKind kind) noexcept {
  return kind == SetKind::SPlus || kind == SetKind::SMinus || kind == SetKind::S ||
         kind == SetKind::C;
}

std::string_view to_string(RangeKind range) noexcept {
  switch (range) {
    case RangeKind::Full: return "full";
    case RangeKind::Continuous: return "continuous";
    case RangeKind::Prototype: return "prototype";
  }
  return "?";
}

std::optional<RangeKind> parse_range_kind(std::string_view name) {
  if (name == "full" || name == "f") return RangeKind::Full;
  if (name == "continuous" || name == "c") return RangeKind::Continuous;
  if (name == "prototype" || name == "p") return RangeKind::Prototype;
  return std::nullopt;
}

Lag range_limit(const CoprimePair& pair, RangeKind range) noexcept {
  switch (range) {
    case RangeKind::Full: return pair.full_limit();
    case RangeKind::Continuous: return pair.continuous_limit();
    case RangeKind::Prototype: return pair.prototype_limit();
  }
  return 0;
}

bool DifferenceSet::contains(Lag lag) const {
  return std::binary_search(lags.begin(), lags.end(), lag);
}

Count DifferenceSet::multiplicity_of(Lag lag) const {
  const auto it = std::lower_bound(lags.begin(), lags.end(), lag);
  if (it == lags.end() || *it != lag) return 0;
  return multiplicity[static_cast<std::size_t>(it - lags.begin())];
}

std::vector<Lag> SamplerPositions::combined() const {
  std::vector<Lag> out;
  out.reserve(first.size() + second.size());
  std::set_union(first.begin(), first.end(), second.begin(), second.end(),
                 std::back_inserter(out));
  return out;
}

SamplerPositions sampler_positions(const CoprimePair& pair) {
  SamplerPositions pos;
  for (Lag n = 0; n < pair.N(); ++n) pos.first.push_back(pair.M() * n);
  for (Lag m = 0; m < 2 * pair.M(); ++m) pos.second.push_back(pair.N() * m);
  return pos;
}

DifferenceSet difference_set(const CoprimePair& pair, SetKind kind) {
  return enumerate(pair, kind, 2 * pair.M());
}

DifferenceSet prototype_difference_set(const CoprimePair& pair, SetKind kind) {
  switch (kind) {
    case SetKind::APlus:
    case SetKind::AMinus:
    case SetKind::BPlus:
    case SetKind::BMinus:
      throw Error(ErrorCode::InvalidArgument,
                  std::string(to_string(kind)) + " has no prototype counterpart");
    default: return enumerate(pair, kind, pair.M());
  }
}

Count dof(const CoprimePair& pair, SetKind kind) noexcept {
  const Count M = pair.M();
  const Count N = pair.N();
  switch (kind) {
    case SetKind::SMPlus:
    case SetKind::SMMinus: return N;
    case SetKind::SNPlus:
    case SetKind::SNMinus: return 2 * M;
    case SetKind::SPlus:
    case SetKind::SMinus: return 2 * M + N - 1;
    case SetKind::S: return 2 * (2 * M + N - 1) - 1;
    case SetKind::CPlus:
    case SetKind::CMinus: return 2 * M * N;
    case SetKind::C: return 3 * M * N + M - N;
    case SetKind::APlus:
    case SetKind::AMinus:
    case SetKind::BPlus:
    case SetKind::BMinus: return M * N;
  }
  return 0;
}

std::optional<Count> prototype_dof(const CoprimePair& pair, SetKind kind) noexcept {
  const Count M = pair.M();
  const Count N = pair.N();
  switch (kind) {
    case SetKind::SMPlus:
    case SetKind::SMMinus: return N;
    case SetKind::SNPlus:
    case SetKind::SNMinus: return M;
    case SetKind::SPlus:
    case SetKind::SMinus: return M + N - 1;
    case SetKind::S: return 2 * (M + N - 1) - 1;
    case SetKind::CPlus:
    case SetKind::CMinus: return M * N;
    case SetKind::C: return M * N + M + N - 2;
    default: return std::nullopt;
  }
}

std::pair<Lag, Lag> continuous_bounds(const CoprimePair& pair) noexcept {
  const Lag bound = pair.continuous_limit();
  return {-bound, bound};
}

std::vector<Lag> holes(const CoprimePair& pair, Lag upto) {
  if (upto > pair.full_limit()) {
    throw Error(ErrorCode::OutOfRange, "hole scan is limited to lags <= 2MN-1");
  }
  const DifferenceSet c = difference_set(pair, SetKind::C);
  std::vector<Lag> out;
  for (Lag lag = 0; lag <= upto; ++lag) {
    if (!c.contains(lag)) out.push_back(lag);
  }
  return out;
}

bool PropositionReport::all_passed() const noexcept {
  return std::all_of(clauses.begin(), clauses.end(),
                     [](const ClauseResult& c) { return c.passed; });
}

const ClauseResult* PropositionReport::find(std::string_view clause) const noexcept {
  for (const auto& c : clauses) {
    if (c.clause == clause) return &c;
  }
  return nullptr;
}

namespace {

ClauseResult check_interval(std::string name, const DifferenceSet& set, Lag lo, Lag hi) {
  for (Lag lag = lo; lag <= hi; ++lag) {
    if (!set.contains(lag)) return {std::move(name), false, lag};
  }
  return {std::move(name), true, std::nullopt};
}

ClauseResult check_extent(std::string name, const DifferenceSet& set, Count expected_size,
                          Lag lo, Lag hi) {
  if (set.lags.empty()) return {std::move(name), false, std::nullopt};
  if (set.lags.front() != lo) return {std::move(name), false, set.lags.front()};
  if (set.lags.back() != hi) return {std::move(name), false, set.lags.back()};
  if (static_cast<Count>(set.size()) != expected_size) return {std::move(name), false, std::nullopt};
  return {std::move(name), true, std::nullopt};
}

template <typename Pred>
ClauseResult check_all(std::string name, const std::vector<Lag>& lags, Pred pred) {
  for (Lag lag : lags) {
    if (!pred(lag)) return {std::move(name), false, lag};
  }
  return {std::move(name), true, std::nullopt};
}

}  // namespace

PropositionReport verify_propositions(const CoprimePair& pair) {
  const Lag M = pair.M();
  const Lag N = pair.N();
  const Lag bound = pair.continuous_limit();

  const DifferenceSet c_plus = difference_set(pair, SetKind::CPlus);
  const DifferenceSet c_minus = difference_set(pair, SetKind::CMinus);
  const DifferenceSet c = difference_set(pair, SetKind::C);
  const DifferenceSet b_plus = difference_set(pair, SetKind::BPlus);
  const DifferenceSet b_minus = difference_set(pair, SetKind::BMinus);
  const DifferenceSet sm_plus = difference_set(pair, SetKind::SMPlus);
  const DifferenceSet sm_minus = difference_set(pair, SetKind::SMMinus);
  const DifferenceSet s = difference_set(pair, SetKind::S);

  PropositionReport report;
  auto& out = report.clauses;
  out.push_back(check_extent("cplus_range", c_plus, 2 * M * N, -N * (2 * M - 1), M * (N - 1)));
  out.push_back(check_extent("cminus_range", c_minus, 2 * M * N, -M * (N - 1), N * (2 * M - 1)));
  out.push_back(check_interval("cplus_consecutive", c_plus, -bound, N - 1));
  out.push_back(check_interval("cminus_consecutive", c_minus, -(N - 1), bound));
  out.push_back(check_interval("c_continuous", c, -bound, bound));
  if (c.contains(bound + 1)) {
    out.push_back({"c_first_hole", false, bound + 1});
  } else if (c.contains(-(bound + 1))) {
    out.push_back({"c_first_hole", false, -(bound + 1)});
  } else {
    out.push_back({"c_first_hole", true, std::nullopt});
  }

  {
    ClauseResult r = check_all("b_sign", b_plus.lags, [](Lag l) { return l < 0; });
    if (r.passed) r = check_all("b_sign", b_minus.lags, [](Lag l) { return l > 0; });
    out.push_back(std::move(r));
  }
  out.push_back(check_all("b_disjoint", b_plus.lags,
                          [&](Lag l) { return !b_minus.contains(l); }));
  {
    ClauseResult r = check_all("sm_in_b", sm_minus.lags,
                               [&](Lag l) { return l == 0 || b_plus.contains(l); });
    if (r.passed) {
      r = check_all("sm_in_b", sm_plus.lags, [&](Lag l) { return l == 0 || b_minus.contains(l); });
    }
    out.push_back(std::move(r));
  }
  {
    std::vector<Lag> upper;
    for (Lag m = M; m <= 2 * M - 1; ++m) upper.push_back(N * m);
    ClauseResult r = check_all("sn_upper_in_b", upper, [&](Lag l) { return b_plus.contains(-l); });
    if (r.passed) {
      r = check_all("sn_upper_in_b", upper, [&](Lag l) { return b_minus.contains(l); });
    }
    out.push_back(std::move(r));
  }
  out.push_back(check_all("self_subset_cross", s.lags, [&](Lag l) { return c.contains(l); }));
  return report;
}

}  // namespace coprime
