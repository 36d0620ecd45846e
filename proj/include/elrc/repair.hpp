#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "elrc/code.hpp"
#include "elrc/error.hpp"

namespace elrc {

/// Set of erased coordinates, held as sorted unique ranks.
class ErasurePattern {
 public:
  ErasurePattern() = default;

  ErasurePattern(const CodeParams& p, std::span<const Coord> coords) {
    ranks_.reserve(coords.size());
    for (const auto& c : coords) {
      ranks_.push_back(coord_rank(p, c));
    }
    normalize();
  }

  static ErasurePattern from_ranks(const CodeParams& p, std::vector<std::size_t> ranks) {
    for (auto rank : ranks) {
      if (rank >= p.n()) {
        throw InvalidCoordinate("rank " + std::to_string(rank) + " out of range for n=" +
                                std::to_string(p.n()));
      }
    }
    ErasurePattern e;
    e.ranks_ = std::move(ranks);
    e.normalize();
    return e;
  }

  [[nodiscard]] std::span<const std::size_t> ranks() const noexcept { return ranks_; }
  [[nodiscard]] std::size_t size() const noexcept { return ranks_.size(); }
  [[nodiscard]] bool empty() const noexcept { return ranks_.empty(); }

  [[nodiscard]] bool contains(std::size_t rank) const {
    return std::binary_search(ranks_.begin(), ranks_.end(), rank);
  }

  [[nodiscard]] std::vector<Coord> coords(const CodeParams& p) const {
    std::vector<Coord> out;
    out.reserve(ranks_.size());
    for (auto rank : ranks_) {
      out.push_back(coord_at(p, rank));
    }
    return out;
  }

  /// Per-position flag vector of length n.
  [[nodiscard]] std::vector<char> mask(const CodeParams& p) const {
    std::vector<char> m(p.n(), 0);
    for (auto rank : ranks_) {
      m[rank] = 1;
    }
    return m;
  }

  friend bool operator==(const ErasurePattern&, const ErasurePattern&) = default;

  /// Canonical report order: smaller patterns first, then lexicographic by rank.
  friend bool canonical_less(const ErasurePattern& a, const ErasurePattern& b) {
    if (a.size() != b.size()) {
      return a.size() < b.size();
    }
    return a.ranks_ < b.ranks_;
  }

 private:
  void normalize() {
    std::sort(ranks_.begin(), ranks_.end());
    ranks_.erase(std::unique(ranks_.begin(), ranks_.end()), ranks_.end());
  }

  std::vector<std::size_t> ranks_;
};

/// Repair of one symbol from the other r symbols on one of its lines.
struct RepairStep {
  Coord target;
  std::size_t axis = 0;
  std::vector<Coord> sources;  // rank order

  friend bool operator==(const RepairStep&, const RepairStep&) = default;
};

struct RepairPlan {
  std::vector<RepairStep> steps;

  friend bool operator==(const RepairPlan&, const RepairPlan&) = default;
};

/// Outcome of sequential planning. `remaining` is empty when the plan covers the
/// whole pattern; otherwise the planner got stuck with those symbols unrepaired.
struct PlanResult {
  RepairPlan plan;
  ErasurePattern remaining;

  [[nodiscard]] bool complete() const noexcept { return remaining.empty(); }
};

/// Word whose erased positions carry no value (their bits are kept at 0).
struct MaskedWord {
  BitWord bits;
  ErasurePattern erased;

  friend bool operator==(const MaskedWord&, const MaskedWord&) = default;
};

namespace detail {

/// First axis whose line through `rank` avoids every other flagged position.
inline std::optional<std::size_t> free_axis(const CodeParams& p, std::span<const char> erased,
                                            std::size_t rank) {
  for (std::size_t axis = 0; axis < p.m(); ++axis) {
    const std::size_t stride = p.stride(axis);
    std::size_t pos = rank - static_cast<std::size_t>(p.digit(rank, axis)) * stride;
    bool blocked = false;
    for (unsigned v = 0; v < p.radix(); ++v, pos += stride) {
      if (pos != rank && erased[pos]) {
        blocked = true;
        break;
      }
    }
    if (!blocked) {
      return axis;
    }
  }
  return std::nullopt;
}

/// Some member of `pattern` has a line repair set outside the flagged positions.
inline bool any_free_line(const CodeParams& p, std::span<const char> erased,
                          std::span<const std::size_t> pattern) {
  return std::any_of(pattern.begin(), pattern.end(),
                     [&](std::size_t rank) { return free_axis(p, erased, rank).has_value(); });
}

inline RepairStep make_step(const CodeParams& p, std::size_t target, std::size_t axis) {
  RepairStep step{coord_at(p, target), axis, {}};
  for (auto rank : line_ranks(p, target, axis)) {
    if (rank != target) {
      step.sources.push_back(coord_at(p, rank));
    }
  }
  return step;
}

}  // namespace detail

/// The m line repair sets L^(i)_α \ {α}, one per axis; pairwise disjoint.
[[nodiscard]] inline std::vector<std::vector<Coord>> repair_sets(const CodeParams& p, const Coord& a) {
  const std::size_t target = coord_rank(p, a);
  std::vector<std::vector<Coord>> sets;
  sets.reserve(p.m());
  for (std::size_t axis = 0; axis < p.m(); ++axis) {
    sets.push_back(detail::make_step(p, target, axis).sources);
  }
  return sets;
}

/// Greedy sequential planner. Each round repairs the lowest-rank erased symbol
/// that has a line free of other erasures, using the lowest such axis. Every
/// pattern of at most 2^m - 1 erasures is planned completely; larger patterns
/// may end with a non-empty `remaining` set.
[[nodiscard]] inline PlanResult plan_sequential(const CodeParams& p, const ErasurePattern& e) {
  auto erased = e.mask(p);
  std::vector<std::size_t> pending(e.ranks().begin(), e.ranks().end());
  RepairPlan plan;
  while (!pending.empty()) {
    bool progressed = false;
    for (auto it = pending.begin(); it != pending.end(); ++it) {
      if (auto axis = detail::free_axis(p, erased, *it)) {
        plan.steps.push_back(detail::make_step(p, *it, *axis));
        erased[*it] = 0;
        pending.erase(it);
        progressed = true;
        break;
      }
    }
    if (!progressed) {
      return {std::move(plan), ErasurePattern::from_ranks(p, std::move(pending))};
    }
  }
  return {std::move(plan), {}};
}

/// Checks the plan against the pattern step by step: each step must name an
/// erased, not-yet-repaired target, use exactly the other r symbols of the line
/// on its axis, and read only live or already repaired symbols. Returns the
/// erasures the plan leaves unrepaired.
inline ErasurePattern validate_plan(const CodeParams& p, const ErasurePattern& e, const RepairPlan& plan) {
  auto erased = e.mask(p);
  for (std::size_t idx = 0; idx < plan.steps.size(); ++idx) {
    const auto& step = plan.steps[idx];
    const std::string where = "step " + std::to_string(idx + 1) + ": ";
    validate_axis(p, step.axis);
    const std::size_t target = coord_rank(p, step.target);
    if (!erased[target]) {
      throw PlanOrderViolation(where + "target is not an outstanding erasure");
    }
    std::vector<std::size_t> given;
    for (const auto& s : step.sources) {
      given.push_back(coord_rank(p, s));
    }
    std::sort(given.begin(), given.end());
    auto expected = detail::line_ranks(p, target, step.axis);
    expected.erase(std::remove(expected.begin(), expected.end(), target), expected.end());
    if (given != expected) {
      throw PlanOrderViolation(where + "sources are not the line through the target on axis " +
                               std::to_string(step.axis + 1));
    }
    for (auto s : given) {
      if (erased[s]) {
        throw PlanOrderViolation(where + "reads a symbol that is still erased");
      }
    }
    erased[target] = 0;
  }
  std::vector<std::size_t> remaining;
  for (auto rank : e.ranks()) {
    if (erased[rank]) {
      remaining.push_back(rank);
    }
  }
  return ErasurePattern::from_ranks(p, std::move(remaining));
}

/// Zeroes the erased positions of `word` and records them as erased.
[[nodiscard]] inline MaskedWord mask_word(const CodeParams& p, const BitWord& word, const ErasurePattern& e) {
  if (word.size() != p.n()) {
    throw DimensionMismatch("word has length " + std::to_string(word.size()) + ", expected n=" +
                            std::to_string(p.n()));
  }
  MaskedWord out{word, e};
  for (auto rank : e.ranks()) {
    out.bits.set(rank, false);
  }
  return out;
}

/// Applies `plan` in order, each target becoming the XOR of its sources. When
/// the plan covers every erasure the result must satisfy all parity checks.
[[nodiscard]] inline MaskedWord execute_plan(const CodeParams& p, const MaskedWord& word, const RepairPlan& plan) {
  if (word.bits.size() != p.n()) {
    throw DimensionMismatch("word has length " + std::to_string(word.bits.size()) + ", expected n=" +
                            std::to_string(p.n()));
  }
  MaskedWord out{word.bits, validate_plan(p, word.erased, plan)};
  for (const auto& step : plan.steps) {
    bool value = false;
    for (const auto& s : step.sources) {
      value ^= out.bits.test(coord_rank(p, s));
    }
    out.bits.set(coord_rank(p, step.target), value);
  }
  if (out.erased.empty() && !is_codeword(p, out.bits)) {
    throw InconsistentInput("repaired word violates a parity check; surviving symbols do not match any codeword");
  }
  return out;
}

struct ParallelCheck {
  bool repairable = true;
  /// Aligned with the pattern's ranks: lowest axis whose line avoids all other
  /// erasures, or nullopt when every line is blocked.
  std::vector<std::optional<std::size_t>> witness_axes;
};

/// Whether every erased symbol can be repaired at once from live symbols only.
[[nodiscard]] inline ParallelCheck parallel_repairable(const CodeParams& p, const ErasurePattern& e) {
  const auto erased = e.mask(p);
  ParallelCheck out;
  out.witness_axes.reserve(e.size());
  for (auto rank : e.ranks()) {
    out.witness_axes.push_back(detail::free_axis(p, erased, rank));
    out.repairable = out.repairable && out.witness_axes.back().has_value();
  }
  return out;
}

}  // namespace elrc
