#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "elrc/code.hpp"
#include "elrc/combinations.hpp"
#include "elrc/error.hpp"
#include "elrc/repair.hpp"

namespace elrc {

using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Sequential-repair verification

enum class VerifyMode { exhaustive, randomized };

inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;
inline constexpr std::uint64_t kDefaultSamples = 100'000;

struct VerifyOptions {
  VerifyMode mode = VerifyMode::exhaustive;
  std::size_t max_size = 0;
  std::uint64_t samples = kDefaultSamples;  // per pattern size, randomized mode only
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::uint64_t budget = kDefaultEnumerationBudget;  // exhaustive mode only
};

struct VerificationReport {
  CodeParams params;
  VerifyMode mode = VerifyMode::exhaustive;
  std::size_t max_size = 0;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::uint64_t patterns_checked = 0;
  std::vector<ErasurePattern> failures;  // canonical order, no duplicates

  [[nodiscard]] bool ok() const noexcept { return failures.empty(); }
};

namespace detail {

struct VerifyTask {
  std::size_t size;
  std::size_t part;  // first element (exhaustive) or chunk index (randomized)
};

inline constexpr std::uint64_t kSampleChunk = 4096;

/// Runs `body(task, local_failures) -> checked` over all tasks on `jobs` threads.
/// The merged failure list is sorted, so the result never depends on scheduling.
template <typename Body>
std::pair<std::uint64_t, std::vector<ErasurePattern>> run_tasks(const std::vector<VerifyTask>& tasks,
                                                                unsigned jobs, Body&& body) {
  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> checked{0};
  std::mutex merge_mutex;
  std::vector<ErasurePattern> failures;
  auto worker = [&] {
    std::vector<ErasurePattern> local;
    std::uint64_t local_checked = 0;
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      local_checked += body(tasks[i], local);
    }
    checked += local_checked;
    std::lock_guard lock(merge_mutex);
    failures.insert(failures.end(), local.begin(), local.end());
  };
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) {
      pool.emplace_back(worker);
    }
  }
  std::sort(failures.begin(), failures.end(), [](const auto& a, const auto& b) { return canonical_less(a, b); });
  failures.erase(std::unique(failures.begin(), failures.end()), failures.end());
  return {checked.load(), std::move(failures)};
}

/// Floyd's algorithm: uniform s-subset of [0, n).
inline std::vector<std::size_t> sample_subset(std::size_t n, std::size_t s, std::mt19937_64& rng) {
  std::vector<std::size_t> chosen;
  chosen.reserve(s);
  for (std::size_t j = n - s; j < n; ++j) {
    std::uniform_int_distribution<std::size_t> pick(0, j);
    const std::size_t v = pick(rng);
    if (std::find(chosen.begin(), chosen.end(), v) == chosen.end()) {
      chosen.push_back(v);
    } else {
      chosen.push_back(j);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

inline std::mt19937_64 chunk_rng(std::uint64_t seed, std::size_t size, std::size_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(size), static_cast<std::uint32_t>(chunk)};
  return std::mt19937_64(seq);
}

}  // namespace detail

/// Exhaustive mode checks, for every pattern E in scope, that some symbol of E has
/// a line repair set avoiding E. Every smaller pattern is checked too, so by
/// induction the whole pattern can be repaired one line at a time. Sampled
/// patterns have no such guarantee and run the full planner instead.
[[nodiscard]] inline VerificationReport verify_elrc(const CodeParams& p, const VerifyOptions& options) {
  if (options.max_size > p.n()) {
    throw InvalidParameters("max size " + std::to_string(options.max_size) + " exceeds n=" + std::to_string(p.n()));
  }
  VerificationReport report{p, options.mode, options.max_size, 0, 0, 0, {}};
  std::vector<detail::VerifyTask> tasks;

  if (options.mode == VerifyMode::exhaustive) {
    const std::uint64_t total = binomial_sum(p.n(), 1, options.max_size, options.budget + 1);
    if (total > options.budget) {
      throw BudgetExceeded("exhaustive verification needs more than " + std::to_string(options.budget) +
                           " patterns; use randomized mode or raise the budget");
    }
    for (std::size_t s = 1; s <= options.max_size; ++s) {
      for (std::size_t first = 0; first + s <= p.n(); ++first) {
        tasks.push_back({s, first});
      }
    }
    auto [checked, failures] = detail::run_tasks(tasks, options.jobs, [&](const detail::VerifyTask& task,
                                                                          std::vector<ErasurePattern>& out) {
      std::vector<char> mask(p.n(), 0);
      std::uint64_t count = 0;
      for_each_combination_starting_at(p.n(), task.size, task.part, [&](std::span<const std::size_t> e) {
        for (auto rank : e) {
          mask[rank] = 1;
        }
        if (!detail::any_free_line(p, mask, e)) {
          out.push_back(ErasurePattern::from_ranks(p, {e.begin(), e.end()}));
        }
        for (auto rank : e) {
          mask[rank] = 0;
        }
        ++count;
        return true;
      });
      return count;
    });
    report.patterns_checked = checked;
    report.failures = std::move(failures);
    return report;
  }

  report.seed = options.seed;
  report.samples = options.samples;
  const std::uint64_t chunks = (options.samples + detail::kSampleChunk - 1) / detail::kSampleChunk;
  for (std::size_t s = 1; s <= options.max_size; ++s) {
    for (std::size_t c = 0; c < chunks; ++c) {
      tasks.push_back({s, c});
    }
  }
  auto [checked, failures] = detail::run_tasks(tasks, options.jobs, [&](const detail::VerifyTask& task,
                                                                        std::vector<ErasurePattern>& out) {
    auto rng = detail::chunk_rng(options.seed, task.size, task.part);
    const std::uint64_t begin = task.part * detail::kSampleChunk;
    const std::uint64_t end = std::min<std::uint64_t>(begin + detail::kSampleChunk, options.samples);
    for (std::uint64_t i = begin; i < end; ++i) {
      auto e = ErasurePattern::from_ranks(p, detail::sample_subset(p.n(), task.size, rng));
      if (!plan_sequential(p, e).complete()) {
        out.push_back(std::move(e));
      }
    }
    return end - begin;
  });
  report.patterns_checked = checked;
  report.failures = std::move(failures);
  return report;
}

// ---------------------------------------------------------------------------
// General (not necessarily line-shaped) repair sets

/// Decides repairability over GF(2): `sources` is a repair set
/// of `target` iff some dual codeword is 1 at the target and vanishes outside
/// sources ∪ {target}. Equivalently, column h_target of H is not in the span of
/// the columns outside that set.
class RepairSetTester {
 public:
  explicit RepairSetTester(const CodeParams& p) : params_(p), columns_(build_parity_check(p).rows.transposed()) {}

  [[nodiscard]] const CodeParams& params() const noexcept { return params_; }

  [[nodiscard]] bool is_repair_set(std::size_t target, std::span<const std::size_t> sources) const {
    std::vector<char> inside(params_.n(), 0);
    inside[target] = 1;
    for (auto s : sources) {
      inside[s] = 1;
    }
    gf2::RowBasis outside(columns_.cols());
    for (std::size_t j = 0; j < params_.n(); ++j) {
      if (!inside[j]) {
        outside.insert(columns_.row(j));
      }
    }
    return !outside.contains(columns_.row(target));
  }

  [[nodiscard]] bool is_repair_set(const Coord& target, std::span<const Coord> sources) const {
    std::vector<std::size_t> ranks;
    for (const auto& c : sources) {
      ranks.push_back(coord_rank(params_, c));
    }
    return is_repair_set(coord_rank(params_, target), ranks);
  }

 private:
  CodeParams params_;
  BitMatrix columns_;  // row j is column j of H
};

/// Smallest repair set of `target` drawn from `live`, of size at most r. Ties go
/// to the lexicographically first set of ranks. Returns nullopt when none exists.
[[nodiscard]] inline std::optional<std::vector<Coord>> general_repair_set_oracle(const CodeParams& p,
                                                                               const Coord& target,
                                                                               std::span<const Coord> live) {
  const std::size_t target_rank = coord_rank(p, target);
  std::vector<std::size_t> pool;
  for (const auto& c : live) {
    pool.push_back(coord_rank(p, c));
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  if (std::binary_search(pool.begin(), pool.end(), target_rank)) {
    throw InvalidCoordinate("target must not be among the live symbols");
  }
  const RepairSetTester tester(p);
  std::optional<std::vector<Coord>> found;
  std::vector<std::size_t> chosen;
  for (std::size_t size = 1; size <= std::min<std::size_t>(p.r(), pool.size()) && !found; ++size) {
    for_each_combination(pool.size(), size, [&](std::span<const std::size_t> idx) {
      chosen.clear();
      for (auto i : idx) {
        chosen.push_back(pool[i]);
      }
      if (tester.is_repair_set(target_rank, chosen)) {
        std::vector<Coord> out;
        for (auto rank : chosen) {
          out.push_back(coord_at(p, rank));
        }
        found = std::move(out);
        return false;
      }
      return true;
    });
  }
  return found;
}

// ---------------------------------------------------------------------------
// Parallel tolerance

struct ParallelTolerance {
  std::size_t tolerance = 0;
  ErasurePattern counterexample;  // lexicographically first failing pattern of size tolerance+1
};

/// Largest s such that every s-erasure pattern is repairable in parallel from
/// live symbols over lines, found by exhaustive search in increasing size.
[[nodiscard]] inline ParallelTolerance parallel_tolerance(const CodeParams& p,
                                                          std::uint64_t exhaustive_limit = kDefaultEnumerationBudget) {
  std::uint64_t spent = 0;
  std::vector<char> mask(p.n(), 0);
  for (std::size_t s = 1; s <= p.n(); ++s) {
    const std::uint64_t count = binomial(p.n(), s, exhaustive_limit + 1);
    if (count > exhaustive_limit - std::min(spent, exhaustive_limit)) {
      throw BudgetExceeded("parallel tolerance search exceeds the budget of " + std::to_string(exhaustive_limit) +
                           " patterns at size " + std::to_string(s));
    }
    spent += count;
    std::optional<ErasurePattern> failing;
    for_each_combination(p.n(), s, [&](std::span<const std::size_t> e) {
      for (auto rank : e) {
        mask[rank] = 1;
      }
      const bool ok = std::all_of(e.begin(), e.end(),
                                  [&](std::size_t rank) { return detail::free_axis(p, mask, rank).has_value(); });
      for (auto rank : e) {
        mask[rank] = 0;
      }
      if (!ok) {
        failing = ErasurePattern::from_ranks(p, {e.begin(), e.end()});
      }
      return ok;
    });
    if (failing) {
      return {s - 1, std::move(*failing)};
    }
  }
  return {p.n(), {}};
}

// ---------------------------------------------------------------------------
// Rate and length bounds

struct BoundsRow {
  std::uint64_t r = 0;
  std::uint64_t t = 0;
  std::uint64_t k = 0;
  /// (r+1)^m when (t, k) = (2^m - 1, r^m) for some m.
  std::optional<std::uint64_t> n_construction;
  /// Length implied by k/n <= r/(r+t).
  std::uint64_t n_min_parallel = 0;
  /// 1 / Π_{j=1..t} (1 + 1/(jr)).
  Rational availability_rate_bound;
  /// Length implied by k/n <= r/(r+2).
  std::uint64_t n_min_t2 = 0;
  /// k + ceil((2k + ceil(k/r)) / r).
  std::uint64_t n_min_t3 = 0;
};

namespace detail {
inline std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return a / b + (a % b != 0); }
}  // namespace detail

[[nodiscard]] inline BoundsRow bounds_row(std::uint64_t r, std::uint64_t t, std::uint64_t k) {
  if (r == 0 || t == 0 || k == 0) {
    throw InvalidParameters("bounds need positive r, t and k");
  }
  BoundsRow row;
  row.r = r;
  row.t = t;
  row.k = k;
  std::uint64_t power_r = 1;
  std::uint64_t power_r1 = 1;
  for (unsigned m = 1; m < 64 && power_r < k; ++m) {
    power_r *= r;
    power_r1 *= r + 1;
    if (power_r == k && (std::uint64_t{1} << m) - 1 == t) {
      row.n_construction = power_r1;
    }
  }
  row.n_min_parallel = detail::ceil_div(k * (r + t), r);
  Rational rate = 1;
  for (std::uint64_t j = 1; j <= t; ++j) {
    rate *= Rational(j * r, j * r + 1);
  }
  row.availability_rate_bound = rate;
  row.n_min_t2 = detail::ceil_div(k * (r + 2), r);
  row.n_min_t3 = k + detail::ceil_div(2 * k + detail::ceil_div(k, r), r);
  return row;
}

/// Rate of the product construction, r^m / (r+1)^m.
[[nodiscard]] inline Rational construction_rate(const CodeParams& p) {
  return Rational(boost::multiprecision::cpp_int(p.k()), boost::multiprecision::cpp_int(p.n()));
}

// ---------------------------------------------------------------------------
// Comparison tables

struct Table1Row {
  unsigned m = 0;
  std::uint64_t t = 0;
  std::uint64_t k = 0;
  std::uint64_t n_construction = 0;
  std::uint64_t n_min_all_symbol_locality = 0;  // (r, t+1)_a codes
  std::uint64_t n_min_cooperative = 0;          // (r, t)-CLRC
};

[[nodiscard]] inline std::vector<Table1Row> table1(unsigned r = 2, std::vector<unsigned> ms = {2, 3, 4, 5}) {
  std::vector<Table1Row> rows;
  for (auto m : ms) {
    const CodeParams p(r, m);
    const auto b = bounds_row(r, p.t(), p.k());
    // Both comparison columns come from the same k/n <= r/(r+t) bound.
    rows.push_back({m, p.t(), p.k(), p.n(), b.n_min_parallel, b.n_min_parallel});
  }
  return rows;
}

enum class Certification { formula, exhaustive, randomized };

inline const char* to_string(Certification c) {
  switch (c) {
    case Certification::exhaustive:
      return "exhaustive";
    case Certification::randomized:
      return "randomized";
    case Certification::formula:
      break;
  }
  return "formula";
}

struct Table2Row {
  unsigned m = 0;
  std::uint64_t k = 0;
  std::uint64_t n = 0;
  std::uint64_t sequential_tolerance = 0;
  std::uint64_t parallel_tolerance = 0;
  Certification sequential_certified_by = Certification::formula;
  Certification parallel_certified_by = Certification::formula;
};

struct Table2Options {
  bool certify = false;
  std::uint64_t budget = kDefaultEnumerationBudget;  // exhaustive sequential check
  unsigned randomized_max_m = 4;                     // beyond this, formula only
  std::uint64_t samples = kDefaultSamples;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::uint64_t parallel_budget = 1'000'000;
};

/// Sequential tolerance 2^m - 1 against parallel tolerance m. With `certify`,
/// each value is confirmed by search where the budget allows and a mismatch
/// throws.
[[nodiscard]] inline std::vector<Table2Row> table2(unsigned r = 2, std::vector<unsigned> ms = {2, 3, 4, 5},
                                                   const Table2Options& options = {}) {
  std::vector<Table2Row> rows;
  for (auto m : ms) {
    const CodeParams p(r, m);
    Table2Row row{m, p.k(), p.n(), p.t(), m, Certification::formula, Certification::formula};
    if (options.certify) {
      VerifyOptions v;
      v.max_size = p.t();
      v.jobs = options.jobs;
      v.budget = options.budget;
      v.samples = options.samples;
      v.seed = options.seed;
      if (binomial_sum(p.n(), 1, p.t(), options.budget + 1) <= options.budget) {
        v.mode = VerifyMode::exhaustive;
        row.sequential_certified_by = Certification::exhaustive;
      } else if (m <= options.randomized_max_m) {
        v.mode = VerifyMode::randomized;
        row.sequential_certified_by = Certification::randomized;
      }
      if (row.sequential_certified_by != Certification::formula) {
        if (!verify_elrc(p, v).ok()) {
          throw Error("sequential repair failed below 2^m for m=" + std::to_string(m));
        }
        // The cube {0,1}^m is a minimum-weight codeword support: one more erasure is fatal.
        std::vector<std::size_t> cube;
        for (std::size_t rank = 0; rank < p.n(); ++rank) {
          bool inside = true;
          for (std::size_t j = 0; j < m; ++j) {
            inside = inside && p.digit(rank, j) <= 1;
          }
          if (inside) {
            cube.push_back(rank);
          }
        }
        if (plan_sequential(p, ErasurePattern::from_ranks(p, cube)).complete()) {
          throw Error("unit cube unexpectedly repairable for m=" + std::to_string(m));
        }
      }
      if (binomial_sum(p.n(), 1, m + 1, options.parallel_budget + 1) <= options.parallel_budget) {
        const auto found = parallel_tolerance(p, options.parallel_budget);
        if (found.tolerance != m) {
          throw Error("parallel tolerance " + std::to_string(found.tolerance) + " differs from m=" + std::to_string(m));
        }
        row.parallel_certified_by = Certification::exhaustive;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Minimum distance

inline constexpr std::size_t kMaxBruteForceDimension = 20;

/// Minimum nonzero codeword weight by enumerating all 2^k codewords in Gray-code order.
[[nodiscard]] inline std::size_t min_distance_bruteforce(const CodeParams& p,
                                                         std::size_t max_k = kMaxBruteForceDimension) {
  if (p.k() > max_k) {
    throw BudgetExceeded("k=" + std::to_string(p.k()) + " exceeds the brute-force limit of " + std::to_string(max_k));
  }
  std::vector<BitWord> basis;
  for (std::size_t j = 0; j < p.k(); ++j) {
    BitVector info(p.k());
    info.set(j);
    basis.push_back(encode(p, info));
  }
  BitWord current(p.n());
  std::size_t best = p.n();
  const std::uint64_t count = std::uint64_t{1} << p.k();
  for (std::uint64_t i = 1; i < count; ++i) {
    current ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
    best = std::min(best, current.popcount());
  }
  return best;
}

}  // namespace elrc
