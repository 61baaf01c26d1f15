#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "domideal/dominance.hpp"
#include "domideal/monomial.hpp"

namespace domideal {

/// A prescribed lcm x_1^{m_1} ... x_n^{m_n} with every m_i >= 1.
class LcmTarget {
 public:
  explicit LcmTarget(Monomial m) : m_(std::move(m)) {
    if (m_.nvars() < 1) throw std::invalid_argument("domideal: lcm target needs at least one variable");
    if (m_.nvars() > 64) throw std::invalid_argument("domideal: lcm enumeration supports at most 64 variables");
    for (std::size_t i = 0; i < m_.nvars(); ++i)
      if (m_[i] == 0)
        throw std::invalid_argument("domideal: lcm exponent m_" + std::to_string(i + 1) +
                                    " is 0; drop the variable instead");
  }
  LcmTarget(std::initializer_list<Exponent> e) : LcmTarget(Monomial(e)) {}

  const Monomial& monomial() const noexcept { return m_; }
  std::size_t nvars() const noexcept { return m_.nvars(); }
  Exponent operator[](std::size_t i) const noexcept { return m_[i]; }

 private:
  Monomial m_;
};

/// Monomials with exponent exactly m_i in x_i and anything in [0, m_j]
/// elsewhere, in canonical order. Length is the product of (m_j + 1), j != i.
inline std::vector<Monomial> axis_candidates(const LcmTarget& target, std::size_t axis) {
  const std::size_t n = target.nvars();
  if (axis >= n) throw std::out_of_range("domideal: axis index out of range");
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < n; ++j)
    if (j != axis) free.push_back(j);
  std::vector<Monomial> out;
  std::vector<Exponent> e(n, 0);
  e[axis] = target[axis];
  while (true) {
    out.emplace_back(e);
    // odometer over the free coordinates, last one fastest
    std::size_t t = free.size();
    while (t > 0) {
      const std::size_t j = free[--t];
      if (e[j] < target[j]) {
        ++e[j];
        break;
      }
      e[j] = 0;
      if (t == 0) return out;
    }
    if (free.empty()) return out;
  }
}

struct EnumerationOptions {
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

namespace detail {

// Depth-first search over one candidate per axis.
//
// Every dominant ideal F with lcm m arises from exactly one "canonical" tuple:
// c_j is the smallest generator of F whose x_j-exponent equals m_j. The search
// only walks prefixes of canonical tuples, so results are duplicate-free
// without any set lookups, and prunes a prefix as soon as some chosen
// generator can no longer own a private maximal variable.
class DominantLcmSearch {
 public:
  explicit DominantLcmSearch(const LcmTarget& target) : n_(target.nvars()) {
    std::vector<Monomial> all;
    std::vector<std::vector<Monomial>> axes;
    for (std::size_t j = 0; j < n_; ++j) {
      axes.push_back(axis_candidates(target, j));
      all.insert(all.end(), axes.back().begin(), axes.back().end());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    candidates_ = std::move(all);
    full_mask_ = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    masks_.resize(candidates_.size());
    for (std::size_t c = 0; c < candidates_.size(); ++c) {
      std::uint64_t mask = 0;
      for (std::size_t i = 0; i < n_; ++i)
        if (candidates_[c][i] == target[i]) mask |= std::uint64_t{1} << i;
      masks_[c] = mask;
    }
    axis_ids_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j)
      for (const auto& m : axes[j])
        axis_ids_[j].push_back(static_cast<std::uint32_t>(
            std::lower_bound(candidates_.begin(), candidates_.end(), m) - candidates_.begin()));
  }

  std::size_t nvars() const noexcept { return n_; }
  std::size_t first_axis_size() const noexcept { return axis_ids_[0].size(); }
  const Monomial& candidate(std::uint32_t id) const noexcept { return candidates_[id]; }

  /// Visits every dominant ideal whose canonical first-axis choice lies in
  /// [begin, end). `visit` receives generator ids in canonical order.
  template <class Visit>
  void run(std::size_t begin, std::size_t end, Visit&& visit) const {
    State st;
    st.chosen.assign(n_, 0);
    for (std::size_t t = begin; t < end && t < axis_ids_[0].size(); ++t) step(st, 0, axis_ids_[0][t], visit);
  }

 private:
  struct State {
    std::vector<std::uint32_t> chosen;   // c_j per processed axis
    std::vector<std::uint32_t> members;  // distinct generators so far, ascending id
  };

  bool divides_ids(std::uint32_t a, std::uint32_t b) const noexcept {
    const auto& u = candidates_[a];
    const auto& v = candidates_[b];
    for (std::size_t i = 0; i < n_; ++i)
      if (u[i] > v[i]) return false;
    return true;
  }

  // Necessary condition for the members to extend into a dominant ideal once
  // axes [0, k] are fixed. At k = n-1 it is exactly dominance.
  bool feasible(const std::vector<std::uint32_t>& members, std::size_t k) const noexcept {
    const std::uint64_t processed = k + 1 >= 64 ? full_mask_ : ((std::uint64_t{1} << (k + 1)) - 1);
    const std::uint64_t open = full_mask_ & ~processed;
    std::uint64_t seen = 0, twice = 0;
    for (auto id : members) {
      twice |= seen & masks_[id];
      seen |= masks_[id];
    }
    const std::uint64_t once = seen & ~twice;
    std::size_t homeless = 0;
    std::uint64_t reachable = 0;
    for (auto id : members) {
      if (masks_[id] & once & processed) continue;
      const std::uint64_t later = masks_[id] & open;
      if (!later) return false;
      ++homeless;
      reachable |= later;
    }
    return homeless <= static_cast<std::size_t>(std::popcount(reachable));
  }

  template <class Visit>
  void step(State& st, std::size_t k, std::uint32_t c, Visit& visit) const {
    const std::uint64_t bit = std::uint64_t{1} << k;
    const bool present = std::find(st.members.begin(), st.members.end(), c) != st.members.end();
    // c must be the smallest member attaining m_k
    for (auto s : st.members)
      if (s < c && (masks_[s] & bit)) return;
    if (!present) {
      for (auto s : st.members)
        if (divides_ids(s, c) || divides_ids(c, s)) return;
      // c may not undercut an earlier axis' canonical choice
      for (std::size_t j = 0; j < k; ++j)
        if ((masks_[c] >> j & 1) && c < st.chosen[j]) return;
    }
    st.chosen[k] = c;
    if (!present) st.members.insert(std::upper_bound(st.members.begin(), st.members.end(), c), c);
    if (feasible(st.members, k)) {
      if (k + 1 == n_) {
        visit(std::span<const std::uint32_t>(st.members));
      } else {
        for (auto next : axis_ids_[k + 1]) step(st, k + 1, next, visit);
      }
    }
    if (!present) st.members.erase(std::find(st.members.begin(), st.members.end(), c));
  }

  std::size_t n_;
  std::uint64_t full_mask_ = 0;
  std::vector<Monomial> candidates_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::vector<std::uint32_t>> axis_ids_;
};

// Runs the search split over the first axis. One accumulator per worker,
// returned in partition order so reductions are schedule-independent.
template <class Acc, class Visit>
std::vector<Acc> run_partitioned(const DominantLcmSearch& search, EnumerationOptions opts, Visit visit) {
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  const std::size_t width = search.first_axis_size();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, width));
  std::vector<Acc> accs(threads);
  auto work = [&](unsigned w) {
    const std::size_t lo = width * w / threads, hi = width * (w + 1) / threads;
    search.run(lo, hi, [&](std::span<const std::uint32_t> ids) { visit(accs[w], ids); });
  };
  if (threads == 1) {
    work(0);
    return accs;
  }
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  pool.clear();
  return accs;
}

}  // namespace detail

/// All dominant monomial ideals whose minimal generators have lcm exactly m,
/// duplicate-free and sorted canonically.
inline std::vector<MinimalMonomialSet> enumerate_dominant_with_lcm(const LcmTarget& target,
                                                                   EnumerationOptions opts = {}) {
  detail::DominantLcmSearch search(target);
  auto parts = detail::run_partitioned<std::vector<MinimalMonomialSet>>(
      search, opts, [&](std::vector<MinimalMonomialSet>& out, std::span<const std::uint32_t> ids) {
        std::vector<Monomial> gens;
        gens.reserve(ids.size());
        for (auto id : ids) gens.push_back(search.candidate(id));
        out.push_back(MinimalMonomialSet::from_canonical(target.nvars(), std::move(gens)));
      });
  std::vector<MinimalMonomialSet> all;
  for (auto& p : parts) all.insert(all.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  std::sort(all.begin(), all.end());
  return all;
}

/// Number of dominant ideals with lcm m, streamed without materializing them.
inline std::uint64_t count_dominant_with_lcm(const LcmTarget& target, EnumerationOptions opts = {}) {
  detail::DominantLcmSearch search(target);
  auto parts = detail::run_partitioned<std::uint64_t>(
      search, opts, [](std::uint64_t& acc, std::span<const std::uint32_t>) { ++acc; });
  std::uint64_t total = 0;
  for (auto p : parts) total = checked::add(total, p);
  return total;
}

template <class Key>
struct HistogramRecord {
  Key key;
  std::uint64_t count = 0;
};

namespace detail {

template <class Key, class Less, class MakeKey>
std::vector<HistogramRecord<Key>> histogram(const LcmTarget& target, EnumerationOptions opts, MakeKey make_key) {
  DominantLcmSearch search(target);
  using Map = std::map<Key, std::uint64_t, Less>;
  auto parts = run_partitioned<Map>(search, opts, [&](Map& acc, std::span<const std::uint32_t> ids) {
    std::vector<const Monomial*> gens;
    for (auto id : ids) gens.push_back(&search.candidate(id));
    ++acc[make_key(gens)];
  });
  Map merged;
  for (auto& p : parts)
    for (auto& [k, v] : p) merged[k] += v;
  std::vector<HistogramRecord<Key>> out;
  for (auto& [k, v] : merged) out.push_back({k, v});
  // descending count, ties by key
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.count > b.count; });
  return out;
}

}  // namespace detail

/// Dominant ideals with lcm m grouped by footprint profile (the finer partition).
inline std::vector<HistogramRecord<FootprintProfile>> footprint_histogram(const LcmTarget& target,
                                                                          EnumerationOptions opts = {}) {
  const Monomial& m = target.monomial();
  return detail::histogram<FootprintProfile, std::less<FootprintProfile>>(
      target, opts, [&](const std::vector<const Monomial*>& gens) {
        FootprintProfile p;
        for (auto g : gens) p.parts.push_back(footprint(*g, m));
        std::sort(p.parts.begin(), p.parts.end(), footprint_less);
        return p;
      });
}

/// Dominant ideals with lcm m grouped by low-or-max signature (the coarser partition).
inline std::vector<HistogramRecord<LowOrMaxSignature>> low_or_max_histogram(const LcmTarget& target,
                                                                            EnumerationOptions opts = {}) {
  const Monomial& m = target.monomial();
  return detail::histogram<LowOrMaxSignature, std::less<LowOrMaxSignature>>(
      target, opts, [&](const std::vector<const Monomial*>& gens) {
        LowOrMaxSignature s;
        for (auto g : gens) {
          std::size_t low = 0;
          for (std::size_t i = 0; i < m.nvars(); ++i)
            if ((*g)[i] < m[i]) ++low;
          s.parts.emplace_back(low, m.nvars() - low);
        }
        std::sort(s.parts.begin(), s.parts.end());
        return s;
      });
}

}  // namespace domideal
