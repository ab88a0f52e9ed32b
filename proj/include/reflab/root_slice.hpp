#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "reflab/coxeter.hpp"
#include "reflab/scalar.hpp"

namespace reflab {

using RootId = std::uint32_t;

inline constexpr std::size_t kDefaultRootCap = 5'000'000;

struct ParentLink {
  RootId id;
  int letter;  // 0-based simple index s with root = s(parent)
};

namespace detail {

/// Open-addressing set of ids; hashing and equality are supplied per call so
/// the table never stores keys itself.
class IdTable {
 public:
  static constexpr std::uint32_t kEmpty = std::numeric_limits<std::uint32_t>::max();

  template <class Eq>
  std::optional<std::uint32_t> find(std::uint64_t hash, Eq&& eq) const {
    if (slots_.empty()) return std::nullopt;
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t i = hash & mask;; i = (i + 1) & mask) {
      const std::uint32_t id = slots_[i];
      if (id == kEmpty) return std::nullopt;
      if (eq(id)) return id;
    }
  }

  /// Inserts `id` (assumed absent). `hash_of(id)` is needed to rehash.
  template <class HashOf>
  void insert(std::uint64_t hash, std::uint32_t id, HashOf&& hash_of) {
    if ((count_ + 1) * 2 > slots_.size()) grow(hash_of);
    place(hash, id);
    ++count_;
  }

  std::size_t size() const noexcept { return count_; }

 private:
  void place(std::uint64_t hash, std::uint32_t id) {
    const std::size_t mask = slots_.size() - 1;
    std::size_t i = hash & mask;
    while (slots_[i] != kEmpty) i = (i + 1) & mask;
    slots_[i] = id;
  }

  template <class HashOf>
  void grow(HashOf&& hash_of) {
    std::vector<std::uint32_t> old = std::move(slots_);
    slots_.assign(old.empty() ? 16 : old.size() * 2, kEmpty);
    for (std::uint32_t id : old) {
      if (id != kEmpty) place(hash_of(id), id);
    }
  }

  std::vector<std::uint32_t> slots_;
  std::size_t count_ = 0;
};

std::uint64_t hash_coeffs(std::span<const Scalar> v, ScalarMode mode);
bool same_coeffs(std::span<const Scalar> a, std::span<const Scalar> b, ScalarMode mode);

}  // namespace detail

/// Every positive root of depth <= d, where depth is the BFS level: the least
/// k with root = s_{i1}...s_{ik}(alpha_j). Ids follow (depth, coefficient
/// vector in descending lexicographic order), so alpha_i has id i and the
/// roots of depth <= k occupy the id prefix [0, count_up_to_depth(k)).
/// Immutable once built.
class RootSlice {
 public:
  const CoxeterMatrix& matrix() const noexcept { return matrix_; }
  const GramMatrix& gram() const noexcept { return gram_; }
  ScalarMode mode() const noexcept { return gram_.mode(); }
  int rank() const noexcept { return matrix_.rank(); }
  int depth_bound() const noexcept { return depth_bound_; }
  std::size_t size() const noexcept { return meta_.size(); }
  /// True when the root system is finite and fully contained in the slice.
  bool saturated() const noexcept { return saturated_; }

  std::span<const Scalar> coeffs(RootId id) const {
    return {coeffs_.data() + static_cast<std::size_t>(id) * rank(), static_cast<std::size_t>(rank())};
  }
  Coeffs root(RootId id) const {
    auto c = coeffs(id);
    return Coeffs(c.begin(), c.end());
  }
  int depth(RootId id) const { return meta_[id].depth; }
  std::optional<ParentLink> parent(RootId id) const;

  std::optional<RootId> lookup(std::span<const Scalar> v) const;
  bool contains(std::span<const Scalar> v) const { return lookup(v).has_value(); }

  RootId simple(int s) const { return static_cast<RootId>(s); }
  bool is_simple(RootId id) const { return id < static_cast<RootId>(rank()); }

  /// Largest coefficient sum over the slice.
  const Scalar& max_coefficient_sum() const noexcept { return max_sum_; }

  /// Number of roots of depth <= d (clamped to the slice).
  std::size_t count_up_to_depth(int d) const;

 private:
  friend RootSlice generate_slice(const CoxeterMatrix&, int, ScalarMode, std::size_t);

  struct Meta {
    RootId parent;
    std::uint16_t depth;
    std::int8_t letter;
  };

  RootSlice(CoxeterMatrix matrix, GramMatrix gram, int depth_bound)
      : matrix_(std::move(matrix)), gram_(std::move(gram)), depth_bound_(depth_bound) {}

  void append(std::span<const Scalar> v, std::uint64_t hash, Meta meta);

  CoxeterMatrix matrix_;
  GramMatrix gram_;
  int depth_bound_;
  bool saturated_ = false;
  std::vector<Scalar> coeffs_;
  std::vector<std::uint64_t> hashes_;
  std::vector<Meta> meta_;
  std::vector<std::size_t> level_end_;
  Scalar max_sum_;
  detail::IdTable index_;
};

/// Breadth-first closure of the simple roots under the simple reflections,
/// keeping positive roots only. Throws SliceTooLarge past `cap` roots and
/// ExactModeUnavailable per gram_of.
RootSlice generate_slice(const CoxeterMatrix& matrix, int depth, ScalarMode mode,
                         std::size_t cap = kDefaultRootCap);

/// Preferred mode for a matrix: Exact when available, else Approx.
ScalarMode natural_mode(const CoxeterMatrix& matrix);

}  // namespace reflab
