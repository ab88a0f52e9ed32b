#include "reflab/root_slice.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "reflab/errors.hpp"

namespace reflab {

namespace detail {

std::uint64_t hash_coeffs(std::span<const Scalar> v, ScalarMode mode) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const Scalar& x : v) {
    const std::uint64_t part =
        mode == ScalarMode::Exact ? x.hash() : Scalar::approx(x.to_double()).hash();
    h = (h ^ part) * 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return h;
}

bool same_coeffs(std::span<const Scalar> a, std::span<const Scalar> b, ScalarMode mode) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (mode == ScalarMode::Exact) {
      if (compare(a[i], b[i]) != 0) return false;
    } else if (Scalar::approx(a[i].to_double()).key() != Scalar::approx(b[i].to_double()).key()) {
      return false;
    }
  }
  return true;
}

}  // namespace detail

namespace {

Coeffs in_mode(std::span<const Scalar> v, ScalarMode mode) {
  Coeffs out(v.begin(), v.end());
  if (mode == ScalarMode::Approx) {
    for (Scalar& x : out) x = Scalar::approx(x.to_double());
  }
  return out;
}

}  // namespace

std::optional<ParentLink> RootSlice::parent(RootId id) const {
  const Meta& m = meta_[id];
  if (m.letter < 0) return std::nullopt;
  return ParentLink{m.parent, m.letter};
}

std::optional<RootId> RootSlice::lookup(std::span<const Scalar> v) const {
  if (static_cast<int>(v.size()) != rank()) return std::nullopt;
  const std::uint64_t h = detail::hash_coeffs(v, mode());
  return index_.find(h, [&](std::uint32_t id) {
    return hashes_[id] == h && detail::same_coeffs(coeffs(id), v, mode());
  });
}

std::size_t RootSlice::count_up_to_depth(int d) const {
  if (d < 0) return 0;
  if (level_end_.empty()) return 0;
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(d), level_end_.size() - 1);
  return level_end_[k];
}

void RootSlice::append(std::span<const Scalar> v, std::uint64_t hash, Meta meta) {
  const auto id = static_cast<std::uint32_t>(meta_.size());
  coeffs_.insert(coeffs_.end(), v.begin(), v.end());
  hashes_.push_back(hash);
  meta_.push_back(meta);
  const Scalar total = sum(v);
  if (compare(total, max_sum_) > 0) max_sum_ = total;
  index_.insert(hash, id, [this](std::uint32_t other) { return hashes_[other]; });
}

RootSlice generate_slice(const CoxeterMatrix& matrix, int depth, ScalarMode mode, std::size_t cap) {
  if (depth < 0) throw std::invalid_argument("depth bound must be >= 0");
  RootSlice slice(matrix, gram_of(matrix, mode), depth);
  const int n = matrix.rank();
  if (static_cast<std::size_t>(n) > cap) throw SliceTooLarge(cap, 0);

  // Simple roots in descending lexicographic order are alpha_1, ..., alpha_n.
  for (int s = 0; s < n; ++s) {
    Coeffs v = in_mode(simple_root(n, s), mode);
    const std::uint64_t h = detail::hash_coeffs(v, mode);
    slice.append(v, h, {0, 0, -1});
  }
  slice.level_end_.push_back(slice.size());

  std::size_t level_begin = 0;
  for (int level = 1; level <= depth; ++level) {
    const std::size_t level_stop = slice.size();
    std::vector<Coeffs> fresh;
    std::vector<std::uint64_t> fresh_hash;
    std::vector<ParentLink> fresh_parent;
    detail::IdTable local;

    for (std::size_t id = level_begin; id < level_stop; ++id) {
      const auto rid = static_cast<RootId>(id);
      const int came_from = slice.meta_[id].letter;
      for (int s = 0; s < n; ++s) {
        if (s == came_from) continue;
        Coeffs w = reflect(slice.coeffs(rid), s, slice.gram());
        if (!is_positive(w)) continue;
        if (mode == ScalarMode::Approx) w = in_mode(w, mode);
        const std::uint64_t h = detail::hash_coeffs(w, mode);
        if (slice.index_.find(h, [&](std::uint32_t other) {
              return slice.hashes_[other] == h && detail::same_coeffs(slice.coeffs(other), w, mode);
            })) {
          continue;
        }
        if (local.find(h, [&](std::uint32_t k) {
              return fresh_hash[k] == h && detail::same_coeffs(fresh[k], w, mode);
            })) {
          continue;
        }
        const auto k = static_cast<std::uint32_t>(fresh.size());
        fresh.push_back(std::move(w));
        fresh_hash.push_back(h);
        fresh_parent.push_back({rid, s});
        local.insert(h, k, [&](std::uint32_t j) { return fresh_hash[j]; });
        if (slice.size() + fresh.size() > cap) throw SliceTooLarge(cap, level);
      }
    }

    if (fresh.empty()) {
      slice.saturated_ = true;
      break;
    }
    std::vector<std::uint32_t> order(fresh.size());
    std::iota(order.begin(), order.end(), 0U);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return compare_lex(fresh[a], fresh[b]) > 0;
    });
    for (std::uint32_t k : order) {
      slice.append(fresh[k], fresh_hash[k],
                   {fresh_parent[k].id, static_cast<std::uint16_t>(level),
                    static_cast<std::int8_t>(fresh_parent[k].letter)});
    }
    slice.level_end_.push_back(slice.size());
    level_begin = level_stop;
  }
  return slice;
}

ScalarMode natural_mode(const CoxeterMatrix& matrix) {
  return exact_mode_available(matrix) ? ScalarMode::Exact : ScalarMode::Approx;
}

}  // namespace reflab
