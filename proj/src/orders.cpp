#include "reflab/orders.hpp"

#include <algorithm>
#include <numeric>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "reflab/affine.hpp"
#include "reflab/errors.hpp"
#include "reflab/projective.hpp"

namespace reflab {

LexicographicSpec LexicographicSpec::simple(const std::vector<int>& permutation) {
  LexicographicSpec spec;
  const int n = static_cast<int>(permutation.size());
  for (int p : permutation) {
    if (p < 0 || p >= n) throw std::invalid_argument("simple basis index out of range");
    spec.basis.push_back(simple_root(n, p));
  }
  return spec;
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

}  // namespace

OrderSpec parse_order_spec(const std::string& text, int rank) {
  static const std::regex ainf("ainf:([0-9]+)");
  static const std::regex simple("lex:([0-9]+(,[0-9]+)*)");
  static const std::regex vectors(R"(lex:(\[[^\]]*\](,\[[^\]]*\])*))");
  std::smatch m;
  if (std::regex_match(text, m, ainf)) {
    const int n = std::stoi(m[1]);
    if (n < 1) throw ParseError("ainf needs n >= 1");
    return AInfinitySpec{n};
  }
  if (std::regex_match(text, m, simple)) {
    std::vector<int> perm;
    for (const auto& part : split(m[1], ',')) perm.push_back(std::stoi(part) - 1);
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < static_cast<int>(sorted.size()); ++i) {
      if (sorted[i] != i) throw ParseError("lex basis must be a permutation of 1.." + std::to_string(rank));
    }
    if (static_cast<int>(perm.size()) != rank) throw ParseError("lex basis must list all " + std::to_string(rank) + " simple roots");
    return LexicographicSpec::simple(perm);
  }
  if (std::regex_match(text, m, vectors)) {
    LexicographicSpec spec;
    static const std::regex vec(R"(\[([^\]]*)\])");
    const std::string body = m[1];
    for (auto it = std::sregex_iterator(body.begin(), body.end(), vec); it != std::sregex_iterator(); ++it) {
      Coeffs v;
      try {
        for (const auto& part : split((*it)[1], ',')) v.push_back(Scalar::parse(part));
      } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("bad lex basis entry: ") + e.what());
      }
      if (static_cast<int>(v.size()) != rank) throw ParseError("lex basis vectors must have length " + std::to_string(rank));
      spec.basis.push_back(std::move(v));
    }
    if (static_cast<int>(spec.basis.size()) != rank) throw ParseError("lex basis needs " + std::to_string(rank) + " vectors");
    return spec;
  }
  throw ParseError("unrecognized order spec: " + text);
}

TruncatedOrder::TruncatedOrder(std::shared_ptr<const RootSlice> slice, std::vector<RootId> sequence, int domain_depth,
                               std::string description)
    : slice_(std::move(slice)),
      sequence_(std::move(sequence)),
      position_(slice_->size(), kAbsent),
      domain_depth_(domain_depth),
      description_(std::move(description)) {
  for (std::size_t i = 0; i < sequence_.size(); ++i) {
    const RootId id = sequence_[i];
    if (id >= position_.size()) throw std::invalid_argument("order mentions a root outside the slice");
    if (position_[id] != kAbsent) throw std::invalid_argument("order lists root " + std::to_string(id) + " twice");
    position_[id] = static_cast<std::uint32_t>(i);
  }
}

std::size_t TruncatedOrder::position(RootId id) const {
  if (!contains(id)) throw std::out_of_range("root " + std::to_string(id) + " is outside the order's domain");
  return position_[id];
}

TruncatedOrder TruncatedOrder::backward() const {
  std::vector<RootId> rev(sequence_.rbegin(), sequence_.rend());
  return TruncatedOrder(slice_, std::move(rev), domain_depth_, description_.empty() ? "" : "backward " + description_);
}

namespace {

/// Rows of M^{-1}, where the columns of M are the basis vectors.
std::vector<Coeffs> basis_inverse(const LexicographicSpec& spec, std::size_t n) {
  if (spec.basis.size() != n) throw std::invalid_argument("lex basis size differs from the rank");
  std::vector<Coeffs> a(n, Coeffs(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    if (spec.basis[i].size() != n) throw std::invalid_argument("lex basis vector has the wrong length");
    for (std::size_t j = 0; j < n; ++j) a[j][i] = spec.basis[i][j];
    a[i][n + i] = Scalar(1);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) throw std::invalid_argument("lex basis is linearly dependent");
    std::swap(a[col], a[pivot]);
    const Scalar lead = a[col][col];
    for (Scalar& x : a[col]) x /= lead;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const Scalar f = a[r][col];
      for (std::size_t c = 0; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  for (auto& row : a) row.erase(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(n));
  return a;
}

void append_coords(const std::vector<Coeffs>& inv, std::span<const Scalar> v, std::vector<Scalar>& out) {
  for (const Coeffs& row : inv) {
    Scalar y;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (!row[j].is_zero() && !v[j].is_zero()) y += row[j] * v[j];
    }
    out.push_back(std::move(y));
  }
}

int compare_coords(const Scalar* ya, const Scalar& sa, const Scalar* yb, const Scalar& sb, std::size_t n) {
  for (std::size_t t = 0; t < n; ++t) {
    const int c = compare(ya[t] * sb, yb[t] * sa);
    if (c != 0) return c;
  }
  return 0;
}

}  // namespace

LexKeys::LexKeys(const RootSlice& slice, const LexicographicSpec& spec) : n_(static_cast<std::size_t>(slice.rank())) {
  const auto inv = basis_inverse(spec, n_);
  coords_.reserve(slice.size() * n_);
  sums_.reserve(slice.size());
  for (RootId id = 0; id < slice.size(); ++id) {
    append_coords(inv, slice.coeffs(id), coords_);
    sums_.push_back(sum(slice.coeffs(id)));
  }
}

int LexKeys::compare(RootId a, RootId b) const {
  const int c = compare_coords(coords_.data() + static_cast<std::size_t>(a) * n_, sums_[a],
                               coords_.data() + static_cast<std::size_t>(b) * n_, sums_[b], n_);
  if (c == 0) throw EqualNormalizedCoordinates(a, b);
  return c;
}

int compare_reflex(RootId a, RootId b, const LexicographicSpec& spec, const RootSlice& slice) {
  const std::size_t n = static_cast<std::size_t>(slice.rank());
  const auto inv = basis_inverse(spec, n);
  std::vector<Scalar> ya, yb;
  append_coords(inv, slice.coeffs(a), ya);
  append_coords(inv, slice.coeffs(b), yb);
  const int c = compare_coords(ya.data(), sum(slice.coeffs(a)), yb.data(), sum(slice.coeffs(b)), n);
  if (c == 0) throw EqualNormalizedCoordinates(a, b);
  return c;
}

namespace {

int slice_domain_depth(const RootSlice& slice) { return slice.saturated() ? -1 : slice.depth_bound(); }

/// (j, i) for the type A root alpha_i + ... + alpha_j.
std::pair<int, int> type_a_block(std::span<const Scalar> v) {
  int first = -1, last = -1;
  for (int i = 0; i < static_cast<int>(v.size()); ++i) {
    if (v[i].is_zero()) continue;
    if (v[i] != Scalar(1) || (last >= 0 && last != i - 1)) throw std::invalid_argument("not a type A positive root");
    if (first < 0) first = i;
    last = i;
  }
  return {last, first};
}

}  // namespace

TruncatedOrder sort_truncation(std::shared_ptr<const RootSlice> slice, const OrderSpec& spec) {
  if (const auto* lex = std::get_if<LexicographicSpec>(&spec)) {
    const LexKeys keys(*slice, *lex);
    std::vector<RootId> ids(slice->size());
    std::iota(ids.begin(), ids.end(), RootId{0});
    std::sort(ids.begin(), ids.end(), [&](RootId a, RootId b) { return keys.compare(a, b) < 0; });
    std::ostringstream desc;
    desc << "lex";
    for (const auto& v : lex->basis) {
      desc << (&v == &lex->basis.front() ? ":[" : ",[");
      for (std::size_t i = 0; i < v.size(); ++i) desc << (i ? "," : "") << v[i];
      desc << ']';
    }
    const int depth = slice_domain_depth(*slice);
    return TruncatedOrder(std::move(slice), std::move(ids), depth, desc.str());
  }
  if (const auto* ainf = std::get_if<AInfinitySpec>(&spec)) {
    if (!(slice->matrix() == CoxeterMatrix::type_a(slice->rank())) || slice->rank() != ainf->n_max) {
      throw std::invalid_argument("the A-infinity block order needs the type A_n slice with n = n_max");
    }
    std::vector<std::pair<std::pair<int, int>, RootId>> keyed;
    for (RootId id = 0; id < slice->size(); ++id) keyed.push_back({type_a_block(slice->coeffs(id)), id});
    std::sort(keyed.begin(), keyed.end());
    std::vector<RootId> ids;
    for (const auto& [key, id] : keyed) ids.push_back(id);
    const int depth = slice_domain_depth(*slice);
    return TruncatedOrder(std::move(slice), std::move(ids), depth, "ainf:" + std::to_string(ainf->n_max));
  }
  if (const auto* ex = std::get_if<ExplicitSpec>(&spec)) {
    int depth = -1;
    if (!slice->saturated()) {
      for (RootId id : ex->sequence) depth = std::max(depth, id < slice->size() ? slice->depth(id) : 0);
    }
    return TruncatedOrder(std::move(slice), ex->sequence, depth, "explicit");
  }
  return two_sided_order(std::move(slice), std::get<TwoSidedSpec>(spec));
}

PlaneIndex plane_index_for(const TruncatedOrder& order) {
  std::vector<RootId> ids = order.sequence();
  std::sort(ids.begin(), ids.end());
  return PlaneIndex(order.slice(), ids);
}

VerificationReport verify_reflection_order(const TruncatedOrder& order, const PlaneIndex* index) {
  std::optional<PlaneIndex> own;
  if (index == nullptr) {
    own.emplace(plane_index_for(order));
    index = &*own;
  }
  const RootSlice& slice = order.slice();
  VerificationReport report;
  report.roots = order.size();
  for (std::size_t p = 0; p < index->size(); ++p) {
    std::vector<RootId> members;
    for (RootId id : index->members(p)) {
      if (order.contains(id)) members.push_back(id);
    }
    // Two roots can always be arranged consistently; nothing to check.
    if (members.size() < 3) continue;
    ++report.planes_checked;
    const Plane& plane = index->plane(p);
    std::sort(members.begin(), members.end(), [&](RootId u, RootId v) {
      return cross_sign(plane.coords(slice.coeffs(u)), plane.coords(slice.coeffs(v))) > 0;
    });
    const std::size_t k = members.size();
    std::vector<std::size_t> pos(k);
    for (std::size_t i = 0; i < k; ++i) pos[i] = order.position(members[i]);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 2; j < k; ++j) {
        const bool i_first = pos[i] < pos[j];
        const std::size_t lo = i_first ? i : j, hi = i_first ? j : i;
        for (std::size_t m = i + 1; m < j; ++m) {
          if (pos[lo] < pos[m] && pos[m] < pos[hi]) continue;
          if (report.betweenness.size() < VerificationReport::kMaxListed) {
            report.betweenness.push_back({members[lo], members[m], members[hi]});
          }
          ++report.betweenness_count;
        }
      }
    }
    auto sub = dihedral_from_plane_roots(index->members(p), slice);
    if (!sub) {
      ++report.dihedral_undetermined;
      continue;
    }
    ++report.dihedral_checked;
    std::vector<RootId> sweep;
    for (RootId id : sub->roots) {
      if (order.contains(id)) sweep.push_back(id);
    }
    std::vector<RootId> restricted = sweep;
    std::sort(restricted.begin(), restricted.end(),
              [&](RootId u, RootId v) { return order.position(u) < order.position(v); });
    const bool forward = restricted == sweep;
    const bool backward = std::equal(restricted.begin(), restricted.end(), sweep.rbegin(), sweep.rend());
    if (!forward && !backward) report.dihedral.push_back({sub->gamma1, sub->gamma2});
  }
  return report;
}

TruncatedOrder upper_s_conjugate(const TruncatedOrder& order, int s) {
  const RootSlice& slice = order.slice();
  if (s < 0 || s >= slice.rank()) throw std::invalid_argument("simple index out of range");
  const RootId alpha = slice.simple(s);
  const std::size_t pivot = order.position(alpha);
  const int dd = order.domain_depth();
  const int new_depth = dd < 0 ? -1 : dd - 1;
  auto keep = [&](RootId id) { return new_depth < 0 || slice.depth(id) <= new_depth; };

  std::vector<RootId> seq;
  for (std::size_t i = 0; i < pivot; ++i) {
    if (keep(order.at(i))) seq.push_back(order.at(i));
  }
  for (std::size_t i = pivot + 1; i < order.size(); ++i) {
    const auto img = slice.lookup(reflect(slice.coeffs(order.at(i)), s, slice.gram()));
    if (img && keep(*img)) seq.push_back(*img);
  }
  seq.push_back(alpha);

  std::size_t expected = 0;
  for (RootId id : order.sequence()) expected += keep(id) ? 1 : 0;
  std::vector<bool> seen(slice.size(), false);
  for (RootId id : seq) {
    if (seen[id]) throw std::invalid_argument("order is not a reflection order: the roots below alpha_s are not s-stable");
    seen[id] = true;
  }
  if (seq.size() != expected) {
    throw std::invalid_argument("order is not a reflection order: the roots below alpha_s are not s-stable");
  }
  std::string desc = order.description().empty() ? "" : "upper " + std::to_string(s + 1) + "-conjugate of " + order.description();
  return TruncatedOrder(order.slice_ptr(), std::move(seq), new_depth, std::move(desc));
}

Word initial_segment_word(const TruncatedOrder& order, std::size_t n) {
  if (n > order.size()) throw std::invalid_argument("initial segment longer than the order");
  const RootSlice& slice = order.slice();
  const GramMatrix& g = slice.gram();
  Word w;
  for (std::size_t k = 0; k < n; ++k) {
    // w^{-1}(beta_k) = s_{r_{k-1}} ... s_{r_1}(beta_k) must be a simple root.
    Coeffs v = slice.root(order.at(k));
    for (int letter : w.letters) reflect_in_place(v, letter, g);
    int simple = -1;
    for (int i = 0; i < slice.rank(); ++i) {
      if (v[i].is_zero()) continue;
      if (simple >= 0 || v[i] != Scalar(1)) {
        simple = -2;
        break;
      }
      simple = i;
    }
    if (simple < 0) throw NotAnInversionPrefix(k + 1);
    w.letters.push_back(simple);
  }
  w.reduced = is_reduced(w.letters, g);
  return w;
}

TruncatedOrder a_infinity_order(int n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  auto slice = std::make_shared<const RootSlice>(
      generate_slice(CoxeterMatrix::type_a(n_max), n_max, ScalarMode::Exact));
  return sort_truncation(std::move(slice), AInfinitySpec{n_max});
}

ESelection build_E(const TruncatedOrder& order, int k, const Scalar& closeness) {
  const RootSlice& slice = order.slice();
  if (slice.rank() != 3) throw RankUnsupported(slice.rank());
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  struct Candidate {
    int depth;
    Scalar q;
    RootId id;
  };
  std::vector<Candidate> candidates;
  for (RootId id : order.sequence()) {
    const Scalar q = qform(normalize_vector(slice.coeffs(id)), slice.gram());
    if (compare(q, closeness) < 0) candidates.push_back({slice.depth(id), q, id});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.depth != b.depth) return a.depth < b.depth;
    const int c = compare(a.q, b.q);
    return c != 0 ? c < 0 : a.id < b.id;
  });
  std::vector<RootId> chosen;
  for (const Candidate& c : candidates) {
    const auto pc = normalize_vector(slice.coeffs(c.id));
    const bool fits = std::all_of(chosen.begin(), chosen.end(), [&](RootId other) {
      return segment_meets_cone(pc, normalize_vector(slice.coeffs(other)), slice.gram()).intersects;
    });
    if (fits) chosen.push_back(c.id);
    if (static_cast<int>(chosen.size()) == k + 1) break;
  }
  if (static_cast<int>(chosen.size()) < k + 1) {
    throw InsufficientCandidates("only " + std::to_string(chosen.size()) + " of " + std::to_string(k + 1) +
                                 " pairwise cone-crossing roots within the closeness threshold");
  }
  std::sort(chosen.begin(), chosen.end(), [&](RootId a, RootId b) { return order.less(a, b); });
  ESelection out;
  out.anchors = chosen;
  for (int i = 1; i <= k; ++i) {
    const RootId lo = chosen[i - 1], hi = chosen[i];
    const auto sub = dihedral_closure(lo, hi, slice);
    const bool last = i == k;
    std::vector<RootId> members;
    for (RootId id : sub.roots) {
      if (!order.contains(id)) continue;
      const std::size_t p = order.position(id);
      if (p >= order.position(lo) && (p < order.position(hi) || (last && p == order.position(hi)))) {
        members.push_back(id);
      }
    }
    std::sort(members.begin(), members.end(), [&](RootId a, RootId b) { return order.less(a, b); });
    out.intervals.push_back(std::move(members));
  }
  return out;
}

}  // namespace reflab
