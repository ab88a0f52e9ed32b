#include <algorithm>
#include <cstdlib>
#include <memory>
#include <random>

#include "cli.hpp"
#include "reflab/analysis.hpp"
#include "reflab/errors.hpp"
#include "reflab/io.hpp"
#include "reflab/projective.hpp"

namespace reflab::cli {

using nlohmann::json;

namespace {

json coeffs_json(std::span<const Scalar> v) {
  json out = json::array();
  for (const Scalar& x : v) out.push_back(x.str());
  return out;
}

json report(const std::string& lemma, json params) {
  return {{"lemma", lemma}, {"params", std::move(params)}, {"status", "pass"}, {"violations", json::array()},
          {"counts", json::object()}};
}

std::shared_ptr<const RootSlice> slice_of(const MatrixSource& m, int depth, std::size_t cap) {
  return std::make_shared<const RootSlice>(generate_slice(m.matrix, depth, m.mode, cap));
}

std::string word_text(const InfiniteWord& w) {
  std::string s;
  for (int l : w.prefix) s += std::to_string(l + 1) + " ";
  s += "(";
  for (std::size_t i = 0; i < w.period.size(); ++i) s += (i ? " " : "") + std::to_string(w.period[i] + 1);
  return s + ")^inf";
}

LexicographicSpec identity_basis(int rank) {
  std::vector<int> perm(static_cast<std::size_t>(rank));
  for (int i = 0; i < rank; ++i) perm[i] = i;
  return LexicographicSpec::simple(perm);
}

// Two-sided orders for affine matrices, the identity lexicographic order otherwise.
OrderBuilder default_builder(const MatrixSource& m) {
  if (auto model = affine_model(m)) {
    return [w = default_two_sided_words(*model)](std::shared_ptr<const RootSlice> s) {
      return two_sided_order(std::move(s), w);
    };
  }
  return order_builder(identity_basis(m.matrix.rank()));
}

std::string basis_text(const LexicographicSpec& spec) {
  std::string s;
  for (const Coeffs& v : spec.basis) {
    s += s.empty() ? "[" : ",[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
    s += "]";
  }
  return s;
}

}  // namespace

std::optional<AffineModel> affine_model(const MatrixSource& m) {
  try {
    return AffineModel::from_matrix(m.matrix, m.mode);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  } catch (const NotFiniteType&) {
    return std::nullopt;
  }
}

json lemma_c_range(const MatrixSource& m, int depth, std::size_t cap) {
  const auto slice = slice_of(m, depth, cap);
  const CRangeReport rep = certify_c_range(*slice);
  json r = report("c-range", {{"matrix", m.name}, {"depth", depth}});
  for (RootId id : rep.violations) {
    r["violations"].push_back({{"id", id}, {"coeffs", coeffs_json(slice->coeffs(id))}});
  }
  r["counts"] = {{"roots", rep.roots},
                 {"distinct_values", rep.values.size()},
                 {"violations", rep.violations.size()},
                 {"roots_at_one", rep.at_one.size()},
                 {"max_below_one", rep.max_below_one.str()}};
  if (!rep.ok()) r["status"] = "fail";
  return r;
}

json lemma_density(const MatrixSource& m, int d_lo, int d_hi, std::size_t cap) {
  const auto slice = slice_of(m, d_hi, cap);
  const DensityReport rep = certify_density(*slice, d_lo, d_hi);
  json r = report("density", {{"matrix", m.name}, {"d_lo", d_lo}, {"d_hi", d_hi}});
  for (const auto& [lo, hi] : rep.unwitnessed) r["violations"].push_back({{"unwitnessed", {lo.str(), hi.str()}}});
  r["counts"] = {{"pairs", rep.pairs},
                 {"unwitnessed", rep.unwitnessed.size()},
                 {"distinct_by_depth", rep.distinct_by_depth},
                 {"strictly_increasing", rep.strictly_increasing()}};
  if (!rep.complete() || !rep.strictly_increasing()) r["status"] = "inconclusive";
  return r;
}

json lemma_blocks(const MatrixSource& m, int d_lo, int d_hi, std::size_t cap) {
  json r = report("blocks", {{"matrix", m.name}, {"d_lo", d_lo}, {"d_hi", d_hi}});
  json by_depth = json::object();
  const OrderBuilder build = order_builder(identity_basis(m.matrix.rank()));
  for (int d = d_lo; d <= d_hi; ++d) {
    const TruncatedOrder t = build(slice_of(m, d, cap));
    try {
      const auto blocks = block_decompose_universal(t);
      std::vector<std::string> problems;
      if (blocks.front().kind != BlockKind::Parabolic) problems.push_back("first block is not the parabolic block");
      if (blocks.size() < 2 || !(blocks[blocks.size() - 2].c == Scalar::rational(2, 3))) {
        problems.push_back("penultimate block is not Fiber(2/3)");
      }
      if (blocks.back().kind != BlockKind::Apex) problems.push_back("last block is not {alpha1}");
      for (const auto& p : problems) r["violations"].push_back({{"depth", d}, {"message", p}});
      by_depth[std::to_string(d)] = blocks.size();
    } catch (const BlockViolation& e) {
      r["violations"].push_back({{"depth", d}, {"message", e.what()}, {"ids", e.ids()}});
    }
  }
  r["counts"] = {{"blocks_by_depth", by_depth}, {"violations", r["violations"].size()}};
  if (!r["violations"].empty()) r["status"] = "fail";
  return r;
}

json lemma_stability(const MatrixSource& m, int d, int D, std::size_t cap) {
  const bool affine = affine_model(m).has_value();
  const OrderBuilder build = default_builder(m);
  json r = report("stability", {{"matrix", m.name}, {"d", d}, {"D", D}, {"order", affine ? "two-sided" : "lex"}});
  json rungs = json::array();
  std::vector<std::size_t> splits;
  for (int i = 0; i < 2; ++i) {
    const StabilityReport s = stability(build(slice_of(m, d + i, cap)), build(slice_of(m, D + i, cap)));
    splits.push_back(s.split_count());
    rungs.push_back({{"d", d + i}, {"D", D + i}, {"adjacencies", s.adjacencies.size()}, {"split", s.split_count()}});
  }
  r["counts"] = {{"rungs", rungs}};
  if (affine && splits[0] != splits[1]) {
    r["status"] = "inconclusive";
    r["violations"].push_back({{"message", "split count changes along the ladder"}});
  } else if (!affine && splits[1] <= splits[0]) {
    r["status"] = "fail";
    r["violations"].push_back({{"message", "split count does not grow along the ladder"}});
  }
  return r;
}

json lemma_char3(const MatrixSource& m, int d, int D, std::size_t cap) {
  const auto model = affine_model(m);
  if (!model && !(m.matrix == CoxeterMatrix::universal(3))) {
    throw std::invalid_argument("char3 needs the rank-3 universal group or an affine type");
  }
  const OrderBuilder build = default_builder(m);
  json r = report("char3", {{"matrix", m.name}, {"d", d}, {"D", D}});
  json rungs = json::array();
  std::vector<std::size_t> growing;
  for (int i = 0; i < 3; ++i) {
    const auto base_slice = slice_of(m, d + i, cap);
    std::vector<RootId> U;
    std::string subgroup;
    if (model) {
      Coeffs rest = model->delta();
      rest[0] -= 1;
      const auto other = base_slice->lookup(rest);
      if (!other) throw std::invalid_argument("delta - alpha1 is not in the slice");
      U = dihedral_closure(0, *other, *base_slice).roots;
      subgroup = "<s_alpha1, s_(delta - alpha1)>";
    } else {
      U = fiber(*base_slice, 1, Scalar::rational(1, 3));
      subgroup = "second coordinate 1/3";
    }
    r["params"]["subgroup"] = subgroup;
    const Char3Report c = char3_diagnostic(build(base_slice), build(slice_of(m, D + i, cap)), U);
    growing.push_back(c.growing());
    rungs.push_back({{"d", d + i}, {"D", D + i}, {"pairs", c.pairs.size()}, {"growing", c.growing()}});
    if (!model) {
      for (const auto& p : c.pairs) {
        if (!p.grows()) r["violations"].push_back({{"d", d + i}, {"pair", {p.low, p.high}}});
      }
    }
  }
  r["counts"] = {{"rungs", rungs}};
  if (!model && !r["violations"].empty()) r["status"] = "fail";
  if (model && growing[1] != growing[2]) {
    r["status"] = "inconclusive";
    r["violations"].push_back({{"message", "growing count not yet constant along the ladder"}});
  }
  return r;
}

json lemma_reflection_order(const MatrixSource& m, const std::vector<LexicographicSpec>& bases, int depth,
                            std::size_t cap) {
  const auto slice = slice_of(m, depth, cap);
  json r = report("reflection-order", {{"matrix", m.name}, {"depth", depth}});
  json orders = json::array();
  for (const auto& spec : bases) {
    const TruncatedOrder t = sort_truncation(slice, spec);
    const PlaneIndex index = plane_index_for(t);
    const auto fwd = verify_reflection_order(t, &index);
    const auto bwd = verify_reflection_order(t.backward(), &index);
    orders.push_back({{"basis", basis_text(spec)},
                      {"planes_checked", fwd.planes_checked},
                      {"violations", fwd.violation_count()},
                      {"backward_violations", bwd.violation_count()}});
    for (const auto& v : fwd.betweenness) {
      r["violations"].push_back({{"basis", basis_text(spec)}, {"betweenness", {v.low, v.middle, v.high}}});
    }
    for (const auto& v : fwd.dihedral) {
      r["violations"].push_back({{"basis", basis_text(spec)}, {"dihedral", {v.gamma1, v.gamma2}}});
    }
    if (!bwd.ok()) r["violations"].push_back({{"basis", basis_text(spec)}, {"backward", bwd.violation_count()}});
  }
  r["counts"] = {{"roots", slice->size()}, {"orders", orders}};
  if (!r["violations"].empty()) r["status"] = "fail";
  return r;
}

json lemma_two_sided(const MatrixSource& m, int depth, std::size_t cap) {
  const auto model = affine_model(m);
  if (!model) throw std::invalid_argument(m.name + " is not an affine type");
  const TwoSidedSpec words = default_two_sided_words(*model);
  const TruncatedOrder t = two_sided_order(slice_of(m, depth, cap), words);
  const auto rep = verify_reflection_order(t);
  const auto up = check_inversion_identity(*model, words.ascending, model->finite().positive, depth);
  const auto down = check_inversion_identity(*model, words.descending, model->finite().negative, depth);
  json r = report("two-sided", {{"matrix", m.name},
                                {"depth", depth},
                                {"ascending", word_text(words.ascending)},
                                {"descending", word_text(words.descending)}});
  r["counts"] = {{"roots", t.size()},
                 {"planes_checked", rep.planes_checked},
                 {"order_violations", rep.violation_count()},
                 {"positive_per_level", up.per_level},
                 {"negative_per_level", down.per_level}};
  for (const auto& v : rep.betweenness) r["violations"].push_back({{"betweenness", {v.low, v.middle, v.high}}});
  for (const auto& v : rep.dihedral) r["violations"].push_back({{"dihedral", {v.gamma1, v.gamma2}}});
  if (!up.ok) r["violations"].push_back({{"inversions", "ascending"}, {"message", up.discrepancy}});
  if (!down.ok) r["violations"].push_back({{"inversions", "descending"}, {"message", down.discrepancy}});
  if (!r["violations"].empty()) r["status"] = "fail";
  return r;
}

}  // namespace reflab::cli
