#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "reflab/analysis.hpp"
#include "reflab/errors.hpp"
#include "reflab/io.hpp"
#include "reflab/projective.hpp"
#include "toml_subset.hpp"

namespace reflab::cli {

using nlohmann::json;

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoError("cannot write " + path);
}

// Writes to `path`, or to `out` when the path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file(path, text);
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

int parse_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ParseError("bad " + what + ": '" + s + "'");
  return v;
}

std::pair<int, int> parse_depths(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() == 1) {
    const int d = parse_int(parts[0], "depth");
    return {d, d};
  }
  if (parts.size() != 2) throw ParseError("--depths takes d or d,D");
  return {parse_int(parts[0], "depth"), parse_int(parts[1], "depth")};
}

std::shared_ptr<const RootSlice> make_slice(const MatrixSource& m, int depth, std::size_t cap) {
  if (depth < 0) throw ParseError("depth must be nonnegative");
  return std::make_shared<const RootSlice>(generate_slice(m.matrix, depth, m.mode, cap));
}

json coeffs_json(std::span<const Scalar> v) {
  json out = json::array();
  for (const Scalar& x : v) out.push_back(x.str());
  return out;
}

json verification_json(const VerificationReport& rep) {
  json v = json::array();
  for (const auto& b : rep.betweenness) v.push_back({{"kind", "betweenness"}, {"low", b.low}, {"middle", b.middle}, {"high", b.high}});
  for (const auto& d : rep.dihedral) v.push_back({{"kind", "dihedral"}, {"gamma1", d.gamma1}, {"gamma2", d.gamma2}});
  return {{"roots", rep.roots},
          {"planes_checked", rep.planes_checked},
          {"dihedral_checked", rep.dihedral_checked},
          {"violation_count", rep.violation_count()},
          {"violations", v}};
}

// Invertible 3x3 (or n x n) integer bases with entries in {0, 1, 2}.
std::vector<LexicographicSpec> random_bases(int rank, int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<LexicographicSpec> out;
  while (static_cast<int>(out.size()) < count) {
    std::vector<Coeffs> basis(rank, Coeffs(rank));
    for (auto& row : basis) {
      for (auto& x : row) x = Scalar(static_cast<long long>(rng() % 3));
    }
    // Rank via elimination over the rationals.
    auto m = basis;
    int r = 0;
    for (int c = 0; c < rank && r < rank; ++c) {
      int p = r;
      while (p < rank && m[p][c].sign() == 0) ++p;
      if (p == rank) continue;
      std::swap(m[p], m[r]);
      for (int i = r + 1; i < rank; ++i) {
        const Scalar f = m[i][c] / m[r][c];
        for (int j = c; j < rank; ++j) m[i][j] = m[i][j] - f * m[r][j];
      }
      ++r;
    }
    if (r == rank) out.push_back({std::move(basis)});
  }
  return out;
}

std::vector<LexicographicSpec> simple_bases(int rank) {
  std::vector<int> perm(rank);
  for (int i = 0; i < rank; ++i) perm[i] = i;
  std::vector<LexicographicSpec> out;
  do {
    out.push_back(LexicographicSpec::simple(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::string status_of(const json& reports) {
  bool inconclusive = false;
  for (const auto& r : reports) {
    if (r["status"] == "fail") return "fail";
    inconclusive = inconclusive || r["status"] == "inconclusive";
  }
  return inconclusive ? "inconclusive" : "pass";
}

// Two deep roots nearest the cone, from different first-coordinate fibers.
std::pair<RootId, RootId> near_cone_pair(const RootSlice& slice) {
  std::vector<std::pair<Scalar, RootId>> ranked;
  for (RootId id = 0; id < slice.size(); ++id) {
    if (slice.depth(id) != slice.depth_bound()) continue;
    ranked.emplace_back(qform(normalize_vector(slice.coeffs(id)), slice.gram()), id);
  }
  std::sort(ranked.begin(), ranked.end());
  if (ranked.size() < 2) throw std::invalid_argument("slice too shallow for a chord figure");
  const RootId a = ranked[0].second;
  const Scalar ca = normalize_vector(slice.coeffs(a))[0];
  for (std::size_t i = 1; i < ranked.size(); ++i) {
    if (!(normalize_vector(slice.coeffs(ranked[i].second))[0] == ca)) return {a, ranked[i].second};
  }
  return {a, ranked[1].second};
}

SvgFiber parse_fiber(const std::string& text, int rank) {
  SvgFiber f;
  bool have_axis = false, have_c = false;
  for (const auto& part : split(text, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw ParseError("--highlight-fiber takes axis=K,c=VALUE");
    const std::string k = part.substr(0, eq), v = part.substr(eq + 1);
    if (k == "axis") {
      f.axis = parse_int(v, "axis") - 1;
      if (f.axis < 0 || f.axis >= rank) throw ParseError("axis must be in 1.." + std::to_string(rank));
      have_axis = true;
    } else if (k == "c") {
      try {
        f.c = Scalar::parse(v);
      } catch (const std::invalid_argument&) {
        throw ParseError("bad fiber value '" + v + "'");
      }
      have_c = true;
    } else {
      throw ParseError("unknown fiber key '" + k + "'");
    }
  }
  if (!have_axis || !have_c) throw ParseError("--highlight-fiber takes axis=K,c=VALUE");
  return f;
}

std::pair<RootId, RootId> parse_pair(const std::string& text, const RootSlice& slice) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw ParseError("expected a pair a,b of root ids");
  const int a = parse_int(parts[0], "root id"), b = parse_int(parts[1], "root id");
  for (int x : {a, b}) {
    if (x < 0 || static_cast<std::size_t>(x) >= slice.size()) {
      throw ParseError("root id " + std::to_string(x) + " is not in the slice");
    }
  }
  return {static_cast<RootId>(a), static_cast<RootId>(b)};
}

struct MatrixOptions {
  std::string type;
  std::string file;
  std::string mode;
};

void add_matrix_options(CLI::App* app, MatrixOptions& m, const std::string& default_type) {
  m.type = default_type;
  app->add_option("--matrix", m.file, "Coxeter matrix file (JSON or TOML)");
  app->add_option("--type", m.type, "built-in matrix: universal3, A<n>, A<n>~")->capture_default_str();
  app->add_option("--mode", m.mode, "exact or approx")->check(CLI::IsMember({"exact", "approx"}));
}

}  // namespace

MatrixSource resolve_matrix(const std::string& type, const std::string& file, const std::string& mode) {
  MatrixSource src{CoxeterMatrix::universal(3), ScalarMode::Exact, type};
  std::optional<ScalarMode> wanted;
  if (!file.empty()) {
    MatrixFile mf = load_matrix_file(file);
    src.matrix = std::move(mf.matrix);
    src.name = std::filesystem::path(file).filename().string();
    wanted = mf.mode;
  } else {
    try {
      src.matrix = CoxeterMatrix::named(type);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  if (mode == "exact") wanted = ScalarMode::Exact;
  if (mode == "approx") wanted = ScalarMode::Approx;
  src.mode = wanted.value_or(natural_mode(src.matrix));
  return src;
}

std::size_t cap_from_env() {
  const char* v = std::getenv("REFLAB_CAP");
  if (v == nullptr || *v == '\0') return kDefaultRootCap;
  const std::string s(v);
  if (s.find_first_not_of("0123456789") != std::string::npos || s.size() > 18) {
    throw ParseError("REFLAB_CAP must be a positive integer, got '" + s + "'");
  }
  const std::size_t cap = std::stoull(s);
  if (cap == 0) throw ParseError("REFLAB_CAP must be a positive integer");
  return cap;
}

RunConfig load_config(const std::string& path) {
  const std::string text = read_file(path);
  json doc;
  try {
    const auto first = text.find_first_not_of(" \t\r\n");
    doc = first != std::string::npos && text[first] == '{' ? json::parse(text) : detail::TomlReader(text).parse();
  } catch (const json::exception& e) {
    throw ParseError(path + ": invalid JSON: " + e.what());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
  RunConfig c;
  const auto get_int = [&](const json& table, const char* key, auto& field) {
    if (!table.contains(key)) return;
    if (!table[key].is_number_integer()) throw ParseError(path + ": " + key + " must be an integer");
    field = table[key].get<std::remove_reference_t<decltype(field)>>();
  };
  const auto table = [&](const char* name) {
    if (!doc.contains(name)) return json::object();
    if (!doc[name].is_object()) throw ParseError(path + ": [" + name + "] must be a table");
    return doc[name];
  };
  const json u = table("universal"), a = table("affine"), r = table("run");
  if (u.contains("matrix")) {
    if (!u["matrix"].is_string()) throw ParseError(path + ": matrix must be a string");
    std::filesystem::path p = u["matrix"].get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(path).parent_path() / p;
    c.universal_matrix = p.string();
  }
  get_int(u, "depth", c.universal_depth);
  get_int(u, "density_lo", c.density_lo);
  get_int(u, "verify_depth", c.verify_depth);
  get_int(u, "random_bases", c.random_bases);
  get_int(a, "depth", c.affine_depth);
  if (a.contains("types")) {
    if (!a["types"].is_array()) throw ParseError(path + ": types must be an array of names");
    c.affine_types.clear();
    for (const auto& t : a["types"]) {
      if (!t.is_string()) throw ParseError(path + ": types must be an array of names");
      c.affine_types.push_back(t.get<std::string>());
    }
  }
  get_int(r, "cap", c.cap);
  get_int(r, "seed", c.seed);
  try {
    validate(c);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
  return c;
}

void validate(const RunConfig& c) {
  // Ladders: char3 starts at universal_depth - 5, affine stability at affine_depth - 4.
  if (c.universal_depth < 6) throw ParseError("universal depth must be at least 6");
  if (c.density_lo < 0 || c.density_lo >= c.universal_depth) {
    throw ParseError("density_lo must lie in [0, universal depth)");
  }
  if (c.verify_depth < 1 || c.verify_depth > c.universal_depth) {
    throw ParseError("verify_depth must lie in [1, universal depth]");
  }
  if (c.random_bases < 0) throw ParseError("random_bases must be nonnegative");
  if (c.affine_depth < 5) throw ParseError("affine depth must be at least 5");
}

json certify_all(const RunConfig& config) {
  validate(config);
  const std::size_t cap = config.cap != 0 ? config.cap : cap_from_env();
  const MatrixSource u = resolve_matrix("universal3", config.universal_matrix, "");
  std::vector<MatrixSource> affine;
  for (const auto& t : config.affine_types) affine.push_back(resolve_matrix(t, "", ""));

  const int U = config.universal_depth, A = config.affine_depth;
  std::vector<LexicographicSpec> bases = simple_bases(u.matrix.rank());
  for (auto& b : random_bases(u.matrix.rank(), config.random_bases, config.seed)) bases.push_back(std::move(b));

  std::vector<std::function<json()>> tasks = {
      [&] { return lemma_c_range(u, U, cap); },
      [&] { return lemma_density(u, config.density_lo, U, cap); },
      [&] { return lemma_blocks(u, config.density_lo, U, cap); },
      [&] { return lemma_reflection_order(u, bases, config.verify_depth, cap); },
      [&] { return lemma_stability(u, U - 4, U - 1, cap); },
      [&] { return lemma_char3(u, U - 5, U - 2, cap); },
  };
  for (const auto& m : affine) {
    tasks.push_back([&] { return lemma_two_sided(m, A, cap); });
    tasks.push_back([&] { return lemma_stability(m, A - 4, A - 1, cap); });
  }
  std::vector<std::future<json>> running;
  for (auto& t : tasks) running.push_back(std::async(std::launch::async, t));
  json reports = json::array();
  for (auto& f : running) reports.push_back(f.get());

  json counts = {{"pass", 0}, {"inconclusive", 0}, {"fail", 0}};
  for (const auto& r : reports) counts[r["status"].get<std::string>()] = counts[r["status"].get<std::string>()].get<int>() + 1;
  json types = json::array();
  for (const auto& m : affine) types.push_back(m.name);
  return {{"status", status_of(reports)},
          {"counts", counts},
          {"config",
           {{"universal_matrix", u.name},
            {"universal_depth", U},
            {"density_lo", config.density_lo},
            {"verify_depth", config.verify_depth},
            {"random_bases", config.random_bases},
            {"affine_types", types},
            {"affine_depth", A},
            {"seed", config.seed}}},
          {"reports", reports}};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reflection orders on Coxeter root systems"};
  app.require_subcommand(1);
  std::function<int()> action;

  MatrixOptions roots_m;
  int roots_depth = 0;
  std::string roots_out;
  auto* roots = app.add_subcommand("roots", "Enumerate positive roots to a depth (CSV)");
  add_matrix_options(roots, roots_m, "universal3");
  roots->add_option("--depth", roots_depth, "maximum depth")->required();
  roots->add_option("--out", roots_out, "CSV path (default stdout)");
  roots->callback([&] {
    action = [&] {
      const auto m = resolve_matrix(roots_m.type, roots_m.file, roots_m.mode);
      std::ostringstream csv;
      write_roots_csv(csv, *make_slice(m, roots_depth, cap_from_env()));
      emit(roots_out, csv.str(), out);
      return kOk;
    };
  });

  MatrixOptions dih_m;
  int dih_depth = 0;
  std::string dih_pair;
  auto* dih = app.add_subcommand("dihedral", "Classify the dihedral subgroup of two roots (JSON)");
  add_matrix_options(dih, dih_m, "universal3");
  dih->add_option("--depth", dih_depth, "slice depth")->required();
  dih->add_option("--pair", dih_pair, "root ids a,b as in roots.csv")->required();
  dih->callback([&] {
    action = [&] {
      const auto m = resolve_matrix(dih_m.type, dih_m.file, dih_m.mode);
      const auto slice = make_slice(m, dih_depth, cap_from_env());
      const auto [a, b] = parse_pair(dih_pair, *slice);
      const DihedralSubgroup g = dihedral_closure(a, b, *slice);
      const DihedralSubgroup mx = maximal_dihedral(a, b, *slice);
      json j = {{"pair", {a, b}},
                {"canonical", {g.gamma1, g.gamma2}},
                {"canonical_coeffs", {coeffs_json(slice->coeffs(g.gamma1)), coeffs_json(slice->coeffs(g.gamma2))}},
                {"bform", g.bform.str()},
                {"kind", g.is_infinite() ? "infinite" : "finite"},
                {"order", g.order},
                {"roots", g.roots},
                {"maximal_canonical", {mx.gamma1, mx.gamma2}},
                {"maximal_kind", mx.is_infinite() ? "infinite" : "finite"}};
      if (slice->rank() == 3) {
        try {
          const auto cone = segment_meets_cone(normalize_vector(slice->coeffs(g.gamma1)),
                                               normalize_vector(slice->coeffs(g.gamma2)), slice->gram());
          j["segment_meets_cone"] = cone.intersects;
        } catch (const DegenerateQuadratic&) {
          j["segment_meets_cone"] = nullptr;
        }
      }
      out << dump(j);
      return kOk;
    };
  });

  MatrixOptions ord_m;
  int ord_depth = 0;
  std::string ord_spec = "lex:1,2,3", ord_out;
  bool ord_verify = false;
  auto* ord = app.add_subcommand("order", "Build a reflection order on a slice (CSV), optionally verified");
  add_matrix_options(ord, ord_m, "universal3");
  ord->add_option("--depth", ord_depth, "slice depth")->required();
  ord->add_option("--spec", ord_spec, "lex:1,2,3 | lex:[1,1,0],[0,1,0],[0,0,1] | ainf:N | two-sided")
      ->capture_default_str();
  ord->add_flag("--verify", ord_verify, "check the reflection-order axioms; report JSON on stdout");
  ord->add_option("--out", ord_out, "CSV path (default stdout unless --verify)");
  ord->callback([&] {
    action = [&] {
      const auto m = resolve_matrix(ord_m.type, ord_m.file, ord_m.mode);
      const auto slice = make_slice(m, ord_depth, cap_from_env());
      std::optional<TruncatedOrder> t;
      if (ord_spec == "two-sided") {
        const auto model = affine_model(m);
        if (!model) throw ParseError("two-sided orders need an affine matrix");
        t = two_sided_order(slice, default_two_sided_words(*model));
      } else {
        t = sort_truncation(slice, parse_order_spec(ord_spec, m.matrix.rank()));
      }
      std::ostringstream csv;
      write_order_csv(csv, *t);
      if (!ord_verify || !ord_out.empty()) emit(ord_out, csv.str(), out);
      if (!ord_verify) return kOk;
      const auto rep = verify_reflection_order(*t);
      json j = verification_json(rep);
      j["order"] = t->description();
      out << dump(j);
      return rep.ok() ? kOk : kFailed;
    };
  });

  std::string aff_type = "A2~", aff_out, aff_loop;
  int aff_depth = 0;
  bool aff_verify = false;
  auto* aff = app.add_subcommand("affine-order", "Two-sided order of an affine type");
  aff->add_option("--type", aff_type, "A1~ or A2~ (any A<n>~)")->capture_default_str();
  aff->add_option("--depth", aff_depth, "slice depth; inversions are checked through this level")->required();
  aff->add_flag("--verify", aff_verify, "verify the order and the inversion identity; JSON on stdout");
  aff->add_option("--out", aff_out, "order CSV path");
  aff->add_option("--loop", aff_loop, "loop-coordinate CSV path (default stdout unless --verify)");
  aff->callback([&] {
    action = [&] {
      const auto m = resolve_matrix(aff_type, "", "");
      const auto model = affine_model(m);
      if (!model) throw ParseError(aff_type + " is not an affine type");
      const auto slice = make_slice(m, aff_depth, cap_from_env());
      const TruncatedOrder t = two_sided_order(slice, default_two_sided_words(*model));
      if (!aff_out.empty()) {
        std::ostringstream csv;
        write_order_csv(csv, t);
        write_file(aff_out, csv.str());
      }
      if (!aff_verify || !aff_loop.empty()) {
        std::ostringstream csv;
        write_loop_csv(csv, *model, *slice);
        emit(aff_loop, csv.str(), out);
      }
      if (!aff_verify) return kOk;
      const json j = lemma_two_sided(m, aff_depth, cap_from_env());
      out << dump(j);
      return j["status"] == "fail" ? kFailed : kOk;
    };
  });

  MatrixOptions cert_m;
  std::string cert_lemma, cert_depths, cert_json;
  auto* cert = app.add_subcommand("certify", "Run one certifier (JSON report)");
  add_matrix_options(cert, cert_m, "universal3");
  cert->add_option("--lemma", cert_lemma, "certifier")
      ->required()
      ->check(CLI::IsMember({"c-range", "density", "blocks", "char3", "stability", "reflection-order", "two-sided"}));
  cert->add_option("--depths", cert_depths, "d or d,D")->required();
  cert->add_option("--json", cert_json, "report path (default stdout)");
  cert->callback([&] {
    action = [&] {
      const auto m = resolve_matrix(cert_m.type, cert_m.file, cert_m.mode);
      const auto [d, D] = parse_depths(cert_depths);
      if (d < 0 || D < d) throw ParseError("--depths needs 0 <= d <= D");
      const std::size_t cap = cap_from_env();
      json j;
      if (cert_lemma == "c-range") {
        j = lemma_c_range(m, D, cap);
      } else if (cert_lemma == "density") {
        j = lemma_density(m, d, D, cap);
      } else if (cert_lemma == "blocks") {
        j = lemma_blocks(m, d, D, cap);
      } else if (cert_lemma == "stability") {
        j = lemma_stability(m, d, D, cap);
      } else if (cert_lemma == "char3") {
        j = lemma_char3(m, d, D, cap);
      } else if (cert_lemma == "reflection-order") {
        j = lemma_reflection_order(m, simple_bases(m.matrix.rank()), D, cap);
      } else {
        j = lemma_two_sided(m, D, cap);
      }
      emit(cert_json, dump(j), out);
      return j["status"] == "fail" ? kFailed : kOk;
    };
  });

  std::string all_config, all_json;
  auto* all = app.add_subcommand("certify-all", "Run every certifier (JSON summary)");
  all->add_option("--config", all_config, "TOML or JSON run config (default settings when omitted)");
  all->add_option("--json", all_json, "summary path (default stdout)");
  all->callback([&] {
    action = [&] {
      const RunConfig c = all_config.empty() ? RunConfig{} : load_config(all_config);
      const json j = certify_all(c);
      emit(all_json, dump(j), out);
      return j["status"] == "fail" ? kFailed : kOk;
    };
  });

  MatrixOptions svg_m;
  int svg_depth = 0;
  std::vector<std::string> svg_fibers, svg_segments;
  std::string svg_out, svg_norm, svg_figures;
  auto* svg = app.add_subcommand("svg", "Barycentric picture of a rank-3 slice");
  add_matrix_options(svg, svg_m, "universal3");
  svg->add_option("--depth", svg_depth, "slice depth")->required();
  svg->add_option("--highlight-fiber", svg_fibers, "axis=K,c=VALUE (axis 1-based; repeatable)");
  svg->add_option("--highlight-segment", svg_segments, "root ids a,b (repeatable)");
  svg->add_option("--out", svg_out, "SVG path (default stdout)");
  svg->add_option("--normroots", svg_norm, "normalized-coordinate CSV path");
  svg->add_option("--figures", svg_figures, "directory for the base, fiber and chord figures");
  svg->callback([&] {
    action = [&] {
      const auto m = resolve_matrix(svg_m.type, svg_m.file, svg_m.mode);
      const auto slice = make_slice(m, svg_depth, cap_from_env());
      if (slice->rank() != 3) throw RankUnsupported(slice->rank());
      const auto& palette = highlight_palette();
      SvgOptions opts;
      for (const auto& f : svg_fibers) {
        opts.fibers.push_back(parse_fiber(f, 3));
        opts.fibers.back().color = palette[(opts.fibers.size() - 1) % palette.size()];
      }
      for (const auto& s : svg_segments) {
        const auto [a, b] = parse_pair(s, *slice);
        opts.segments.push_back({a, b, palette[(opts.fibers.size() + opts.segments.size()) % palette.size()], "", ""});
      }
      if (!svg_norm.empty()) {
        std::ostringstream csv;
        write_normroots_csv(csv, *slice);
        write_file(svg_norm, csv.str());
      }
      if (!svg_figures.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(svg_figures, ec);
        if (ec) throw IoError("cannot create " + svg_figures);
        const std::filesystem::path dir(svg_figures);
        write_file((dir / "base.svg").string(), render_svg(*slice, {}));
        SvgOptions fib;
        fib.fibers.push_back({0, Scalar::rational(2, 3), palette[0]});
        fib.title = "first coordinate 2/3";
        write_file((dir / "fiber.svg").string(), render_svg(*slice, fib));
        SvgOptions chord;
        try {
          const auto [a, b] = near_cone_pair(*slice);
          chord.segments.push_back({a, b, palette[1], "α̂′", "β̂′"});
        } catch (const std::invalid_argument&) {
        }
        write_file((dir / "chord.svg").string(), render_svg(*slice, chord));
        std::ostringstream csv;
        write_normroots_csv(csv, *slice);
        write_file((dir / "normroots.csv").string(), csv.str());
        if (svg_out.empty()) return kOk;
      }
      emit(svg_out, render_svg(*slice, opts), out);
      return kOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }
  try {
    return action();
  } catch (const SliceTooLarge& e) {
    err << "error: " << e.what() << " (raise REFLAB_CAP to allow more)\n";
    return kCapExceeded;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  }
}

}  // namespace reflab::cli
