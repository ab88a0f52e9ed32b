#include "reflab/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "toml_subset.hpp"
#include "reflab/errors.hpp"
#include "reflab/projective.hpp"

namespace reflab {

namespace {

using nlohmann::json;

bool is_inf_token(const json& j) {
  if (!j.is_string()) return false;
  const std::string s = j.get<std::string>();
  return s == "inf" || s == "+inf" || s == "infinity" || s == "oo";
}

Scalar scalar_of(const json& j, const char* what) {
  try {
    if (j.is_number_integer()) return Scalar(j.get<long long>());
    if (j.is_number()) return Scalar::parse(j.dump());
    if (j.is_string()) return Scalar::parse(j.get<std::string>());
  } catch (const std::invalid_argument&) {
  }
  throw ParseError(std::string("bad number in ") + what + ": " + j.dump());
}

// Flattens a row-major matrix given flat or as rows.
std::vector<json> flatten(const json& j, int rank, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<json> out;
  for (const json& row : j) {
    if (row.is_array()) {
      if (static_cast<int>(row.size()) != rank) throw ParseError(std::string(what) + ": row length differs from rank");
      out.insert(out.end(), row.begin(), row.end());
    } else {
      out.push_back(row);
    }
  }
  if (out.size() != static_cast<std::size_t>(rank) * rank) {
    throw ParseError(std::string(what) + " must have rank*rank entries");
  }
  return out;
}

MatrixFile from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("matrix file must be an object");
  if (!doc.contains("rank") || !doc["rank"].is_number_integer()) throw ParseError("matrix file needs an integer rank");
  const int rank = doc["rank"].get<int>();
  if (rank < 1) throw ParseError("rank must be positive");
  if (!doc.contains("entries")) throw ParseError("matrix file needs entries");
  std::vector<int> entries;
  for (const json& e : flatten(doc["entries"], rank, "entries")) {
    if (is_inf_token(e)) {
      entries.push_back(CoxeterMatrix::kInf);
    } else if (e.is_number_integer() && e.get<long long>() >= 1) {
      entries.push_back(e.get<int>());
    } else {
      throw ParseError("bad Coxeter label: " + e.dump());
    }
  }
  std::vector<Scalar> weights;
  if (doc.contains("infinity_weights") && !doc["infinity_weights"].is_null()) {
    for (const json& w : flatten(doc["infinity_weights"], rank, "infinity_weights")) {
      weights.push_back(w.is_null() ? Scalar(0) : scalar_of(w, "infinity_weights"));
    }
  }
  std::optional<ScalarMode> mode;
  if (doc.contains("mode")) {
    std::string m = doc["mode"].is_string() ? doc["mode"].get<std::string>() : "";
    for (char& c : m) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (m == "exact") {
      mode = ScalarMode::Exact;
    } else if (m == "approx") {
      mode = ScalarMode::Approx;
    } else {
      throw ParseError("mode must be \"exact\" or \"approx\"");
    }
  }
  try {
    return {CoxeterMatrix(rank, std::move(entries), std::move(weights)), mode};
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

MatrixFile parse_matrix_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return from_json(doc);
}

MatrixFile parse_matrix_toml(const std::string& text) { return from_json(detail::TomlReader(text).parse()); }

MatrixFile load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  try {
    return first != std::string::npos && text[first] == '{' ? parse_matrix_json(text) : parse_matrix_toml(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_roots_csv(std::ostream& out, const RootSlice& slice) {
  out << "id,depth";
  for (int i = 1; i <= slice.rank(); ++i) out << ",coeff_" << i;
  out << ",parent_id,parent_letter\n";
  for (RootId id = 0; id < slice.size(); ++id) {
    out << id << ',' << slice.depth(id);
    for (const Scalar& x : slice.coeffs(id)) out << ',' << x.str();
    if (const auto p = slice.parent(id)) {
      out << ',' << p->id << ',' << p->letter + 1 << '\n';
    } else {
      out << ",,\n";
    }
  }
}

void write_order_csv(std::ostream& out, const TruncatedOrder& order) {
  const RootSlice& slice = order.slice();
  out << "position,root_id";
  for (int i = 1; i <= slice.rank(); ++i) out << ",coeff_" << i;
  out << '\n';
  for (std::size_t p = 0; p < order.size(); ++p) {
    out << p << ',' << order.at(p);
    for (const Scalar& x : slice.coeffs(order.at(p))) out << ',' << x.str();
    out << '\n';
  }
}

void write_normroots_csv(std::ostream& out, const RootSlice& slice) {
  out << "id";
  for (int i = 1; i <= slice.rank(); ++i) out << ",x" << i;
  out << ",qvalue_sign\n";
  for (RootId id = 0; id < slice.size(); ++id) {
    const Coeffs x = normalize_vector(slice.coeffs(id));
    out << id;
    for (const Scalar& v : x) out << ',' << v.str();
    out << ',' << qform(x, slice.gram()).sign() << '\n';
  }
}

void write_loop_csv(std::ostream& out, const AffineModel& model, const RootSlice& slice) {
  const std::vector<Coeffs> finite = model.finite().all();
  out << "beta_id,level";
  for (int i = 1; i <= slice.rank(); ++i) out << ",coeff_" << i;
  out << '\n';
  for (RootId id = 0; id < slice.size(); ++id) {
    const auto loop = model.to_loop(slice.coeffs(id));
    if (!loop) throw std::invalid_argument("slice root " + std::to_string(id) + " has no loop coordinates");
    const auto it = std::find(finite.begin(), finite.end(), loop->beta);
    out << (it - finite.begin()) + 1 << ',' << loop->level;
    for (const Scalar& x : slice.coeffs(id)) out << ',' << x.str();
    out << '\n';
  }
}

}  // namespace reflab
