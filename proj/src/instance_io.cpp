#include "qtorus/instance_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qtorus::io {
namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ParseError(field + ": " + what);
}

Integer parse_integer(const Json& j, const std::string& field) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) != 0) fail(field, "not a decimal integer");
    return x;
  }
  fail(field, "expected an integer");
}

std::int64_t parse_small(const Json& j, const std::string& field) {
  const Integer x = parse_integer(j, field);
  if (!x.fits_slong_p()) fail(field, "integer out of range");
  return x.get_si();
}

void reject_unknown_keys(const Json& j, const std::string& field, std::set<std::string> allowed) {
  for (const auto& [k, v] : j.items())
    if (!allowed.contains(k)) fail(field, "unknown key '" + k + "'");
}

// 1-based line/column of a byte offset in the source text.
std::string location(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

MultiparameterMatrix parse_instance(const Json& j) {
  if (!j.is_object()) fail("$", "instance must be a JSON object");
  reject_unknown_keys(j, "$", {"rank", "value_group", "lambda"});
  if (!j.contains("rank")) fail("rank", "missing");
  const std::int64_t n = parse_small(j["rank"], "rank");
  if (n < 1) fail("rank", "must be >= 1");

  if (!j.contains("value_group")) fail("value_group", "missing");
  const Json& vg = j["value_group"];
  if (!vg.is_object()) fail("value_group", "expected an object");
  reject_unknown_keys(vg, "value_group", {"free", "torsion_order"});
  std::vector<std::string> names;
  if (vg.contains("free")) {
    if (!vg["free"].is_array()) fail("value_group.free", "expected an array of names");
    for (std::size_t k = 0; k < vg["free"].size(); ++k) {
      const auto& x = vg["free"][k];
      const std::string f = "value_group.free[" + std::to_string(k) + "]";
      if (!x.is_string() || x.get<std::string>().empty()) fail(f, "expected a nonempty string");
      names.push_back(x.get<std::string>());
    }
  }
  const std::int64_t m =
      vg.contains("torsion_order") ? parse_small(vg["torsion_order"], "value_group.torsion_order") : 1;
  if (m < 1) fail("value_group.torsion_order", "must be >= 1");
  ValueGroup group;
  try {
    group = ValueGroup(names, m);
  } catch (const std::invalid_argument& e) {
    fail("value_group", e.what());
  }

  std::vector<std::tuple<std::size_t, std::size_t, GroupElement>> upper;
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  if (j.contains("lambda")) {
    const Json& lam = j["lambda"];
    if (!lam.is_array()) fail("lambda", "expected an array");
    for (std::size_t k = 0; k < lam.size(); ++k) {
      const std::string f = "lambda[" + std::to_string(k) + "]";
      const Json& e = lam[k];
      if (!e.is_object()) fail(f, "expected an object");
      reject_unknown_keys(e, f, {"i", "j", "exponents", "torsion"});
      if (!e.contains("i") || !e.contains("j")) fail(f, "entry needs both i and j");
      const std::int64_t i = parse_small(e["i"], f + ".i");
      const std::int64_t jj = parse_small(e["j"], f + ".j");
      if (i < 1 || jj > n || i >= jj)
        fail(f, "indices must satisfy 1 <= i < j <= rank, got (" + std::to_string(i) + "," +
                    std::to_string(jj) + ")");
      if (!seen.insert({i, jj}).second)
        fail(f, "duplicate entry for (" + std::to_string(i) + "," + std::to_string(jj) + ")");
      IntVector free(group.free_rank());
      if (e.contains("exponents")) {
        if (!e["exponents"].is_object()) fail(f + ".exponents", "expected an object");
        for (const auto& [name, val] : e["exponents"].items()) {
          const std::size_t idx = group.find(name);
          if (idx == group.free_rank())
            fail(f + ".exponents", "unknown generator '" + name + "'");
          free[idx] = parse_integer(val, f + ".exponents." + name);
        }
      }
      std::int64_t t = 0;
      if (e.contains("torsion")) {
        t = parse_small(e["torsion"], f + ".torsion");
        if (t < 0 || t >= m) fail(f + ".torsion", "must lie in [0, " + std::to_string(m) + ")");
      }
      upper.emplace_back(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(jj - 1),
                         group.make(std::move(free), t));
    }
  }
  return MultiparameterMatrix::from_upper(static_cast<std::size_t>(n), group, upper);
}

MultiparameterMatrix parse_instance_text(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("malformed JSON at " + location(text, e.byte == 0 ? 0 : e.byte - 1) + ": " +
                     e.what());
  }
  return parse_instance(j);
}

MultiparameterMatrix read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_instance_text(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Json to_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(static_cast<std::int64_t>(x.get_si()));
  return Json(x.get_str());
}

Json serialize(const MultiparameterMatrix& lambda) {
  const ValueGroup& g = lambda.value_group();
  Json out;
  out["rank"] = lambda.rank();
  out["value_group"]["free"] = Json::array();
  for (const auto& name : g.generator_names()) out["value_group"]["free"].push_back(name);
  out["value_group"]["torsion_order"] = g.torsion_order();
  out["lambda"] = Json::array();
  for (std::size_t i = 0; i < lambda.rank(); ++i)
    for (std::size_t j = i + 1; j < lambda.rank(); ++j) {
      const GroupElement& e = lambda.entry(i, j);
      if (g.is_identity(e)) continue;
      Json entry;
      entry["i"] = i + 1;
      entry["j"] = j + 1;
      entry["exponents"] = Json::object();
      for (std::size_t l = 0; l < g.free_rank(); ++l)
        if (sgn(e.free_part[l]) != 0) entry["exponents"][g.generator_names()[l]] = to_json(e.free_part[l]);
      entry["torsion"] = e.torsion;
      out["lambda"].push_back(std::move(entry));
    }
  return out;
}

std::string dump_instance(const MultiparameterMatrix& lambda) { return serialize(lambda).dump(2) + "\n"; }

void write_instance(const std::filesystem::path& path, const MultiparameterMatrix& lambda) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << dump_instance(lambda);
}

Json to_json(const Sublattice& b) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < b.rank(); ++i) {
    Json r = Json::array();
    for (const auto& x : b.generators().row(i)) r.push_back(to_json(x));
    rows.push_back(std::move(r));
  }
  return rows;
}

Json to_json(const DimensionResult& d) {
  Json out;
  out["lower"] = d.lower;
  out["upper"] = d.upper;
  out["exact"] = d.exact;
  out["witness"] = to_json(d.witness);
  return out;
}

Json to_json(const GroupElement& e, const ValueGroup& g) {
  Json out;
  out["exponents"] = Json::object();
  for (std::size_t l = 0; l < g.free_rank(); ++l)
    if (sgn(e.free_part[l]) != 0) out["exponents"][g.generator_names()[l]] = to_json(e.free_part[l]);
  out["torsion"] = e.torsion;
  return out;
}

Sublattice parse_sublattice(const Json& j, std::size_t ambient_rank) {
  if (!j.is_array()) fail("sublattice", "expected an array of integer rows");
  IntMatrix g(0, ambient_rank);
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string f = "sublattice[" + std::to_string(k) + "]";
    if (!j[k].is_array() || j[k].size() != ambient_rank)
      fail(f, "expected a row of length " + std::to_string(ambient_rank));
    IntVector row;
    for (std::size_t c = 0; c < ambient_rank; ++c)
      row.push_back(parse_integer(j[k][c], f + "[" + std::to_string(c) + "]"));
    g.append_row(row);
  }
  return Sublattice(ambient_rank, g);
}

TwistedElement parse_element(const Json& j, std::shared_ptr<const MultiparameterMatrix> ctx) {
  if (!j.is_array()) fail("element", "expected an array of terms");
  const ValueGroup& g = ctx->value_group();
  TwistedElement out(ctx);
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string f = "element[" + std::to_string(k) + "]";
    const Json& t = j[k];
    if (!t.is_object()) fail(f, "expected an object");
    reject_unknown_keys(t, f, {"coef", "q", "torsion", "x"});
    Rational c = 1;
    if (t.contains("coef")) {
      if (t["coef"].is_string()) {
        if (c.set_str(t["coef"].get<std::string>(), 10) != 0) fail(f + ".coef", "not a rational");
        if (sgn(c.get_den()) == 0) fail(f + ".coef", "zero denominator");
        c.canonicalize();
      } else {
        c = Rational(parse_integer(t["coef"], f + ".coef"));
      }
    }
    IntVector free(g.free_rank());
    if (t.contains("q")) {
      if (!t["q"].is_object()) fail(f + ".q", "expected an object");
      for (const auto& [name, val] : t["q"].items()) {
        const std::size_t idx = g.find(name);
        if (idx == g.free_rank()) fail(f + ".q", "unknown generator '" + name + "'");
        free[idx] = parse_integer(val, f + ".q." + name);
      }
    }
    const Integer tor = t.contains("torsion") ? parse_integer(t["torsion"], f + ".torsion") : Integer(0);
    if (!t.contains("x") || !t["x"].is_array() || t["x"].size() != ctx->rank())
      fail(f + ".x", "expected an exponent array of length " + std::to_string(ctx->rank()));
    IntVector x;
    for (std::size_t c2 = 0; c2 < ctx->rank(); ++c2)
      x.push_back(parse_integer(t["x"][c2], f + ".x"));
    out.add_term(x, g.make(std::move(free), tor), c);
  }
  return out;
}

Json to_json(const TwistedElement& e) {
  const ValueGroup& g = e.context().value_group();
  Json terms = Json::array();
  for (const auto& [k, c] : e.terms()) {
    Json t;
    t["coef"] = c.get_str();
    t["q"] = to_json(k.scalar, g)["exponents"];
    t["torsion"] = k.scalar.torsion;
    Json x = Json::array();
    for (const auto& a : k.exponent) x.push_back(to_json(a));
    t["x"] = std::move(x);
    terms.push_back(std::move(t));
  }
  return terms;
}

}  // namespace qtorus::io
