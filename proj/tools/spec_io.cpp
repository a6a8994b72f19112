#include "relhom/cli/spec_io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "relhom/error.hpp"

namespace relhom::cli {

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ValidationError, path + ": " + what);
}

void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) invalid(path.empty() ? key : path + "." + key, "unknown field");
  }
}

const json& field(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) invalid(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) invalid(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

long long get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) invalid(path, "expected an integer");
  return v.get<long long>();
}

std::size_t get_size(const json& v, const std::string& path) {
  const long long x = get_int(v, path);
  if (x < 0) invalid(path, "expected a nonnegative integer");
  return static_cast<std::size_t>(x);
}

const json& get_array(const json& v, const std::string& path) {
  if (!v.is_array()) invalid(path, "expected an array");
  return v;
}

Matrix get_matrix(const json& v, const std::string& path, std::uint32_t p, std::size_t rows, std::size_t cols) {
  get_array(v, path);
  if (v.size() != rows) invalid(path, "expected " + std::to_string(rows) + " rows, found " + std::to_string(v.size()));
  Matrix m(p, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = index(path, r);
    const json& row = get_array(v[r], rp);
    if (row.size() != cols) {
      invalid(rp, "expected " + std::to_string(cols) + " entries, found " + std::to_string(row.size()));
    }
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, la::reduce(get_int(row[c], index(rp, c)), p));
  }
  return m;
}

json matrix_rows(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string convention_name(chx::CofibrationConvention c) {
  return c == chx::CofibrationConvention::Strict ? "strict" : "printed";
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

SpecDocument parse_spec_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    std::string what = e.what();
    const auto cut = what.find("syntax error");
    if (cut != std::string::npos) what = what.substr(cut);
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
  }
  if (!root.is_object()) invalid("(document)", "expected an object");
  only_keys(root, "", {"format", "prime", "algebra", "modules", "complexes", "theories", "conventions"});

  SpecDocument doc;
  doc.format = static_cast<int>(get_int(field(root, "", "format"), "format"));
  if (doc.format != kFormatVersion) invalid("format", "unsupported version " + std::to_string(doc.format));
  const long long prime = get_int(field(root, "", "prime"), "prime");
  if (prime < 2 || prime > 65521 || !la::is_prime(static_cast<std::uint32_t>(prime))) {
    invalid("prime", "expected a prime below 65536");
  }
  doc.prime = static_cast<std::uint32_t>(prime);
  const std::uint32_t p = doc.prime;

  const json& alg = field(root, "", "algebra");
  only_keys(alg, "algebra", {"name", "dim", "unit", "constants"});
  if (alg.contains("name")) {
    if (!alg["name"].is_string()) invalid("algebra.name", "expected a string");
    doc.algebra_name = alg["name"].get<std::string>();
  }
  doc.algebra_dim = get_size(field(alg, "algebra", "dim"), "algebra.dim");
  if (doc.algebra_dim == 0) invalid("algebra.dim", "expected a positive dimension");
  const std::size_t d = doc.algebra_dim;
  const json& unit = get_array(field(alg, "algebra", "unit"), "algebra.unit");
  if (unit.size() != d) invalid("algebra.unit", "expected " + std::to_string(d) + " coordinates");
  for (std::size_t i = 0; i < d; ++i) doc.unit.push_back(la::reduce(get_int(unit[i], index("algebra.unit", i)), p));

  const json& cs = get_array(field(alg, "algebra", "constants"), "algebra.constants");
  std::map<std::array<std::uint64_t, 3>, la::Residue> acc;
  for (std::size_t n = 0; n < cs.size(); ++n) {
    const std::string cp = index("algebra.constants", n);
    const json& t = get_array(cs[n], cp);
    if (t.size() != 4) invalid(cp, "expected [i, j, k, value]");
    std::array<std::uint64_t, 3> key{};
    for (std::size_t q = 0; q < 3; ++q) {
      key[q] = get_size(t[q], index(cp, q));
      if (key[q] >= d) invalid(index(cp, q), "basis index out of range");
    }
    if (acc.count(key)) invalid(cp, "repeated triple");
    acc[key] = la::reduce(get_int(t[3], index(cp, 3)), p);
  }
  for (const auto& [k, v] : acc) {
    if (v != 0) doc.constants.push_back({k[0], k[1], k[2], v});
  }

  if (root.contains("modules")) {
    const json& mods = root["modules"];
    if (!mods.is_object()) invalid("modules", "expected an object");
    for (const auto& [name, block] : mods.items()) {
      const std::string mp = join("modules", name);
      only_keys(block, mp, {"dim", "action"});
      ModuleBlock mb;
      mb.dim = get_size(field(block, mp, "dim"), join(mp, "dim"));
      const json& act = get_array(field(block, mp, "action"), join(mp, "action"));
      if (act.size() != d) invalid(join(mp, "action"), "expected one matrix per algebra basis element");
      for (std::size_t i = 0; i < d; ++i) mb.action.push_back(get_matrix(act[i], index(join(mp, "action"), i), p, mb.dim, mb.dim));
      doc.modules.emplace(name, std::move(mb));
    }
  }

  if (root.contains("complexes")) {
    const json& cxs = root["complexes"];
    if (!cxs.is_object()) invalid("complexes", "expected an object");
    for (const auto& [name, block] : cxs.items()) {
      const std::string xp = join("complexes", name);
      only_keys(block, xp, {"window", "entries", "differentials"});
      ComplexBlock cb;
      const json& win = get_array(field(block, xp, "window"), join(xp, "window"));
      if (win.size() != 2) invalid(join(xp, "window"), "expected [lo, hi]");
      cb.lo = static_cast<long>(get_int(win[0], index(join(xp, "window"), 0)));
      cb.hi = static_cast<long>(get_int(win[1], index(join(xp, "window"), 1)));
      if (cb.hi < cb.lo) invalid(join(xp, "window"), "hi below lo");
      const std::size_t len = static_cast<std::size_t>(cb.hi - cb.lo + 1);
      const json& ent = get_array(field(block, xp, "entries"), join(xp, "entries"));
      if (ent.size() != len) invalid(join(xp, "entries"), "expected " + std::to_string(len) + " entries");
      std::vector<std::size_t> dims;
      for (std::size_t i = 0; i < len; ++i) {
        const std::string ep = index(join(xp, "entries"), i);
        if (!ent[i].is_string()) invalid(ep, "expected a module name");
        const std::string m = ent[i].get<std::string>();
        const auto it = doc.modules.find(m);
        if (it == doc.modules.end()) invalid(ep, "unknown module '" + m + "'");
        cb.entries.push_back(m);
        dims.push_back(it->second.dim);
      }
      const json& dif = get_array(field(block, xp, "differentials"), join(xp, "differentials"));
      if (dif.size() != len - 1) invalid(join(xp, "differentials"), "expected " + std::to_string(len - 1) + " matrices");
      for (std::size_t i = 0; i + 1 < len; ++i) {
        cb.differentials.push_back(get_matrix(dif[i], index(join(xp, "differentials"), i), p, dims[i + 1], dims[i]));
      }
      doc.complexes.emplace(name, std::move(cb));
    }
  }

  if (root.contains("theories")) {
    const json& ths = root["theories"];
    if (!ths.is_object()) invalid("theories", "expected an object");
    for (const auto& [name, block] : ths.items()) {
      const std::string tp = join("theories", name);
      only_keys(block, tp, {"simples", "cogenerated_by"});
      TheoryBlock tb;
      const bool has_list = block.contains("simples"), has_cog = block.contains("cogenerated_by");
      if (has_list == has_cog) invalid(tp, "expected exactly one of 'simples' and 'cogenerated_by'");
      if (has_list) {
        const json& s = get_array(block["simples"], join(tp, "simples"));
        std::set<std::size_t> seen;
        for (std::size_t i = 0; i < s.size(); ++i) seen.insert(get_size(s[i], index(join(tp, "simples"), i)));
        tb.simples.assign(seen.begin(), seen.end());
      } else {
        const json& c = block["cogenerated_by"];
        if (!c.is_string()) invalid(join(tp, "cogenerated_by"), "expected a module name");
        if (!doc.modules.count(c.get<std::string>())) {
          invalid(join(tp, "cogenerated_by"), "unknown module '" + c.get<std::string>() + "'");
        }
        tb.cogenerated_by = c.get<std::string>();
      }
      doc.theories.emplace(name, std::move(tb));
    }
  }

  if (root.contains("conventions")) {
    const json& conv = root["conventions"];
    only_keys(conv, "conventions", {"cofibrations"});
    if (conv.contains("cofibrations")) {
      const json& c = conv["cofibrations"];
      if (c == "strict") {
        doc.convention = chx::CofibrationConvention::Strict;
      } else if (c == "printed") {
        doc.convention = chx::CofibrationConvention::Printed;
      } else {
        invalid("conventions.cofibrations", "expected \"strict\" or \"printed\"");
      }
    }
  }
  return doc;
}

SpecDocument parse_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, path + ": cannot read file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str());
}

json emit_spec(const SpecDocument& doc) {
  json alg{{"name", doc.algebra_name}, {"dim", doc.algebra_dim}, {"unit", doc.unit}, {"constants", json::array()}};
  for (const auto& c : doc.constants) alg["constants"].push_back({c[0], c[1], c[2], c[3]});
  json out{{"format", doc.format}, {"prime", doc.prime}, {"algebra", std::move(alg)}};
  json mods = json::object();
  for (const auto& [name, m] : doc.modules) {
    json act = json::array();
    for (const auto& a : m.action) act.push_back(matrix_rows(a));
    mods[name] = json{{"dim", m.dim}, {"action", std::move(act)}};
  }
  out["modules"] = std::move(mods);
  json cxs = json::object();
  for (const auto& [name, x] : doc.complexes) {
    json dif = json::array();
    for (const auto& m : x.differentials) dif.push_back(matrix_rows(m));
    cxs[name] = json{{"window", {x.lo, x.hi}}, {"entries", x.entries}, {"differentials", std::move(dif)}};
  }
  out["complexes"] = std::move(cxs);
  json ths = json::object();
  for (const auto& [name, t] : doc.theories) {
    ths[name] = t.cogenerated_by ? json{{"cogenerated_by", *t.cogenerated_by}} : json{{"simples", t.simples}};
  }
  out["theories"] = std::move(ths);
  out["conventions"] = json{{"cofibrations", convention_name(doc.convention)}};
  return out;
}

LoadedSpec load(SpecDocument doc) {
  LoadedSpec ls;
  auto a = std::make_shared<alg::Algebra>(doc.algebra_name.empty() ? "A" : doc.algebra_name, doc.prime,
                                          doc.algebra_dim, doc.unit);
  for (const auto& c : doc.constants) a->set_c(c[0], c[1], c[2], static_cast<long long>(c[3]));
  const alg::AlgebraDiagnostics diag = alg::validate_algebra(*a);
  if (!diag.ok) {
    if (diag.failing_triple) {
      const auto& t = *diag.failing_triple;
      invalid("algebra.constants", "associativity fails on basis triple (" + std::to_string(t[0]) + ", " +
                                       std::to_string(t[1]) + ", " + std::to_string(t[2]) + "): " + diag.problems.front());
    }
    invalid("algebra", diag.problems.front());
  }
  ls.algebra = a;
  try {
    ls.cat = std::make_unique<tors::ModuleCategory>(ls.algebra);
  } catch (const Error& e) {
    invalid("algebra", e.what());
  }

  for (const auto& [name, mb] : doc.modules) {
    alg::Module m{ls.algebra, mb.dim, mb.action};
    const std::string problem = alg::module_problem(m);
    if (!problem.empty()) invalid(join("modules", name), problem);
    ls.modules.emplace(name, std::move(m));
  }
  for (const auto& [name, cb] : doc.complexes) {
    std::vector<alg::Module> terms;
    for (const auto& e : cb.entries) terms.push_back(ls.modules.at(e));
    chx::Complex x{ls.algebra, cb.lo, std::move(terms), cb.differentials, name};
    const std::string problem = chx::complex_problem(x);
    if (!problem.empty()) invalid(join("complexes", name), problem);
    ls.complexes.emplace(name, std::move(x));
  }
  const std::size_t s = ls.cat->num_simples();
  for (const auto& [name, tb] : doc.theories) {
    const std::string tp = join("theories", name);
    tors::TorsionTheory t{0, s};
    if (tb.cogenerated_by) {
      const alg::Module& e = ls.modules.at(*tb.cogenerated_by);
      if (!ls.cat->is_injective(e)) invalid(join(tp, "cogenerated_by"), "module '" + *tb.cogenerated_by + "' is not injective");
      t = tors::cogenerated_by(*ls.cat, e);
    } else {
      for (std::size_t i = 0; i < tb.simples.size(); ++i) {
        if (tb.simples[i] >= s) {
          invalid(index(join(tp, "simples"), i), "the algebra has " + std::to_string(s) + " simples");
        }
        t.sigma |= tors::SimpleSet{1} << tb.simples[i];
      }
    }
    ls.theories.emplace(name, t);
  }
  ls.digest = digest_of(emit_spec(doc).dump());
  ls.doc = std::move(doc);
  return ls;
}

std::string digest_of(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace relhom::cli
