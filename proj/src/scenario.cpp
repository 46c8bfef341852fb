#include "shiftsym/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "shiftsym/error.hpp"

namespace shiftsym {

using json = nlohmann::json;

namespace {

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

class Reader {
 public:
  Reader(const std::string& text, std::string origin) : text_(text), origin_(std::move(origin)) {}

  struct Path {
    std::vector<std::string> parts;
    Path operator/(const std::string& key) const {
      Path p = *this;
      p.parts.push_back(key);
      return p;
    }
    Path operator/(std::size_t idx) const { return *this / ("[" + std::to_string(idx) + "]"); }
    std::string str() const {
      std::string s;
      for (const auto& part : parts) {
        if (!s.empty() && part.front() != '[') s += '/';
        s += part;
      }
      return s.empty() ? "<root>" : s;
    }
  };

  [[noreturn]] void fail(const Path& path, const std::string& msg) const {
    std::string where = origin_;
    if (auto line = locate(path)) where += ":" + std::to_string(*line);
    throw Error(ErrorKind::ValidationError, where + ": " + path.str() + ": " + msg);
  }

  const json& field(const json& obj, const Path& path, const std::string& key) const {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, "missing field \"" + key + "\"");
    return *it;
  }

  void only_keys(const json& obj, const Path& path, std::initializer_list<const char*> allowed) const {
    if (!obj.is_object()) fail(path, "expected an object");
    for (const auto& [key, value] : obj.items()) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || key == a;
      if (!ok) fail(path / key, "unknown field");
    }
  }

  std::size_t size(const json& v, const Path& path) const {
    if (!v.is_number_integer() && !v.is_number_unsigned()) fail(path, "expected a non-negative integer");
    const auto x = v.get<std::int64_t>();
    if (x < 0) fail(path, "expected a non-negative integer");
    return static_cast<std::size_t>(x);
  }

  double real(const json& v, const Path& path) const {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
  }

  cplx complex(const json& v, const Path& path) const {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
      return {v[0].get<double>(), v[1].get<double>()};
    fail(path, "expected a number or [re, im]");
  }

  Turn turn(const json& v, const Path& path) const {
    if (v.is_number_integer()) return Turn(v.get<std::int64_t>(), 1);
    if (v.is_number()) fail(path, "decimal angle; write it as an exact fraction of a full turn, e.g. \"1/2\"");
    if (!v.is_string()) fail(path, "expected an angle such as \"1/4\" (fraction of a full turn)");
    try {
      return Turn::parse(v.get<std::string>());
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  Matrix matrix(const json& v, const Path& path, std::size_t k) const {
    if (!v.is_array() || v.size() != k)
      fail(path, "expected a " + std::to_string(k) + "x" + std::to_string(k) + " matrix");
    Matrix m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (std::size_t r = 0; r < k; ++r) {
      if (!v[r].is_array() || v[r].size() != k)
        fail(path / r, "expected a row of " + std::to_string(k) + " entries");
      for (std::size_t c = 0; c < k; ++c)
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex(v[r][c], path / r / c);
    }
    return m;
  }

 private:
  // Line of the innermost object key of the path, found by scanning for the
  // quoted keys in order.
  std::optional<std::size_t> locate(const Path& path) const {
    std::size_t pos = 0;
    bool found = false;
    for (const auto& part : path.parts) {
      if (part.front() == '[') continue;
      const auto at = text_.find("\"" + part + "\"", pos);
      if (at == std::string::npos) break;
      pos = at;
      found = true;
    }
    if (!found) return std::nullopt;
    return line_col(text_, pos).first;
  }

  const std::string& text_;
  std::string origin_;
};

using Path = Reader::Path;

GroupDescriptor group_descriptor(const Reader& rd, const json& v, const Path& path) {
  const char* expected =
      "expected one of {\"cyclic\": n}, {\"dihedral\": n}, {\"product\": [a, b]}, {\"table\": [[...]]}";
  if (!v.is_object() || v.size() != 1) rd.fail(path, expected);
  const auto& [key, val] = *v.items().begin();
  if (key == "cyclic") return {GroupDescriptor::Cyclic{rd.size(val, path / key)}};
  if (key == "dihedral") return {GroupDescriptor::Dihedral{rd.size(val, path / key)}};
  if (key == "product") {
    if (!val.is_array() || val.size() != 2) rd.fail(path / key, "expected two factor descriptors");
    return {GroupDescriptor::Product{
        std::make_shared<const GroupDescriptor>(group_descriptor(rd, val[0], path / key / 0)),
        std::make_shared<const GroupDescriptor>(group_descriptor(rd, val[1], path / key / 1))}};
  }
  if (key != "table") rd.fail(path, expected);
  if (!val.is_array()) rd.fail(path / key, "expected an array of rows");
  std::vector<std::vector<Element>> t;
  for (std::size_t i = 0; i < val.size(); ++i) {
    if (!val[i].is_array()) rd.fail(path / key / i, "expected a row of element indices");
    std::vector<Element> row;
    for (std::size_t j = 0; j < val[i].size(); ++j) row.push_back(rd.size(val[i][j], path / key / i / j));
    t.push_back(std::move(row));
  }
  return {GroupDescriptor::Table{std::move(t)}};
}

struct Resolver {
  const FiniteGroup& g;
  const std::map<std::string, Element>& aliases;

  std::optional<Element> operator()(const std::string& name) const {
    if (auto it = aliases.find(name); it != aliases.end()) return it->second;
    return g.find(name);
  }
};

Element element(const Reader& rd, const Resolver& resolve, const std::string& name, const Path& path) {
  auto e = resolve(name);
  if (!e) rd.fail(path, "unknown group element \"" + name + "\"");
  return *e;
}

CopyMap copy_map(const Reader& rd, const json& v, const Path& path) {
  rd.only_keys(v, path, {"angle", "orientation"});
  CopyMap m;
  if (v.contains("angle")) m.angle = rd.turn(v["angle"], path / "angle");
  if (v.contains("orientation")) {
    const json& o = v["orientation"];
    if (!o.is_number_integer() || (o.get<int>() != 1 && o.get<int>() != -1))
      rd.fail(path / "orientation", "orientation must be 1 or -1");
    m.orientation = o.get<int>();
  }
  return m;
}

IsometryDescriptor isometry(const Reader& rd, const json& v, const Path& path, std::size_t copies) {
  rd.only_keys(v, path, {"perm", "maps", "angle", "orientation"});
  IsometryDescriptor d = IsometryDescriptor::identity(copies);
  if (v.contains("perm")) {
    const json& p = v["perm"];
    if (!p.is_array() || p.size() != copies)
      rd.fail(path / "perm", "expected a permutation of " + std::to_string(copies) + " copies");
    std::set<std::size_t> seen;
    for (std::size_t c = 0; c < copies; ++c) {
      d.copy_perm[c] = rd.size(p[c], path / "perm" / c);
      if (d.copy_perm[c] >= copies || !seen.insert(d.copy_perm[c]).second)
        rd.fail(path / "perm", "not a permutation of 0.." + std::to_string(copies - 1));
    }
  }
  if (v.contains("maps")) {
    if (v.contains("angle") || v.contains("orientation"))
      rd.fail(path, "give either \"maps\" or a shared \"angle\"/\"orientation\", not both");
    const json& m = v["maps"];
    if (!m.is_array() || m.size() != copies)
      rd.fail(path / "maps", "expected one map per copy (" + std::to_string(copies) + ")");
    for (std::size_t c = 0; c < copies; ++c) d.per_copy[c] = copy_map(rd, m[c], path / "maps" / c);
  } else {
    json shared = json::object();
    if (v.contains("angle")) shared["angle"] = v["angle"];
    if (v.contains("orientation")) shared["orientation"] = v["orientation"];
    const CopyMap m = copy_map(rd, shared, path);
    for (auto& pc : d.per_copy) pc = m;
  }
  return d;
}

// One matrix entry: a constant or {"mode": coefficient}.
std::map<int, cplx> entry_modes(const Reader& rd, const json& v, const Path& path) {
  std::map<int, cplx> out;
  if (!v.is_object()) {
    out[0] = rd.complex(v, path);
    return out;
  }
  for (const auto& [key, val] : v.items()) {
    int mode = 0;
    try {
      std::size_t used = 0;
      mode = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      rd.fail(path / key, "Fourier mode keys must be integers");
    }
    out[mode] = rd.complex(val, path / key);
  }
  return out;
}

void fill_branch(const Reader& rd, const json& v, const Path& path, std::size_t k, TrigMatrixSymbol& sym,
                 std::size_t copy, int xi) {
  std::vector<std::vector<std::map<int, cplx>>> entries(k, std::vector<std::map<int, cplx>>(k));
  const bool bare = k == 1 && !(v.is_array() && v.size() == 1 && v[0].is_array());
  if (bare) {
    entries[0][0] = entry_modes(rd, v, path);
  } else {
    if (!v.is_array() || v.size() != k)
      rd.fail(path, "expected a " + std::to_string(k) + "x" + std::to_string(k) + " matrix of entries, got " +
                        (v.is_array() ? std::to_string(v.size()) + " rows" : std::string("a non-matrix")));
    for (std::size_t r = 0; r < k; ++r) {
      if (!v[r].is_array() || v[r].size() != k)
        rd.fail(path / r, "expected " + std::to_string(k) + " entries in the row, got " +
                              (v[r].is_array() ? std::to_string(v[r].size()) : std::string("a non-array")));
      for (std::size_t c = 0; c < k; ++c) entries[r][c] = entry_modes(rd, v[r][c], path / r / c);
    }
  }
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) {
      for (int m = -sym.degree(); m <= sym.degree(); ++m) sym.set_coeff(copy, xi, r, c, m, 0.0);
      for (const auto& [m, val] : entries[r][c]) sym.set_coeff(copy, xi, r, c, m, val);
    }
}

TrigMatrixSymbol symbol(const Reader& rd, const json& v, const Path& path, std::size_t k, std::size_t copies) {
  if (!v.is_object()) rd.fail(path, "expected an object keyed by copy (\"*\" for all copies)");
  TrigMatrixSymbol sym(k, copies);
  auto apply_copy = [&](const json& branches, const Path& p, std::size_t copy) {
    if (!branches.is_object()) rd.fail(p, "expected an object keyed by covector branch (\"+\", \"-\" or \"*\")");
    for (const char* key : {"*", "+", "-"}) {
      auto it = branches.find(key);
      if (it == branches.end()) continue;
      const std::string s = key;
      if (s == "*") {
        fill_branch(rd, *it, p / s, k, sym, copy, 1);
        fill_branch(rd, *it, p / s, k, sym, copy, -1);
      } else {
        fill_branch(rd, *it, p / s, k, sym, copy, s == "+" ? 1 : -1);
      }
    }
    for (const auto& [key, val] : branches.items())
      if (key != "*" && key != "+" && key != "-") rd.fail(p / key, "unknown covector branch (use \"+\", \"-\" or \"*\")");
  };
  if (auto it = v.find("*"); it != v.end())
    for (std::size_t c = 0; c < copies; ++c) apply_copy(*it, path / "*", c);
  for (const auto& [key, val] : v.items()) {
    if (key == "*") continue;
    std::size_t copy = 0;
    try {
      std::size_t used = 0;
      copy = std::stoul(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      rd.fail(path / key, "copy keys must be \"*\" or a copy index");
    }
    if (copy >= copies) rd.fail(path / key, "copy " + key + " does not exist (manifold has " + std::to_string(copies) + ")");
    apply_copy(val, path / key, copy);
  }
  return sym;
}

}  // namespace

AnalysisOptions ScenarioOptions::analysis() const {
  AnalysisOptions a;
  a.samples = samples;
  a.seed = seed;
  a.eps_inv = eps_inv;
  return a;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    throw Error(ErrorKind::ParseError,
                origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }
  const Reader rd(text, origin);
  const Path root;
  rd.only_keys(doc, root, {"schema", "name", "group", "aliases", "manifold", "action", "fiber", "symbols", "options"});
  if (doc.contains("schema") && doc["schema"] != kScenarioSchema)
    rd.fail(root / "schema", std::string("unsupported schema, expected \"") + kScenarioSchema + "\"");

  Scenario s;
  const json& name = rd.field(doc, root, "name");
  if (!name.is_string()) rd.fail(root / "name", "expected a string");
  s.name = name.get<std::string>();

  GroupPtr group;
  try {
    group = std::make_shared<const FiniteGroup>(build_group(group_descriptor(rd, rd.field(doc, root, "group"), root / "group")));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ValidationError) throw;
    rd.fail(root / "group", e.what());
  }

  if (doc.contains("aliases")) {
    const json& al = doc["aliases"];
    if (!al.is_object()) rd.fail(root / "aliases", "expected an object of name -> element");
    for (const auto& [alias, target] : al.items()) {
      if (!target.is_string()) rd.fail(root / "aliases" / alias, "expected an element name");
      auto e = group->find(target.get<std::string>());
      if (!e) rd.fail(root / "aliases" / alias, "unknown group element \"" + target.get<std::string>() + "\"");
      s.aliases[alias] = *e;
    }
  }
  const Resolver resolve{*group, s.aliases};

  const json& man = rd.field(doc, root, "manifold");
  rd.only_keys(man, root / "manifold", {"kind", "copies"});
  ModelManifold manifold;
  if (man.contains("kind")) {
    const json& kind = man["kind"];
    if (kind == "torus2")
      rd.fail(root / "manifold" / "kind", "torus2 is only used by the transversal demo; scenarios use circle_union");
    if (kind != "circle_union") rd.fail(root / "manifold" / "kind", "expected \"circle_union\"");
  }
  manifold.copies = man.contains("copies") ? rd.size(man["copies"], root / "manifold" / "copies") : 1;
  if (manifold.copies == 0) rd.fail(root / "manifold" / "copies", "need at least one copy");

  std::size_t k = 1;
  std::map<Element, Matrix> fiber;
  if (doc.contains("fiber")) {
    const json& fb = doc["fiber"];
    rd.only_keys(fb, root / "fiber", {"rank", "rep"});
    k = fb.contains("rank") ? rd.size(fb["rank"], root / "fiber" / "rank") : 1;
    if (k == 0) rd.fail(root / "fiber" / "rank", "rank must be positive");
    if (fb.contains("rep")) {
      if (!fb["rep"].is_object()) rd.fail(root / "fiber" / "rep", "expected an object of element -> matrix");
      for (const auto& [el, m] : fb["rep"].items()) {
        const Path p = root / "fiber" / "rep" / el;
        fiber[element(rd, resolve, el, p)] = rd.matrix(m, p, k);
      }
    }
  }

  std::map<Element, IsometryDescriptor> maps;
  if (doc.contains("action")) {
    const json& ac = doc["action"];
    if (!ac.is_object()) rd.fail(root / "action", "expected an object of element -> isometry");
    for (const auto& [el, d] : ac.items()) {
      const Path p = root / "action" / el;
      maps[element(rd, resolve, el, p)] = isometry(rd, d, p, manifold.copies);
    }
  }
  // Elements outside the subgroup generated by the listed ones act trivially.
  std::vector<Element> gens;
  for (const auto& [e, d] : maps) gens.push_back(e);
  for (const auto& [e, m] : fiber) gens.push_back(e);
  for (Element x = 0; x < group->order(); ++x) {
    const auto reached = group->generate(gens);
    if (std::find(reached.begin(), reached.end(), x) != reached.end()) continue;
    maps[x] = IsometryDescriptor::identity(manifold.copies);
    gens.push_back(x);
  }

  try {
    s.data.action = std::make_shared<const IsometricAction>(build_action(group, manifold, maps, k, fiber));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ValidationError) throw;
    rd.fail(root / "action", e.what());
  }
  if (s.data.action->fiber_rep.unitarity_defect() > 1e-10) rd.fail(root / "fiber" / "rep", "fiber matrices are not unitary");

  if (doc.contains("symbols")) {
    const json& sy = doc["symbols"];
    if (!sy.is_object()) rd.fail(root / "symbols", "expected an object of element -> symbol");
    for (const auto& [el, v] : sy.items()) {
      const Path p = root / "symbols" / el;
      const Element g = element(rd, resolve, el, p);
      if (s.data.symbols.contains(g)) rd.fail(p, "element " + group->name(g) + " given twice");
      s.data.symbols.emplace(g, symbol(rd, v, p, k, manifold.copies));
    }
  }
  try {
    s.data.validate();
  } catch (const Error& e) {
    rd.fail(root / "symbols", e.what());
  }

  if (doc.contains("options")) {
    const json& op = doc["options"];
    const Path p = root / "options";
    rd.only_keys(op, p, {"samples", "seed", "eps_inv", "oracle_sizes", "oracle_eps"});
    if (op.contains("samples")) s.options.samples = rd.size(op["samples"], p / "samples");
    if (op.contains("seed")) s.options.seed = rd.size(op["seed"], p / "seed");
    if (op.contains("eps_inv")) s.options.eps_inv = rd.real(op["eps_inv"], p / "eps_inv");
    if (op.contains("oracle_eps")) s.options.oracle_eps = rd.real(op["oracle_eps"], p / "oracle_eps");
    if (op.contains("oracle_sizes")) {
      const json& sz = op["oracle_sizes"];
      if (!sz.is_array() || sz.empty()) rd.fail(p / "oracle_sizes", "expected a non-empty array of grid sizes");
      s.options.oracle_sizes.clear();
      for (std::size_t i = 0; i < sz.size(); ++i) s.options.oracle_sizes.push_back(rd.size(sz[i], p / "oracle_sizes" / i));
    }
    if (s.options.samples == 0) rd.fail(p / "samples", "need at least one sample");
    if (!(s.options.eps_inv > 0)) rd.fail(p / "eps_inv", "must be positive");
    if (!(s.options.oracle_eps > 0)) rd.fail(p / "oracle_eps", "must be positive");
  }

  s.canonical = doc.dump();
  s.hash = fnv1a_hex(s.canonical);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

std::optional<Element> resolve_element(const Scenario& s, const std::string& name) {
  return Resolver{s.data.G(), s.aliases}(name);
}

}  // namespace shiftsym
