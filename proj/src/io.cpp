#include "toric/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "toric/error.hpp"

namespace toric {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

bool parse_long(const std::string& tok, long& out) {
  if (tok.empty()) return false;
  std::size_t pos = 0;
  try {
    out = std::stol(tok, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == tok.size();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Line {
  int number;
  std::string body;     // text before '#', trimmed
  std::string comment;  // text after '#', trimmed
};

std::vector<Line> content_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  int n = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++n;
    const auto hash = raw.find('#');
    Line l{n, trim(raw.substr(0, hash)), hash == std::string::npos ? "" : trim(raw.substr(hash + 1))};
    if (!l.body.empty()) out.push_back(std::move(l));
  }
  return out;
}

}  // namespace

LatticeFan parse_fan(const std::string& text) {
  const auto lines = content_lines(text);
  if (lines.empty() || split_ws(lines[0].body) != std::vector<std::string>{"TORICFAN", "1"})
    throw ParseError(lines.empty() ? 1 : lines[0].number, "expected header 'TORICFAN 1'");
  if (lines.size() < 2) throw ParseError(lines[0].number + 1, "missing 'dim <n> rays <r> maxcones <k>' line");
  const auto head = split_ws(lines[1].body);
  long n = 0, r = 0, k = 0;
  if (head.size() != 6 || head[0] != "dim" || head[2] != "rays" || head[4] != "maxcones" || !parse_long(head[1], n) ||
      !parse_long(head[3], r) || !parse_long(head[5], k) || n < 0 || r < 0 || k < 0)
    throw ParseError(lines[1].number, "expected 'dim <n> rays <r> maxcones <k>'");
  if (r > static_cast<long>(kMaxRays)) throw ParseError(lines[1].number, "at most 64 rays are supported");
  if (lines.size() != static_cast<std::size_t>(2 + r + k))
    throw ParseError(lines.back().number, "expected " + std::to_string(r) + " ray lines and " + std::to_string(k) +
                                              " cone lines, found " + std::to_string(lines.size() - 2));
  std::vector<Ray> rays;
  for (long i = 0; i < r; ++i) {
    const auto& l = lines[static_cast<std::size_t>(2 + i)];
    const auto toks = split_ws(l.body);
    if (toks.size() != static_cast<std::size_t>(n))
      throw ParseError(l.number, "ray has " + std::to_string(toks.size()) + " entries, expected " + std::to_string(n));
    Ray ray;
    for (const auto& t : toks) {
      long v = 0;
      if (!parse_long(t, v)) {
        Integer big;
        if (big.set_str(t, 10) != 0) throw ParseError(l.number, "not an integer: " + t);
        ray.vector.push_back(big);
      } else {
        ray.vector.emplace_back(v);
      }
    }
    ray.label = l.comment;
    rays.push_back(std::move(ray));
  }
  std::vector<RaySet> cones;
  for (long i = 0; i < k; ++i) {
    const auto& l = lines[static_cast<std::size_t>(2 + r + i)];
    const auto toks = split_ws(l.body);
    if (toks.size() != static_cast<std::size_t>(n))
      throw ParseError(l.number, "cone has " + std::to_string(toks.size()) + " indices, expected " + std::to_string(n));
    RaySet c;
    for (const auto& t : toks) {
      long v = 0;
      if (!parse_long(t, v) || v < 0 || v >= r) throw ParseError(l.number, "ray index out of range: " + t);
      if (c.contains(static_cast<std::size_t>(v))) throw ParseError(l.number, "repeated ray index " + t);
      c.insert(static_cast<std::size_t>(v));
    }
    cones.push_back(c);
  }
  return LatticeFan(static_cast<int>(n), std::move(rays), std::move(cones));
}

std::string emit_fan(const LatticeFan& f) {
  std::ostringstream out;
  out << "TORICFAN 1\n";
  out << "dim " << f.rank() << " rays " << f.ray_count() << " maxcones " << f.max_cones().size() << "\n";
  for (const auto& r : f.rays()) {
    for (std::size_t i = 0; i < r.vector.size(); ++i) out << (i ? " " : "") << r.vector[i].get_str();
    if (!r.label.empty()) out << " # " << r.label;
    out << "\n";
  }
  for (auto c : f.max_cones()) {
    bool first = true;
    c.for_each([&](std::size_t v) {
      out << (first ? "" : " ") << v;
      first = false;
    });
    out << "\n";
  }
  return out.str();
}

LatticeFan read_fan_file(const std::string& path) { return parse_fan(read_file(path)); }

void write_fan_file(const std::string& path, const LatticeFan& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::parse, "cannot write " + path);
  out << emit_fan(f);
}

std::size_t RelationPresentation::index_of(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw Error(ErrorKind::index, "unknown generator '" + name + "'");
  return static_cast<std::size_t>(it - names.begin());
}

IntVector RelationPresentation::alpha(const NamedRelation& r) const {
  IntVector a(names.size());
  for (auto v : r.lhs) a[v] += 1;
  for (const auto& [w, mu] : r.rhs) a[w] -= mu;
  return a;
}

const NamedRelation& RelationPresentation::relation(const std::string& label) const {
  for (const auto& r : relations)
    if (r.label == label) return r;
  throw Error(ErrorKind::index, "no relation labelled '" + label + "'");
}

namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '^' || c == '{' || c == '}';
}

// "2 b", "2b", "b" -> (coefficient, name)
std::pair<Integer, std::string> parse_term(const std::string& term, int line) {
  const std::string t = trim(term);
  std::size_t i = 0;
  while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
  Integer coef = 1;
  if (i > 0) coef = Integer(t.substr(0, i));
  const std::string name = trim(t.substr(i));
  if (name.empty()) throw ParseError(line, "term '" + t + "' has no generator name");
  if (!std::all_of(name.begin(), name.end(), is_name_char)) throw ParseError(line, "invalid generator name '" + name + "'");
  if (sgn(coef) <= 0) throw ParseError(line, "coefficients must be positive");
  return {coef, name};
}

std::vector<std::string> split_plus(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == '+') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

RelationPresentation parse_relations(const std::string& text) {
  RelationPresentation p;
  bool fixed_names = false;
  auto name_index = [&](const std::string& name, int line) -> std::size_t {
    const auto it = std::find(p.names.begin(), p.names.end(), name);
    if (it != p.names.end()) return static_cast<std::size_t>(it - p.names.begin());
    if (fixed_names) throw ParseError(line, "generator '" + name + "' is not listed in the rays: line");
    p.names.push_back(name);
    return p.names.size() - 1;
  };
  for (const auto& l : content_lines(text)) {
    std::string body = l.body;
    std::string label;
    const auto colon = body.find(':');
    if (colon != std::string::npos) {
      label = trim(body.substr(0, colon));
      body = trim(body.substr(colon + 1));
      if (label == "rays") {
        if (!p.relations.empty() || fixed_names) throw ParseError(l.number, "rays: must precede all relations");
        std::string list = body;
        std::replace(list.begin(), list.end(), ',', ' ');
        for (const auto& n : split_ws(list)) {
          if (std::find(p.names.begin(), p.names.end(), n) != p.names.end())
            throw ParseError(l.number, "duplicate generator '" + n + "'");
          p.names.push_back(n);
        }
        fixed_names = true;
        continue;
      }
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos || body.find('=', eq + 1) != std::string::npos)
      throw ParseError(l.number, "expected exactly one '='");
    NamedRelation r;
    r.label = label.empty() ? "r" + std::to_string(p.relations.size() + 1) : label;
    for (const auto& term : split_plus(body.substr(0, eq))) {
      const auto [coef, name] = parse_term(term, l.number);
      for (Integer k = 0; k < coef; ++k) r.lhs.push_back(name_index(name, l.number));
    }
    const std::string rhs = trim(body.substr(eq + 1));
    if (rhs != "0") {
      for (const auto& term : split_plus(rhs)) {
        const auto [coef, name] = parse_term(term, l.number);
        const auto idx = name_index(name, l.number);
        auto it = std::find_if(r.rhs.begin(), r.rhs.end(), [&](const auto& e) { return e.first == idx; });
        if (it == r.rhs.end()) r.rhs.emplace_back(idx, coef);
        else it->second += coef;
      }
    }
    std::sort(r.lhs.begin(), r.lhs.end());
    if (std::adjacent_find(r.lhs.begin(), r.lhs.end()) != r.lhs.end())
      throw ParseError(l.number, "left-hand side repeats a generator");
    for (const auto& [w, mu] : r.rhs)
      if (std::find(r.lhs.begin(), r.lhs.end(), w) != r.lhs.end())
        throw ParseError(l.number, "generator '" + p.names[w] + "' occurs on both sides");
    std::sort(r.rhs.begin(), r.rhs.end());
    for (const auto& q : p.relations)
      if (q.label == r.label) throw ParseError(l.number, "duplicate relation label '" + r.label + "'");
    p.relations.push_back(std::move(r));
  }
  return p;
}

std::string emit_relations(const RelationPresentation& p) {
  std::ostringstream out;
  out << "rays:";
  for (std::size_t i = 0; i < p.names.size(); ++i) out << (i ? ", " : " ") << p.names[i];
  out << "\n";
  for (const auto& r : p.relations) {
    out << r.label << ": ";
    for (std::size_t i = 0; i < r.lhs.size(); ++i) out << (i ? " + " : "") << p.names[r.lhs[i]];
    out << " =";
    if (r.rhs.empty()) out << " 0";
    for (std::size_t j = 0; j < r.rhs.size(); ++j) {
      out << (j ? " + " : " ");
      if (r.rhs[j].second != 1) out << r.rhs[j].second.get_str() << " ";
      out << p.names[r.rhs[j].first];
    }
    out << "\n";
  }
  return out.str();
}

RelationPresentation read_relations_file(const std::string& path) { return parse_relations(read_file(path)); }

RelationPresentation extract_presentation(const LatticeFan& f) {
  RelationPresentation p;
  for (std::size_t i = 0; i < f.ray_count(); ++i) p.names.push_back(f.name(i));
  std::size_t k = 0;
  for (const auto& pr : primitive_relations(f)) {
    NamedRelation r;
    r.label = "r" + std::to_string(++k);
    r.lhs = pr.collection.indices();
    const auto idx = pr.focus.indices();
    for (std::size_t j = 0; j < idx.size(); ++j) r.rhs.emplace_back(idx[j], pr.coefficients[j]);
    p.relations.push_back(std::move(r));
  }
  return p;
}

namespace {

// Calls f(s) for every subset of {0..n-1} of size k in lexicographic order.
template <class F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  while (true) {
    f(RaySet::from_indices(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

LatticeFan reconstruct_fan(const RelationPresentation& p, int dim) {
  const std::size_t r = p.names.size();
  const auto n = static_cast<std::size_t>(dim);
  if (dim <= 0 || r <= n) throw Error(ErrorKind::shape, "need more generators than the dimension");
  if (r > kMaxRays) throw Error(ErrorKind::shape, "too many generators");
  std::vector<RaySet> collections;
  for (const auto& rel : p.relations) collections.push_back(RaySet::from_indices(rel.lhs));

  std::vector<RaySet> cones;
  for_each_combination(r, n, [&](RaySet s) {
    for (auto c : collections)
      if (s.contains(c)) return;
    cones.push_back(s);
  });
  if (cones.empty()) throw Error(ErrorKind::invalid_fan, "the listed collections leave no maximal cone");

  // Unknown vectors: all rays outside the first cone. Each relation gives
  // sum_v alpha_v v = 0, one linear system per coordinate.
  const RaySet basis = cones.front();
  std::vector<std::size_t> unknown;
  for (std::size_t i = 0; i < r; ++i)
    if (!basis.contains(i)) unknown.push_back(i);
  std::vector<IntVector> alphas;
  for (const auto& rel : p.relations) alphas.push_back(p.alpha(rel));
  IntMatrix a(alphas.size(), unknown.size());
  for (std::size_t e = 0; e < alphas.size(); ++e)
    for (std::size_t u = 0; u < unknown.size(); ++u) a(e, u) = alphas[e][unknown[u]];

  std::vector<IntVector> vectors(r, IntVector(n));
  const auto basis_idx = basis.indices();
  for (std::size_t k = 0; k < n; ++k) vectors[basis_idx[k]][k] = 1;
  for (std::size_t coord = 0; coord < n; ++coord) {
    IntVector b(alphas.size());
    for (std::size_t e = 0; e < alphas.size(); ++e) b[e] = -alphas[e][basis_idx[coord]];
    const auto sol = solve_integer_system(a, b);
    if (sol.status == SolveStatus::underdetermined)
      throw Error(ErrorKind::underdetermined, "the relations do not determine every ray");
    if (sol.status == SolveStatus::none)
      throw Error(ErrorKind::inconsistent, "the relations admit no integral solution");
    for (std::size_t u = 0; u < unknown.size(); ++u) vectors[unknown[u]][coord] = sol.solution[u];
  }

  std::vector<Ray> rays;
  for (std::size_t i = 0; i < r; ++i) rays.push_back({vectors[i], p.names[i]});
  LatticeFan f(dim, std::move(rays), std::move(cones));
  const auto rep = validate(f);
  if (!rep.ok()) throw Error(ErrorKind::invalid_fan, rep.failures.front());

  const auto pcs = primitive_collections(f);
  for (const auto& rel : p.relations) {
    const RaySet c = RaySet::from_indices(rel.lhs);
    if (std::find(pcs.begin(), pcs.end(), c) == pcs.end())
      throw Error(ErrorKind::pc_mismatch, "relation '" + rel.label + "' is not primitive in the rebuilt fan");
    const auto pr = primitive_relation(f, c);
    if (pr.alpha != p.alpha(rel))
      throw Error(ErrorKind::pc_mismatch, "relation '" + rel.label + "' rebuilds as " + format_relation(f, pr));
  }
  if (pcs.size() != p.relations.size()) {
    for (auto c : pcs)
      if (std::find(collections.begin(), collections.end(), c) == collections.end())
        throw Error(ErrorKind::pc_mismatch, "rebuilt fan has the unlisted primitive collection " + f.names(c));
  }
  return f;
}

LatticeFan build_bundle_over_p1(const std::vector<long>& a) {
  if (a.size() < 2) throw Error(ErrorKind::shape, "need at least two degrees");
  const std::size_t m = a.size() - 1;
  const std::size_t n = m + 1;
  std::vector<Ray> rays;
  IntVector p0(n);
  for (std::size_t i = 0; i < m; ++i) p0[i] = -1;
  rays.push_back({p0, "p0"});
  for (std::size_t i = 1; i <= m; ++i) {
    IntVector e(n);
    e[i - 1] = 1;
    rays.push_back({e, "p" + std::to_string(i)});
  }
  IntVector u(n), u2(n);
  u[m] = 1;
  u2[m] = -1;
  for (std::size_t i = 1; i <= m; ++i) u[i - 1] = a[i] - a[0];
  rays.push_back({u, "u"});
  rays.push_back({u2, "u'"});
  std::vector<RaySet> cones;
  const RaySet fiber = RaySet::first(m + 1);
  for (std::size_t k = 0; k <= m; ++k)
    for (std::size_t base : {m + 1, m + 2}) cones.push_back(fiber.without(k).with(base));
  return LatticeFan(static_cast<int>(n), std::move(rays), std::move(cones));
}

}  // namespace toric
