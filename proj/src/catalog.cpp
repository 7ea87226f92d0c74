#include "rspace/catalog.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rspace {

namespace {

RootSystem build_a(long rank, long m) {
  return build_irreducible(Family::A, static_cast<int>(rank),
                           {{"long", static_cast<int>(m)}});
}
RootSystem build_b(long rank, long ms, long ml) {
  return build_irreducible(Family::B, static_cast<int>(rank),
                           {{"short", static_cast<int>(ms)}, {"long", static_cast<int>(ml)}});
}
RootSystem build_c(long rank, long ms, long ml) {
  return build_irreducible(Family::C, static_cast<int>(rank),
                           {{"short", static_cast<int>(ms)}, {"long", static_cast<int>(ml)}});
}
RootSystem build_bc(long rank, long ms, long ml, long md) {
  return build_irreducible(Family::BC, static_cast<int>(rank),
                           {{"short", static_cast<int>(ms)},
                            {"long", static_cast<int>(ml)},
                            {"double", static_cast<int>(md)}});
}
RootSystem build_d(long rank, long m) {
  return build_irreducible(Family::D, static_cast<int>(rank),
                           {{"long", static_cast<int>(m)}});
}

long P(const ParamMap& p, const char* k) { return p.at(k); }

std::string need(const ParamMap& p, std::initializer_list<const char*> keys) {
  for (const char* k : keys)
    if (!p.count(k)) return std::string("missing parameter '") + k + "'";
  return {};
}

std::vector<CatalogEntry> make_entries() {
  std::vector<CatalogEntry> t;

  t.push_back({"SO(n+1)/SO(n)", "SO(4)/SO(3)", "A_1", "1", "m = n-1", "n",
               {{"n", 2, 12}},
               [](const ParamMap& p) {
                 if (auto e = need(p, {"n"}); !e.empty()) return e;
                 return P(p, "n") >= 2 ? std::string() : "requires n >= 2";
               },
               [](const ParamMap& p) { return build_a(1, P(p, "n") - 1); },
               [](const ParamMap& p) { return P(p, "n"); }});

  t.push_back({"SU(n)/SO(n)", "SU(3)/SO(3)", "A_{n-1}", "n-1", "m = 1",
               "(n-1)(n+2)/2",
               {{"n", 2, 8}},
               [](const ParamMap& p) {
                 if (auto e = need(p, {"n"}); !e.empty()) return e;
                 return P(p, "n") >= 2 ? std::string() : "requires n >= 2";
               },
               [](const ParamMap& p) { return build_a(P(p, "n") - 1, 1); },
               [](const ParamMap& p) { return (P(p, "n") - 1) * (P(p, "n") + 2) / 2; }});

  t.push_back({"SU(2n)/Sp(n)", "SU(4)/Sp(2)", "A_{n-1}", "n-1", "m = 4",
               "(n-1)(2n+1)",
               {{"n", 2, 6}},
               [](const ParamMap& p) {
                 if (auto e = need(p, {"n"}); !e.empty()) return e;
                 return P(p, "n") >= 2 ? std::string() : "requires n >= 2";
               },
               [](const ParamMap& p) { return build_a(P(p, "n") - 1, 4); },
               [](const ParamMap& p) { return (P(p, "n") - 1) * (2 * P(p, "n") + 1); }});

  t.push_back(
      {"SU(p+q)/S(U(p)xU(q))", "SU(3)/S(U(2)xU(1))", "BC_q (p>q), C_q (p=q)", "q",
       "m = (2(p-q), 2, 1)", "2pq",
       {{"q", 1, 3}, {"p", 1, 7}},
       [](const ParamMap& p) {
         if (auto e = need(p, {"p", "q"}); !e.empty()) return e;
         return P(p, "p") >= P(p, "q") && P(p, "q") >= 1 ? std::string()
                                                         : "requires p >= q >= 1";
       },
       [](const ParamMap& pm) {
         const long p = P(pm, "p"), q = P(pm, "q");
         if (p == q) return build_c(q, 2, 1);
         return build_bc(q, 2 * (p - q), 2, 1);
       },
       [](const ParamMap& pm) { return 2 * P(pm, "p") * P(pm, "q"); }});

  t.push_back(
      {"SO(p+q)/SO(p)xSO(q)", "SO(5)/SO(3)xSO(2)", "B_q (p>q), D_q (p=q)", "q",
       "m = (p-q, 1)", "pq",
       {{"q", 1, 3}, {"p", 2, 7}},
       [](const ParamMap& p) {
         if (auto e = need(p, {"p", "q"}); !e.empty()) return e;
         if (!(P(p, "p") >= P(p, "q") && P(p, "q") >= 1)) return std::string("requires p >= q >= 1");
         return P(p, "p") + P(p, "q") >= 3 ? std::string() : "requires p + q >= 3";
       },
       [](const ParamMap& pm) {
         const long p = P(pm, "p"), q = P(pm, "q");
         if (p == q) return build_d(q, 1);
         return build_b(q, p - q, 1);
       },
       [](const ParamMap& pm) { return P(pm, "p") * P(pm, "q"); }});

  t.push_back(
      {"Sp(p+q)/Sp(p)xSp(q)", "Sp(3)/Sp(2)xSp(1)", "BC_q (p>q), C_q (p=q)", "q",
       "m = (4(p-q), 4, 3)", "4pq",
       {{"q", 1, 3}, {"p", 1, 7}},
       [](const ParamMap& p) {
         if (auto e = need(p, {"p", "q"}); !e.empty()) return e;
         return P(p, "p") >= P(p, "q") && P(p, "q") >= 1 ? std::string()
                                                         : "requires p >= q >= 1";
       },
       [](const ParamMap& pm) {
         const long p = P(pm, "p"), q = P(pm, "q");
         if (p == q) return build_c(q, 4, 3);
         return build_bc(q, 4 * (p - q), 4, 3);
       },
       [](const ParamMap& pm) { return 4 * P(pm, "p") * P(pm, "q"); }});

  t.push_back({"Sp(n)/U(n)", "Sp(2)/U(2)", "C_n", "n", "m = (1, 1)", "n(n+1)",
               {{"n", 1, 6}},
               [](const ParamMap& p) {
                 if (auto e = need(p, {"n"}); !e.empty()) return e;
                 return P(p, "n") >= 1 ? std::string() : "requires n >= 1";
               },
               [](const ParamMap& p) { return build_c(P(p, "n"), 1, 1); },
               [](const ParamMap& p) { return P(p, "n") * (P(p, "n") + 1); }});

  t.push_back({"G2/SO(4)", "G2/SO(4)", "G2", "2", "m = (1, 1)", "8", {},
               [](const ParamMap&) { return std::string(); },
               [](const ParamMap&) {
                 return build_irreducible(Family::G2, 2, {{"short", 1}, {"long", 1}});
               },
               [](const ParamMap&) { return 8L; }});

  t.push_back({"F4/Spin(9)", "F4/Spin(9)", "BC_1", "1", "m = (8, 7)", "16", {},
               [](const ParamMap&) { return std::string(); },
               [](const ParamMap&) { return build_bc(1, 8, 1, 7); },
               [](const ParamMap&) { return 16L; }});

  t.push_back({"E6/F4", "E6/F4", "A_2", "2", "m = 8", "26", {},
               [](const ParamMap&) { return std::string(); },
               [](const ParamMap&) { return build_a(2, 8); },
               [](const ParamMap&) { return 26L; }});

  t.push_back({"group SU(n)", "group SU(3)", "A_{n-1}", "n-1", "m = 2", "n^2-1",
               {{"n", 2, 8}},
               [](const ParamMap& p) {
                 if (auto e = need(p, {"n"}); !e.empty()) return e;
                 return P(p, "n") >= 2 ? std::string() : "requires n >= 2";
               },
               [](const ParamMap& p) { return build_a(P(p, "n") - 1, 2); },
               [](const ParamMap& p) { return P(p, "n") * P(p, "n") - 1; }});

  t.push_back({"group SO(2n+1)", "group SO(5)", "B_n", "n", "m = 2", "n(2n+1)",
               {{"n", 1, 5}},
               [](const ParamMap& p) {
                 if (auto e = need(p, {"n"}); !e.empty()) return e;
                 return P(p, "n") >= 1 ? std::string() : "requires n >= 1";
               },
               [](const ParamMap& p) { return build_b(P(p, "n"), 2, 2); },
               [](const ParamMap& p) { return P(p, "n") * (2 * P(p, "n") + 1); }});

  t.push_back({"group Sp(n)", "group Sp(2)", "C_n", "n", "m = 2", "n(2n+1)",
               {{"n", 1, 5}},
               [](const ParamMap& p) {
                 if (auto e = need(p, {"n"}); !e.empty()) return e;
                 return P(p, "n") >= 1 ? std::string() : "requires n >= 1";
               },
               [](const ParamMap& p) { return build_c(P(p, "n"), 2, 2); },
               [](const ParamMap& p) { return P(p, "n") * (2 * P(p, "n") + 1); }});

  t.push_back({"group SO(2n)", "group SO(6)", "D_n", "n", "m = 2", "n(2n-1)",
               {{"n", 2, 6}},
               [](const ParamMap& p) {
                 if (auto e = need(p, {"n"}); !e.empty()) return e;
                 return P(p, "n") >= 2 ? std::string() : "requires n >= 2";
               },
               [](const ParamMap& p) { return build_d(P(p, "n"), 2); },
               [](const ParamMap& p) { return P(p, "n") * (2 * P(p, "n") - 1); }});

  t.push_back({"group G2", "group G2", "G2", "2", "m = 2", "14", {},
               [](const ParamMap&) { return std::string(); },
               [](const ParamMap&) {
                 return build_irreducible(Family::G2, 2, {{"short", 2}, {"long", 2}});
               },
               [](const ParamMap&) { return 14L; }});

  t.push_back({"group F4", "group F4", "F4", "4", "m = 2", "52", {},
               [](const ParamMap&) { return std::string(); },
               [](const ParamMap&) {
                 return build_irreducible(Family::F4, 4, {{"short", 2}, {"long", 2}});
               },
               [](const ParamMap&) { return 52L; }});

  t.push_back({"group E6", "group E6", "E6", "6", "m = 2", "78", {},
               [](const ParamMap&) { return std::string(); },
               [](const ParamMap&) { return build_irreducible(Family::E6, 6, {{"long", 2}}); },
               [](const ParamMap&) { return 78L; }});

  t.push_back({"group E7", "group E7", "E7", "7", "m = 2", "133", {},
               [](const ParamMap&) { return std::string(); },
               [](const ParamMap&) { return build_irreducible(Family::E7, 7, {{"long", 2}}); },
               [](const ParamMap&) { return 133L; }});

  t.push_back({"group E8", "group E8", "E8", "8", "m = 2", "248", {},
               [](const ParamMap&) { return std::string(); },
               [](const ParamMap&) { return build_irreducible(Family::E8, 8, {{"long", 2}}); },
               [](const ParamMap&) { return 248L; }});

  return t;
}

// --- concrete-name pattern matching ------------------------------------

// A template splits into literal text and integer slots holding expressions
// of the shape [coef]var[+const] over the variables n, p, q.
struct Slot {
  long coef = 1;
  char var = 0;
  long add = 0;
};

struct Pattern {
  std::vector<std::string> literals;  // size = slots + 1
  std::vector<Slot> slots;
};

Pattern compile_pattern(const std::string& tmpl) {
  Pattern pat;
  std::string lit;
  size_t i = 0;
  auto is_expr_char = [](char c) {
    return c == 'n' || c == 'p' || c == 'q' || std::isdigit(static_cast<unsigned char>(c)) ||
           c == '+';
  };
  while (i < tmpl.size()) {
    // A slot is a parenthesis-delimited expression run containing a
    // variable; the 'p' of a literal like "Sp(" never qualifies.
    size_t j = i;
    while (j < tmpl.size() && is_expr_char(tmpl[j])) ++j;
    std::string chunk = tmpl.substr(i, j - i);
    const bool has_var = chunk.find_first_of("npq") != std::string::npos;
    const bool delimited = i > 0 && tmpl[i - 1] == '(' && j < tmpl.size() && tmpl[j] == ')';
    if (j > i && has_var && delimited) {
      Slot s;
      size_t c = 0;
      long coef = 0;
      bool saw_coef = false;
      while (c < chunk.size() && std::isdigit(static_cast<unsigned char>(chunk[c]))) {
        coef = coef * 10 + (chunk[c] - '0');
        saw_coef = true;
        ++c;
      }
      s.coef = saw_coef ? coef : 1;
      s.var = chunk[c++];
      if (c < chunk.size() && chunk[c] == '+') {
        ++c;
        if (c < chunk.size() && (chunk[c] == 'n' || chunk[c] == 'p' || chunk[c] == 'q')) {
          // two-variable sum such as p+q: encode as coef 0 marker
          s.coef = 0;
          s.add = chunk[c];  // second variable
          ++c;
        } else {
          long a = 0;
          while (c < chunk.size() && std::isdigit(static_cast<unsigned char>(chunk[c]))) {
            a = a * 10 + (chunk[c] - '0');
            ++c;
          }
          s.add = a;
        }
      }
      pat.literals.push_back(lit);
      pat.slots.push_back(s);
      lit.clear();
      i = j;
    } else {
      lit += tmpl[i++];
    }
  }
  pat.literals.push_back(lit);
  return pat;
}

std::optional<ParamMap> match_concrete(const std::string& tmpl, const std::string& name) {
  const Pattern pat = compile_pattern(tmpl);
  std::vector<long> captured;
  size_t pos = 0;
  for (size_t s = 0; s <= pat.slots.size(); ++s) {
    const std::string& lit = pat.literals[s];
    if (name.compare(pos, lit.size(), lit) != 0) return std::nullopt;
    pos += lit.size();
    if (s == pat.slots.size()) break;
    size_t start = pos;
    long v = 0;
    while (pos < name.size() && std::isdigit(static_cast<unsigned char>(name[pos]))) {
      v = v * 10 + (name[pos] - '0');
      ++pos;
    }
    if (pos == start) return std::nullopt;
    captured.push_back(v);
  }
  if (pos != name.size()) return std::nullopt;

  // First pass: plain variables fix the parameters (consistently).
  ParamMap params;
  for (size_t s = 0; s < pat.slots.size(); ++s) {
    const Slot& sl = pat.slots[s];
    if (sl.coef == 1 && sl.add == 0) {
      std::string key(1, sl.var);
      auto it = params.find(key);
      if (it != params.end() && it->second != captured[s]) return std::nullopt;
      params[key] = captured[s];
    }
  }
  // Second pass: composite slots must agree.
  for (size_t s = 0; s < pat.slots.size(); ++s) {
    const Slot& sl = pat.slots[s];
    if (sl.coef == 1 && sl.add == 0) continue;
    if (sl.coef == 0) {  // var + var
      std::string k1(1, sl.var), k2(1, static_cast<char>(sl.add));
      if (!params.count(k1) || !params.count(k2)) return std::nullopt;
      if (params[k1] + params[k2] != captured[s]) return std::nullopt;
    } else {
      std::string key(1, sl.var);
      if (!params.count(key)) {
        // invertible only when the remainder works out exactly
        const long num = captured[s] - sl.add;
        if (num < 0 || num % sl.coef != 0) return std::nullopt;
        params[key] = num / sl.coef;
      } else if (sl.coef * params[key] + sl.add != captured[s]) {
        return std::nullopt;
      }
    }
  }
  return params;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = make_entries();
  return entries;
}

RootSystem lookup(const std::string& name, const ParamMap& params) {
  const CatalogEntry* entry = nullptr;
  ParamMap use = params;
  for (const auto& e : catalog_entries())
    if (e.name == name) {
      entry = &e;
      break;
    }
  if (!entry) {
    for (const auto& e : catalog_entries()) {
      if (auto m = match_concrete(e.name, name)) {
        entry = &e;
        for (const auto& [k, v] : *m) use.emplace(k, v);
        break;
      }
    }
  }
  if (!entry) throw std::invalid_argument("unknown catalog entry '" + name + "'");
  if (auto err = entry->constraint_error(use); !err.empty())
    throw std::invalid_argument("catalog entry '" + entry->name + "': " + err);

  RootSystem rs = entry->build(use);
  rs.label = name + " [" + rs.label + "]";
  auto violations = validate(rs);
  if (!violations.empty())
    throw std::runtime_error("catalog entry '" + entry->name +
                             "' produced an invalid root system: " + violations[0].rule);
  const long expected = entry->dim_m(use);
  const long got = rs.rank + rs.total_multiplicity();
  if (expected != got)
    throw std::runtime_error("catalog entry '" + entry->name +
                             "' fails the dimension identity: rank + Σ m(λ) = " +
                             std::to_string(got) + " but dim m = " +
                             std::to_string(expected));
  return rs;
}

RootSystem load_custom(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_custom: cannot open '" + path + "'");

  auto fail = [&](int line, const std::string& msg) -> void {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + msg);
  };

  int ambient_dim = -1, rank = -1;
  std::vector<RatVec> simples;
  std::vector<PositiveRoot> roots;

  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    std::vector<std::string> tok;
    for (std::string w; ss >> w;) tok.push_back(w);
    if (tok.empty()) continue;

    auto parse_long = [&](const std::string& w, const char* what) {
      try {
        size_t used = 0;
        long v = std::stol(w, &used);
        if (used != w.size()) throw std::invalid_argument(w);
        return v;
      } catch (...) {
        fail(lineno, std::string("expected an integer for ") + what + ", got '" + w + "'");
        return 0L;
      }
    };
    auto parse_coords = [&](size_t from, size_t count) {
      RatVec v;
      for (size_t i = from; i < from + count; ++i) {
        if (i >= tok.size()) fail(lineno, "too few coordinates (expected " +
                                              std::to_string(count) + ")");
        auto r = Rational::parse(tok[i]);
        if (!r) fail(lineno, "bad rational coordinate '" + tok[i] + "'");
        v.push_back(*r);
      }
      return v;
    };

    if (tok[0] == "ambient_dim") {
      if (tok.size() != 2) fail(lineno, "usage: ambient_dim <d>");
      ambient_dim = static_cast<int>(parse_long(tok[1], "ambient_dim"));
      if (ambient_dim < 1) fail(lineno, "ambient_dim must be positive");
    } else if (tok[0] == "rank") {
      if (tok.size() != 2) fail(lineno, "usage: rank <r>");
      rank = static_cast<int>(parse_long(tok[1], "rank"));
      if (rank < 1) fail(lineno, "rank must be positive");
    } else if (tok[0] == "simple") {
      if (ambient_dim < 0) fail(lineno, "ambient_dim must come before simple roots");
      if (!roots.empty()) fail(lineno, "simple roots must precede root lines");
      if (tok.size() != 1 + static_cast<size_t>(ambient_dim))
        fail(lineno, "simple root needs exactly " + std::to_string(ambient_dim) +
                         " coordinates");
      simples.push_back(parse_coords(1, ambient_dim));
    } else if (tok[0] == "root") {
      if (ambient_dim < 0) fail(lineno, "ambient_dim must come before roots");
      if (tok.size() != 3 + static_cast<size_t>(ambient_dim) ||
          tok[1 + ambient_dim] != "mult")
        fail(lineno, "usage: root <" + std::to_string(ambient_dim) +
                         " coordinates> mult <positive integer>");
      RatVec coords = parse_coords(1, ambient_dim);
      long m = parse_long(tok[2 + ambient_dim], "mult");
      if (m < 1) fail(lineno, "multiplicity must be positive");
      roots.push_back({std::move(coords), static_cast<int>(m)});
    } else {
      fail(lineno, "unknown directive '" + tok[0] + "'");
    }
  }
  if (ambient_dim < 0) fail(lineno, "missing ambient_dim");
  if (rank < 0) fail(lineno, "missing rank");
  if (static_cast<int>(simples.size()) != rank)
    fail(lineno, "declared rank " + std::to_string(rank) + " but found " +
                     std::to_string(simples.size()) + " simple lines");
  if (roots.empty()) fail(lineno, "no positive roots");

  RootSystem rs = make_root_system(ambient_dim, std::move(roots), std::move(simples),
                                   "custom:" + path);
  auto violations = validate(rs);
  if (!violations.empty()) {
    std::string msg = "load_custom: validation failed for '" + path + "':";
    for (const auto& v : violations) msg += "\n  - " + v.rule + ": " + v.detail;
    throw std::runtime_error(msg);
  }
  return rs;
}

}  // namespace rspace
