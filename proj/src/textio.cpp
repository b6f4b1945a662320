#include "stabg/textio.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "stabg/errors.hpp"

namespace stabg {
namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
  std::string text;  // comment stripped, trimmed
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens_of(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

/// Non-blank lines with comments removed.
std::vector<Line> lines_of(const std::string& text, std::size_t first_line) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::size_t n = first_line;
  for (std::string raw; std::getline(in, raw); ++n) {
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    auto t = trim(raw);
    if (!t.empty()) out.push_back({n, tokens_of(t), t});
  }
  return out;
}

long long to_int(const std::string& s, std::size_t line) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + s + "'", line);
  }
  if (used != s.size()) throw ParseError("expected an integer, got '" + s + "'", line);
  return v;
}

Scalar reduce(long long v, Scalar p) {
  long long r = v % static_cast<long long>(p);
  return static_cast<Scalar>(r < 0 ? r + p : r);
}

std::vector<std::string> split_on(const std::string& s, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (seps.find(ch) != std::string::npos) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<Vec> parse_elements(const AlgebraPtr& alg, const std::vector<std::string>& texts, std::size_t line) {
  std::vector<Vec> out;
  for (const auto& t : texts) {
    try {
      out.push_back(alg->parse_element(t));
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(e.what(), line);
    }
  }
  return out;
}

std::vector<std::string> join_rest(const std::vector<std::string>& toks, std::size_t from) {
  std::vector<std::string> out;
  for (std::size_t i = from; i < toks.size(); ++i)
    for (auto& piece : split_on(toks[i], ",")) out.push_back(piece);
  return out;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AlgebraPtr parse_algebra(const std::string& text, const std::string& name, std::size_t first_line) {
  auto lines = lines_of(text, first_line);
  std::size_t last = lines.empty() ? first_line : lines.back().number;
  if (lines.size() < 3) throw ParseError("algebra needs a header, a label line and a unit line", last);

  const auto& h = lines[0];
  if (h.tokens.size() != 4 || h.tokens[0] != "p" || h.tokens[2] != "dim")
    throw ParseError("header must read 'p <prime> dim <n>'", h.number);
  long long p = to_int(h.tokens[1], h.number);
  long long n = to_int(h.tokens[3], h.number);
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw ParseError("p must be prime", h.number);
  if (n < 1) throw ParseError("dim must be positive", h.number);
  auto dim = static_cast<std::size_t>(n);
  auto P = static_cast<Scalar>(p);

  if (lines[1].tokens.size() != dim) throw ParseError("expected " + std::to_string(dim) + " labels", lines[1].number);
  std::vector<std::string> labels = lines[1].tokens;

  if (lines[2].tokens.size() != dim)
    throw ParseError("unit needs " + std::to_string(dim) + " coordinates", lines[2].number);
  Vec unit(dim);
  for (std::size_t i = 0; i < dim; ++i) unit[i] = reduce(to_int(lines[2].tokens[i], lines[2].number), P);

  std::vector<std::vector<Vec>> mul(dim, std::vector<Vec>(dim));
  std::vector<std::vector<bool>> seen(dim, std::vector<bool>(dim, false));
  for (std::size_t li = 3; li < lines.size(); ++li) {
    const auto& l = lines[li];
    if (l.tokens.size() < 3 || l.tokens[2] != ":") throw ParseError("expected 'i j : k c ...'", l.number);
    long long i = to_int(l.tokens[0], l.number), j = to_int(l.tokens[1], l.number);
    if (i < 0 || j < 0 || i >= n || j >= n) throw ParseError("basis index out of range", l.number);
    if (seen[i][j]) throw ParseError("product " + std::to_string(i) + " " + std::to_string(j) + " given twice", l.number);
    seen[i][j] = true;
    if ((l.tokens.size() - 3) % 2 != 0) throw ParseError("structure constants come in (k, c) pairs", l.number);
    Vec v(dim, 0);
    for (std::size_t t = 3; t < l.tokens.size(); t += 2) {
      long long k = to_int(l.tokens[t], l.number);
      if (k < 0 || k >= n) throw ParseError("basis index out of range", l.number);
      v[k] = (v[k] + reduce(to_int(l.tokens[t + 1], l.number), P)) % P;
    }
    mul[i][j] = std::move(v);
  }
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if (!seen[i][j])
        throw ParseError("missing product " + std::to_string(i) + " " + std::to_string(j), last);

  return FiniteAlgebra::from_structure_constants(P, std::move(mul), std::move(unit), std::move(labels), name);
}

std::string format_algebra(const AlgebraPtr& alg) {
  std::ostringstream out;
  std::size_t n = alg->dim();
  out << "p " << alg->p() << " dim " << n << "\n";
  for (std::size_t i = 0; i < n; ++i) out << (i ? " " : "") << alg->labels()[i];
  out << "\n";
  for (std::size_t i = 0; i < n; ++i) out << (i ? " " : "") << alg->unit()[i];
  out << "\n";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      out << i << " " << j << " :";
      const auto& v = alg->basis_product(i, j);
      for (std::size_t k = 0; k < n; ++k)
        if (v[k]) out << " " << k << " " << v[k];
      out << "\n";
    }
  return out.str();
}

Module parse_module(const AlgebraPtr& alg, std::size_t dim, const std::vector<std::string>& rows,
                    std::size_t first_line) {
  std::vector<Line> ls;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto t = rows[i];
    auto hash = t.find('#');
    if (hash != std::string::npos) t.resize(hash);
    t = trim(t);
    if (!t.empty()) ls.push_back({first_line + i, tokens_of(t), t});
  }
  std::size_t need = alg->dim() * dim;
  std::size_t last = rows.empty() ? first_line : first_line + rows.size() - 1;
  if (ls.size() != need)
    throw ParseError("module needs " + std::to_string(need) + " matrix rows, got " + std::to_string(ls.size()), last);
  std::vector<FpMatrix> action;
  for (std::size_t b = 0; b < alg->dim(); ++b) {
    FpMatrix a(alg->p(), dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
      const auto& l = ls[b * dim + r];
      if (l.tokens.size() != dim) throw ParseError("row needs " + std::to_string(dim) + " entries", l.number);
      for (std::size_t c = 0; c < dim; ++c) a.set(r, c, reduce(to_int(l.tokens[c], l.number), alg->p()));
    }
    action.push_back(std::move(a));
  }
  try {
    return Module::create(alg, std::move(action));
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& e) {
    throw ParseError(std::string("invalid module: ") + e.what(), ls.empty() ? last : ls.front().number);
  }
}

std::string format_module(const Module& m, const std::string& algebra_id) {
  std::ostringstream out;
  out << "module " << algebra_id << " " << m.dim() << " begin\n";
  for (const auto& a : m.actions()) {
    for (std::size_t r = 0; r < a.rows(); ++r) {
      for (std::size_t c = 0; c < a.cols(); ++c) out << (c ? " " : "") << a.at(r, c);
      out << "\n";
    }
  }
  out << "end\n";
  return out.str();
}

AlgebraPtr parse_preset_ref(const std::string& ref) {
  auto parts = split_on(ref, ":");
  if (parts.size() < 3 || parts[0] != "preset") throw InputError("bad preset reference '" + ref + "'");
  std::vector<long long> params;
  for (std::size_t i = 2; i < parts.size(); ++i) {
    try {
      std::size_t used = 0;
      params.push_back(std::stoll(parts[i], &used));
      if (used != parts[i].size()) throw InputError("");
    } catch (const std::exception&) {
      throw InputError("bad preset parameter '" + parts[i] + "' in '" + ref + "'");
    }
  }
  return preset(parts[1], params);
}

Workspace Workspace::load(const std::string& path) {
  auto dir = std::filesystem::path(path).parent_path().string();
  try {
    return parse(read_file(path), dir);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line());
  }
}

Workspace Workspace::parse(const std::string& text, const std::string& base_dir) {
  Workspace ws;
  std::vector<std::string> raw;
  {
    std::istringstream in(text);
    for (std::string s; std::getline(in, s);) raw.push_back(s);
  }
  // Collects a begin/end body starting after line index i; returns the raw lines and advances i past 'end'.
  auto body = [&](std::size_t& i, std::size_t header_line) {
    std::vector<std::string> out;
    for (++i; i < raw.size(); ++i) {
      auto t = raw[i];
      auto hash = t.find('#');
      if (hash != std::string::npos) t.resize(hash);
      if (trim(t) == "end") return out;
      out.push_back(raw[i]);
    }
    throw ParseError("section has no 'end'", header_line);
  };
  auto fresh = [&](const std::string& id, std::size_t line) {
    if (ws.algebras_.count(id) || ws.morphisms_.count(id) || ws.modules_.count(id))
      throw ParseError("id '" + id + "' defined twice", line);
  };
  auto algebra_at = [&](const std::string& ref, std::size_t line) {
    try {
      return ws.algebra(ref);
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(e.what(), line);
    }
  };

  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto t = raw[i];
    auto hash = t.find('#');
    if (hash != std::string::npos) t.resize(hash);
    auto toks = tokens_of(t);
    if (toks.empty()) continue;
    std::size_t ln = i + 1;
    const auto& kw = toks[0];
    if (kw == "algebra") {
      if (toks.size() < 3) throw ParseError("expected 'algebra <id> <source>'", ln);
      fresh(toks[1], ln);
      if (toks[2] == "begin") {
        auto b = body(i, ln);
        std::string joined;
        for (auto& s : b) joined += s + "\n";
        ws.algebras_[toks[1]] = parse_algebra(joined, toks[1], ln + 1);
      } else if (toks[2] == "file" && toks.size() == 4) {
        auto path = std::filesystem::path(toks[3]);
        if (path.is_relative() && !base_dir.empty()) path = std::filesystem::path(base_dir) / path;
        ws.algebras_[toks[1]] = parse_algebra(read_file(path.string()), toks[1]);
      } else if (toks.size() == 3 && toks[2].rfind("preset:", 0) == 0) {
        ws.algebras_[toks[1]] = algebra_at(toks[2], ln);
      } else {
        throw ParseError("expected 'begin', 'file <path>' or a preset after 'algebra " + toks[1] + "'", ln);
      }
    } else if (kw == "morphism") {
      if (toks.size() != 5 || toks[4] != "begin")
        throw ParseError("expected 'morphism <id> <source> <target> begin'", ln);
      fresh(toks[1], ln);
      auto src = algebra_at(toks[2], ln), tgt = algebra_at(toks[3], ln);
      std::size_t start = i + 2;
      auto b = body(i, ln);
      auto ls = lines_of([&] {
        std::string j;
        for (auto& s : b) j += s + "\n";
        return j;
      }(), start);
      if (ls.size() != tgt->dim())
        throw ParseError("morphism needs " + std::to_string(tgt->dim()) + " rows", ls.empty() ? ln : ls.back().number);
      FpMatrix m(tgt->p(), tgt->dim(), src->dim());
      for (std::size_t r = 0; r < ls.size(); ++r) {
        if (ls[r].tokens.size() != src->dim())
          throw ParseError("row needs " + std::to_string(src->dim()) + " entries", ls[r].number);
        for (std::size_t c = 0; c < src->dim(); ++c) m.set(r, c, reduce(to_int(ls[r].tokens[c], ls[r].number), tgt->p()));
      }
      try {
        ws.morphisms_.emplace(toks[1], AlgebraMorphism::create(src, tgt, m));
      } catch (const ParseError&) {
        throw;
      } catch (const InputError& e) {
        throw ParseError(std::string("invalid morphism: ") + e.what(), ln);
      }
    } else if (kw == "subalgebra" || kw == "quotient") {
      if (toks.size() < 4) throw ParseError("expected '" + kw + " <id> <algebra> <elements>'", ln);
      fresh(toks[1], ln);
      auto alg = algebra_at(toks[2], ln);
      auto elems = parse_elements(alg, join_rest(toks, 3), ln);
      if (kw == "subalgebra") {
        auto s = subalgebra_generated(alg, elems);
        ws.algebras_[toks[1]] = s.algebra;
        ws.morphisms_.emplace(toks[1] + ".inc", s.inclusion);
      } else {
        auto q = quotient_by_ideal(ideal_generated(alg, elems));
        ws.algebras_[toks[1]] = q.algebra;
        ws.morphisms_.emplace(toks[1] + ".proj", q.projection);
      }
    } else if (kw == "module") {
      if (toks.size() != 5 || toks[4] != "begin") throw ParseError("expected 'module <id> <algebra> <dim> begin'", ln);
      fresh(toks[1], ln);
      auto alg = algebra_at(toks[2], ln);
      long long d = to_int(toks[3], ln);
      if (d < 0) throw ParseError("dim must be nonnegative", ln);
      std::size_t start = i + 2;
      auto b = body(i, ln);
      ws.modules_.emplace(toks[1], parse_module(alg, static_cast<std::size_t>(d), b, start));
    } else {
      throw ParseError("unknown section '" + kw + "'", ln);
    }
  }
  return ws;
}

AlgebraPtr Workspace::algebra(const std::string& ref) const {
  if (auto it = algebras_.find(ref); it != algebras_.end()) return it->second;
  if (ref.rfind("preset:", 0) == 0) return parse_preset_ref(ref);
  if (std::filesystem::exists(ref)) return parse_algebra(read_file(ref), ref);
  throw InputError("unknown algebra '" + ref + "'");
}

const AlgebraMorphism& Workspace::morphism(const std::string& id) const {
  auto it = morphisms_.find(id);
  if (it == morphisms_.end()) throw InputError("unknown morphism '" + id + "'");
  return it->second;
}

const Module& Workspace::module(const std::string& id) const {
  auto it = modules_.find(id);
  if (it == modules_.end()) throw InputError("unknown module '" + id + "'");
  return it->second;
}

Module resolve_module(const std::string& ref, const AlgebraPtr& alg, const Workspace& ws,
                      const std::vector<Module>& universe) {
  if (ref == "zero") return zero_module(alg);
  if (ref == "regular") return regular_module(alg);
  if (ref == "coregular") return coregular(alg);
  if (ref.size() > 1 && ref[0] == 'U' && ref.find_first_not_of("0123456789", 1) == std::string::npos) {
    auto i = std::stoull(ref.substr(1));
    if (i >= universe.size()) throw InputError("universe index " + ref + " out of range");
    return universe[i];
  }
  const auto& m = ws.module(ref);
  if (!same_algebra(m.algebra(), alg)) throw AlgebraMismatch("module '" + ref + "' lives over another algebra");
  return m;
}

namespace {

AlgebraMorphism resolve_morphism(const std::string& ref, const AlgebraPtr& alg, const Workspace& ws) {
  if (ref.rfind("proj:", 0) == 0) {
    std::vector<Vec> elems;
    for (auto& t : split_on(ref.substr(5), ",")) elems.push_back(alg->parse_element(t));
    if (elems.empty()) throw InputError("proj: needs at least one element");
    return quotient_by_ideal(ideal_generated(alg, elems)).projection;
  }
  const auto& m = ws.morphism(ref);
  if (!same_algebra(m.source(), alg)) throw AlgebraMismatch("morphism '" + ref + "' does not start at this algebra");
  return m;
}

AllowableClass parse_class_at(const std::vector<std::string>& toks, std::size_t& pos, const AlgebraPtr& alg,
                              const Workspace& ws, const std::vector<Module>& universe) {
  if (pos >= toks.size()) throw InputError("class description ends early");
  const auto& kw = toks[pos++];
  if (kw == "all") return AllowableClass::all(alg);
  if (kw == "trivial") return AllowableClass::trivial(alg);
  if (kw == "projgen" || kw == "injgen") {
    std::vector<Module> gens;
    if (pos < toks.size() && toks[pos] != "none") {
      for (auto& r : split_on(toks[pos], ",")) gens.push_back(resolve_module(r, alg, ws, universe));
    }
    ++pos;
    return kw == "projgen" ? AllowableClass::proj_generated(alg, gens) : AllowableClass::inj_generated(alg, gens);
  }
  if (kw == "pullback" || kw == "pushforward") {
    if (pos >= toks.size()) throw InputError(kw + " needs a morphism");
    auto phi = resolve_morphism(toks[pos++], alg, ws);
    auto inner = parse_class_at(toks, pos, phi.target(), ws, {});
    return kw == "pullback" ? AllowableClass::pullback(phi, inner) : AllowableClass::pushforward(phi, inner);
  }
  throw InputError("unknown class '" + kw + "'");
}

}  // namespace

AllowableClass parse_class(const std::string& text, const AlgebraPtr& alg, const Workspace& ws,
                           const std::vector<Module>& universe) {
  auto toks = tokens_of(text);
  std::size_t pos = 0;
  auto cls = parse_class_at(toks, pos, alg, ws, universe);
  if (pos != toks.size()) throw InputError("unexpected '" + toks[pos] + "' in class description");
  return cls;
}

TowerFile parse_tower(const std::string& text, const Workspace& ws) {
  TowerFile out;
  for (const auto& l : lines_of(text, 1)) {
    if (l.tokens[0] == "algebra") {
      if (l.tokens.size() != 2) throw ParseError("expected 'algebra <ref>'", l.number);
      if (out.algebra) throw ParseError("algebra given twice", l.number);
      try {
        out.algebra = ws.algebra(l.tokens[1]);
      } catch (const ParseError&) {
        throw;
      } catch (const InputError& e) {
        throw ParseError(e.what(), l.number);
      }
    } else if (l.tokens[0] == "stage") {
      if (!out.algebra) throw ParseError("stage before algebra", l.number);
      auto rest = l.text.substr(5);
      auto semi = rest.find(';');
      if (semi == std::string::npos) throw ParseError("expected 'stage <sub elements> ; <ideal elements>'", l.number);
      TowerStage st;
      // "none" stands for an empty generator list
      for (auto& e : split_on(rest.substr(0, semi), ", \t"))
        if (e != "none") st.sub.push_back(e);
      for (auto& e : split_on(rest.substr(semi + 1), ", \t"))
        if (e != "none") st.ideal.push_back(e);
      out.stages.push_back(std::move(st));
    } else {
      throw ParseError("unknown tower line '" + l.tokens[0] + "'", l.number);
    }
  }
  if (!out.algebra) throw ParseError("tower file names no algebra", 1);
  if (out.stages.empty()) throw ParseError("tower file has no stages", 1);
  return out;
}

}  // namespace stabg
