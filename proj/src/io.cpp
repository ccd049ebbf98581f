// Copyright 2026 The icbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "icbound/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "icbound/error.hpp"

namespace icb {

namespace {

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

struct Line {
  std::size_t number;
  std::string text;
};

std::vector<Line> content_lines(std::istream& in) {
  std::vector<Line> out;
  std::string text;
  for (std::size_t n = 1; std::getline(in, text); ++n) {
    if (!text.empty() && text.back() == '\r') text.pop_back();
    const auto first = text.find_first_not_of(" \t");
    if (first == std::string::npos || text[first] == '#') continue;
    out.push_back({n, text});
  }
  return out;
}

[[noreturn]] void fail(const Line& line, const std::string& what) {
  throw ParseError("line " + std::to_string(line.number) + ": " + what);
}

std::size_t parse_count(const Line& line, const std::string& text) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) fail(line, "expected a count, got '" + text + "'");
  return value;
}

class SymbolTable {
 public:
  std::size_t operator()(const std::string& s) {
    auto [it, fresh] = index_.try_emplace(s, symbols_.size());
    if (fresh) symbols_.push_back(s);
    return it->second;
  }
  const std::vector<std::string>& symbols() const { return symbols_; }

 private:
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::string> symbols_;
};

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return in;
}

// Splits `<fields...> TAB <value>`; falls back to the last whitespace token.
std::pair<std::vector<std::string>, std::string> split_value(const Line& line) {
  const auto tab = line.text.find_last_of('\t');
  if (tab != std::string::npos) {
    auto value = split_ws(std::string_view(line.text).substr(tab + 1));
    if (value.size() == 1) return {split_ws(std::string_view(line.text).substr(0, tab)), value[0]};
  }
  auto fields = split_ws(line.text);
  if (fields.empty()) fail(line, "empty line");
  std::string value = fields.back();
  fields.pop_back();
  return {fields, value};
}

}  // namespace

double parse_probability(std::string_view text) {
  auto number = [&](std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw ParseError("not a probability: '" + std::string(text) + "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return number(text);
  const double den = number(text.substr(slash + 1));
  if (den == 0.0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return number(text.substr(0, slash)) / den;
}

std::string format_exact(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string format_bits(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

JointPMF read_pmf(std::istream& in) {
  const auto lines = content_lines(in);
  if (lines.empty()) throw ParseError("empty pmf file");
  const auto header = split_ws(lines[0].text);
  if (header.size() < 2 || header[0] != "pmf") fail(lines[0], "expected 'pmf <k> <names...>'");
  const std::size_t k = parse_count(lines[0], header[1]);
  if (k == 0 || header.size() != k + 2) fail(lines[0], "expected " + header[1] + " variable names");
  std::vector<std::string> names(header.begin() + 2, header.end());

  std::vector<SymbolTable> tables(k);
  std::vector<std::pair<std::vector<std::size_t>, double>> atoms;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto [fields, value] = split_value(lines[i]);
    if (fields.size() != k) fail(lines[i], "expected " + std::to_string(k) + " symbols and a probability");
    std::vector<std::size_t> index(k);
    for (std::size_t v = 0; v < k; ++v) index[v] = tables[v](fields[v]);
    double p = 0.0;
    try {
      p = parse_probability(value);
    } catch (const ParseError& e) {
      fail(lines[i], e.what());
    }
    atoms.emplace_back(std::move(index), p);
  }
  if (atoms.empty()) throw ParseError("pmf file has no atoms");

  std::vector<Alphabet> vars;
  for (std::size_t v = 0; v < k; ++v) vars.emplace_back(names[v], tables[v].symbols());
  std::size_t total = 1;
  for (const auto& a : vars) total *= a.size();
  JointPMF shape(vars, std::vector<double>(total, 0.0));
  std::vector<double> mass(total, 0.0);
  std::vector<char> seen(total, 0);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const auto off = shape.offset(atoms[i].first);
    if (seen[off]) fail(lines[i + 1], "duplicate atom");
    seen[off] = 1;
    mass[off] = atoms[i].second;
  }
  return validate(JointPMF(std::move(vars), std::move(mass)));
}

JointPMF read_pmf_file(const std::filesystem::path& path) {
  auto in = open(path);
  return read_pmf(in);
}

void write_pmf(std::ostream& out, const JointPMF& pmf) {
  out << "pmf " << pmf.arity();
  for (const auto& v : pmf.variables()) out << ' ' << v.name();
  out << '\n';
  for (std::size_t off = 0; off < pmf.size(); ++off) {
    if (pmf.mass()[off] <= 0.0) continue;
    const auto index = pmf.unravel(off);
    for (std::size_t v = 0; v < index.size(); ++v) {
      if (v > 0) out << ' ';
      out << pmf.variable(v).symbol(index[v]);
    }
    out << '\t' << format_exact(pmf.mass()[off]) << '\n';
  }
}

FunctionSpec read_function(std::istream& in) {
  const auto lines = content_lines(in);
  if (lines.empty()) throw ParseError("empty function file");
  const auto header = split_ws(lines[0].text);
  if (header.size() != 2 || header[0] != "fn") fail(lines[0], "expected 'fn <name>'");
  SymbolTable xs, ys, zs;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> values;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto [fields, value] = split_value(lines[i]);
    if (fields.size() != 2) fail(lines[i], "expected '<x> <y> TAB <z>'");
    const auto key = std::make_pair(xs(fields[0]), ys(fields[1]));
    const auto z = zs(value);
    auto [it, fresh] = values.emplace(key, z);
    if (!fresh && it->second != z) fail(lines[i], "conflicting value for (" + fields[0] + ", " + fields[1] + ")");
  }
  const std::size_t nx = xs.symbols().size();
  const std::size_t ny = ys.symbols().size();
  if (nx == 0) throw ParseError("function file has no entries");
  std::vector<std::size_t> table(nx * ny);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      auto it = values.find({x, y});
      if (it == values.end()) {
        throw ParseError("function undefined at (" + xs.symbols()[x] + ", " + ys.symbols()[y] + ")");
      }
      table[x * ny + y] = it->second;
    }
  }
  return FunctionSpec(header[1], Alphabet("X", xs.symbols()), Alphabet("Y", ys.symbols()),
                      Alphabet("Z", zs.symbols()), std::move(table));
}

FunctionSpec read_function_file(const std::filesystem::path& path) {
  auto in = open(path);
  return read_function(in);
}

void write_function(std::ostream& out, const FunctionSpec& f) {
  out << "fn " << f.name() << '\n';
  for (std::size_t x = 0; x < f.x_alphabet().size(); ++x) {
    for (std::size_t y = 0; y < f.y_alphabet().size(); ++y) {
      out << f.x_alphabet().symbol(x) << ' ' << f.y_alphabet().symbol(y) << '\t'
          << f.z_alphabet().symbol(f(x, y)) << '\n';
    }
  }
}

ProtocolSpec read_protocol(std::istream& in) {
  const auto lines = content_lines(in);
  if (lines.empty()) throw ParseError("empty protocol file");
  ProtocolSpec p;
  std::optional<Alphabet> x, y;
  std::vector<const Line*> terminals;

  auto labelled = [](const Line& line, const std::vector<std::string>& f, std::size_t at,
                     const std::string& name) {
    const std::size_t n = parse_count(line, f[at]);
    if (n == 0) fail(line, "alphabet must be non-empty");
    if (f.size() == at + 1) return Alphabet::range(name, n);
    if (f.size() != at + 1 + n) fail(line, "expected " + f[at] + " labels");
    try {
      return Alphabet(name, std::vector<std::string>(f.begin() + static_cast<long>(at) + 1, f.end()));
    } catch (const Error& e) {
      fail(line, e.what());
    }
  };
  auto parse_prefix = [&](const Line& line, const std::vector<std::string>& f, std::size_t from,
                          std::size_t to) {
    Prefix prefix;
    if (to == from + 1 && f[from] == "-") return prefix;
    for (std::size_t i = from; i < to; ++i) {
      const std::size_t round = prefix.size();
      if (round >= p.rounds.size()) fail(line, "prefix longer than the declared rounds");
      auto idx = p.rounds[round].messages.index_of(f[i]);
      if (!idx) fail(line, "unknown message '" + f[i] + "' in round " + std::to_string(round + 1));
      prefix.push_back(*idx);
    }
    return prefix;
  };

  for (const auto& line : lines) {
    const auto f = split_ws(line.text);
    const auto& kw = f[0];
    if (kw == "protocol") {
      if (f.size() != 2) fail(line, "expected 'protocol <name>'");
      p.name = f[1];
    } else if (kw == "inputs") {
      if (f.size() < 3 || (f[1] != "X" && f[1] != "Y")) fail(line, "expected 'inputs X|Y <k> [labels...]'");
      (f[1] == "X" ? x : y) = labelled(line, f, 2, f[1]);
    } else if (kw == "round") {
      if (f.size() < 6 || f[2] != "sender" || f[4] != "messages") {
        fail(line, "expected 'round <i> sender <A|B> messages <m> [labels...]'");
      }
      if (parse_count(line, f[1]) != p.rounds.size() + 1) fail(line, "rounds must be numbered 1, 2, ...");
      if (f[3] != "A" && f[3] != "B") fail(line, "sender must be A or B");
      RoundKernel r;
      r.sender = f[3] == "A" ? Party::alice : Party::bob;
      r.messages = labelled(line, f, 5, "M" + f[1]);
      p.rounds.push_back(std::move(r));
    } else if (kw == "on") {
      if (p.rounds.empty()) fail(line, "kernel line before any round");
      if (!x || !y) fail(line, "kernel line before the inputs");
      std::size_t colon = 0;
      while (colon < f.size() && f[colon] != ":") ++colon;
      if (f.size() < 5 || f[2] != "prefix" || colon == f.size() || colon < 4) {
        fail(line, "expected 'on <input> prefix <msg...|-> : <msg>=<prob> ...'");
      }
      auto& round = p.rounds.back();
      const auto& inputs = round.sender == Party::alice ? *x : *y;
      auto input = inputs.index_of(f[1]);
      if (!input) fail(line, "unknown input symbol '" + f[1] + "'");
      Prefix prefix = parse_prefix(line, f, 3, colon);
      if (prefix.size() != p.rounds.size() - 1) {
        fail(line, "prefix must name the messages of all earlier rounds");
      }
      std::vector<double> dist(round.messages.size(), 0.0);
      for (std::size_t i = colon + 1; i < f.size(); ++i) {
        const auto eq = f[i].find('=');
        if (eq == std::string::npos) fail(line, "expected '<msg>=<prob>', got '" + f[i] + "'");
        auto m = round.messages.index_of(std::string_view(f[i]).substr(0, eq));
        if (!m) fail(line, "unknown message in '" + f[i] + "'");
        try {
          dist[*m] += parse_probability(std::string_view(f[i]).substr(eq + 1));
        } catch (const ParseError& e) {
          fail(line, e.what());
        }
      }
      if (!round.table.emplace(std::make_pair(*input, prefix), std::move(dist)).second) {
        fail(line, "duplicate kernel entry");
      }
    } else if (kw == "terminal") {
      if (f.size() < 3 || f[1] != "prefix") fail(line, "expected 'terminal prefix <msg...>'");
      terminals.push_back(&line);
    } else {
      fail(line, "unknown keyword '" + kw + "'");
    }
  }
  if (p.name.empty()) throw ParseError("missing 'protocol <name>' line");
  if (!x || !y) throw ParseError("missing 'inputs' lines");
  p.x = *x;
  p.y = *y;
  for (const auto* line : terminals) {
    const auto f = split_ws(line->text);
    p.terminal.insert(parse_prefix(*line, f, 2, f.size()));
  }
  check_structure(p);
  return p;
}

ProtocolSpec read_protocol_file(const std::filesystem::path& path) {
  auto in = open(path);
  return read_protocol(in);
}

void write_protocol(std::ostream& out, const ProtocolSpec& p) {
  auto labels = [&](const Alphabet& a) {
    out << ' ' << a.size();
    for (const auto& s : a.symbols()) out << ' ' << s;
  };
  auto prefix_text = [&](const Prefix& prefix) {
    if (prefix.empty()) return std::string("-");
    std::string s;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      if (i > 0) s += ' ';
      s += p.rounds[i].messages.symbol(prefix[i]);
    }
    return s;
  };
  out << "protocol " << p.name << '\n';
  out << "inputs X";
  labels(p.x);
  out << "\ninputs Y";
  labels(p.y);
  out << '\n';
  for (std::size_t i = 0; i < p.rounds.size(); ++i) {
    const auto& r = p.rounds[i];
    out << "round " << i + 1 << " sender " << (r.sender == Party::alice ? 'A' : 'B') << " messages";
    labels(r.messages);
    out << '\n';
    const auto& inputs = r.sender == Party::alice ? p.x : p.y;
    for (const auto& [key, dist] : r.table) {
      out << "on " << inputs.symbol(key.first) << " prefix " << prefix_text(key.second) << " :";
      for (std::size_t m = 0; m < dist.size(); ++m) {
        if (dist[m] != 0.0) out << ' ' << r.messages.symbol(m) << '=' << format_exact(dist[m]);
      }
      out << '\n';
    }
  }
  for (const auto& t : p.terminal) out << "terminal prefix " << prefix_text(t) << '\n';
}

void write_witness(std::ostream& out, const QAssignment& q) { write_pmf(out, q.to_pmf()); }

}  // namespace icb
