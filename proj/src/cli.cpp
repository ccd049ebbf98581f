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

#include "icbound/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "icbound/char_graph.hpp"
#include "icbound/error.hpp"
#include "icbound/ic_bounds.hpp"
#include "icbound/io.hpp"
#include "icbound/oracle.hpp"
#include "icbound/protocol.hpp"

namespace icb {

namespace {

enum class Mode { table, tsv };

// Ordered key/value output. Table mode appends an aligned copy.
class Report {
 public:
  void add(std::string key, std::string value) { rows_.emplace_back(std::move(key), std::move(value)); }
  void add(std::string key, double value) { add(std::move(key), format_bits(value)); }

  void print(std::ostream& out, Mode mode) const {
    for (const auto& [k, v] : rows_) out << k << '\t' << v << '\n';
    if (mode == Mode::tsv) return;
    std::size_t width = 0;
    for (const auto& row : rows_) width = std::max(width, row.first.size());
    out << '\n';
    for (const auto& [k, v] : rows_) out << std::left << std::setw(static_cast<int>(width) + 2) << k << v << '\n';
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

std::string hex(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string vertex_set(const Alphabet& a, const std::vector<std::size_t>& idx) {
  std::string s = "{";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i > 0) s += ',';
    s += a.symbol(idx[i]);
  }
  return s + "}";
}

JointPMF load_uv(const std::string& input, const std::string& function) {
  auto pmf = read_pmf_file(input);
  if (!function.empty()) return lift_to_uv(pmf, read_function_file(function));
  return pmf;
}

struct SearchFlags {
  std::uint64_t seed = 1;
  std::size_t restarts = 32;
  std::size_t workers = 1;

  void attach(CLI::App* app) {
    app->add_option("--seed", seed, "Master seed")->capture_default_str();
    app->add_option("--restarts", restarts, "Search restarts")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--workers", workers, "Parallel workers")->capture_default_str()->check(CLI::PositiveNumber);
  }
  SearchConfig config() const {
    SearchConfig c;
    c.seed = seed;
    c.restarts = restarts;
    c.workers = workers;
    return c;
  }
};

void add_report_fields(Report& r, const BoundReport& b) {
  r.add("ic_lower", b.ic_lower);
  r.add("route", to_string(b.route));
  r.add("sup_upper", b.sup_upper);
  if (b.sup_achieved) r.add("sup_achieved", *b.sup_achieved);
  if (auto g = b.sup_gap()) r.add("sup_gap", *g);
  if (b.ic_upper) r.add("ic_upper", *b.ic_upper);
  if (b.gap) r.add("gap", *b.gap);
  r.add("h_x_given_y", b.h_x_given_y);
  r.add("h_y_given_x", b.h_y_given_x);
  r.add("sup_kind", to_string(b.provenance.sup_kind));
  r.add("function", b.provenance.function);
  r.add("input_fingerprint", hex(b.provenance.input_fingerprint));
  r.add("uv_fingerprint", hex(b.provenance.uv_fingerprint));
  r.add("seed", std::to_string(b.provenance.seed));
  r.add("restarts", std::to_string(b.provenance.restarts));
}

// Cost of the built-in protocol matching k-ary equality, if there is one.
std::optional<Bits> eq_protocol_cost(int k) {
  const char* name = k == 3 ? "ternary_eq" : k == 4 ? "two_bit_eq_randomized" : nullptr;
  if (!name) return std::nullopt;
  return information_cost(transcript_distribution(builtin(name), uniform_inputs(k), eq_function(k)));
}

std::size_t eq_class_count(int k) {
  return maximal_bicliques(build_graph(lift_to_uv(uniform_inputs(k), eq_function(k)))).classes.size();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Information-complexity lower bounds via Wyner common information", "icbound"};
  app.require_subcommand(1);
  std::string mode_name = "table";
  app.add_option("--format", mode_name, "Output mode")->check(CLI::IsMember({"table", "tsv"}))->capture_default_str();

  std::string input, function, witness, name, spec;
  SearchFlags search;
  int k = 0;
  int k_max = 0;
  std::string checks;
  std::string sup_route = "relax";

  auto* bicliques = app.add_subcommand("bicliques", "List the maximal bicliques of a two-variable pmf");
  bicliques->add_option("--input", input, "pmf file")->required();
  bicliques->add_option("--function", function, "Lift an (X, Y) pmf through this function first");

  auto* sup = app.add_subcommand("sup", "The sup term for a (U, V) pmf");
  sup->require_subcommand(1);
  auto* sup_relax = sup->add_subcommand("relax", "Certified upper bound");
  auto* sup_search = sup->add_subcommand("search", "Witnessed lower bound");
  auto* sup_oracle = sup->add_subcommand("oracle", "Grid oracle for tiny inputs");
  for (auto* s : {sup_relax, sup_search, sup_oracle}) {
    s->add_option("--input", input, "pmf file")->required();
    s->add_option("--function", function, "Lift an (X, Y) pmf through this function first");
    s->add_option("--witness", witness, "Write the witness to this file");
  }
  search.attach(sup_search);

  auto* ic = app.add_subcommand("ic-bound", "Information-complexity lower bound");
  ic->require_subcommand(1);
  auto* ic_eq = ic->add_subcommand("eq", "k-ary equality on uniform inputs");
  ic_eq->add_option("--k", k, "Alphabet size")->required();
  auto* ic_dist = ic->add_subcommand("dist", "Independent inputs from a file");
  ic_dist->add_option("--input", input, "(X, Y) pmf file")->required();
  ic_dist->add_option("--function", function, "Function file")->required();
  ic_dist->add_option("--sup", sup_route, "Sup route")->check(CLI::IsMember({"relax", "search"}))->capture_default_str();
  search.attach(ic_dist);

  auto* protocol = app.add_subcommand("protocol", "Protocol analysis");
  protocol->require_subcommand(1);
  auto* cost = protocol->add_subcommand("cost", "Exact information cost");
  auto* by_name = cost->add_option("--name", name, "Built-in protocol");
  auto* by_spec = cost->add_option("--spec", spec, "Protocol file");
  by_name->excludes(by_spec);
  cost->add_option("--input", input, "(X, Y) pmf file (default: uniform)");
  cost->add_option("--function", function, "Function file (default for built-ins: equality)");
  cost->add_option("--checks", checks, "Verification residuals")->check(CLI::IsMember({"all"}));

  auto* report = app.add_subcommand("report", "Tables");
  report->require_subcommand(1);
  auto* report_eq = report->add_subcommand("eq", "The k-ary equality family");
  report_eq->add_option("--k-max", k_max, "Largest k")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  const Mode mode = mode_name == "tsv" ? Mode::tsv : Mode::table;

  try {
    Report r;
    if (bicliques->parsed()) {
      const auto dec = maximal_bicliques(build_graph(load_uv(input, function)));
      for (const auto& c : dec.classes) {
        out << "class " << c.index << " left=" << vertex_set(dec.graph.left(), c.left_set)
            << " right=" << vertex_set(dec.graph.right(), c.right_set) << " edges=" << c.edge_count() << '\n';
      }
      return 0;
    }
    if (sup->parsed()) {
      const auto uv = load_uv(input, function);
      const auto dec = maximal_bicliques(build_graph(uv));
      SupResult s;
      if (sup_relax->parsed()) {
        s = relaxed_sup_upper_bound(uv, dec);
      } else if (sup_search->parsed()) {
        s = achievability_search(uv, dec, search.config());
      } else {
        s = brute_force_oracle(uv);
      }
      r.add("classes", std::to_string(dec.classes.size()));
      r.add("sup_kind", to_string(s.kind));
      r.add("sup_value", s.value);
      r.add("marginal_residual", s.residuals.marginal);
      r.add("markov_residual", s.residuals.markov);
      if (sup_search->parsed()) {
        r.add("seed", std::to_string(s.seed));
        r.add("restarts", std::to_string(s.restarts));
      }
      if (!witness.empty()) {
        if (!s.witness) throw UncertifiedSup("this route produces no witness");
        std::ofstream w(witness);
        if (!w) throw ParseError("cannot write '" + witness + "'");
        write_witness(w, *s.witness);
      }
    } else if (ic_eq->parsed()) {
      auto b = ic_lower_bound_eq(k);
      if (auto c = eq_protocol_cost(k)) b = attach_upper_bound(b, *c);
      add_report_fields(r, b);
    } else if (ic_dist->parsed()) {
      const auto xy = read_pmf_file(input);
      const auto f = read_function_file(function);
      const auto uv = lift_to_uv(xy, f);
      const auto dec = maximal_bicliques(build_graph(uv));
      const auto relax = relaxed_sup_upper_bound(uv, dec);
      BoundReport b;
      if (sup_route == "search") {
        const auto found = achievability_search(uv, dec, search.config());
        b = ic_lower_bound(xy, f, close_sandwich(relax, found), found);
      } else {
        b = ic_lower_bound(xy, f, relax);
      }
      add_report_fields(r, b);
    } else if (cost->parsed()) {
      if (name.empty() == spec.empty()) throw CLI::RequiredError("exactly one of --name and --spec");
      const auto p = name.empty() ? read_protocol_file(spec) : builtin(name);
      std::optional<FunctionSpec> f;
      if (!function.empty()) {
        f = read_function_file(function);
      } else if (!name.empty()) {
        f = eq_function(static_cast<int>(p.x.size()));
      } else {
        throw CLI::RequiredError("--function (needed with --spec)");
      }
      const auto xy = input.empty() ? uniform_pmf({Alphabet("X", p.x.symbols()), Alphabet("Y", p.y.symbols())})
                                    : read_pmf_file(input);
      const auto td = transcript_distribution(p, xy, *f);
      const auto parts = cost_breakdown(td);
      const auto chain = hm_chain_check(td);
      r.add("protocol", p.name);
      r.add("rounds", std::to_string(p.rounds.size()));
      r.add("transcripts", std::to_string(td.joint.variable(3).size()));
      r.add("cost", parts.total());
      r.add("i_x_m_given_y", parts.x_given_y);
      r.add("i_y_m_given_x", parts.y_given_x);
      r.add("h_m", chain.h_m);
      if (!checks.empty()) {
        const auto markov = verify_round_markov(td);
        for (std::size_t i = 0; i < markov.size(); ++i) r.add("markov_round_" + std::to_string(i + 1), markov[i]);
        const auto mono = verify_monotonicity(td);
        for (std::size_t i = 0; i < mono.size(); ++i) r.add("i_xy_given_prefix_" + std::to_string(i), mono[i]);
        r.add("monotone", non_increasing(mono) ? "yes" : "no");
        const auto [hx, hy] = verify_correctness(td);
        r.add("h_z_given_xm", hx);
        r.add("h_z_given_ym", hy);
        try {
          r.add("appendix_chain", verify_appendix_chain(td));
        } catch (const PreconditionUnmet&) {
          r.add("appendix_chain", "precondition_unmet");
        }
        r.add("i_m_xy", chain.i_m_xy);
        r.add("i_xy", chain.i_xy);
        r.add("i_xy_given_m", chain.i_xy_given_m);
        r.add("chain_holds", chain.holds ? "yes" : "no");
      }
    } else if (report_eq->parsed()) {
      if (k_max < 2) throw BadK("--k-max must be at least 2");
      struct Row {
        int k;
        std::size_t classes;
        Bits sup, lower;
        std::optional<Bits> upper;
      };
      std::vector<Row> rows;
      for (int j = 2; j <= k_max; ++j) {
        const auto b = ic_lower_bound_eq(j);
        rows.push_back({j, eq_class_count(j), b.sup_upper, b.ic_lower, eq_protocol_cost(j)});
      }
      for (const auto& row : rows) {
        out << "k\t" << row.k << "\nclasses\t" << row.classes << "\nsup\t" << format_bits(row.sup)
            << "\nic_lower\t" << format_bits(row.lower) << '\n';
        if (row.upper) {
          out << "ic_upper\t" << format_bits(*row.upper) << "\ngap\t" << format_bits(*row.upper - row.lower) << '\n';
        }
      }
      if (mode == Mode::table) {
        out << '\n'
            << std::left << std::setw(4) << "k" << std::setw(9) << "classes" << std::setw(11) << "sup"
            << std::setw(11) << "ic_lower" << std::setw(11) << "ic_upper" << "gap\n";
        for (const auto& row : rows) {
          out << std::setw(4) << row.k << std::setw(9) << row.classes << std::setw(11) << format_bits(row.sup)
              << std::setw(11) << format_bits(row.lower) << std::setw(11)
              << (row.upper ? format_bits(*row.upper) : "-") << (row.upper ? format_bits(*row.upper - row.lower) : "-")
              << '\n';
        }
      }
      return 0;
    }
    r.print(out, mode);
    return 0;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace icb
