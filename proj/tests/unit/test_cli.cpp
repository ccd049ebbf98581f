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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "icbound/cli.hpp"
#include "icbound/function.hpp"
#include "icbound/io.hpp"

using namespace icb;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    if (l == line) return true;
  }
  return false;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "icbound_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string write_uv(int k) {
  const auto path = scratch("eq" + std::to_string(k) + "_uv.pmf");
  std::ofstream out(path);
  write_pmf(out, lift_to_uv(uniform_inputs(k), eq_function(k)));
  return path.string();
}

}  // namespace

TEST_CASE("ic-bound eq") {
  const auto r = cli({"ic-bound", "eq", "--k", "3"});
  CHECK(r.status == 0);
  CHECK(has_line(r.out, "ic_lower\t2.503258"));
  CHECK(has_line(r.out, "ic_upper\t2.503258"));
  CHECK(has_line(r.out, "gap\t0.000000"));
}

TEST_CASE("report eq") {
  const auto r = cli({"--format", "tsv", "report", "eq", "--k-max", "4"});
  CHECK(r.status == 0);
  const auto at = r.out.find("k\t4\n");
  REQUIRE(at != std::string::npos);
  const auto row = r.out.substr(at);
  CHECK(has_line(row, "classes\t18"));
  CHECK(has_line(row, "sup\t1.500000"));
  CHECK(has_line(row, "ic_lower\t2.500000"));
  CHECK(has_line(row, "ic_upper\t2.750000"));
  for (char c : r.out) CHECK(c != ' ');
}

TEST_CASE("sup relax") {
  const auto r = cli({"sup", "relax", "--input", write_uv(3)});
  CHECK(r.status == 0);
  CHECK(has_line(r.out, "sup_value\t0.666667"));
  CHECK(has_line(r.out, "sup_kind\tcertified_upper"));
}

TEST_CASE("sup search writes a witness") {
  const auto w = scratch("witness.pmf").string();
  const auto r = cli({"sup", "search", "--input", write_uv(3), "--restarts", "4", "--witness", w});
  CHECK(r.status == 0);
  CHECK(has_line(r.out, "sup_value\t0.666667"));
  CHECK(has_line(r.out, "sup_kind\tachieved_lower"));
  std::ifstream in(w);
  std::string header;
  std::getline(in, header);
  CHECK(header == "pmf 3 Q U V");
}

TEST_CASE("bicliques") {
  const auto r = cli({"bicliques", "--input", write_uv(3)});
  CHECK(r.status == 0);
  std::size_t lines = 0;
  std::istringstream in(r.out);
  for (std::string l; std::getline(in, l);) {
    CHECK(l.rfind("class ", 0) == 0u);
    ++lines;
  }
  CHECK(lines == 9u);
  CHECK(r.out.find("class 0 left={(") == 0u);
}

TEST_CASE("protocol cost") {
  const auto t = cli({"protocol", "cost", "--name", "ternary_eq"});
  CHECK(t.status == 0);
  CHECK(has_line(t.out, "cost\t2.503258"));
  const auto f = cli({"--format", "tsv", "protocol", "cost", "--name", "two_bit_eq_randomized", "--checks", "all"});
  CHECK(f.status == 0);
  CHECK(has_line(f.out, "cost\t2.750000"));
  CHECK(has_line(f.out, "i_x_m_given_y\t1.750000"));
  CHECK(has_line(f.out, "i_y_m_given_x\t1.000000"));
  CHECK(has_line(f.out, "monotone\tyes"));
  CHECK(has_line(f.out, "appendix_chain\t0.000000"));
  CHECK(has_line(f.out, "chain_holds\tyes"));
}

TEST_CASE("protocol cost from a file") {
  const auto spec = scratch("ternary.protocol");
  {
    std::ofstream out(spec);
    write_protocol(out, builtin("ternary_eq"));
  }
  const auto fn = scratch("eq3.fn");
  {
    std::ofstream out(fn);
    write_function(out, eq_function(3));
  }
  const auto r = cli({"protocol", "cost", "--spec", spec.string(), "--function", fn.string()});
  CHECK(r.status == 0);
  CHECK(has_line(r.out, "cost\t2.503258"));
  CHECK(cli({"protocol", "cost", "--spec", spec.string()}).status == 1);
}

TEST_CASE("ic-bound dist") {
  const auto in = scratch("u3.pmf");
  {
    std::ofstream out(in);
    write_pmf(out, uniform_inputs(3));
  }
  const auto fn = scratch("eq3b.fn");
  {
    std::ofstream out(fn);
    write_function(out, eq_function(3));
  }
  const auto r = cli({"ic-bound", "dist", "--input", in.string(), "--function", fn.string()});
  CHECK(r.status == 0);
  CHECK(has_line(r.out, "ic_lower\t2.503258"));
  CHECK(has_line(r.out, "route\trelaxation"));
  const auto s = cli({"ic-bound", "dist", "--input", in.string(), "--function", fn.string(), "--sup", "search",
                      "--restarts", "4"});
  CHECK(s.status == 0);
  CHECK(has_line(s.out, "route\tsearch_witnessed"));
  CHECK(has_line(s.out, "sup_kind\texact"));
}

TEST_CASE("exit codes") {
  CHECK(cli({}).status == 1);
  CHECK(cli({"frobnicate"}).status == 1);
  CHECK(cli({"ic-bound", "eq"}).status == 1);
  CHECK(cli({"ic-bound", "eq", "--k", "x"}).status == 1);
  CHECK(cli({"sup", "relax", "--input", "/nonexistent.pmf"}).status == 1);
  CHECK(cli({"ic-bound", "eq", "--k", "1"}).status == 2);
  CHECK(cli({"protocol", "cost", "--name", "nope"}).status == 2);
  CHECK(cli({"sup", "oracle", "--input", write_uv(4)}).status == 2);
  CHECK(cli({"--help"}).status == 0);
}

TEST_CASE("dependent inputs are refused") {
  const auto in = scratch("same.pmf");
  {
    std::ofstream out(in);
    out << "pmf 2 X Y\n0 0\t0.5\n1 1\t0.5\n";
  }
  const auto fn = scratch("eq2.fn");
  {
    std::ofstream out(fn);
    write_function(out, eq_function(2));
  }
  CHECK(cli({"ic-bound", "dist", "--input", in.string(), "--function", fn.string()}).status == 2);
}

TEST_CASE("table mode adds an aligned copy") {
  const auto r = cli({"ic-bound", "eq", "--k", "4"});
  CHECK(has_line(r.out, "ic_lower           2.500000"));
}
