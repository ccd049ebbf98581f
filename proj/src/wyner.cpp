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

#include "icbound/wyner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <thread>

#include "icbound/error.hpp"
#include "icbound/function.hpp"
#include "icbound/product.hpp"

namespace icb {

double QSymbol::weight() const {
  double w = 0.0;
  for (double m : mass) w += m;
  return w;
}

QAssignment::QAssignment(ClassDecomposition decomposition, std::vector<QSymbol> symbols)
    : decomposition_(std::move(decomposition)), symbols_(std::move(symbols)) {
  for (const auto& s : symbols_) {
    if (s.class_index >= decomposition_.classes.size()) {
      throw ClassMismatch("symbol refers to class " + std::to_string(s.class_index) +
                          " outside the decomposition");
    }
    if (s.mass.size() != decomposition_.classes[s.class_index].edge_count()) {
      throw ClassMismatch("symbol mass does not match its class size");
    }
    for (double m : s.mass) {
      if (!(m >= 0.0)) throw NotAProbability("negative mass in auxiliary assignment");
    }
  }
}

std::vector<double> QAssignment::uv_marginal() const {
  const auto& g = decomposition_.graph;
  std::vector<double> out(g.left().size() * g.right().size(), 0.0);
  for (const auto& s : symbols_) {
    const auto& c = class_of(s);
    for (std::size_t i = 0; i < c.left_set.size(); ++i) {
      for (std::size_t j = 0; j < c.right_set.size(); ++j) {
        out[c.left_set[i] * g.right().size() + c.right_set[j]] += s.mass[i * c.right_set.size() + j];
      }
    }
  }
  return out;
}

JointPMF QAssignment::to_pmf() const {
  const auto& g = decomposition_.graph;
  const std::size_t nu = g.left().size();
  const std::size_t nv = g.right().size();
  std::vector<std::string> names;
  std::vector<double> mass(symbols_.size() * nu * nv, 0.0);
  for (std::size_t q = 0; q < symbols_.size(); ++q) {
    names.push_back("q" + std::to_string(q));
    const auto& c = class_of(symbols_[q]);
    for (std::size_t i = 0; i < c.left_set.size(); ++i) {
      for (std::size_t j = 0; j < c.right_set.size(); ++j) {
        mass[(q * nu + c.left_set[i]) * nv + c.right_set[j]] =
            symbols_[q].mass[i * c.right_set.size() + j];
      }
    }
  }
  if (names.empty()) throw InfeasibleAssignment("assignment has no symbols");
  return JointPMF({Alphabet("Q", std::move(names)), Alphabet(g.left().name(), g.left().symbols()),
                   Alphabet(g.right().name(), g.right().symbols())},
                  std::move(mass));
}

std::string to_string(SupKind kind) {
  switch (kind) {
    case SupKind::certified_upper:
      return "certified_upper";
    case SupKind::achieved_lower:
      return "achieved_lower";
    case SupKind::exact:
      return "exact";
  }
  return "unknown";
}

namespace {

struct SymbolMarginals {
  std::vector<double> rows;
  std::vector<double> cols;
  double weight = 0.0;
};

SymbolMarginals marginals_of(const BicliqueClass& c, std::span<const double> mass) {
  SymbolMarginals s{std::vector<double>(c.left_set.size(), 0.0),
                    std::vector<double>(c.right_set.size(), 0.0), 0.0};
  for (std::size_t i = 0; i < c.left_set.size(); ++i) {
    for (std::size_t j = 0; j < c.right_set.size(); ++j) {
      const double m = mass[i * c.right_set.size() + j];
      s.rows[i] += m;
      s.cols[j] += m;
      s.weight += m;
    }
  }
  return s;
}

// w * H(a / w) for an unnormalized vector a with total w.
double weighted_entropy(const std::vector<double>& a, double w) {
  double h = 0.0;
  for (double x : a) {
    if (x > 0.0) h -= x * std::log2(x / w);
  }
  return h;
}

double marginal_residual(const QAssignment& q, std::span<const double> target) {
  const auto got = q.uv_marginal();
  double r = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) r = std::max(r, std::abs(got[i] - target[i]));
  return r;
}

std::vector<double> graph_masses(const CharGraph& g) {
  std::vector<double> out(g.left().size() * g.right().size());
  for (std::size_t u = 0; u < g.left().size(); ++u) {
    for (std::size_t v = 0; v < g.right().size(); ++v) out[u * g.right().size() + v] = g.mass(u, v);
  }
  return out;
}

double binomial(int n, int r) {
  if (r < 0 || r > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= r; ++i) out = out * static_cast<double>(n - r + i) / i;
  return std::round(out);
}

}  // namespace

std::pair<Bits, Bits> conditional_entropies(const QAssignment& q) {
  double hu = 0.0;
  double hv = 0.0;
  for (const auto& s : q.symbols()) {
    const auto m = marginals_of(q.class_of(s), s.mass);
    if (m.weight <= 0.0) continue;
    hu += weighted_entropy(m.rows, m.weight);
    hv += weighted_entropy(m.cols, m.weight);
  }
  return {hu, hv};
}

Bits objective(const QAssignment& q) {
  const double r = marginal_residual(q, graph_masses(q.decomposition().graph));
  if (r > 1e-6) {
    throw InfeasibleAssignment("marginal residual " + std::to_string(r) + " exceeds 1e-6");
  }
  const auto [hu, hv] = conditional_entropies(q);
  return hu + hv;
}

Bits symbol_markov_residual(const QAssignment& q, std::size_t symbol) {
  const auto& s = q.symbols().at(symbol);
  const auto& c = q.class_of(s);
  const auto m = marginals_of(c, s.mass);
  if (m.weight <= 0.0) return 0.0;
  double info = 0.0;
  for (std::size_t i = 0; i < c.left_set.size(); ++i) {
    for (std::size_t j = 0; j < c.right_set.size(); ++j) {
      const double x = s.mass[i * c.right_set.size() + j];
      if (x > 0.0) info += x * std::log2(x * m.weight / (m.rows[i] * m.cols[j]));
    }
  }
  return std::max(0.0, info / m.weight);
}

ResidualReport verify(const QAssignment& q, const JointPMF& pmf) {
  const auto& g = q.decomposition().graph;
  if (pmf.arity() != 2 || pmf.variable(0).size() != g.left().size() ||
      pmf.variable(1).size() != g.right().size()) {
    throw InconsistentInputs("assignment and pmf have different alphabets");
  }
  ResidualReport r;
  r.marginal_residual = marginal_residual(q, pmf.mass());
  double total = 0.0;
  for (std::size_t i = 0; i < q.symbols().size(); ++i) {
    r.markov_residual = std::max(r.markov_residual, symbol_markov_residual(q, i));
    total += q.symbols()[i].weight();
  }
  r.mass_error = std::abs(total - 1.0);
  const double worst = std::max({r.marginal_residual, r.markov_residual, r.mass_error});
  r.valid_strict = worst <= 1e-9;
  r.valid_relaxed = worst <= 1e-6;
  return r;
}

QAssignment merge_same_class(const QAssignment& q, std::size_t first, std::size_t second) {
  const auto& symbols = q.symbols();
  if (first >= symbols.size() || second >= symbols.size()) {
    throw ClassMismatch("symbol index out of range");
  }
  if (first == second) throw ClassMismatch("cannot merge a symbol with itself");
  if (symbols[first].class_index != symbols[second].class_index) {
    throw ClassMismatch("symbols " + std::to_string(first) + " and " + std::to_string(second) +
                        " belong to different classes");
  }
  const auto keep = std::min(first, second);
  const auto drop = std::max(first, second);
  std::vector<QSymbol> out;
  out.reserve(symbols.size() - 1);
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i == drop) continue;
    out.push_back(symbols[i]);
    if (i == keep) {
      for (std::size_t e = 0; e < out.back().mass.size(); ++e) {
        out.back().mass[e] += symbols[drop].mass[e];
      }
    }
  }
  return QAssignment(q.decomposition(), std::move(out));
}

SupResult relaxed_sup_upper_bound(const JointPMF& pmf, const ClassDecomposition& dec) {
  const auto& g = dec.graph;
  double bound = 0.0;
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    double best = -1.0;
    for (auto c : dec.membership[e]) {
      const auto& cls = dec.classes[c];
      const double cap = std::log2(static_cast<double>(cls.left_set.size())) +
                         std::log2(static_cast<double>(cls.right_set.size()));
      if (cap > best) best = cap;
    }
    bound += g.mass(g.edges()[e].u, g.edges()[e].v) * best;
  }
  SupResult r;
  r.value = bound;
  r.kind = SupKind::certified_upper;
  r.input_fingerprint = fingerprint(pmf);
  return r;
}

// ---------------------------------------------------------------------------
// Penalized ascent over per-edge class conditionals p(q | u, v).

namespace {

constexpr int kSingleton = -1;

struct EdgeOption {
  int cls = kSingleton;
  std::size_t local = 0;
};

struct Problem {
  const ClassDecomposition* dec = nullptr;
  std::vector<double> p;                         // per edge
  std::vector<std::vector<EdgeOption>> options;  // per edge, singleton last
};

Problem make_problem(const ClassDecomposition& dec) {
  Problem pr;
  pr.dec = &dec;
  const auto& g = dec.graph;
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const auto& edge = g.edges()[e];
    pr.p.push_back(g.mass(edge.u, edge.v));
    std::vector<EdgeOption> opts;
    for (auto c : dec.membership[e]) {
      opts.push_back({static_cast<int>(c), dec.classes[c].local_position(edge)});
    }
    opts.push_back({kSingleton, 0});
    pr.options.push_back(std::move(opts));
  }
  return pr;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic uniform(0,1) stream independent of the standard library's
// distribution implementations.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : state_(seed) {}
  double uniform() {
    state_ = splitmix64(state_);
    return (static_cast<double>(state_ >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

void project_to_simplex(std::vector<double>& x) {
  std::vector<double> s(x);
  std::sort(s.begin(), s.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    cumulative += s[i];
    const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (s[i] - t > 0.0) theta = t;
  }
  for (double& v : x) v = std::max(0.0, v - theta);
}

struct ClassState {
  std::vector<double> mass;
  std::vector<double> rows;
  std::vector<double> cols;
  double weight = 0.0;
};

void accumulate(const Problem& pr, const std::vector<std::vector<double>>& theta,
                std::vector<ClassState>& state) {
  const auto& classes = pr.dec->classes;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    std::fill(state[c].mass.begin(), state[c].mass.end(), 0.0);
  }
  for (std::size_t e = 0; e < pr.p.size(); ++e) {
    for (std::size_t k = 0; k < pr.options[e].size(); ++k) {
      const auto& o = pr.options[e][k];
      if (o.cls != kSingleton) state[o.cls].mass[o.local] += pr.p[e] * theta[e][k];
    }
  }
  for (std::size_t c = 0; c < classes.size(); ++c) {
    auto& s = state[c];
    const std::size_t nr = classes[c].right_set.size();
    std::fill(s.rows.begin(), s.rows.end(), 0.0);
    std::fill(s.cols.begin(), s.cols.end(), 0.0);
    s.weight = 0.0;
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
      for (std::size_t j = 0; j < nr; ++j) {
        const double m = s.mass[i * nr + j];
        s.rows[i] += m;
        s.cols[j] += m;
        s.weight += m;
      }
    }
  }
}

// Product-of-marginals directions of the penalized solution.
std::vector<ProductDirection> marginal_directions(const Problem& pr,
                                                 const std::vector<ClassState>& state) {
  const auto& dec = *pr.dec;
  std::vector<ProductDirection> dirs;
  for (std::size_t c = 0; c < dec.classes.size(); ++c) {
    if (dec.classes[c].edge_count() < 2) continue;
    dirs.push_back({c, state[c].rows, state[c].cols});
  }
  return dirs;
}

std::vector<ProductDirection> random_directions(const Problem& pr, Stream& rng) {
  const auto& dec = *pr.dec;
  std::vector<ProductDirection> dirs;
  for (std::size_t c = 0; c < dec.classes.size(); ++c) {
    const auto& cls = dec.classes[c];
    if (cls.edge_count() < 2) continue;
    ProductDirection d{c, std::vector<double>(cls.left_set.size()),
                       std::vector<double>(cls.right_set.size())};
    for (double& x : d.alpha) x = -std::log(rng.uniform());
    for (double& x : d.beta) x = -std::log(rng.uniform());
    dirs.push_back(std::move(d));
  }
  return dirs;
}

// Mirror ascent on product directions against the log-barrier smoothed
// weight fit, for a decreasing sequence of barrier weights. The gradient
// with respect to a direction follows from the smoothed edge prices. The
// final weights come from the exact packing LP, so the result is exactly
// Markov and exactly feasible.
double polish(const Problem& pr, std::vector<ProductDirection>& dirs, std::size_t first_stage,
              std::size_t iterations) {
  const auto& dec = *pr.dec;
  const auto& g = dec.graph;
  constexpr double kFloor = 1e-12;
  constexpr double kTaus[] = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7};
  for (auto& d : dirs) {
    for (auto* v : {&d.alpha, &d.beta}) {
      double sum = 0.0;
      for (double& x : *v) sum += (x = std::max(x, kFloor));
      for (double& x : *v) x /= sum;
    }
  }

  const std::size_t per_stage =
      std::max<std::size_t>(1, iterations / (std::size(kTaus) - first_stage));
  std::vector<ProductDirection> trial;
  ProductFit fit;
  for (std::size_t stage = first_stage; stage < std::size(kTaus); ++stage) {
    const double tau = kTaus[stage];
    fit = smoothed_fit(dec, dirs, tau, fit.weights);
    double eta = 0.5;
    for (std::size_t it = 0; it < per_stage && eta > 1e-12; ++it) {
      trial = dirs;
      for (auto& d : trial) {
        const auto& cls = dec.classes[d.class_index];
        auto price = [&](std::size_t i, std::size_t j) {
          return fit.edge_prices[g.edge_index(cls.left_set[i], cls.right_set[j])];
        };
        std::vector<double> ga(d.alpha.size());
        std::vector<double> gb(d.beta.size());
        for (std::size_t i = 0; i < ga.size(); ++i) {
          ga[i] = -std::log2(d.alpha[i]);
          for (std::size_t j = 0; j < gb.size(); ++j) ga[i] -= price(i, j) * d.beta[j];
        }
        for (std::size_t j = 0; j < gb.size(); ++j) {
          gb[j] = -std::log2(d.beta[j]);
          for (std::size_t i = 0; i < ga.size(); ++i) gb[j] -= price(i, j) * d.alpha[i];
        }
        auto step = [&](std::vector<double>& v, const std::vector<double>& grad) {
          const double top = *std::max_element(grad.begin(), grad.end());
          double sum = 0.0;
          for (std::size_t i = 0; i < v.size(); ++i) sum += (v[i] *= std::exp2(eta * (grad[i] - top)));
          for (double& x : v) x = std::max(x / sum, kFloor);
        };
        step(d.alpha, ga);
        step(d.beta, gb);
      }
      auto next = smoothed_fit(dec, trial, tau, fit.weights);
      if (next.value > fit.value) {
        dirs.swap(trial);
        fit = std::move(next);
        eta = std::min(eta * 1.5, 8.0);
      } else {
        eta *= 0.5;
      }
    }
  }
  return fit_weights(dec, dirs).value;
}

struct RestartOutcome {
  double value = -1.0;
  std::vector<ProductDirection> dirs;
};

RestartOutcome run_restart(const Problem& pr, const SearchConfig& cfg, std::size_t restart) {
  const auto& classes = pr.dec->classes;
  std::vector<ClassState> state(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    state[c].mass.assign(classes[c].edge_count(), 0.0);
    state[c].rows.assign(classes[c].left_set.size(), 0.0);
    state[c].cols.assign(classes[c].right_set.size(), 0.0);
  }

  std::vector<std::vector<double>> theta(pr.p.size());
  Stream rng(restart_seed(cfg.seed, restart));
  for (std::size_t e = 0; e < pr.p.size(); ++e) {
    auto& t = theta[e];
    t.assign(pr.options[e].size(), 1.0);
    if (restart > 0) {
      for (double& x : t) x = -std::log(rng.uniform());
    }
    double sum = 0.0;
    for (double x : t) sum += x;
    for (double& x : t) x /= sum;
  }

  constexpr double kFloor = 1e-15;
  constexpr double kClip = 20.0;
  std::vector<double> next;
  for (double lambda : cfg.penalties) {
    for (std::size_t it = 0; it < cfg.iterations; ++it) {
      accumulate(pr, theta, state);
      double moved = 0.0;
      for (std::size_t e = 0; e < pr.p.size(); ++e) {
        next = theta[e];
        for (std::size_t k = 0; k < next.size(); ++k) {
          const auto& o = pr.options[e][k];
          if (o.cls == kSingleton) continue;
          const auto& s = state[o.cls];
          if (s.weight <= 0.0) continue;
          const std::size_t nr = s.cols.size();
          const double a = std::max(s.rows[o.local / nr], kFloor);
          const double b = std::max(s.cols[o.local % nr], kFloor);
          const double m = std::max(s.mass[o.local], kFloor);
          const double w = s.weight;
          const double grad = std::log2(w / a) + std::log2(w / b) - lambda * std::log2(m * w / (a * b));
          next[k] += cfg.step * std::clamp(grad / (1.0 + lambda), -kClip, kClip);
        }
        project_to_simplex(next);
        for (std::size_t k = 0; k < next.size(); ++k) {
          moved = std::max(moved, std::abs(next[k] - theta[e][k]));
        }
        theta[e].swap(next);
      }
      if (moved < 1e-15) break;
    }
  }
  accumulate(pr, theta, state);

  // A second, unpenalized start from random directions.
  auto a = marginal_directions(pr, state);
  auto b = random_directions(pr, rng);
  const double va = polish(pr, a, 0, cfg.polish_iterations);
  const double vb = polish(pr, b, 0, cfg.polish_iterations);
  RestartOutcome out;
  out.value = vb > va ? vb : va;
  out.dirs = vb > va ? std::move(b) : std::move(a);
  return out;
}

}  // namespace

std::uint64_t restart_seed(std::uint64_t master, std::size_t restart) {
  return splitmix64(splitmix64(master) ^ (0xd1b54a32d192ed03ULL * (restart + 1)));
}

SupResult achievability_search(const JointPMF& pmf, const ClassDecomposition& dec,
                               const SearchConfig& config) {
  if (config.restarts == 0) throw std::invalid_argument("search needs at least one restart");
  const Problem pr = make_problem(dec);

  std::size_t allowed = config.restarts;
  const std::size_t per_restart = std::max<std::size_t>(1, config.iterations * config.penalties.size());
  if (config.iteration_budget > 0) {
    allowed = std::min(allowed, config.iteration_budget / per_restart);
  }

  std::vector<RestartOutcome> outcomes(allowed);
  const std::size_t workers = std::clamp<std::size_t>(config.workers, 1, std::max<std::size_t>(1, allowed));
  if (workers == 1) {
    for (std::size_t r = 0; r < allowed; ++r) outcomes[r] = run_restart(pr, config, r);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t r = w; r < allowed; r += workers) outcomes[r] = run_restart(pr, config, r);
      });
    }
    for (auto& t : pool) t.join();
  }

  // The two best restarts (ties to the lower index) get a long finishing
  // polish at the smallest barrier weights.
  std::vector<std::size_t> order(allowed);
  for (std::size_t r = 0; r < allowed; ++r) order[r] = r;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return outcomes[a].value > outcomes[b].value;
  });
  std::vector<QSymbol> symbols;
  if (allowed > 0) {
    std::vector<ProductDirection> best;
    double best_value = -1.0;
    for (std::size_t i = 0; i < std::min<std::size_t>(2, allowed); ++i) {
      auto dirs = outcomes[order[i]].dirs;
      const double v = polish(pr, dirs, 2, config.finishing_iterations);
      if (v > best_value) {
        best_value = v;
        best = std::move(dirs);
      }
    }
    symbols = product_symbols(dec, best, fit_weights(dec, best).weights);
  } else {
    // Nothing ran: fall back to Q = (U, V), which is always feasible.
    const auto& g = dec.graph;
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
      const auto c = dec.membership[e].front();
      QSymbol s{c, std::vector<double>(dec.classes[c].edge_count(), 0.0)};
      s.mass[dec.classes[c].local_position(g.edges()[e])] = pr.p[e];
      symbols.push_back(std::move(s));
    }
  }

  QAssignment witness(dec, std::move(symbols));
  const auto report = verify(witness, pmf);
  SupResult r;
  r.value = objective(witness);
  r.kind = SupKind::achieved_lower;
  r.residuals = {report.marginal_residual, report.markov_residual};
  r.witness = std::move(witness);
  r.budget_exhausted = allowed < config.restarts;
  r.input_fingerprint = fingerprint(pmf);
  r.seed = config.seed;
  r.restarts = allowed;
  return r;
}

// ---------------------------------------------------------------------------

Bits eq_sup_closed_form(int k) {
  if (k < 2) throw BadK("k must be at least 2, got " + std::to_string(k));
  const double kd = k;
  if (k % 2 == 0) return 2.0 * (1.0 - 1.0 / kd) * std::log2(kd / 2.0);
  return (1.0 - 1.0 / kd) * std::log2((kd - 1.0) * (kd + 1.0) / 4.0);
}

QAssignment eq_optimal_q(int k) {
  if (k < 2) throw BadK("k must be at least 2, got " + std::to_string(k));
  const auto lifted = lift_to_uv_detailed(uniform_inputs(k), eq_function(k));
  auto dec = maximal_bicliques(build_graph(lifted.uv));
  const double k2 = static_cast<double>(k) * k;
  const std::size_t balanced = k % 2 == 0 ? k / 2 : (k + 1) / 2;
  const double balanced_mass = 1.0 / (k2 * binomial(k - 2, static_cast<int>(balanced) - 1));

  std::vector<QSymbol> symbols;
  for (const auto& c : dec.classes) {
    const bool z_one = lifted.u_pairs[c.left_set.front()].second == 1;
    if (z_one) {
      symbols.push_back({c.index, std::vector<double>(c.edge_count(), 1.0 / k2)});
    } else if (c.left_set.size() == balanced) {
      symbols.push_back({c.index, std::vector<double>(c.edge_count(), balanced_mass)});
    }
  }
  return QAssignment(std::move(dec), std::move(symbols));
}

Bits wyner_tension(const JointPMF& pmf, const SupResult& sup) {
  if (sup.input_fingerprint != 0 && sup.input_fingerprint != fingerprint(pmf)) {
    throw InconsistentInputs("sup was computed from a different distribution");
  }
  const auto& u = pmf.variable(0).name();
  const auto& v = pmf.variable(1).name();
  const double t = conditional_entropy(pmf, {u}, {v}) + conditional_entropy(pmf, {v}, {u}) - sup.value;
  switch (sup.kind) {
    case SupKind::certified_upper:
      return std::max(0.0, t);
    case SupKind::achieved_lower:
      return clamp_slack(t);
    case SupKind::exact:
      if (t < -tol::kSlack) {
        throw InconsistentInputs("exact sup exceeds H(U|V) + H(V|U)");
      }
      return std::max(0.0, t);
  }
  return t;
}

std::uint64_t fingerprint(const JointPMF& pmf) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const void* data, std::size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& var : pmf.variables()) {
    feed(var.name().data(), var.name().size());
    feed("\x1f", 1);
    for (const auto& s : var.symbols()) {
      feed(s.data(), s.size());
      feed("\x1e", 1);
    }
  }
  for (double m : pmf.mass()) {
    const auto bits = std::bit_cast<std::uint64_t>(m);
    feed(&bits, sizeof bits);
  }
  return h == 0 ? 1 : h;
}

}  // namespace icb
