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

#include "icbound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "icbound/error.hpp"
#include "icbound/product.hpp"

namespace icb {

namespace {

// A direction on a simplex of `parts` coordinates, as integer counts over a
// common denominator.
using Composition = std::vector<long>;

void enumerate_compositions(long total, std::size_t parts, Composition& cur,
                            std::vector<Composition>& out) {
  if (cur.size() + 1 == parts) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (long v = 0; v <= total; ++v) {
    cur.push_back(v);
    enumerate_compositions(total - v, parts, cur, out);
    cur.pop_back();
  }
}

class OracleSolver {
 public:
  OracleSolver(const ClassDecomposition& dec, const OracleConfig& cfg) : dec_(dec), cfg_(cfg) {
    for (const auto& c : dec.classes) {
      if (c.edge_count() > 1) active_.push_back(c.index);
    }
  }

  struct State {
    long denom = 1;
    std::vector<Composition> alpha;
    std::vector<Composition> beta;
    double value = -1.0;
  };

  std::vector<ProductDirection> directions(const State& s) const {
    std::vector<ProductDirection> out;
    const double d = static_cast<double>(s.denom);
    for (std::size_t k = 0; k < active_.size(); ++k) {
      ProductDirection p{active_[k], {}, {}};
      for (long v : s.alpha[k]) p.alpha.push_back(static_cast<double>(v) / d);
      for (long v : s.beta[k]) p.beta.push_back(static_cast<double>(v) / d);
      out.push_back(std::move(p));
    }
    return out;
  }

  double evaluate(const State& s) const { return fit_weights(dec_, directions(s)).value; }

  State uniform_start() const {
    State s;
    s.denom = cfg_.grid;
    for (auto idx : active_) {
      const auto& cls = dec_.classes[idx];
      s.alpha.push_back(spread(cls.left_set.size(), s.denom));
      s.beta.push_back(spread(cls.right_set.size(), s.denom));
    }
    return s;
  }

  State random_start(std::uint64_t& rng) const {
    State s;
    s.denom = cfg_.grid;
    auto draw = [&](std::size_t parts) {
      Composition c(parts, 0);
      for (long unit = 0; unit < s.denom; ++unit) {
        rng = rng * 6364136223846793005ULL + 1442695040888963407ULL;
        c[(rng >> 33) % parts] += 1;
      }
      return c;
    };
    for (auto idx : active_) {
      s.alpha.push_back(draw(dec_.classes[idx].left_set.size()));
      s.beta.push_back(draw(dec_.classes[idx].right_set.size()));
    }
    return s;
  }

  // Block sweeps: each class's (alpha, beta) pair is gridded jointly, since
  // the two directions are coupled through the class's min-ratio weight.
  void grid_sweeps(State& s) const {
    s.value = evaluate(s);
    std::vector<std::vector<std::pair<Composition, Composition>>> grids(active_.size());
    for (std::size_t k = 0; k < active_.size(); ++k) grids[k] = joint_grid(k, s.denom);
    for (std::size_t sweep = 0; sweep < cfg_.max_sweeps; ++sweep) {
      bool improved = false;
      for (std::size_t k = 0; k < active_.size(); ++k) {
        improved |= try_candidates(s, k, grids[k], 1e-14);
      }
      if (!improved) break;
    }
  }

  // Halve the grid step and search the +-2 step neighbourhood of each class.
  void refine(State& s) const {
    for (int level = 0; level < cfg_.refine_levels; ++level) {
      s.denom *= 2;
      for (auto& a : s.alpha) for (auto& x : a) x *= 2;
      for (auto& b : s.beta) for (auto& x : b) x *= 2;
      for (std::size_t sweep = 0; sweep < cfg_.max_sweeps; ++sweep) {
        bool improved = false;
        for (std::size_t k = 0; k < active_.size(); ++k) {
          auto alphas = neighbours(s.alpha[k]);
          auto betas = neighbours(s.beta[k]);
          alphas.push_back(s.alpha[k]);
          betas.push_back(s.beta[k]);
          std::vector<std::pair<Composition, Composition>> cands;
          for (const auto& a : alphas) {
            for (const auto& b : betas) cands.emplace_back(a, b);
          }
          improved |= try_candidates(s, k, cands, 1e-15);
        }
        if (!improved) break;
      }
    }
  }

  // Quasi-Newton (BFGS) ascent in softmax logits against the log-barrier
  // smoothed weight fit, for decreasing barrier weights from `first_stage`
  // on. The exact fit has kinks along which no grid move improves; the
  // smoothed one does not.
  double polish(std::vector<ProductDirection>& dirs, std::size_t first_stage,
                std::size_t per_stage) const {
    constexpr double kTaus[] = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7};
    constexpr double kLn2 = 0.6931471805599453;
    // Flatten into logits. Grid points put exact zeros on the boundary,
    // whose logits would never move; a slight pull towards uniform keeps
    // every component alive.
    constexpr double kMix = 1e-6;
    std::vector<double> z;
    auto flatten = [&](const std::vector<double>& v) {
      for (double x : v) z.push_back(std::log((1.0 - kMix) * x + kMix / static_cast<double>(v.size())));
    };
    for (const auto& d : dirs) {
      flatten(d.alpha);
      flatten(d.beta);
    }
    const std::size_t n = z.size();
    auto unpack = [&](const std::vector<double>& logits, std::vector<ProductDirection>& out) {
      std::size_t pos = 0;
      auto fill = [&](std::vector<double>& v) {
        double top = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < v.size(); ++i) top = std::max(top, logits[pos + i]);
        double sum = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) sum += (v[i] = std::exp(logits[pos + i] - top));
        for (double& x : v) x = std::max(x / sum, 1e-300);
        pos += v.size();
      };
      for (auto& d : out) {
        fill(d.alpha);
        fill(d.beta);
      }
    };
    // Ascent gradient in logits from the smoothed prices.
    auto gradient = [&](const std::vector<ProductDirection>& ds, const ProductFit& fit) {
      const auto& g = dec_.graph;
      std::vector<double> grad(n, 0.0);
      std::size_t pos = 0;
      for (std::size_t k = 0; k < ds.size(); ++k) {
        const auto& d = ds[k];
        const auto& cls = dec_.classes[d.class_index];
        const double w = fit.weights[k];
        auto price = [&](std::size_t i, std::size_t j) {
          return fit.edge_prices[g.edge_index(cls.left_set[i], cls.right_set[j])];
        };
        auto chain = [&](const std::vector<double>& p, const std::vector<double>& gp) {
          double mean = 0.0;
          for (std::size_t i = 0; i < p.size(); ++i) mean += p[i] * gp[i];
          for (std::size_t i = 0; i < p.size(); ++i) grad[pos + i] = p[i] * (gp[i] - mean);
          pos += p.size();
        };
        std::vector<double> ga(d.alpha.size());
        std::vector<double> gb(d.beta.size());
        for (std::size_t i = 0; i < ga.size(); ++i) {
          ga[i] = -std::log2(d.alpha[i]) - 1.0 / kLn2;
          for (std::size_t j = 0; j < gb.size(); ++j) ga[i] -= price(i, j) * d.beta[j];
          ga[i] *= w;
        }
        for (std::size_t j = 0; j < gb.size(); ++j) {
          gb[j] = -std::log2(d.beta[j]) - 1.0 / kLn2;
          for (std::size_t i = 0; i < ga.size(); ++i) gb[j] -= price(i, j) * d.alpha[i];
          gb[j] *= w;
        }
        chain(d.alpha, ga);
        chain(d.beta, gb);
      }
      return grad;
    };

    auto trial_dirs = dirs;
    for (std::size_t stage = first_stage; stage < std::size(kTaus); ++stage) {
      const double tau = kTaus[stage];
      unpack(z, dirs);
      auto fit = smoothed_fit(dec_, dirs, tau);
      auto grad = gradient(dirs, fit);
      // Inverse Hessian estimate of the negated objective.
      std::vector<double> h(n * n, 0.0);
      for (std::size_t i = 0; i < n; ++i) h[i * n + i] = 1.0;
      for (std::size_t it = 0; it < per_stage; ++it) {
        std::vector<double> step(n, 0.0);
        double slope = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) step[i] += h[i * n + j] * grad[j];
          slope += step[i] * grad[i];
        }
        if (slope <= 0.0) {
          // Lost positive definiteness: restart from steepest ascent.
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) h[i * n + j] = i == j ? 1.0 : 0.0;
          }
          step = grad;
          slope = 0.0;
          for (double x : grad) slope += x * x;
        }
        if (slope < 1e-20) break;
        double t = 1.0;
        bool moved = false;
        std::vector<double> z_new(n);
        ProductFit fit_new;
        while (t > 1e-14) {
          for (std::size_t i = 0; i < n; ++i) z_new[i] = z[i] + t * step[i];
          unpack(z_new, trial_dirs);
          fit_new = smoothed_fit(dec_, trial_dirs, tau, fit.weights);
          if (fit_new.value >= fit.value + 1e-4 * t * slope) {
            moved = true;
            break;
          }
          t *= 0.5;
        }
        if (!moved) break;
        auto grad_new = gradient(trial_dirs, fit_new);
        // BFGS update on s = dz, y = -(grad_new - grad) for the negated objective.
        std::vector<double> sv(n);
        std::vector<double> yv(n);
        double sy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          sv[i] = z_new[i] - z[i];
          yv[i] = grad[i] - grad_new[i];
          sy += sv[i] * yv[i];
        }
        if (sy > 1e-18) {
          std::vector<double> hy(n, 0.0);
          double yhy = 0.0;
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) hy[i] += h[i * n + j] * yv[j];
            yhy += yv[i] * hy[i];
          }
          const double rho = 1.0 / sy;
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
              h[i * n + j] += rho * ((1.0 + rho * yhy) * sv[i] * sv[j] - hy[i] * sv[j] - sv[i] * hy[j]);
            }
          }
        }
        z.swap(z_new);
        dirs = trial_dirs;
        fit = std::move(fit_new);
        grad.swap(grad_new);
      }
    }
    unpack(z, dirs);
    return fit_weights(dec_, dirs).value;
  }

  // The best few points of a grid over all classes at once, at the finest
  // step whose product stays within kJointBudget points.
  std::vector<State> joint_starts(std::size_t keep) const {
    constexpr std::size_t kJointBudget = 20000;
    long coarse = cfg_.grid;
    std::vector<std::vector<std::pair<Composition, Composition>>> grids;
    while (true) {
      grids.clear();
      std::size_t total = 1;
      for (std::size_t k = 0; k < active_.size(); ++k) {
        grids.push_back(class_grid(k, coarse));
        total = std::min<std::size_t>(total * grids.back().size(), kJointBudget + 1);
      }
      if (total <= kJointBudget || coarse <= 2) break;
      coarse /= 2;
    }
    std::vector<State> best;
    State s;
    s.denom = coarse;
    s.alpha.resize(active_.size());
    s.beta.resize(active_.size());
    std::vector<std::size_t> digit(active_.size(), 0);
    while (true) {
      for (std::size_t k = 0; k < active_.size(); ++k) {
        s.alpha[k] = grids[k][digit[k]].first;
        s.beta[k] = grids[k][digit[k]].second;
      }
      s.value = evaluate(s);
      // Keep only the best point of any cluster of adjacent grid points.
      if (best.size() < keep || s.value > best.back().value) {
        bool dominated = false;
        for (auto it = best.begin(); it != best.end();) {
          if (adjacent(*it, s)) {
            if (it->value >= s.value) {
              dominated = true;
              break;
            }
            it = best.erase(it);
          } else {
            ++it;
          }
        }
        if (!dominated) {
          best.push_back(s);
          std::stable_sort(best.begin(), best.end(),
                           [](const State& a, const State& b) { return a.value > b.value; });
          if (best.size() > keep) best.pop_back();
        }
      }
      std::size_t k = 0;
      while (k < digit.size() && ++digit[k] == grids[k].size()) digit[k++] = 0;
      if (k == digit.size()) break;
    }
    for (auto& st : best) {
      const long scale = cfg_.grid / coarse;
      st.denom = cfg_.grid;
      for (auto& a : st.alpha) for (auto& x : a) x *= scale;
      for (auto& b : st.beta) for (auto& x : b) x *= scale;
    }
    return best;
  }

 private:
  static bool adjacent(const State& a, const State& b) {
    auto near = [](const std::vector<Composition>& x, const std::vector<Composition>& y) {
      for (std::size_t k = 0; k < x.size(); ++k) {
        for (std::size_t i = 0; i < x[k].size(); ++i) {
          if (std::abs(x[k][i] - y[k][i]) > 2) return false;
        }
      }
      return true;
    };
    return near(a.alpha, b.alpha) && near(a.beta, b.beta);
  }

  bool try_candidates(State& s, std::size_t k,
                      const std::vector<std::pair<Composition, Composition>>& cands,
                      double margin) const {
    const auto keep = std::make_pair(s.alpha[k], s.beta[k]);
    auto best = keep;
    bool improved = false;
    for (const auto& [a, b] : cands) {
      s.alpha[k] = a;
      s.beta[k] = b;
      const double v = evaluate(s);
      if (v > s.value + margin) {
        s.value = v;
        best = {a, b};
        improved = true;
      }
    }
    s.alpha[k] = best.first;
    s.beta[k] = best.second;
    return improved;
  }

  std::vector<std::pair<Composition, Composition>> class_grid(std::size_t k, long denom) const {
    const auto& cls = dec_.classes[active_[k]];
    std::vector<Composition> as;
    std::vector<Composition> bs;
    Composition cur;
    enumerate_compositions(denom, cls.left_set.size(), cur, as);
    enumerate_compositions(denom, cls.right_set.size(), cur, bs);
    std::vector<std::pair<Composition, Composition>> out;
    out.reserve(as.size() * bs.size());
    for (const auto& a : as) {
      for (const auto& b : bs) out.emplace_back(a, b);
    }
    return out;
  }

  // One class's (alpha, beta) grid, coarsened until it has at most
  // kMaxJoint points, expressed over `denom`.
  std::vector<std::pair<Composition, Composition>> joint_grid(std::size_t k, long denom) const {
    constexpr std::size_t kMaxJoint = 20000;
    long coarse = denom;
    auto grid = class_grid(k, coarse);
    while (grid.size() > kMaxJoint && coarse > 2) {
      coarse /= 2;
      grid = class_grid(k, coarse);
    }
    const long scale = denom / coarse;
    for (auto& [a, b] : grid) {
      for (auto& x : a) x *= scale;
      for (auto& x : b) x *= scale;
    }
    return grid;
  }

  static Composition spread(std::size_t parts, long denom) {
    Composition c(parts, denom / static_cast<long>(parts));
    long rest = denom - c[0] * static_cast<long>(parts);
    for (std::size_t i = 0; rest > 0; ++i, --rest) c[i] += 1;
    return c;
  }

  static std::vector<Composition> neighbours(const Composition& base) {
    std::vector<Composition> out;
    const std::size_t n = base.size();
    if (n == 1) return out;
    if (n == 2) {
      for (long d = -2; d <= 2; ++d) {
        if (d == 0) continue;
        Composition c{base[0] + d, base[1] - d};
        if (c[0] >= 0 && c[1] >= 0) out.push_back(c);
      }
    } else {
      for (long d0 = -2; d0 <= 2; ++d0) {
        for (long d1 = -2; d1 <= 2; ++d1) {
          if (d0 == 0 && d1 == 0) continue;
          Composition c = base;
          c[0] += d0;
          c[1] += d1;
          c[2] -= d0 + d1;
          if (std::all_of(c.begin(), c.end(), [](long v) { return v >= 0; })) out.push_back(c);
        }
      }
    }
    return out;
  }

  const ClassDecomposition& dec_;
  const OracleConfig& cfg_;
  std::vector<std::size_t> active_;
};

}  // namespace

SupResult brute_force_oracle(const JointPMF& pmf, const OracleConfig& config) {
  const auto graph = build_graph(pmf);
  std::size_t active_left = 0;
  std::size_t active_right = 0;
  for (std::size_t u = 0; u < graph.left().size(); ++u) active_left += graph.left_active(u);
  for (std::size_t v = 0; v < graph.right().size(); ++v) active_right += graph.right_active(v);
  if (active_left > config.max_vertices || active_right > config.max_vertices) {
    throw TooLargeForOracle("oracle accepts at most " + std::to_string(config.max_vertices) +
                            " active symbols per side");
  }
  const auto dec = maximal_bicliques(graph);
  if (dec.classes.size() > config.max_classes) {
    throw TooLargeForOracle(std::to_string(dec.classes.size()) + " classes exceed the oracle limit of " +
                            std::to_string(config.max_classes));
  }
  for (const auto& c : dec.classes) {
    if (c.left_set.size() > config.max_class_side || c.right_set.size() > config.max_class_side) {
      throw TooLargeForOracle("class side exceeds the oracle limit");
    }
  }

  OracleSolver solver(dec, config);
  std::vector<OracleSolver::State> done;
  auto consider = [&](OracleSolver::State& s) {
    solver.refine(s);
    done.push_back(s);
  };
  auto uniform = solver.uniform_start();
  solver.grid_sweeps(uniform);
  consider(uniform);
  for (auto& s : solver.joint_starts(config.joint_starts)) consider(s);
  std::uint64_t rng = config.seed;
  for (std::size_t i = 0; i < config.random_starts; ++i) {
    auto s = solver.random_start(rng);
    s.value = solver.evaluate(s);
    consider(s);
  }
  std::stable_sort(done.begin(), done.end(),
                   [](const auto& a, const auto& b) { return a.value > b.value; });

  // Every refined state gets a short polish over the whole barrier schedule;
  // the two best then continue at the smallest barrier weights.
  std::vector<std::pair<double, std::vector<ProductDirection>>> polished;
  for (std::size_t i = 0; i < std::min(config.polished, done.size()); ++i) {
    auto dirs = solver.directions(done[i]);
    const double v = solver.polish(dirs, 0, config.polish_steps);
    polished.emplace_back(v, std::move(dirs));
  }
  std::stable_sort(polished.begin(), polished.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<ProductDirection> best;
  double best_value = -1.0;
  for (std::size_t i = 0; i < std::min<std::size_t>(2, polished.size()); ++i) {
    auto dirs = polished[i].second;
    const double v = solver.polish(dirs, 3, config.finishing_steps);
    if (v > best_value) {
      best_value = v;
      best = std::move(dirs);
    }
  }

  QAssignment witness(dec, product_symbols(dec, best, fit_weights(dec, best).weights));
  const auto report = verify(witness, pmf);
  SupResult r;
  r.value = objective(witness);
  r.kind = SupKind::achieved_lower;
  r.residuals = {report.marginal_residual, report.markov_residual};
  r.witness = std::move(witness);
  r.input_fingerprint = fingerprint(pmf);
  r.seed = config.seed;
  r.restarts = done.size();
  return r;
}

}  // namespace icb
