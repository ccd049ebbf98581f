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

#include "icbound/product.hpp"

#include <algorithm>
#include <cmath>

namespace icb {

PackingSolution solve_packing_lp(const std::vector<double>& c,
                                 const std::vector<std::vector<double>>& rows,
                                 const std::vector<double>& b) {
  constexpr double eps = 1e-13;
  constexpr double kPivot = 1e-9;  // smaller pivots amplify rounding
  const std::size_t n = c.size();
  const std::size_t m = rows.size();
  const std::size_t width = n + m + 1;
  // Tableau rows 0..m-1 are constraints, row m is the objective (reduced costs).
  std::vector<double> t((m + 1) * width, 0.0);
  auto at = [&](std::size_t r, std::size_t col) -> double& { return t[r * width + col]; };
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n; ++j) at(r, j) = rows[r][j];
    at(r, n + r) = 1.0;
    at(r, width - 1) = std::max(0.0, b[r]);
    basis[r] = n + r;
  }
  for (std::size_t j = 0; j < n; ++j) at(m, j) = -c[j];

  for (std::size_t iter = 0; iter < 10000; ++iter) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (at(m, j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;
    std::size_t leave = m;
    double best = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      if (at(r, enter) > kPivot) {
        const double ratio = at(r, width - 1) / at(r, enter);
        if (leave == m || ratio < best - eps ||
            (std::abs(ratio - best) <= eps && basis[r] < basis[leave])) {
          leave = r;
          best = ratio;
        }
      }
    }
    if (leave == m) break;  // unbounded column; only happens for an all-zero column
    const double pivot = at(leave, enter);
    for (std::size_t j = 0; j < width; ++j) at(leave, j) /= pivot;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == leave) continue;
      const double f = at(r, enter);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width; ++j) at(r, j) -= f * at(leave, j);
    }
    basis[leave] = enter;
  }

  PackingSolution s;
  s.x.assign(n, 0.0);
  s.y.assign(m, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (basis[r] < n) s.x[basis[r]] = std::max(0.0, at(r, width - 1));
    s.y[r] = std::max(0.0, at(m, n + r));
  }
  // Rounding can leave a row slightly over; shrink uniformly back inside.
  double scale = 1.0;
  for (std::size_t r = 0; r < m; ++r) {
    double used = 0.0;
    for (std::size_t j = 0; j < n; ++j) used += rows[r][j] * s.x[j];
    if (used > b[r] && used > 0.0) scale = std::min(scale, std::max(0.0, b[r]) / used);
  }
  for (auto& x : s.x) x *= scale;
  for (std::size_t j = 0; j < n; ++j) s.value += c[j] * s.x[j];
  return s;
}

namespace {

struct Packing {
  std::vector<double> c;
  std::vector<std::vector<double>> rows;  // per edge
  std::vector<double> capacity;
};

double entropy_bits(const std::vector<double>& p);

Packing packing(const ClassDecomposition& dec, const std::vector<ProductDirection>& dirs) {
  const auto& g = dec.graph;
  Packing pk;
  for (const auto& e : g.edges()) pk.capacity.push_back(g.mass(e.u, e.v));
  pk.c.resize(dirs.size());
  pk.rows.assign(g.edges().size(), std::vector<double>(dirs.size(), 0.0));
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    const auto& cls = dec.classes[dirs[k].class_index];
    pk.c[k] = entropy_bits(dirs[k].alpha) + entropy_bits(dirs[k].beta);
    for (std::size_t i = 0; i < cls.left_set.size(); ++i) {
      for (std::size_t j = 0; j < cls.right_set.size(); ++j) {
        // Coefficients at the floor of a direction only destabilize pivots.
        const double a = dirs[k].alpha[i] * dirs[k].beta[j];
        pk.rows[g.edge_index(cls.left_set[i], cls.right_set[j])][k] = a < 1e-11 ? 0.0 : a;
      }
    }
  }
  return pk;
}

// Solves H x = r in place for a small dense symmetric system (partial pivoting).
bool solve_dense(std::vector<double>& h, std::vector<double>& r) {
  const std::size_t n = r.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t i = col + 1; i < n; ++i) {
      if (std::abs(h[i * n + col]) > std::abs(h[piv * n + col])) piv = i;
    }
    if (std::abs(h[piv * n + col]) < 1e-300) return false;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h[piv * n + j], h[col * n + j]);
      std::swap(r[piv], r[col]);
    }
    for (std::size_t i = col + 1; i < n; ++i) {
      const double f = h[i * n + col] / h[col * n + col];
      for (std::size_t j = col; j < n; ++j) h[i * n + j] -= f * h[col * n + j];
      r[i] -= f * r[col];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) r[i] -= h[i * n + j] * r[j];
    r[i] /= h[i * n + i];
  }
  return true;
}

double entropy_bits(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

}  // namespace

ProductFit fit_weights(const ClassDecomposition& dec, const std::vector<ProductDirection>& dirs) {
  const auto pk = packing(dec, dirs);
  auto sol = solve_packing_lp(pk.c, pk.rows, pk.capacity);
  return {sol.value, std::move(sol.x), std::move(sol.y)};
}

ProductFit smoothed_fit(const ClassDecomposition& dec, const std::vector<ProductDirection>& dirs,
                        double tau, const std::vector<double>& warm) {
  const auto pk = packing(dec, dirs);
  const std::size_t n = dirs.size();
  const std::size_t m = pk.capacity.size();

  auto slacks = [&](const std::vector<double>& w, std::vector<double>& out) {
    out.resize(m);
    for (std::size_t e = 0; e < m; ++e) {
      double used = 0.0;
      for (std::size_t k = 0; k < n; ++k) used += pk.rows[e][k] * w[k];
      out[e] = pk.capacity[e] - used;
      if (!(out[e] > 0.0)) return false;
    }
    return true;
  };
  auto barrier = [&](const std::vector<double>& w, const std::vector<double>& sl) {
    double f = 0.0;
    for (std::size_t k = 0; k < n; ++k) f += pk.c[k] * w[k] + tau * std::log(w[k]);
    for (double x : sl) f += tau * std::log(x);
    return f;
  };

  std::vector<double> w(n);
  std::vector<double> sl;
  bool ok = warm.size() == n && std::all_of(warm.begin(), warm.end(), [](double x) { return x > 0.0; });
  if (ok) {
    w = warm;
    ok = slacks(w, sl);
  }
  if (!ok) {
    // Each class gets an equal share of the tightest edge it touches.
    for (std::size_t k = 0; k < n; ++k) {
      double cap = 1.0;
      for (std::size_t e = 0; e < m; ++e) {
        if (pk.rows[e][k] > 0.0) cap = std::min(cap, pk.capacity[e] / pk.rows[e][k]);
      }
      w[k] = 0.5 * cap / static_cast<double>(n);
    }
    slacks(w, sl);
  }

  double f = barrier(w, sl);
  std::vector<double> grad(n);
  std::vector<double> hess(n * n);
  std::vector<double> trial(n);
  std::vector<double> trial_sl;
  for (int it = 0; it < 100; ++it) {
    for (std::size_t k = 0; k < n; ++k) {
      grad[k] = pk.c[k] + tau / w[k];
      for (std::size_t l = 0; l < n; ++l) hess[k * n + l] = k == l ? tau / (w[k] * w[k]) : 0.0;
    }
    for (std::size_t e = 0; e < m; ++e) {
      const double inv = 1.0 / sl[e];
      for (std::size_t k = 0; k < n; ++k) {
        if (pk.rows[e][k] == 0.0) continue;
        grad[k] -= tau * inv * pk.rows[e][k];
        for (std::size_t l = 0; l < n; ++l) {
          hess[k * n + l] += tau * inv * inv * pk.rows[e][k] * pk.rows[e][l];
        }
      }
    }
    // Newton direction for the concave barrier objective: (-H) d = grad.
    std::vector<double> d = grad;
    auto h = hess;
    if (!solve_dense(h, d)) break;
    double decrement = 0.0;
    for (std::size_t k = 0; k < n; ++k) decrement += grad[k] * d[k];
    if (decrement < 1e-14 * std::max(1.0, std::abs(f))) break;
    double t = 1.0;
    bool moved = false;
    while (t > 1e-12) {
      for (std::size_t k = 0; k < n; ++k) trial[k] = w[k] + t * d[k];
      if (std::all_of(trial.begin(), trial.end(), [](double x) { return x > 0.0; }) &&
          slacks(trial, trial_sl)) {
        const double ft = barrier(trial, trial_sl);
        if (ft >= f + 0.25 * t * decrement) {
          w.swap(trial);
          sl.swap(trial_sl);
          f = ft;
          moved = true;
          break;
        }
      }
      t *= 0.5;
    }
    if (!moved) break;
  }

  ProductFit out;
  out.value = f;
  out.weights = w;
  out.edge_prices.resize(m);
  for (std::size_t e = 0; e < m; ++e) out.edge_prices[e] = tau / sl[e];
  return out;
}

std::vector<QSymbol> product_symbols(const ClassDecomposition& dec,
                                     const std::vector<ProductDirection>& dirs,
                                     const std::vector<double>& weights) {
  const auto& g = dec.graph;
  std::vector<double> covered(g.edges().size(), 0.0);
  std::vector<QSymbol> out;
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    if (weights[k] <= 0.0) continue;
    const auto& cls = dec.classes[dirs[k].class_index];
    QSymbol q{cls.index, std::vector<double>(cls.edge_count(), 0.0)};
    const std::size_t nr = cls.right_set.size();
    for (std::size_t i = 0; i < cls.left_set.size(); ++i) {
      for (std::size_t j = 0; j < nr; ++j) {
        const auto e = g.edge_index(cls.left_set[i], cls.right_set[j]);
        const double cap = g.mass(cls.left_set[i], cls.right_set[j]);
        const double m = weights[k] * dirs[k].alpha[i] * dirs[k].beta[j];
        q.mass[i * nr + j] = std::max(0.0, std::min(m, cap - covered[e]));
        covered[e] += q.mass[i * nr + j];
      }
    }
    out.push_back(std::move(q));
  }
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const double rest = g.mass(g.edges()[e].u, g.edges()[e].v) - covered[e];
    if (rest <= 0.0) continue;
    const auto c = dec.membership[e].front();
    QSymbol q{c, std::vector<double>(dec.classes[c].edge_count(), 0.0)};
    q.mass[dec.classes[c].local_position(g.edges()[e])] = rest;
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace icb
