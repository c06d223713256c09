// Copyright 2026 The ghawkes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ghawkes/graph.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ghawkes/csv.hpp"
#include "ghawkes/rng.hpp"

namespace ghawkes {

InteractionGraph::InteractionGraph(std::size_t n, double rho, std::uint64_t seed, std::uint64_t kernel_digest,
                                   std::vector<std::vector<NeuronIndex>> targets_by_source)
    : n_(n), rho_(rho), seed_(seed), kernel_digest_(kernel_digest) {
  if (targets_by_source.size() != n) throw std::invalid_argument("one target list per source required");
  offsets_.assign(n + 1, 0);
  for (std::size_t j = 0; j < n; ++j) offsets_[j + 1] = offsets_[j] + targets_by_source[j].size();
  targets_.reserve(offsets_[n]);
  in_degrees_.assign(n, 0);
  out_degrees_.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& list = targets_by_source[j];
    for (std::size_t k = 0; k < list.size(); ++k) {
      if (list[k] >= n) throw std::invalid_argument("edge target out of range");
      if (k > 0 && list[k] <= list[k - 1]) throw std::invalid_argument("target lists must be sorted and unique");
      ++in_degrees_[list[k]];
    }
    out_degrees_[j] = static_cast<std::uint32_t>(list.size());
    targets_.insert(targets_.end(), list.begin(), list.end());
  }
}

bool InteractionGraph::has_edge(std::size_t from, std::size_t to) const {
  const auto nb = out_neighbors(from);
  return std::binary_search(nb.begin(), nb.end(), static_cast<NeuronIndex>(to));
}

InNeighborIndex::InNeighborIndex(const InteractionGraph& g) {
  const std::size_t n = g.size();
  offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + g.in_degrees()[i];
  sources_.resize(offsets_[n]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  // sources come out sorted because j is visited in increasing order
  for (std::size_t j = 0; j < n; ++j) {
    for (NeuronIndex i : g.out_neighbors(j)) sources_[cursor[i]++] = static_cast<NeuronIndex>(j);
  }
}

InteractionGraph sample_graph(std::size_t n, double rho, const SpatialKernel& w, std::uint64_t seed,
                              unsigned threads) {
  if (n < 1) throw std::invalid_argument("graph needs n >= 1");
  if (!(rho > 0.0 && rho <= 1.0)) throw std::invalid_argument("dilution rho must lie in (0, 1]");
  if (rho * w.sup() > 1.0 + 1e-12) {
    throw std::invalid_argument("rho * sup W exceeds 1; edge probabilities would not be valid");
  }
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = InteractionGraph::position(i, n);

  std::vector<std::vector<NeuronIndex>> targets(n);
  const auto sample_range = [&](std::size_t begin, std::size_t end) {
    std::vector<double> column(n);
    for (std::size_t j = begin; j < end; ++j) {
      w.fill_column(xs[j], xs, column);
      RandomStream rng(seed, j);
      auto& out = targets[j];
      for (std::size_t i = 0; i < n; ++i) {
        if (rng.uniform() < rho * column[i]) out.push_back(static_cast<NeuronIndex>(i));
      }
    }
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    sample_range(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t b = t * chunk;
      const std::size_t e = std::min(n, b + chunk);
      if (b < e) pool.emplace_back(sample_range, b, e);
    }
    for (auto& th : pool) th.join();
  }
  return InteractionGraph(n, rho, seed, w.digest(), std::move(targets));
}

DegreeConcentration degree_concentration(const InteractionGraph& g) {
  const double scale = static_cast<double>(g.size()) * g.rho();
  const auto max_of = [](const std::vector<std::uint32_t>& v) {
    return v.empty() ? 0u : *std::max_element(v.begin(), v.end());
  };
  return {static_cast<double>(max_of(g.in_degrees())) / scale,
          static_cast<double>(max_of(g.out_degrees())) / scale};
}

double pair_statistic(const InteractionGraph& g, const SpatialKernel& w, std::size_t j, std::size_t jp) {
  const std::size_t n = g.size();
  const double rho = g.rho();
  std::vector<double> xs(n), pj(n), pjp(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = InteractionGraph::position(i, n);
  w.fill_column(xs[j], xs, pj);
  w.fill_column(xs[jp], xs, pjp);

  // N S = sum xi xi' - sum_{i in out(j)} p'_i - sum_{i in out(j')} p_i + sum p p'
  const auto a = g.out_neighbors(j);
  const auto b = g.out_neighbors(jp);
  double both = 0.0;
  {
    std::size_t u = 0, v = 0;
    while (u < a.size() && v < b.size()) {
      if (a[u] < b[v]) {
        ++u;
      } else if (b[v] < a[u]) {
        ++v;
      } else {
        both += 1.0;
        ++u;
        ++v;
      }
    }
  }
  double cross_a = 0.0, cross_b = 0.0, pp = 0.0;
  for (NeuronIndex i : a) cross_a += rho * pjp[i];
  for (NeuronIndex i : b) cross_b += rho * pj[i];
  for (std::size_t i = 0; i < n; ++i) pp += rho * pj[i] * rho * pjp[i];
  return (both - cross_a - cross_b + pp) / static_cast<double>(n);
}

SMaxResult s_max_statistic(const InteractionGraph& g, const SpatialKernel& w, std::size_t pair_budget,
                           double tau) {
  const std::size_t n = g.size();
  if (n < 2) throw std::invalid_argument("s_max needs n >= 2");
  if (pair_budget < 1) throw std::invalid_argument("pair budget must be positive");
  const double bound = std::pow(static_cast<double>(n), tau - 0.5);
  const std::size_t all_pairs = n * (n - 1) / 2;

  if (pair_budget >= all_pairs) {
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = InteractionGraph::position(i, n);
    Eigen::MatrixXd centered(n, n);
    std::vector<double> column(n);
    for (std::size_t j = 0; j < n; ++j) {
      w.fill_column(xs[j], xs, column);
      for (std::size_t i = 0; i < n; ++i) centered(i, j) = -g.rho() * column[i];
      for (NeuronIndex i : g.out_neighbors(j)) centered(i, j) += 1.0;
    }
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(centered.transpose());
    double s_max = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = j + 1; i < n; ++i) s_max = std::max(s_max, std::abs(gram(i, j)));
    }
    return {s_max / static_cast<double>(n), bound, all_pairs, true};
  }

  RandomStream rng(g.seed(), 0x53'4d'41'58ULL);  // "SMAX"
  double s_max = 0.0;
  for (std::size_t p = 0; p < pair_budget; ++p) {
    const std::size_t j = rng.below(n);
    std::size_t jp = rng.below(n - 1);
    if (jp >= j) ++jp;
    s_max = std::max(s_max, std::abs(pair_statistic(g, w, j, jp)));
  }
  return {s_max, bound, pair_budget, false};
}

DilutionAdvisory dilution_report(std::size_t n, double rho, double tau, bool f_bounded, double floor) {
  if (!(tau > 0.0 && tau < 0.5)) throw std::invalid_argument("tau must lie in (0, 1/2)");
  const double nd = static_cast<double>(n);
  DilutionAdvisory out{};
  out.general_value = std::pow(nd, 1.0 - 2.0 * tau) * std::pow(rho, 4);
  out.bounded_value = nd * rho * rho;
  out.f_bounded = f_bounded;
  out.floor = floor;
  out.pass = (f_bounded ? out.bounded_value : out.general_value) >= floor;
  return out;
}

KernelRegularity kernel_regularity(const SpatialKernel& w, std::size_t n, std::size_t quadrature) {
  if (n < 1 || quadrature < 1) throw std::invalid_argument("kernel_regularity needs n, quadrature >= 1");
  const double nd = static_cast<double>(n);
  const std::size_t fine = n * quadrature;
  std::vector<double> ys(fine);
  for (std::size_t k = 0; k < fine; ++k) ys[k] = (static_cast<double>(k) + 0.5) / static_cast<double>(fine);
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = InteractionGraph::position(i, n);

  const double cell_weight = 1.0 / static_cast<double>(fine);
  double r1 = 0.0, r2 = 0.0;
  std::vector<double> row_fine(fine), row_nodes(n);
  for (std::size_t i = 0; i < n; ++i) {
    w.fill_row(xs[i], ys, row_fine);
    w.fill_row(xs[i], xs, row_nodes);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t q = 0; q < quadrature; ++q) {
        const double d = std::abs(row_nodes[j] - row_fine[j * quadrature + q]);
        r1 += d * cell_weight;
        r2 += d * d * cell_weight;
      }
    }
  }
  r1 /= nd;
  r2 /= nd;

  // inner integral over y on a lattice capped at 4096 points
  const std::size_t inner = std::min<std::size_t>(fine, 4096);
  std::vector<double> yi(inner);
  for (std::size_t k = 0; k < inner; ++k) yi[k] = (static_cast<double>(k) + 0.5) / static_cast<double>(inner);
  double s = 0.0;
  std::vector<double> anchor(inner), moving(inner);
  for (std::size_t i = 0; i < n; ++i) {
    w.fill_row(xs[i], yi, anchor);
    for (std::size_t q = 0; q < quadrature; ++q) {
      const double x = (static_cast<double>(i) + (static_cast<double>(q) + 0.5) / static_cast<double>(quadrature)) / nd;
      w.fill_row(x, yi, moving);
      double acc = 0.0;
      for (std::size_t k = 0; k < inner; ++k) {
        const double d = anchor[k] - moving[k];
        acc += d * d;
      }
      s += acc / static_cast<double>(inner) * cell_weight;
    }
  }
  return {r1, r2, s};
}

void write_edge_list(const InteractionGraph& g, const std::filesystem::path& path) {
  std::ostringstream os;
  os << "# ghawkes edge list (j i): edge j -> i\n";
  os << "# n=" << g.size() << " rho=" << format_double(g.rho()) << " seed=" << g.seed() << " kernel=" << std::hex
     << g.kernel_digest() << std::dec << "\n";
  for (std::size_t j = 0; j < g.size(); ++j) {
    for (NeuronIndex i : g.out_neighbors(j)) os << j << ' ' << i << '\n';
  }
  write_text_file(path, os.str());
}

InteractionGraph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  std::size_t n = 0;
  double rho = 0.0;
  std::uint64_t seed = 0, digest = 0;
  bool have_header = false;
  std::vector<std::vector<NeuronIndex>> targets;
  std::size_t last_j = 0, last_i = 0;
  bool any = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("n=");
      if (pos == std::string::npos) continue;
      std::istringstream hs(line.substr(pos));
      std::string tok;
      while (hs >> tok) {
        const auto eq = tok.find('=');
        const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "n") n = std::stoull(val);
        if (key == "rho") rho = std::stod(val);
        if (key == "seed") seed = std::stoull(val);
        if (key == "kernel") digest = std::stoull(val, nullptr, 16);
      }
      have_header = true;
      targets.assign(n, {});
      continue;
    }
    if (!have_header) throw std::runtime_error(path.string() + ": missing header");
    std::istringstream ls(line);
    std::size_t j = 0, i = 0;
    if (!(ls >> j >> i) || j >= n || i >= n) throw std::runtime_error(path.string() + ": bad edge line: " + line);
    if (any && (j < last_j || (j == last_j && i <= last_i))) {
      throw std::runtime_error(path.string() + ": edges not sorted");
    }
    targets[j].push_back(static_cast<NeuronIndex>(i));
    last_j = j;
    last_i = i;
    any = true;
  }
  if (!have_header) throw std::runtime_error(path.string() + ": missing header");
  return InteractionGraph(n, rho, seed, digest, std::move(targets));
}

}  // namespace ghawkes
