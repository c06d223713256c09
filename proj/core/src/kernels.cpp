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

#include "ghawkes/kernels.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ghawkes {

namespace {

constexpr double kRangeSlack = 1e-12;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// MemoryKernel

MemoryKernel::MemoryKernel(std::variant<Exponential, Tabulated> r) : repr_(std::move(r)) {
  if (const auto* e = std::get_if<Exponential>(&repr_)) {
    l1_norm_ = 1.0 / e->alpha;
    return;
  }
  const auto& t = std::get<Tabulated>(repr_);
  double sum = 0.0;
  for (double s : t.samples) sum += s;
  sum -= 0.5 * (t.samples.front() + t.samples.back());
  l1_norm_ = sum * t.step;
  suffix_max_.assign(t.samples.size(), 0.0);
  double running = 0.0;
  for (std::size_t k = t.samples.size(); k-- > 0;) {
    running = std::max(running, t.samples[k]);
    suffix_max_[k] = running;
  }
}

MemoryKernel MemoryKernel::exponential(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("exponential memory kernel needs alpha > 0");
  }
  return MemoryKernel(Exponential{alpha});
}

MemoryKernel MemoryKernel::tabulated(std::vector<double> samples, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("tabulated memory kernel needs step > 0");
  if (samples.size() < 2) throw std::invalid_argument("tabulated memory kernel needs two samples");
  for (double s : samples) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw std::invalid_argument("memory kernel samples must be finite and nonnegative");
    }
  }
  return MemoryKernel(Tabulated{std::move(samples), step});
}

MemoryKernel MemoryKernel::tabulate(const MemoryKernel& source, double step, double horizon) {
  if (!(step > 0.0) || !(horizon > step)) throw std::invalid_argument("tabulate needs 0 < step < horizon");
  const auto n = static_cast<std::size_t>(std::ceil(horizon / step)) + 1;
  std::vector<double> samples(n);
  for (std::size_t k = 0; k < n; ++k) samples[k] = source(static_cast<double>(k) * step);
  return tabulated(std::move(samples), step);
}

MemoryKernel MemoryKernel::zero() { return tabulated({0.0, 0.0}, 1.0); }

double MemoryKernel::operator()(double t) const {
  if (t < 0.0) throw std::invalid_argument("memory kernel evaluated at negative time");
  if (const auto* e = std::get_if<Exponential>(&repr_)) return std::exp(-e->alpha * t);
  const auto& tab = std::get<Tabulated>(repr_);
  const double pos = t / tab.step;
  const auto k = static_cast<std::size_t>(pos);
  if (k + 1 >= tab.samples.size()) {
    return (k + 1 == tab.samples.size() && pos == static_cast<double>(k)) ? tab.samples.back() : 0.0;
  }
  const double w = pos - static_cast<double>(k);
  return (1.0 - w) * tab.samples[k] + w * tab.samples[k + 1];
}

double MemoryKernel::envelope(double t) const {
  if (t < 0.0) t = 0.0;
  if (is_exponential()) return (*this)(t);
  const auto& tab = std::get<Tabulated>(repr_);
  const auto k = static_cast<std::size_t>(t / tab.step) + 1;
  const double tail = k < suffix_max_.size() ? suffix_max_[k] : 0.0;
  return std::max((*this)(t), tail);
}

std::optional<double> MemoryKernel::decay_rate() const {
  if (const auto* e = std::get_if<Exponential>(&repr_)) return e->alpha;
  return std::nullopt;
}

double MemoryKernel::support() const {
  if (is_exponential()) return std::numeric_limits<double>::infinity();
  const auto& tab = std::get<Tabulated>(repr_);
  return tab.step * static_cast<double>(tab.samples.size() - 1);
}

std::string MemoryKernel::describe() const {
  if (const auto* e = std::get_if<Exponential>(&repr_)) return "exponential(alpha=" + fmt(e->alpha) + ")";
  const auto& tab = std::get<Tabulated>(repr_);
  return "tabulated(n=" + std::to_string(tab.samples.size()) + ",step=" + fmt(tab.step) +
         ",l1=" + fmt(l1_norm_) + ")";
}

// ---------------------------------------------------------------------------
// SynapticResponse

SynapticResponse SynapticResponse::linear(double mu) {
  if (!(mu >= 0.0)) throw std::invalid_argument("linear response needs mu >= 0");
  return {Kind::kLinear, mu, 0.0, 0.0};
}

SynapticResponse SynapticResponse::sigmoid(double lambda_max, double slope, double threshold) {
  if (!(lambda_max > 0.0) || !(slope > 0.0) || !std::isfinite(threshold)) {
    throw std::invalid_argument("sigmoid response needs lambda_max > 0, slope > 0");
  }
  return {Kind::kSigmoid, lambda_max, slope, threshold};
}

SynapticResponse SynapticResponse::constant(double c) {
  if (!(c >= 0.0)) throw std::invalid_argument("constant response needs c >= 0");
  return {Kind::kConstant, c, 0.0, 0.0};
}

double SynapticResponse::dx(double x, double eta) const {
  switch (kind_) {
    case Kind::kLinear:
      return 1.0;
    case Kind::kSigmoid: {
      const double s = 1.0 / (1.0 + std::exp(-b_ * (x + eta - c_)));
      return a_ * b_ * s * (1.0 - s);
    }
    case Kind::kConstant:
      break;
  }
  return 0.0;
}

double SynapticResponse::dx_sup() const {
  switch (kind_) {
    case Kind::kLinear:
      return 1.0;
    case Kind::kSigmoid:
      return a_ * b_ / 4.0;
    case Kind::kConstant:
      break;
  }
  return 0.0;
}

std::string SynapticResponse::describe() const {
  switch (kind_) {
    case Kind::kLinear:
      return "linear(mu=" + fmt(a_) + ")";
    case Kind::kSigmoid:
      return "sigmoid(lambda_max=" + fmt(a_) + ",slope=" + fmt(b_) + ",threshold=" + fmt(c_) + ")";
    case Kind::kConstant:
      break;
  }
  return "constant(c=" + fmt(a_) + ")";
}

// ---------------------------------------------------------------------------
// SpatialKernel

namespace {

std::size_t block_of(const std::vector<double>& boundaries, double x) {
  // boundaries = {0, b_1, ..., 1}; block k covers [b_k, b_{k+1})
  const auto it = std::upper_bound(boundaries.begin() + 1, boundaries.end() - 1, x);
  return static_cast<std::size_t>(it - (boundaries.begin() + 1));
}

struct KernelEval {
  double x;
  double y;
  double operator()(const SpatialKernel::Constant& k) const { return k.c; }
  double operator()(const SpatialKernel::ExpDistance& k) const {
    return std::min(1.0, std::exp(-std::abs(x - y) / k.sigma) / (2.0 * k.sigma));
  }
  double operator()(const SpatialKernel::Edd& k) const { return k.f(x) * k.g(y); }
  double operator()(const SpatialKernel::PNearest& k) const {
    const double d = std::abs(x - y);
    return std::min(d, 1.0 - d) < k.r ? 1.0 : 0.0;
  }
  double operator()(const SpatialKernel::Sbm& k) const {
    return k.p[block_of(k.boundaries, x)][block_of(k.boundaries, y)];
  }
};

}  // namespace

SpatialKernel::SpatialKernel(Variant r) : repr_(std::move(r)) {
  struct Sup {
    bool& clipped;
    double operator()(const Constant& k) const { return k.c; }
    double operator()(const ExpDistance& k) const {
      const double peak = 1.0 / (2.0 * k.sigma);
      clipped = peak > 1.0;
      return std::min(1.0, peak);
    }
    double operator()(const Edd& k) const {
      const auto fr = extrema_on_unit_interval([&](double x) { return k.f(x); }, k.f.knots());
      const auto gr = extrema_on_unit_interval([&](double x) { return k.g(x); }, k.g.knots());
      if (fr.min < -kRangeSlack || gr.min < -kRangeSlack) {
        throw std::invalid_argument("expected-degree kernel needs f, g >= 0 on [0,1]");
      }
      return std::max(0.0, fr.max) * std::max(0.0, gr.max);
    }
    double operator()(const PNearest&) const { return 1.0; }
    double operator()(const Sbm& k) const {
      double m = 0.0;
      for (const auto& row : k.p) m = std::max(m, *std::max_element(row.begin(), row.end()));
      return m;
    }
  };
  sup_ = std::visit(Sup{clipped_}, repr_);
}

SpatialKernel SpatialKernel::constant(double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("constant kernel needs c in [0,1]");
  return SpatialKernel(Constant{c});
}

SpatialKernel SpatialKernel::exp_distance(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("exp-distance kernel needs sigma > 0");
  return SpatialKernel(ExpDistance{sigma});
}

SpatialKernel SpatialKernel::edd(ScalarFunction f, ScalarFunction g) {
  return SpatialKernel(Edd{std::move(f), std::move(g)});
}

SpatialKernel SpatialKernel::p_nearest(double r) {
  if (!(r > 0.0 && r < 0.5)) throw std::invalid_argument("p-nearest kernel needs r in (0, 1/2)");
  return SpatialKernel(PNearest{r});
}

SpatialKernel SpatialKernel::sbm(std::vector<double> boundaries, std::vector<std::vector<double>> p) {
  if (boundaries.size() < 2 || boundaries.front() != 0.0 || boundaries.back() != 1.0) {
    throw std::invalid_argument("block boundaries must start at 0 and end at 1");
  }
  for (std::size_t k = 1; k < boundaries.size(); ++k) {
    if (!(boundaries[k] > boundaries[k - 1])) throw std::invalid_argument("block boundaries must increase");
  }
  const std::size_t blocks = boundaries.size() - 1;
  if (p.size() != blocks) throw std::invalid_argument("block matrix size does not match block count");
  for (const auto& row : p) {
    if (row.size() != blocks) throw std::invalid_argument("block matrix must be square");
    for (double v : row) {
      if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("block probabilities must lie in [0,1]");
    }
  }
  return SpatialKernel(Sbm{std::move(boundaries), std::move(p)});
}

SpatialKernel SpatialKernel::sbm_equal(std::vector<std::vector<double>> p) {
  const std::size_t blocks = p.size();
  if (blocks == 0) throw std::invalid_argument("block matrix is empty");
  std::vector<double> b(blocks + 1);
  for (std::size_t k = 0; k <= blocks; ++k) b[k] = static_cast<double>(k) / static_cast<double>(blocks);
  b.back() = 1.0;
  return sbm(std::move(b), std::move(p));
}

double SpatialKernel::operator()(double x, double y) const {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0)) {
    throw std::invalid_argument("spatial kernel evaluated outside [0,1]^2");
  }
  return eval_unchecked(x, y);
}

double SpatialKernel::eval_unchecked(double x, double y) const { return std::visit(KernelEval{x, y}, repr_); }

void SpatialKernel::fill_column(double y, std::span<const double> xs, std::span<double> out) const {
  std::visit(
      [&](const auto& k) {
        for (std::size_t i = 0; i < xs.size(); ++i) out[i] = KernelEval{xs[i], y}(k);
      },
      repr_);
}

void SpatialKernel::fill_row(double x, std::span<const double> ys, std::span<double> out) const {
  std::visit(
      [&](const auto& k) {
        for (std::size_t i = 0; i < ys.size(); ++i) out[i] = KernelEval{x, ys[i]}(k);
      },
      repr_);
}

std::string SpatialKernel::describe() const {
  struct Describe {
    std::string operator()(const Constant& k) const { return "constant(c=" + fmt(k.c) + ")"; }
    std::string operator()(const ExpDistance& k) const { return "exp_distance(sigma=" + fmt(k.sigma) + ")"; }
    std::string operator()(const Edd& k) const {
      return "edd(f=" + k.f.describe() + ",g=" + k.g.describe() + ")";
    }
    std::string operator()(const PNearest& k) const { return "p_nearest(r=" + fmt(k.r) + ")"; }
    std::string operator()(const Sbm& k) const {
      std::string s = "sbm(b=[";
      for (std::size_t i = 0; i < k.boundaries.size(); ++i) s += (i ? "," : "") + fmt(k.boundaries[i]);
      s += "],p=[";
      for (std::size_t i = 0; i < k.p.size(); ++i) {
        s += i ? ",[" : "[";
        for (std::size_t j = 0; j < k.p[i].size(); ++j) s += (j ? "," : "") + fmt(k.p[i][j]);
        s += "]";
      }
      return s + "])";
    }
  };
  return std::visit(Describe{}, repr_);
}

std::uint64_t SpatialKernel::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : describe()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// ---------------------------------------------------------------------------
// ExogenousDrive

ExogenousDrive ExogenousDrive::stationary(ScalarFunction eta) { return relaxation(eta, eta, 0.0); }

ExogenousDrive ExogenousDrive::relaxation(ScalarFunction eta_inf, ScalarFunction eta_zero, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw std::invalid_argument("drive decay needs beta >= 0");
  ExogenousDrive d;
  d.eta_inf_ = std::move(eta_inf);
  d.eta_zero_ = std::move(eta_zero);
  d.beta_ = beta;
  std::vector<double> knots = d.eta_inf_.knots();
  const auto zk = d.eta_zero_.knots();
  knots.insert(knots.end(), zk.begin(), zk.end());
  const auto diff = extrema_on_unit_interval(
      [&](double x) { return d.eta_zero_(x) - d.eta_inf_(x); }, knots);
  d.gap_ = std::max(std::abs(diff.min), std::abs(diff.max));
  if (diff.min == 0.0 && diff.max == 0.0) d.gap_ = 0.0;
  if (beta == 0.0 && d.gap_ > 0.0) {
    throw std::invalid_argument("beta = 0 requires eta_zero == eta_inf (delta_t must vanish)");
  }
  d.nonincreasing_ = d.gap_ == 0.0 || diff.min >= -kRangeSlack;
  const auto ri = extrema_on_unit_interval([&](double x) { return d.eta_inf_(x); }, d.eta_inf_.knots());
  const auto rz = extrema_on_unit_interval([&](double x) { return d.eta_zero_(x); }, zk);
  // eta_t is a convex combination of eta_inf and eta_zero
  d.range_ = {std::min(ri.min, rz.min), std::max(ri.max, rz.max)};
  return d;
}

ExogenousDrive ExogenousDrive::custom(std::function<double(double, double)> eta, ScalarFunction eta_inf,
                                      std::function<double(double)> modulus) {
  if (!eta || !modulus) throw std::invalid_argument("custom drive needs eta and a modulus");
  ExogenousDrive d;
  d.eta_inf_ = std::move(eta_inf);
  d.eta_zero_ = d.eta_inf_;
  d.custom_eta_ = std::move(eta);
  d.custom_modulus_ = std::move(modulus);
  double prev = d.custom_modulus_(0.0);
  for (int k = 1; k <= 1000; ++k) {
    const double cur = d.custom_modulus_(0.1 * k);
    if (cur > prev + kRangeSlack || cur < 0.0) {
      throw std::invalid_argument("custom drive modulus must be nonnegative and nonincreasing");
    }
    prev = cur;
  }
  d.gap_ = d.custom_modulus_(0.0);
  d.nonincreasing_ = false;
  const auto ri = extrema_on_unit_interval([&](double x) { return d.eta_inf_(x); }, d.eta_inf_.knots());
  d.range_ = {ri.min - d.gap_, ri.max + d.gap_};
  return d;
}

double ExogenousDrive::operator()(double t, double x) const {
  if (custom_eta_) return custom_eta_(t, x);
  const double inf = eta_inf_(x);
  if (gap_ == 0.0) return inf;
  return inf + std::exp(-beta_ * t) * (eta_zero_(x) - inf);
}

double ExogenousDrive::eta_zero(double x) const { return (*this)(0.0, x); }

double ExogenousDrive::delta(double t) const {
  if (custom_modulus_) return custom_modulus_(t);
  if (gap_ == 0.0) return 0.0;
  return std::exp(-beta_ * t) * gap_;
}

std::string ExogenousDrive::describe() const {
  if (custom_eta_) return "custom(eta_inf=" + eta_inf_.describe() + ")";
  return "relaxation(eta_inf=" + eta_inf_.describe() + ",eta_zero=" + eta_zero_.describe() +
         ",beta=" + fmt(beta_) + ")";
}

}  // namespace ghawkes
