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

#include "ghawkes/micro.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ghawkes/csv.hpp"
#include "ghawkes/errors.hpp"
#include "ghawkes/rate_tree.hpp"
#include "ghawkes/rng.hpp"

namespace ghawkes {
namespace {

constexpr double kDominationSlack = 1e-9;
// Exponent at which the shared time reference of the exponential path is
// moved forward (keeps the scaled currents within double range).
constexpr double kRescaleExponent = 30.0;
constexpr std::uint64_t kSimulationStream = 0x7468696e6e696e67;  // "thinning"

// 8-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr std::array<double, 4> kGaussNodes = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                               0.9602898564975363};
constexpr std::array<double, 4> kGaussWeights = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                                 0.1012285362903763};

// Currents for h(t) = exp(-alpha t). X_i(t) = y_i exp(-alpha (t - t_ref))
// with one reference time shared by all neurons, so a spike costs one
// addition per out-neighbor and no exponentials.
class ExponentialCurrents {
 public:
  ExponentialCurrents(const InteractionGraph& g, double alpha, const std::vector<double>& x0)
      : g_(g), alpha_(alpha), weight_(g.weight()), y_(g.size(), 0.0) {
    if (!x0.empty()) std::copy(x0.begin(), x0.end(), y_.begin());
  }

  void advance(double t) {
    if (alpha_ * (t - t_ref_) > kRescaleExponent) {
      const double d = std::exp(-alpha_ * (t - t_ref_));
      for (double& y : y_) y *= d;
      t_ref_ = t;
      ++rescales_;
    }
    decay_ = std::exp(-alpha_ * (t - t_ref_));
    t_ = t;
  }

  double current(std::size_t i) const { return y_[i] * decay_; }
  double bound_current(std::size_t i) const { return current(i); }

  void spike(std::size_t j) {
    const double inc = weight_ / decay_;
    for (const NeuronIndex k : g_.out_neighbors(j)) y_[k] += inc;
  }

  /// spike(j), then visit(k, bound current of k) for every out-neighbor.
  template <class Visit>
  void spike_visit(std::size_t j, Visit&& visit) {
    const double inc = weight_ / decay_;
    for (const NeuronIndex k : g_.out_neighbors(j)) {
      y_[k] += inc;
      visit(k, y_[k] * decay_);
    }
  }

  std::uint64_t rescales() const { return rescales_; }

 private:
  const InteractionGraph& g_;
  double alpha_;
  double weight_;
  std::vector<double> y_;
  double t_ref_ = 0.0;
  double t_ = 0.0;
  double decay_ = 1.0;
  std::uint64_t rescales_ = 0;
};

// Currents as explicit sums over the incoming spike history.
class HistoryCurrents {
 public:
  HistoryCurrents(const InteractionGraph& g, const MemoryKernel& h)
      : g_(g), h_(h), weight_(g.weight()), support_(h.support()), incoming_(g.size()), start_(g.size(), 0) {}

  void advance(double t) {
    t_ = t;
    for (std::size_t i = 0; i < incoming_.size(); ++i) {
      auto& s = start_[i];
      while (s < incoming_[i].size() && t_ - incoming_[i][s] > support_) ++s;
    }
  }

  double current(std::size_t i) const {
    double sum = 0.0;
    for (std::size_t s = start_[i]; s < incoming_[i].size(); ++s) sum += h_(t_ - incoming_[i][s]);
    return weight_ * sum;
  }

  double bound_current(std::size_t i) const {
    double sum = 0.0;
    for (std::size_t s = start_[i]; s < incoming_[i].size(); ++s) sum += h_.envelope(t_ - incoming_[i][s]);
    return weight_ * sum;
  }

  void spike(std::size_t j) {
    for (const NeuronIndex k : g_.out_neighbors(j)) incoming_[k].push_back(t_);
  }

  template <class Visit>
  void spike_visit(std::size_t j, Visit&& visit) {
    spike(j);
    for (const NeuronIndex k : g_.out_neighbors(j)) visit(k, bound_current(k));
  }

  std::uint64_t rescales() const { return 0; }

 private:
  const InteractionGraph& g_;
  const MemoryKernel& h_;
  double weight_;
  double support_;
  std::vector<std::vector<double>> incoming_;
  std::vector<std::size_t> start_;
  double t_ = 0.0;
};

template <class Currents>
class Engine {
 public:
  Engine(const InteractionGraph& g, const SynapticResponse& f, const ExogenousDrive& drive, double t_end,
         std::uint64_t seed, const SimulationOptions& opt, Currents& currents, std::optional<double> alpha)
      : g_(g),
        f_(f),
        drive_(drive),
        t_end_(t_end),
        opt_(opt),
        cur_(currents),
        alpha_(alpha),
        n_(g.size()),
        rng_(seed, kSimulationStream),
        tree_(g.size()),
        safe_mode_(!drive.nonincreasing()),
        custom_(drive.is_custom()),
        stationary_(drive.is_stationary()),
        lipschitz_(f.lipschitz()),
        inf_(n_),
        gap_(n_),
        pos_(n_),
        xs_(n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      pos_[i] = InteractionGraph::position(i, n_);
      inf_[i] = drive.eta_inf(pos_[i]);
      if (!drive.is_custom()) gap_[i] = drive.eta_zero(pos_[i]) - inf_[i];
    }
    q_ = std::max<std::size_t>(opt.fine_factor, 1) * n_;
    if (opt.x_inf) xinf_fine_ = opt.x_inf->resample(q_);
    if (opt.ell) {
      ell_fine_ = opt.ell->resample(q_);
      lam_.resize(n_);
    }
    refresh_every_ = opt.refresh_every > 0 ? opt.refresh_every : 8 * n_;
    batch_threshold_ = std::max<std::size_t>(n_ / 8, 16);
    if (opt.martingale) {
      last_int_.assign(n_, 0.0);
      x_last_.assign(n_, 0.0);
      comp_.assign(n_, 0.0);
      if (!opt.initial_currents.empty()) x_last_ = opt.initial_currents;
      x_start_ = x_last_;
      closed_form_ = f.kind() == SynapticResponse::Kind::kConstant ||
                     (f.kind() == SynapticResponse::Kind::kLinear && !drive.is_custom());
    }
    res_.spike_counts.assign(n_, 0);
  }

  SimulationResult run() {
    set_time(0.0);
    refresh_all();
    double t = 0.0;
    next_obs_ = 0;
    bool stopped = false;
    while (!stopped) {
      const double total = tree_.total();
      if (!(total > 0.0)) {
        res_.termination = Termination::kExtinct;
        stopped = observe_until(t_end_);
        if (!stopped) finish(t_end_);
        break;
      }
      const double t_next = t + rng_.exponential(total);
      if (observe_until(std::min(t_next, t_end_))) break;
      if (t_next > t_end_) {
        finish(t_end_);
        break;
      }
      t = t_next;
      set_time(t);
      const std::size_t i = tree_.sample(rng_.uniform());
      const double lam = intensity(i);
      const double bound = tree_.get(i);
      if (lam > bound * (1.0 + kDominationSlack)) {
        std::ostringstream os;
        os << "thinning bound violated for neuron " << i << " at t=" << t << ": lambda=" << lam
           << " bound=" << bound;
        throw InvariantBreach(os.str());
      }
      ++res_.stats.proposals;
      if (rng_.uniform() * bound < lam) {
        accept(i, t);
        if (opt_.max_spikes > 0 && res_.stats.acceptances >= opt_.max_spikes) {
          res_.termination = Termination::kSpikeLimit;
          finish(t);
          stopped = true;
          continue;
        }
      } else {
        tree_.set(i, bound_of(i));
      }
      if (res_.stats.proposals % refresh_every_ == 0) {
        refresh_all();
        ++res_.stats.global_refreshes;
      }
    }
    res_.stats.rescales = cur_.rescales();
    res_.final_currents.resize(n_);
    set_time(res_.end_time);
    for (std::size_t i = 0; i < n_; ++i) res_.final_currents[i] = cur_.current(i);
    if (opt_.martingale) {
      update_compensators(res_.end_time);
      res_.compensators = comp_;
    }
    return std::move(res_);
  }

 private:
  void set_time(double t) {
    cur_.advance(t);
    now_ = t;
    factor_ = drive_.beta() > 0.0 ? std::exp(-drive_.beta() * t) : 1.0;
    if (safe_mode_) delta_ = drive_.delta(t);
  }

  double eta(std::size_t i) const {
    if (custom_) return drive_(now_, pos_[i]);
    if (stationary_) return inf_[i];
    return inf_[i] + factor_ * gap_[i];
  }

  double intensity(std::size_t i) const { return f_(cur_.current(i), eta(i)); }

  // Intensity bound for neuron i given its bound current x.
  double bound_from(std::size_t i, double x) const {
    if (safe_mode_) return f_(x, inf_[i]) + lipschitz_ * delta_;
    return f_(x, eta(i));
  }

  double bound_of(std::size_t i) const { return bound_from(i, cur_.bound_current(i)); }

  // Hot path for large out-degree: one pass adds the spike to every target
  // and rewrites its leaf. The linear response is special-cased so the loop
  // body stays branch-free.
  void spike_and_refresh_leaves(std::size_t i) {
    double* leaves = tree_.leaf_data();
    if (!safe_mode_ && !custom_ && f_.kind() == SynapticResponse::Kind::kLinear) {
      const double mu = f_.level();
      if (stationary_) {
        cur_.spike_visit(i, [&](std::size_t k, double x) { leaves[k] = mu + inf_[k] + x; });
      } else {
        const double c = factor_;
        cur_.spike_visit(i, [&](std::size_t k, double x) { leaves[k] = mu + inf_[k] + c * gap_[k] + x; });
      }
      return;
    }
    cur_.spike_visit(i, [&](std::size_t k, double x) { leaves[k] = bound_from(k, x); });
  }

  void refresh_all() {
    for (std::size_t i = 0; i < n_; ++i) tree_.set_leaf(i, bound_of(i));
    tree_.rebuild();
  }

  void accept(std::size_t i, double t) {
    ++res_.stats.acceptances;
    ++res_.spike_counts[i];
    if (opt_.record_spikes) res_.spikes.push_back({t, static_cast<NeuronIndex>(i)});
    const auto targets = g_.out_neighbors(i);
    const bool lazy = opt_.martingale && !closed_form_;
    if (lazy) {
      for (const NeuronIndex k : targets) integrate_to(k, t);
      cur_.spike(i);
    }
    if (lazy) {
      for (const NeuronIndex k : targets) x_last_[k] = cur_.current(k);
    }
    if (targets.size() > batch_threshold_) {
      if (lazy) {
        for (const NeuronIndex k : targets) tree_.set_leaf(k, bound_of(k));
      } else {
        spike_and_refresh_leaves(i);
      }
      tree_.rebuild();
    } else {
      if (!lazy) cur_.spike(i);
      for (const NeuronIndex k : targets) tree_.set(k, bound_of(k));
    }
  }

  // Emits every lattice observation with time <= t_stop. Returns true when
  // the run must stop (blow-up).
  bool observe_until(double t_stop) {
    if (opt_.observe_dt > 0.0) {
      while (true) {
        const double tau = static_cast<double>(next_obs_) * opt_.observe_dt;
        if (tau > t_stop || tau > t_end_) break;
        ++next_obs_;
        if (observe(tau)) return true;
      }
    } else if (next_obs_ == 0) {
      ++next_obs_;
      if (observe(0.0)) return true;
    }
    return false;
  }

  void finish(double t) {
    res_.end_time = t;
    const double last = res_.record.rows.empty() ? -1.0 : res_.record.rows.back().t;
    if (t > last + 1e-12 * std::max(1.0, t)) observe(t);
  }

  bool observe(double tau) {
    set_time(tau);
    TrajectoryRow row;
    row.t = tau;
    double sum_lam = 0.0, sum_x = 0.0, max_x = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      xs_[i] = cur_.current(i);
      const double lam = f_(xs_[i], eta(i));
      if (opt_.ell) lam_[i] = lam;
      sum_lam += lam;
      sum_x += xs_[i];
      max_x = std::max(max_x, xs_[i]);
    }
    const double nn = static_cast<double>(n_);
    row.mean_intensity = sum_lam / nn;
    row.mean_current = sum_x / nn;
    row.max_current = max_x;
    row.total_spikes = res_.stats.acceptances;
    row.dist_to_xinf = opt_.x_inf ? profile_distance(xs_, xinf_fine_) : std::numeric_limits<double>::quiet_NaN();
    row.dist_to_xt = opt_.x_t ? profile_distance(xs_, opt_.x_t->at(tau).resample(q_))
                              : std::numeric_limits<double>::quiet_NaN();
    row.dist_lambda_to_ell =
        opt_.ell ? profile_distance(lam_, ell_fine_) : std::numeric_limits<double>::quiet_NaN();
    res_.record.rows.push_back(row);
    if (opt_.martingale) sample_martingale(tau);
    if (opt_.blowup_intensity > 0.0 && row.mean_intensity > opt_.blowup_intensity) {
      res_.termination = Termination::kBlowUp;
      res_.end_time = tau;
      return true;
    }
    return false;
  }

  // int_{s0}^{s1} F(x0 exp(-alpha (s - s0)), eta_s(x_k)) ds
  double integrate(std::size_t k, double s0, double s1, double x0) const {
    const double len = s1 - s0;
    if (!(len > 0.0)) return 0.0;
    const double alpha = *alpha_;
    const double beta = drive_.beta();
    if (f_.kind() == SynapticResponse::Kind::kConstant) return f_.level() * len;
    if (f_.kind() == SynapticResponse::Kind::kLinear && !drive_.is_custom()) {
      double v = (f_.level() + inf_[k]) * len + x0 * (-std::expm1(-alpha * len)) / alpha;
      if (gap_[k] != 0.0) v += gap_[k] * (std::exp(-beta * s0) * (-std::expm1(-beta * len))) / beta;
      return v;
    }
    const double rate = std::max({alpha, beta, 1.0});
    const auto pieces = static_cast<std::size_t>(std::clamp(std::ceil(len * rate), 1.0, 256.0));
    const double piece = len / static_cast<double>(pieces);
    double sum = 0.0;
    for (std::size_t p = 0; p < pieces; ++p) {
      const double mid = s0 + (static_cast<double>(p) + 0.5) * piece;
      for (std::size_t q = 0; q < kGaussNodes.size(); ++q) {
        for (const double sign : {-1.0, 1.0}) {
          const double s = mid + sign * 0.5 * piece * kGaussNodes[q];
          const double e = drive_.is_custom() ? drive_(s, pos_[k]) : inf_[k] + std::exp(-beta * s) * gap_[k];
          sum += kGaussWeights[q] * f_(x0 * std::exp(-alpha * (s - s0)), e);
        }
      }
    }
    return sum * 0.5 * piece;
  }

  void integrate_to(std::size_t k, double t) {
    const double s0 = last_int_[k];
    if (t <= s0) return;
    comp_[k] += integrate(k, s0, t, x_last_[k]);
    x_last_[k] *= std::exp(-*alpha_ * (t - s0));
    last_int_[k] = t;
  }

  // Fills comp_ with int_0^t lambda_k; the current time must already be t.
  // Linear and constant responses integrate in closed form: for the linear
  // response dX = -alpha X dt + w dZ_in gives int X = (X(0) - X(t) + w Z_in(t)) / alpha.
  void update_compensators(double t) {
    if (!closed_form_) {
      for (std::size_t k = 0; k < n_; ++k) integrate_to(k, t);
      return;
    }
    if (f_.kind() == SynapticResponse::Kind::kConstant) {
      std::fill(comp_.begin(), comp_.end(), f_.level() * t);
      return;
    }
    const double w = g_.weight();
    const double alpha = *alpha_;
    const double beta = drive_.beta();
    std::vector<double> in_spikes(n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
      const auto z = static_cast<double>(res_.spike_counts[j]);
      if (z == 0.0) continue;
      for (const NeuronIndex k : g_.out_neighbors(j)) in_spikes[k] += z;
    }
    for (std::size_t k = 0; k < n_; ++k) {
      double v = (f_.level() + inf_[k]) * t + (x_start_[k] - cur_.current(k) + w * in_spikes[k]) / alpha;
      if (gap_[k] != 0.0) v += gap_[k] * (-std::expm1(-beta * t)) / beta;
      comp_[k] = v;
    }
  }

  void sample_martingale(double tau) {
    update_compensators(tau);
    std::vector<double> m(n_, 0.0);
    const double w = g_.weight();
    for (std::size_t j = 0; j < n_; ++j) {
      const double d = w * (static_cast<double>(res_.spike_counts[j]) - comp_[j]);
      for (const NeuronIndex k : g_.out_neighbors(j)) m[k] += d;
    }
    double s = 0.0;
    for (double v : m) s += v * v;
    res_.martingale.push_back({tau, s / static_cast<double>(n_)});
  }

  const InteractionGraph& g_;
  const SynapticResponse& f_;
  const ExogenousDrive& drive_;
  double t_end_;
  const SimulationOptions& opt_;
  Currents& cur_;
  std::optional<double> alpha_;
  std::size_t n_;
  RandomStream rng_;
  RateTree tree_;
  bool safe_mode_;
  bool custom_;
  bool stationary_;
  double lipschitz_;
  std::vector<double> inf_;
  std::vector<double> gap_;
  std::vector<double> pos_;
  std::vector<double> xs_;
  std::size_t q_ = 0;
  MacroField xinf_fine_;
  MacroField ell_fine_;
  std::vector<double> lam_;
  std::size_t refresh_every_ = 0;
  std::size_t batch_threshold_ = 0;
  std::size_t next_obs_ = 0;
  double now_ = 0.0;
  double factor_ = 1.0;
  double delta_ = 0.0;
  std::vector<double> last_int_;
  std::vector<double> x_last_;
  std::vector<double> comp_;
  std::vector<double> x_start_;
  bool closed_form_ = false;
  SimulationResult res_;
};

void validate_common(const InteractionGraph& g, double t_end, const SimulationOptions& opt) {
  if (g.size() == 0) throw std::invalid_argument("empty graph");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be positive");
  if (!(opt.observe_dt >= 0.0)) throw std::invalid_argument("observe_dt must be nonnegative");
  if (!opt.initial_currents.empty()) {
    if (opt.initial_currents.size() != g.size()) throw std::invalid_argument("initial currents size mismatch");
    for (double x : opt.initial_currents) {
      if (!(x >= 0.0)) throw std::invalid_argument("initial currents must be nonnegative");
    }
  }
  if (opt.x_t && opt.x_t->kind() != TrajectoryKind::kCurrent) {
    throw std::invalid_argument("dist_to_xt needs a current trajectory");
  }
}

}  // namespace

std::string to_string(Termination t) {
  switch (t) {
    case Termination::kCompleted:
      return "completed";
    case Termination::kExtinct:
      return "extinct";
    case Termination::kSpikeLimit:
      return "spike_limit";
    case Termination::kBlowUp:
      return "blow_up";
  }
  return "unknown";
}

std::string TrajectoryRecord::to_csv() const {
  std::ostringstream os;
  os << "t,dist_to_xinf,dist_to_xt,mean_intensity,total_spikes,max_current\n";
  const auto num = [](double v) { return std::isnan(v) ? std::string() : format_double(v); };
  for (const auto& r : rows) {
    os << format_double(r.t) << ',' << num(r.dist_to_xinf) << ',' << num(r.dist_to_xt) << ','
       << format_double(r.mean_intensity) << ',' << r.total_spikes << ',' << format_double(r.max_current) << '\n';
  }
  return os.str();
}

void TrajectoryRecord::write_csv(const std::filesystem::path& path) const { write_text_file(path, to_csv()); }

SimulationResult simulate_exponential(const InteractionGraph& g, const SynapticResponse& f, double alpha,
                                      const ExogenousDrive& drive, double t_end, std::uint64_t seed,
                                      const SimulationOptions& options) {
  validate_common(g, t_end, options);
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be positive");
  ExponentialCurrents currents(g, alpha, options.initial_currents);
  Engine<ExponentialCurrents> engine(g, f, drive, t_end, seed, options, currents, alpha);
  return engine.run();
}

SimulationResult simulate_general_h(const InteractionGraph& g, const SynapticResponse& f, const MemoryKernel& h,
                                    const ExogenousDrive& drive, double t_end, std::uint64_t seed,
                                    const SimulationOptions& options) {
  validate_common(g, t_end, options);
  if (!options.initial_currents.empty()) {
    throw std::invalid_argument("initial currents are only defined for exponential memory");
  }
  if (options.martingale) throw std::invalid_argument("martingale diagnostic needs exponential memory");
  HistoryCurrents currents(g, h);
  Engine<HistoryCurrents> engine(g, f, drive, t_end, seed, options, currents, std::nullopt);
  return engine.run();
}

std::vector<MartingaleSample> martingale_diagnostic(const InteractionGraph& g, const SynapticResponse& f,
                                                    double alpha, const ExogenousDrive& drive, double t_end,
                                                    std::uint64_t seed, double observe_dt) {
  SimulationOptions opt;
  opt.observe_dt = observe_dt;
  opt.martingale = true;
  return simulate_exponential(g, f, alpha, drive, t_end, seed, opt).martingale;
}

double profile_distance(std::span<const double> currents, const MacroField& target) {
  const std::size_t n = currents.size();
  const std::size_t q = target.size();
  if (n == 0 || q == 0 || q % n != 0) throw std::invalid_argument("profile grid must be a multiple of N");
  const std::size_t per_cell = q / n;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i * per_cell; k < (i + 1) * per_cell; ++k) {
      const double d = currents[i] - target[k];
      sum += d * d;
    }
  }
  return std::sqrt(sum / static_cast<double>(q));
}

std::string spike_log_csv(const std::vector<Spike>& spikes) {
  std::ostringstream os;
  os << "t,neuron\n";
  for (const auto& s : spikes) os << format_double(s.t) << ',' << s.neuron << '\n';
  return os.str();
}

}  // namespace ghawkes
