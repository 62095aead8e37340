#include "ernoma/monte_carlo.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace ernoma {
namespace {

struct StreamSums {
  double sum[4] = {0, 0, 0, 0};
  double sumsq[4] = {0, 0, 0, 0};
};

// One block's four summands: (1+g)^-nu for NOMA strong/weak and
// (1+g)^-nu/2 for OMA strong/weak.
struct BlockMapper {
  CsiCase c;
  double nu, a_s, a_w, inv_k_half;  // inv_k_half = 2/K
  double i_hat, p_hat;

  void accumulate(const FadingBlock& b, StreamSums& acc) const {
    const double qhat =
        il_instantaneous(c) ? i_hat / b.g_p : p_hat;
    const bool inst_sl = sl_instantaneous(c);
    const double g_strong = inst_sl ? b.g_s : b.g_n;
    const double g_weak_oma = inst_sl ? b.g_w : b.g_f;
    // the weak message must be decodable at both users, so its SINR is
    // driven by min(g_n, g_f) in every case
    const double gam_s = a_s * qhat * g_strong;
    const double gam_w = a_w * qhat * b.g_w / (1.0 + a_s * qhat * b.g_w);
    const double gam_os = inv_k_half * qhat * g_strong;
    const double gam_ow = inv_k_half * qhat * g_weak_oma;
    const double v[4] = {std::exp(-nu * std::log1p(gam_s)),
                         std::exp(-nu * std::log1p(gam_w)),
                         std::exp(-0.5 * nu * std::log1p(gam_os)),
                         std::exp(-0.5 * nu * std::log1p(gam_ow))};
    for (int i = 0; i < 4; ++i) {
      acc.sum[i] += v[i];
      acc.sumsq[i] += v[i] * v[i];
    }
  }
};

}  // namespace

void McConfig::validate() const {
  if (samples < 10000)
    throw std::invalid_argument("sample count must be at least 10^4");
  if (streams < 1) throw std::invalid_argument("streams must be >= 1");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

PairMoments mc_pair_moments(CsiCase c, const PairStats& pair,
                            const ScenarioParams& sp, const PowerSplit& ps,
                            const McConfig& mc) {
  pair.validate();
  sp.validate();
  mc.validate();
  const BlockMapper mapper{c,
                           sp.nu(),
                           ps.a_s,
                           ps.a_w,
                           2.0 / sp.n_users,
                           sp.i_hat(),
                           sp.p_hat_stat(pair.pr.omega)};

  const int streams = mc.streams;
  std::vector<StreamSums> partial(streams);
  std::vector<long long> counts(streams, mc.samples / streams);
  for (long long r = 0; r < mc.samples % streams; ++r) ++counts[r];

  auto run_stream = [&](int s) {
    Rng rng(split_seed(mc.seed, static_cast<std::uint64_t>(s)));
    StreamSums acc;
    for (long long i = 0; i < counts[s]; ++i)
      mapper.accumulate(sample_block(rng, pair), acc);
    partial[s] = acc;
  };

  const int workers = std::min(mc.threads, streams);
  if (workers <= 1) {
    for (int s = 0; s < streams; ++s) run_stream(s);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int s = w; s < streams; s += workers) run_stream(s);
      });
    for (auto& t : pool) t.join();
  }

  // fixed-order reduction keeps results independent of thread scheduling
  StreamSums total;
  for (int s = 0; s < streams; ++s)
    for (int i = 0; i < 4; ++i) {
      total.sum[i] += partial[s].sum[i];
      total.sumsq[i] += partial[s].sumsq[i];
    }

  auto finish = [&](int i) {
    const double n = static_cast<double>(mc.samples);
    const double mean = total.sum[i] / n;
    const double var =
        std::max(0.0, total.sumsq[i] / n - mean * mean) / (n - 1.0);
    return MomentEstimate{mean, std::sqrt(var), mc.samples};
  };
  return {finish(0), finish(1), finish(2), finish(3)};
}

MomentEstimate mc_moment(CsiCase c, Scheme scheme, UserRole role,
                         const PairStats& pair, const ScenarioParams& sp,
                         const PowerSplit& ps, const McConfig& mc) {
  const PairMoments m = mc_pair_moments(c, pair, sp, ps, mc);
  if (scheme == Scheme::Noma)
    return role == UserRole::Strong ? m.noma_strong : m.noma_weak;
  return role == UserRole::Strong ? m.oma_strong : m.oma_weak;
}

ErReport mc_effective_rate(CsiCase c, Scheme scheme, const PairStats& pair,
                           const ScenarioParams& sp, const PowerSplit& ps,
                           const McConfig& mc) {
  const PairMoments m = mc_pair_moments(c, pair, sp, ps, mc);
  const double nu = sp.nu();
  ErReport rep;
  rep.method = Method::MonteCarlo;
  rep.csi = c;
  if (scheme == Scheme::Noma) {
    rep.r_strong = er_from_moment(std::min(m.noma_strong.mean, 1.0), nu);
    rep.r_weak = er_from_moment(std::min(m.noma_weak.mean, 1.0), nu);
  } else {
    rep.r_strong = er_from_moment(std::min(m.oma_strong.mean, 1.0), nu);
    rep.r_weak = er_from_moment(std::min(m.oma_weak.mean, 1.0), nu);
  }
  rep.r_sum = rep.r_strong + rep.r_weak;
  return rep;
}

}  // namespace ernoma
