#include "ernoma/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace ernoma {
namespace {

using cdouble = std::complex<double>;

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr double kLnPi = 1.1447298858494001741;
constexpr double kHalfLn2Pi = 0.91893853320467274178;
constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_exp(double x) { return std::exp(std::min(x, 709.0)); }

// ---------------------------------------------------------------------------
// complex log gamma (Lanczos g=7 with reflection); the imaginary part is not
// branch-normalized, which is harmless since callers only exponentiate sums.

cdouble clgamma_core(cdouble z) {  // Re z >= 0.5
  static const double c[9] = {
      0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,    12.507343278686905,
      -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};
  z -= 1.0;
  cdouble x = c[0];
  for (int i = 1; i < 9; ++i) x += c[i] / (z + static_cast<double>(i));
  const cdouble t = z + 7.5;
  return kHalfLn2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

cdouble cln_sin_pi(cdouble z) {
  if (z.imag() < 0.0) return std::conj(cln_sin_pi(std::conj(z)));
  if (z.imag() > 8.0) {
    // sin(pi z) = -exp(-i pi z) (1 - exp(2 i pi z)) / (2 i)
    const cdouble e = std::exp(cdouble(0.0, 2.0 * kPi) * z);
    return cdouble(0.0, -kPi) * z + std::log(1.0 - e) +
           cdouble(-std::log(2.0), kPi / 2.0);
  }
  return std::log(std::sin(kPi * z));
}

cdouble clgamma(cdouble z) {
  if (z.real() >= 0.5) return clgamma_core(z);
  return kLnPi - cln_sin_pi(z) - clgamma_core(1.0 - z);
}

// ---------------------------------------------------------------------------
// Gauss-Legendre panel rules (positive half of the symmetric node sets).

struct GlPoint {
  double x, w;
};
constexpr GlPoint kGl16[8] = {
    {9.50125098376374544e-02, 1.89450610455068585e-01},
    {2.81603550779258915e-01, 1.82603415044923612e-01},
    {4.58016777657227370e-01, 1.69156519395002619e-01},
    {6.17876244402643771e-01, 1.49595988816576764e-01},
    {7.55404408355002999e-01, 1.24628971255534030e-01},
    {8.65631202387831755e-01, 9.51585116824925914e-02},
    {9.44575023073232600e-01, 6.22535239386477063e-02},
    {9.89400934991649939e-01, 2.71524594117540374e-02}};
constexpr GlPoint kGl32[16] = {
    {4.83076656877383104e-02, 9.65400885147278121e-02},
    {1.44471961582796488e-01, 9.56387200792748332e-02},
    {2.39287362252137065e-01, 9.38443990808045664e-02},
    {3.31868602282127667e-01, 9.11738786957638631e-02},
    {4.21351276130635333e-01, 8.76520930044039082e-02},
    {5.06899908932229359e-01, 8.33119242269468457e-02},
    {5.87715757240762304e-01, 7.81938957870703111e-02},
    {6.63044266930215231e-01, 7.23457941088484491e-02},
    {7.32182118740289711e-01, 6.58222227763617523e-02},
    {7.94483795967942386e-01, 5.86840934785357038e-02},
    {8.49367613732569970e-01, 5.09980592623762441e-02},
    {8.96321155766052202e-01, 4.28358980222264263e-02},
    {9.34906075937739667e-01, 3.42738629130216257e-02},
    {9.64762255587506390e-01, 2.53920653092624266e-02},
    {9.85611511545268382e-01, 1.62743947309059653e-02},
    {9.97263861849481570e-01, 7.01861000946929839e-03}};

// ---------------------------------------------------------------------------
// 1-D Mellin-Barnes line integral
//
// The integrand along the vertical line c + i y is
//   F(y) = exp( sum_k lngamma(shift_k + sign_k (c + i y)) + (c + i y) ln_z
//               + log_scale )
// and the integral computed is (1/pi) Re Int_0^inf F(y) dy, which equals
// (1/(2 pi i)) Int_{c - i inf}^{c + i inf} (gamma product) z^s ds for real
// parameters and z > 0 by conjugate symmetry.

struct GammaFactor {
  double shift;
  double sign;
};

struct LineSpec {
  std::vector<GammaFactor> factors;
  double c = 0.0;
  double ln_z = 0.0;
  double log_scale = 0.0;
};

double strip_lower(const std::vector<GammaFactor>& fs) {
  double lo = -kInf;
  for (const auto& f : fs)
    if (f.sign > 0) lo = std::max(lo, -f.shift);
  return lo;
}

double strip_upper(const std::vector<GammaFactor>& fs) {
  double hi = kInf;
  for (const auto& f : fs)
    if (f.sign < 0) hi = std::min(hi, f.shift);
  return hi;
}

// Distance from the contour to the nearest gamma pole, measured along the
// real axis; this is the width of the sharpest feature the integrand can
// have near y = 0 and seeds the initial panelization.
double nearest_pole_distance(const LineSpec& spec) {
  double d = kInf;
  for (const auto& f : spec.factors) {
    const double r = f.shift + f.sign * spec.c;  // poles at r + sign*i*y = -k
    double j = std::max(0.0, std::round(-r));
    d = std::min(d, std::abs(r + j));
    if (j > 0.0) d = std::min(d, std::abs(r + j - 1.0));
  }
  return d;
}

cdouble line_log_integrand(const LineSpec& spec, double y) {
  const cdouble s(spec.c, y);
  cdouble acc(spec.log_scale + spec.c * spec.ln_z, y * spec.ln_z);
  for (const auto& f : spec.factors) acc += clgamma(f.shift + f.sign * s);
  return acc;
}

struct Panel {
  double a, b;
  cdouble value;
  double err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

struct PanelScratch {
  const LineSpec* spec;
  double shift;
  cdouble eval(double y) const {
    cdouble lg = line_log_integrand(*spec, y) + shift;
    if (lg.real() < -745.0) return {0.0, 0.0};
    return std::exp(lg);
  }
  Panel make(double a, double b) const {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cdouble v16 = 0.0, v32 = 0.0;
    for (const auto& p : kGl16)
      v16 += p.w * (eval(mid - half * p.x) + eval(mid + half * p.x));
    for (const auto& p : kGl32)
      v32 += p.w * (eval(mid - half * p.x) + eval(mid + half * p.x));
    v16 *= half;
    v32 *= half;
    return {a, b, v32, std::abs(v32 - v16)};
  }
};

struct LineResult {
  double value = 0.0;     // (1/pi) Re of the half-line integral, descaled
  double abs_error = 0.0;
  double peak_mag = 0.0;  // integrand magnitude scale (cancellation floor)
  double big_l = 0.0;
  std::vector<double> edges;  // final panel boundaries on [0, L]
  int nodes = 0;
};

LineResult integrate_line(const LineSpec& spec, const QuadratureConfig& cfg) {
  const double d = std::clamp(nearest_pole_distance(spec), 1e-14, kInf);
  double big_l = cfg.initial_half_height;

  // Peak magnitude probe and L-doubling until the integrand has decayed.
  auto logmag = [&](double y) { return line_log_integrand(spec, y).real(); };
  double peak = -kInf;
  for (double y : {0.0, d, 4.0 * d, 1.0, big_l / 4.0, big_l / 2.0})
    peak = std::max(peak, logmag(y));
  const double ln_tol = std::log(std::max(cfg.rel_tol, 1e-15));
  for (int i = 0; i < 44; ++i) {
    const double tail = logmag(big_l);
    peak = std::max(peak, tail);
    if (tail <= peak + ln_tol - std::log(big_l) - 9.2) break;
    big_l *= 2.0;
  }
  while (big_l > 1.0 &&
         logmag(0.5 * big_l) <= peak + ln_tol - std::log(big_l) - 9.2)
    big_l *= 0.5;
  const double shift = -peak;

  PanelScratch scratch{&spec, shift};
  std::priority_queue<Panel> panels;
  cdouble total = 0.0;
  double total_err = 0.0;
  int nodes = 0;
  auto push = [&](Panel p) {
    total += p.value;
    total_err += p.err;
    nodes += 48;
    panels.push(std::move(p));
  };
  // Geometric seed panels resolve near-pole spikes of width ~d; the z^s
  // phase oscillates at frequency |ln z|, so panels are also capped at a
  // few oscillation periods.
  {
    const double osc_cap = 8.0 * kPi / std::max(std::abs(spec.ln_z), 4.0);
    std::vector<double> coarse{0.0};
    double e = (d < big_l / 8.0) ? d : big_l / 8.0;
    while (e < big_l && coarse.size() < 64) {
      coarse.push_back(e);
      e *= 2.0;
    }
    coarse.push_back(big_l);
    std::vector<double> edges;
    for (size_t i = 0; i + 1 < coarse.size(); ++i) {
      const double w = coarse[i + 1] - coarse[i];
      const int pieces =
          std::min(4096, std::max(1, static_cast<int>(std::ceil(w / osc_cap))));
      for (int j = 0; j < pieces; ++j)
        edges.push_back(coarse[i] + w * j / pieces);
    }
    edges.push_back(big_l);
    for (size_t i = 0; i + 1 < edges.size(); ++i)
      push(scratch.make(edges[i], edges[i + 1]));
  }

  const int max_nodes = std::max(cfg.node_budget, nodes);
  const double abs_tol_norm =
      cfg.abs_tol > 0.0
          ? cfg.abs_tol * kPi * std::exp(std::clamp(shift, -745.0, 709.0))
          : 0.0;
  for (int round = 0; round < 8; ++round) {
    while (true) {
      const double tol = std::max(
          {cfg.rel_tol * std::abs(total), abs_tol_norm, 1e-305});
      if (total_err <= tol) break;
      if (nodes + 48 > max_nodes) break;
      Panel worst = panels.top();
      const double mid = 0.5 * (worst.a + worst.b);
      if (mid <= worst.a || mid >= worst.b) break;
      panels.pop();
      total -= worst.value;
      total_err -= worst.err;
      nodes -= 48;
      push(scratch.make(worst.a, mid));
      push(scratch.make(mid, worst.b));
    }
    // Tail guard: extend L if the outermost octave still matters.
    Panel tail = scratch.make(big_l, 2.0 * big_l);
    if (std::abs(tail.value) + tail.err <=
        0.1 * std::max(cfg.rel_tol * std::abs(total), 1e-305))
      break;
    push(std::move(tail));
    big_l *= 2.0;
  }

  LineResult out;
  out.big_l = big_l;
  out.nodes = nodes;
  const double descale = safe_exp(-shift);
  out.value = total.real() / kPi * descale;
  out.abs_error = total_err / kPi * descale;
  out.peak_mag = descale;
  std::vector<double> edges;
  while (!panels.empty()) {
    edges.push_back(panels.top().a);
    panels.pop();
  }
  edges.push_back(big_l);
  std::sort(edges.begin(), edges.end());
  out.edges = std::move(edges);
  return out;
}

// ---------------------------------------------------------------------------
// 2-D Mellin-Barnes integral over a tensor of vertical contours, in the
// variables (s, sigma = s + t). In these coordinates every near-pole feature
// of the classes in scope is axis-aligned, so per-axis panel refinement
// converges. The value computed is
//   (1/(2 pi i))^2 IntInt phi_sig(s+t) phi_s(s) phi_t(t) z1^s z2^t ds dt
// = (1/(2 pi^2)) Re Int_{u>=0} Int_{y in R} F(u, y) dy du.

struct PlaneSpec {
  std::vector<GammaFactor> s_factors, sig_factors, t_factors;
  double c_s = 0.0, c_sig = 0.0;
  double ln_zs = 0.0;   // multiplies s   (= ln(z1/z2))
  double ln_zsig = 0.0; // multiplies sigma (= ln z2)
  double log_scale = 0.0;
};

struct PlaneResult {
  double value = 0.0;
  double abs_error = 0.0;
  double peak_mag = 0.0;
};

// panel edges on [0, L]: geometric out of the sharpest pole feature, capped
// at a few oscillation periods
std::vector<double> axis_edges(double d, double big_l, double osc_cap) {
  std::vector<double> coarse{0.0};
  double e = (d < big_l / 8.0) ? d : big_l / 8.0;
  while (e < big_l && coarse.size() < 64) {
    coarse.push_back(e);
    e *= 2.0;
  }
  coarse.push_back(big_l);
  std::vector<double> edges;
  for (size_t i = 0; i + 1 < coarse.size(); ++i) {
    const double w = coarse[i + 1] - coarse[i];
    const int pieces =
        std::min(512, std::max(1, static_cast<int>(std::ceil(w / osc_cap))));
    for (int j = 0; j < pieces; ++j)
      edges.push_back(coarse[i] + w * j / pieces);
  }
  edges.push_back(big_l);
  return edges;
}

std::vector<double> split_edges(const std::vector<double>& edges) {
  std::vector<double> out;
  out.reserve(edges.size() * 2 - 1);
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    out.push_back(edges[i]);
    out.push_back(0.5 * (edges[i] + edges[i + 1]));
  }
  out.push_back(edges.back());
  return out;
}

PlaneResult integrate_plane(const PlaneSpec& spec,
                            const QuadratureConfig& cfg) {
  const double ct0 = spec.c_sig - spec.c_s;

  // log-magnitude along the axes (the other variable at zero)
  auto logmag_u = [&](double u) {
    const cdouble s(spec.c_s, u);
    const cdouble t(ct0, -u);
    double acc = spec.log_scale + spec.c_s * spec.ln_zs +
                 spec.c_sig * spec.ln_zsig;
    for (const auto& f : spec.s_factors)
      acc += clgamma(f.shift + f.sign * s).real();
    for (const auto& f : spec.sig_factors)
      acc += clgamma(cdouble(f.shift + f.sign * spec.c_sig, 0.0)).real();
    for (const auto& f : spec.t_factors)
      acc += clgamma(f.shift + f.sign * t).real();
    return acc;
  };
  auto logmag_g = [&](double y) {
    const cdouble sig(spec.c_sig, y);
    const cdouble t(ct0, y);
    double acc = spec.log_scale + spec.c_s * spec.ln_zs +
                 spec.c_sig * spec.ln_zsig;
    for (const auto& f : spec.s_factors)
      acc += clgamma(cdouble(f.shift + f.sign * spec.c_s, 0.0)).real();
    for (const auto& f : spec.sig_factors)
      acc += clgamma(f.shift + f.sign * sig).real();
    for (const auto& f : spec.t_factors)
      acc += clgamma(f.shift + f.sign * t).real();
    return acc;
  };

  // fit the truncation half-height per axis: grow until the tail is dead,
  // then shrink back dyadically over live octaves
  const double peak = logmag_u(0.0);
  const double ln_tol = std::log(std::max(cfg.rel_tol, 1e-15)) - 9.2;
  auto fit_l = [&](auto&& lm) {
    double l = cfg.initial_half_height;
    int grow = 0;
    while (lm(l) > peak + ln_tol && grow++ < 24) l *= 2.0;
    while (l > 1.0 && lm(0.5 * l) <= peak + ln_tol) l *= 0.5;
    return l;
  };
  const double l_u = fit_l(logmag_u);
  const double l_g = fit_l(logmag_g);

  // sharpest pole features per axis; t-factors ride the diagonal and can
  // pinch either axis
  auto pole_d = [](const std::vector<GammaFactor>& fs, double c) {
    double d = kInf;
    for (const auto& f : fs) {
      const double r = f.shift + f.sign * c;
      const double j = std::max(0.0, std::round(-r));
      d = std::min(d, std::abs(r + j));
      if (j > 0.0) d = std::min(d, std::abs(r + j - 1.0));
    }
    return d;
  };
  const double d_t = pole_d(spec.t_factors, ct0);
  const double d_u =
      std::clamp(std::min(pole_d(spec.s_factors, spec.c_s), d_t), 1e-14,
                 kInf);
  const double d_g =
      std::clamp(std::min(pole_d(spec.sig_factors, spec.c_sig), d_t), 1e-14,
                 kInf);

  const double cap_u = 8.0 * kPi / std::max(std::abs(spec.ln_zs), 4.0);
  const double cap_g = 8.0 * kPi / std::max(std::abs(spec.ln_zsig), 4.0);
  std::vector<double> edges_u = axis_edges(d_u, l_u, cap_u);
  std::vector<double> edges_g = axis_edges(d_g, l_g, cap_g);

  const double shift = -peak;

  // tensor evaluation with a chosen per-panel rule
  auto tensor_value = [&](const std::vector<double>& eu,
                          const std::vector<double>& eg, const GlPoint* rule,
                          int half_order) {
    std::vector<double> un, uw, gn, gw;
    for (size_t i = 0; i + 1 < eu.size(); ++i) {
      const double mid = 0.5 * (eu[i] + eu[i + 1]);
      const double half = 0.5 * (eu[i + 1] - eu[i]);
      for (int k = 0; k < half_order; ++k) {
        un.push_back(mid - half * rule[k].x);
        uw.push_back(half * rule[k].w);
        un.push_back(mid + half * rule[k].x);
        uw.push_back(half * rule[k].w);
      }
    }
    for (size_t i = 0; i + 1 < eg.size(); ++i) {
      const double mid = 0.5 * (eg[i] + eg[i + 1]);
      const double half = 0.5 * (eg[i + 1] - eg[i]);
      for (int k = 0; k < half_order; ++k) {
        for (double y : {mid - half * rule[k].x, mid + half * rule[k].x}) {
          gn.push_back(y);
          gw.push_back(half * rule[k].w);
          gn.push_back(-y);
          gw.push_back(half * rule[k].w);
        }
      }
    }
    std::vector<cdouble> lu(un.size()), lg(gn.size());
    double lg_max = -kInf;
    for (size_t i = 0; i < un.size(); ++i) {
      const cdouble s(spec.c_s, un[i]);
      cdouble acc = s * spec.ln_zs;
      for (const auto& f : spec.s_factors) acc += clgamma(f.shift + f.sign * s);
      lu[i] = acc;
    }
    for (size_t j = 0; j < gn.size(); ++j) {
      const cdouble sig(spec.c_sig, gn[j]);
      cdouble acc = sig * spec.ln_zsig + spec.log_scale + shift;
      for (const auto& f : spec.sig_factors)
        acc += clgamma(f.shift + f.sign * sig);
      lg[j] = acc;
      lg_max = std::max(lg_max, acc.real());
    }
    // t-factor magnitude peaks on the diagonal Im t = 0
    double t_peak = 0.0;
    for (const auto& f : spec.t_factors)
      t_peak += clgamma(cdouble(f.shift + f.sign * ct0, 0.0)).real();

    cdouble total = 0.0;
    for (size_t i = 0; i < un.size(); ++i) {
      if (lu[i].real() + lg_max + t_peak < -760.0) continue;
      cdouble row = 0.0;
      for (size_t j = 0; j < gn.size(); ++j) {
        cdouble acc = lu[i] + lg[j];
        if (acc.real() + t_peak < -760.0) continue;
        const cdouble t(ct0, gn[j] - un[i]);
        for (const auto& f : spec.t_factors)
          acc += clgamma(f.shift + f.sign * t);
        if (acc.real() < -745.0) continue;
        row += gw[j] * std::exp(acc);
      }
      total += uw[i] * row;
    }
    return total.real() / (2.0 * kPi * kPi);
  };

  // refinement ladder: GL16, GL32, then panel splitting with GL32
  double prev = tensor_value(edges_u, edges_g, kGl16, 8);
  double value = prev, err = kInf;
  const int base =
      static_cast<int>(std::max(edges_u.size(), edges_g.size()) - 1) * 32;
  int level_nodes = base;
  while (true) {
    value = tensor_value(edges_u, edges_g, kGl32, 16);
    err = std::abs(value - prev);
    prev = value;
    if (err <= std::max(cfg.rel_tol * std::abs(value), 1e-305)) break;
    if (level_nodes * 2 > std::max(cfg.node_budget, base)) break;
    edges_u = split_edges(edges_u);
    edges_g = split_edges(edges_g);
    level_nodes *= 2;
  }

  PlaneResult out;
  const double descale = safe_exp(-shift);
  out.value = value * descale;
  out.abs_error = (err == kInf ? std::abs(value) : err) * descale;
  out.peak_mag = descale;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) && !(abs_tol > 0.0))
    throw std::invalid_argument("quadrature tolerances must be positive");
  if (!(initial_half_height > 0.0))
    throw std::invalid_argument("contour half-height must be positive");
  if (node_budget < 64)
    throw std::invalid_argument("node budget must be at least 64");
  if (!(pole_eps > 0.0))
    throw std::invalid_argument("pole-separation epsilon must be positive");
}

double ln_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("ln_gamma requires x > 0");
  return std::lgamma(x);
}

SignedLogGamma ln_gamma_signed(double x) {
  if (x > 0.0) return {std::lgamma(x), 1};
  if (x == std::floor(x))
    throw std::domain_error("gamma pole at non-positive integer");
  // reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
  const double fl = std::floor(x);
  const double r = x - fl;  // in (0,1)
  const double sin_abs = std::sin(kPi * r);
  const int sign = (static_cast<long long>(fl) % 2 == 0) ? 1 : -1;
  return {kLnPi - std::log(sin_abs) - std::lgamma(1.0 - x), sign};
}

std::complex<double> ln_gamma(std::complex<double> z) { return clgamma(z); }

// ---------------------------------------------------------------------------

void MeijerGSpec::validate() const {
  if (m < 0 || n < 0 || p < 0 || q < 0 || m > q || n > p)
    throw std::invalid_argument("meijer_g: invalid (m,n,p,q)");
  if (static_cast<int>(a.size()) != p || static_cast<int>(b.size()) != q)
    throw std::invalid_argument("meijer_g: parameter list sizes must be p, q");
  if (m != q || n != p)
    throw std::invalid_argument(
        "meijer_g: only classes without denominator gammas are supported");
  if (p + q == 0 || p + q > 8)
    throw std::invalid_argument("meijer_g: unsupported order");
  if (!(z > 0.0)) throw std::invalid_argument("meijer_g: z must be positive");
  for (double v : a)
    if (!std::isfinite(v)) throw std::invalid_argument("meijer_g: bad a");
  for (double v : b)
    if (!std::isfinite(v)) throw std::invalid_argument("meijer_g: bad b");
}

GResult meijer_g(const MeijerGSpec& spec, const QuadratureConfig& cfg) {
  return meijer_g(spec, cfg, 0.0);
}

GResult meijer_g(const MeijerGSpec& spec, const QuadratureConfig& cfg,
                 double log_scale) {
  spec.validate();
  cfg.validate();

  std::vector<double> a = spec.a;
  bool perturbed = false;
  // Coalescence guard: a pole of Gamma(b_j - s) meeting a pole of
  // Gamma(1 - a_k + s) means no separating contour exists; nudge a_k.
  for (int k = 0; k < spec.n; ++k) {
    for (int j = 0; j < spec.m; ++j) {
      const double diff = a[k] - spec.b[j];
      const double nearest = std::round(diff);
      if (nearest >= 1.0 && std::abs(diff - nearest) < cfg.pole_eps) {
        a[k] -= 1e-6;
        perturbed = true;
      }
    }
  }

  LineSpec line;
  for (int j = 0; j < spec.m; ++j) line.factors.push_back({spec.b[j], -1.0});
  for (int k = 0; k < spec.n; ++k) line.factors.push_back({1.0 - a[k], 1.0});
  const double lo = strip_lower(line.factors);
  const double hi = strip_upper(line.factors);
  if (!(lo < hi))
    throw std::invalid_argument("meijer_g: empty contour strip");
  line.c = 0.5 * (lo + hi);
  line.ln_z = std::log(spec.z);
  line.log_scale = log_scale;

  LineResult r = integrate_line(line, cfg);
  // accept when the requested tolerance is met or the estimate has reached
  // the double-precision floor of the (possibly cancelling) integrand
  const double tol = std::max(cfg.rel_tol * std::abs(r.value), cfg.abs_tol);
  if (r.abs_error > std::max(tol, 1e-300) &&
      r.abs_error > 1e-13 * r.peak_mag)
    throw AccuracyError("meijer_g contour did not converge", r.abs_error);
  return {r.value, r.abs_error, perturbed};
}

// ---------------------------------------------------------------------------

void Egbmgf2Spec::validate() const {
  auto shape_ok = [](const GBlock& b, size_t up, size_t lo) {
    return b.upper.size() == up && b.lower.size() == lo;
  };
  if (!shape_ok(outer, 1, 1) || !shape_ok(inner1, 1, 1))
    throw std::invalid_argument("egbmgf: outer/inner-1 blocks must be (1,1)");
  const bool t3_shape = shape_ok(inner2, 1, 1);
  const bool t6_shape = shape_ok(inner2, 0, 1);
  if (!t3_shape && !t6_shape)
    throw std::invalid_argument("egbmgf: inner-2 block must be (1,1) or (0,1)");
  if (!(z1 > 0.0) || !(z2 > 0.0))
    throw std::invalid_argument("egbmgf: arguments must be positive");
  const double A = 1.0 - outer.upper[0];
  const double nu = outer.lower[0] + A;
  if (!(A > 0.0) || !(nu > 0.0))
    throw std::invalid_argument("egbmgf: requires 1 - a > 0 and b + 1 - a > 0");
  if (std::abs(inner1.upper[0] - 1.0 - nu) > 1e-9 * std::max(1.0, nu) ||
      std::abs(inner1.lower[0]) > 1e-12)
    throw std::invalid_argument("egbmgf: inner-1 block must be [1+nu; 0]");
  if (std::abs(inner2.lower[0]) > 1e-12)
    throw std::invalid_argument("egbmgf: inner-2 lower parameter must be 0");
}

GResult egbmgf(const Egbmgf2Spec& spec, const QuadratureConfig& cfg) {
  return egbmgf(spec, cfg, 0.0);
}

GResult egbmgf(const Egbmgf2Spec& spec, const QuadratureConfig& cfg,
               double log_scale) {
  spec.validate();
  cfg.validate();

  const double A = 1.0 - spec.outer.upper[0];
  double nu = spec.outer.lower[0] + A;
  bool perturbed = false;
  // Integer nu collapses the contour strip of Gamma(-s)Gamma(s - nu).
  if (std::abs(nu - std::round(nu)) < cfg.pole_eps && std::round(nu) >= 1.0) {
    nu += 1e-6;
    perturbed = true;
  }
  const bool has_inner2_upper = !spec.inner2.upper.empty();
  const double e2 = has_inner2_upper ? spec.inner2.upper[0] : kInf;

  const double ln_z1 = std::log(spec.z1);
  const double ln_z2 = std::log(spec.z2);

  // Straight-line double integral in (s, sigma = s + t).
  PlaneSpec plane;
  plane.s_factors = {{0.0, -1.0}, {-nu, 1.0}};         // G(-s) G(s - nu)
  plane.sig_factors = {{nu - A, -1.0}, {A, 1.0}};      // G(nu-A-sig) G(A+sig)
  plane.t_factors = {{0.0, -1.0}};                     // G(-t)
  if (has_inner2_upper) plane.t_factors.push_back({1.0 - e2, 1.0});
  const int ceil_nu = static_cast<int>(std::ceil(nu));
  plane.c_s = 0.5 * (nu - ceil_nu);
  const double t_lo = has_inner2_upper ? (e2 - 1.0) : -kInf;
  const double sig_lo = std::max(-A, plane.c_s + t_lo);
  const double sig_hi = std::min(nu - A, plane.c_s);
  if (!(sig_lo < sig_hi))
    throw std::invalid_argument("egbmgf: empty sigma contour strip");
  plane.c_sig = 0.5 * (sig_lo + sig_hi);
  plane.ln_zs = ln_z1 - ln_z2;
  plane.ln_zsig = ln_z2;
  plane.log_scale = log_scale;

  PlaneResult dpart = integrate_plane(plane, cfg);
  double value = dpart.value;
  double err = dpart.abs_error;
  double peak_scale = dpart.peak_mag;

  // Residue corrections: the inner-1 factor has no straight separating
  // contour; the poles of Gamma(s - nu) at s = nu - k, k < ceil(nu), each
  // contribute a one-dimensional line integral
  //   (-1)^k Gamma(k - nu) / k!  z1^(nu-k)
  //     * (1/(2 pi i)) Int G(k-A-t) G(A+nu-k+t) G(-t) [G(1-e+t)] z2^t dt.
  double term_peak = 0.0;
  for (int k = ceil_nu - 1; k >= 0; --k) {
    SignedLogGamma g = ln_gamma_signed(static_cast<double>(k) - nu);
    const int sign = ((k % 2) ? -1 : 1) * g.sign;
    const double coeff_log =
        g.log_abs - std::lgamma(k + 1.0) + (nu - k) * ln_z1;

    LineSpec corr;
    corr.factors = {{k - A, -1.0}, {A + nu - k, 1.0}, {0.0, -1.0}};
    if (has_inner2_upper) corr.factors.push_back({1.0 - e2, 1.0});
    const double lo = strip_lower(corr.factors);
    const double hi = strip_upper(corr.factors);
    corr.c = 0.5 * (lo + hi);
    corr.ln_z = ln_z2;
    corr.log_scale = log_scale + coeff_log;
    LineResult lr = integrate_line(corr, cfg);
    const double term = sign * lr.value;
    value += term;
    err += lr.abs_error;
    peak_scale = std::max(peak_scale, lr.peak_mag);
    term_peak = std::max(term_peak, std::abs(term));
    // Terms decay geometrically below k* = (nu+1)/(1+z1); stop early there.
    if (k < (nu + 1.0) / (1.0 + spec.z1) &&
        std::abs(term) < 1e-3 * cfg.rel_tol *
                             std::max(std::abs(value), term_peak))
      break;
  }

  // convergence verdict: the requested tolerance, or the rounding floor set
  // by the largest integrand magnitude when the pieces cancel
  if (err > std::max({cfg.rel_tol * std::abs(value) * 16.0, cfg.abs_tol,
                      1e-12 * peak_scale, 1e-300}))
    throw AccuracyError("egbmgf quadrature did not converge", err);
  return {value, err, perturbed};
}

}  // namespace ernoma
